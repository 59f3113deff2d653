#pragma once

#include "legdet/exactla.hpp"
#include "legdet/families.hpp"
#include "legdet/integer.hpp"
#include "legdet/matrix.hpp"
#include "legdet/numtheory.hpp"
#include "legdet/serialize.hpp"
#include "legdet/verify.hpp"
