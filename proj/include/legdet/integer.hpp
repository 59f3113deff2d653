#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace legdet {

/// Exact arbitrary-precision signed integer used throughout the library.
using Int = boost::multiprecision::cpp_int;

/// Raised when a value contradicts a proved statement. Since the claims this
/// library checks are theorems, hitting one of these means broken code (or a
/// genuinely historic discovery worth a human look); the message carries the
/// witnessing values.
class theorem_violation : public std::runtime_error {
public:
    explicit theorem_violation(const std::string& what) : std::runtime_error(what) {}
};

/// floor(sqrt(n)) if n is a perfect square, otherwise nullopt. Never returns
/// a wrong root.
inline std::optional<Int> integer_sqrt_exact(const Int& n) {
    if (n < 0) throw std::invalid_argument("integer_sqrt_exact: negative argument");
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

/// Exact quotient a / b. Throws theorem_violation if b == 0 or b does not
/// divide a; callers use this where divisibility is guaranteed by a theorem.
inline Int exact_div(const Int& a, const Int& b, const char* what) {
    if (b == 0) {
        throw theorem_violation(std::string(what) + ": division by zero, a=" + a.str());
    }
    Int q = a / b;
    if (q * b != a) {
        throw theorem_violation(std::string(what) + ": non-exact division, a=" + a.str() +
                                " b=" + b.str());
    }
    return q;
}

inline bool is_odd(const Int& n) { return (n & 1) != 0; }

}  // namespace legdet
