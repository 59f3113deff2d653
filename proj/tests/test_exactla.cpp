#include <cstdint>
#include <random>

#include <catch_amalgamated.hpp>

#include "legdet/exactla.hpp"
#include "legdet/matrix.hpp"

using namespace legdet;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
Int det_by_cofactors(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0, mc = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, mc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_by_cofactors(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

// Independent Pfaffian oracle: recursive expansion along the first row.
Int pfaffian_by_expansion(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int total = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 2, n - 2);
        std::size_t mr = 0;
        for (std::size_t r = 1; r < n; ++r) {
            if (r == j) continue;
            std::size_t mc = 0;
            for (std::size_t c = 1; c < n; ++c) {
                if (c == j) continue;
                minor(mr, mc++) = m(r, c);
            }
            ++mr;
        }
        Int term = m(0, j) * pfaffian_by_expansion(minor);
        total += (j % 2 == 1) ? term : -term;
    }
    return total;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

IntMatrix random_skew(std::mt19937_64& rng, std::size_t n, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = dist(rng);
            m(j, i) = -m(i, j);
        }
    }
    return m;
}

IntVector random_vector(std::mt19937_64& rng, std::size_t n, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("det_bareiss basics") {
    CHECK(det_bareiss(IntMatrix::identity(5)).value == 1);
    CHECK(det_bareiss(IntMatrix()).value == 1);

    IntMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    CHECK(det_bareiss(m).value == -2);

    IntMatrix rect(2, 3);
    CHECK_THROWS_AS(det_bareiss(rect), std::invalid_argument);
}

TEST_CASE("det_bareiss agrees with cofactor expansion") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t n = 1 + trial % 6;
        IntMatrix m = random_matrix(rng, n);
        CHECK(det_bareiss(m).value == det_by_cofactors(m));
    }
    // singular instances hit the zero-pivot path
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 5);
        for (std::size_t j = 0; j < 5; ++j) m(3, j) = m(1, j);  // duplicate row
        CHECK(det_bareiss(m).value == 0);
    }
}

TEST_CASE("det_multimodular basics") {
    IntMatrix d(3, 3);
    d(0, 0) = 2;
    d(1, 1) = 3;
    d(2, 2) = 5;
    CHECK(det_multimodular(d).value == 30);

    IntMatrix z(4, 4);
    CHECK(det_multimodular(z).value == 0);
    CHECK(det_multimodular(IntMatrix()).value == 1);

    IntMatrix one_zero_row = IntMatrix::identity(6);
    for (std::size_t j = 0; j < 6; ++j) one_zero_row(2, j) = 0;
    CHECK(det_multimodular(one_zero_row).value == 0);
}

TEST_CASE("det_multimodular equals det_bareiss on random matrices") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 12;
        IntMatrix m = random_matrix(rng, n);
        CAPTURE(trial, n);
        REQUIRE(det_multimodular(m).value == det_bareiss(m).value);
    }
}

TEST_CASE("det_multimodular handles entries larger than one modulus") {
    std::mt19937_64 rng(303);
    IntMatrix m(6, 6);
    Int big = Int(1) << 200;
    std::uniform_int_distribution<int> dist(-9, 9);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = Int(dist(rng)) * big + dist(rng);
    CHECK(det_multimodular(m).value == det_bareiss(m).value);
}

TEST_CASE("determinant symmetry properties") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 7;
        IntMatrix m = random_matrix(rng, n);
        CHECK(det(m.transposed()).value == det(m).value);

        IntMatrix swapped = m;
        for (std::size_t j = 0; j < n; ++j) swapped(0, j).swap(swapped(1, j));
        CHECK(det(swapped).value == -det(m).value);
    }
}

TEST_CASE("pfaffian basics") {
    CHECK(pfaffian(IntMatrix()) == 1);

    IntMatrix m(2, 2);
    m(0, 1) = 7;
    m(1, 0) = -7;
    CHECK(pfaffian(m) == 7);

    CHECK_THROWS_AS(pfaffian(IntMatrix::identity(4)), std::invalid_argument);  // not skew
    CHECK_THROWS_AS(pfaffian(IntMatrix(3, 3)), std::invalid_argument);         // odd order
}

TEST_CASE("pfaffian matches the 4x4 closed form") {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix m(4, 4);
        Int a12 = dist(rng), a13 = dist(rng), a14 = dist(rng);
        Int a23 = dist(rng), a24 = dist(rng), a34 = dist(rng);
        m(0, 1) = a12; m(0, 2) = a13; m(0, 3) = a14;
        m(1, 2) = a23; m(1, 3) = a24; m(2, 3) = a34;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < i; ++j) m(i, j) = -m(j, i);
        CHECK(pfaffian(m) == a12 * a34 - a13 * a24 + a14 * a23);
    }
}

TEST_CASE("pfaffian squared equals the determinant, expansion oracle agrees") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 * (1 + trial % 5);  // orders 2..10
        IntMatrix m = random_skew(rng, n);
        CAPTURE(trial, n);
        const Int pf = pfaffian(m);
        REQUIRE(pf * pf == det(m).value);
        if (n <= 8) REQUIRE(pf == pfaffian_by_expansion(m));
    }
    // sparse skew matrices exercise the pivot-swap and zero-row paths
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 * (1 + trial % 4);
        IntMatrix m = random_skew(rng, n, -1, 1);
        const Int pf = pfaffian(m);
        CHECK(pf * pf == det(m).value);
        if (n <= 8) CHECK(pf == pfaffian_by_expansion(m));
    }
}

TEST_CASE("odd-order skew-symmetric determinants vanish") {
    std::mt19937_64 rng(707);
    for (std::size_t n : {1, 3, 5, 7, 9}) {
        IntMatrix m = random_skew(rng, n);
        CHECK(det(m).value == 0);
    }
}

TEST_CASE("rank1_update_det") {
    std::mt19937_64 rng(808);
    IntMatrix m = random_matrix(rng, 5);
    IntVector u = random_vector(rng, 5);
    IntVector v = random_vector(rng, 5);

    CHECK(rank1_update_det(m, u, v, Int(0)) == det(m).value);

    // identity + all-ones perturbation
    for (std::size_t n : {1, 2, 5, 9}) {
        CHECK(rank1_update_det(IntMatrix::identity(n), IntVector::ones(n), IntVector::ones(n),
                               Int(1)) == Int(1 + n));
    }

    // linearity in w: three-point collinearity
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 6;
        IntMatrix a = random_matrix(rng, n);
        IntVector x = random_vector(rng, n);
        IntVector y = random_vector(rng, n);
        Int f0 = rank1_update_det(a, x, y, Int(0));
        Int f1 = rank1_update_det(a, x, y, Int(1));
        Int f2 = rank1_update_det(a, x, y, Int(2));
        CHECK(f2 - f1 == f1 - f0);
    }

    IntVector wrong(3);
    CHECK_THROWS_AS(rank1_update_det(m, wrong, v, Int(1)), std::invalid_argument);
}

TEST_CASE("adjugate_quadratic_form") {
    for (std::size_t n : {1, 3, 6}) {
        CHECK(adjugate_quadratic_form(IntMatrix::identity(n), IntVector::ones(n)) == Int(n));
    }

    // agrees with the explicit cofactor adjugate
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 4;
        IntMatrix m = random_matrix(rng, n);
        IntVector u = random_vector(rng, n);
        IntMatrix adj = adjugate_full(m);
        Int direct = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) direct += u[i] * adj(i, j) * u[j];
        CHECK(adjugate_quadratic_form(m, u) == direct);
    }

    // valid on a singular matrix whose adjugate is all-ones times a scalar
    IntMatrix s(2, 2);
    s(0, 0) = 1; s(0, 1) = -1; s(1, 0) = -1; s(1, 1) = 1;
    // adj = [[1,1],[1,1]], u in kernel direction (1,1): u^T adj u = 4
    IntVector k(2);
    k[0] = 1; k[1] = 1;
    CHECK(det(s).value == 0);
    CHECK(adjugate_quadratic_form(s, k) == 4);
}

TEST_CASE("adjugate_full") {
    CHECK(adjugate_full(IntMatrix::identity(4)) == IntMatrix::identity(4));

    IntMatrix m(2, 2);
    m(0, 0) = 3; m(0, 1) = 5; m(1, 0) = -2; m(1, 1) = 7;
    IntMatrix adj = adjugate_full(m);
    CHECK(adj(0, 0) == 7);
    CHECK(adj(0, 1) == -5);
    CHECK(adj(1, 0) == 2);
    CHECK(adj(1, 1) == 3);

    // M * adj(M) = det(M) * I
    std::mt19937_64 rng(111);
    for (std::size_t n = 1; n <= 6; ++n) {
        IntMatrix a = random_matrix(rng, n);
        IntMatrix prod = a * adjugate_full(a);
        Int d = det(a).value;
        IntMatrix expected(n, n);
        for (std::size_t i = 0; i < n; ++i) expected(i, i) = d;
        CHECK(prod == expected);
    }

    CHECK_THROWS_AS(adjugate_full(IntMatrix::identity(41)), std::invalid_argument);  // over cap
    CHECK(adjugate_full(IntMatrix::identity(41), 41) == IntMatrix::identity(41));
}
