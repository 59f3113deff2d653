#include <cstdint>

#include <catch_amalgamated.hpp>

#include "legdet/families.hpp"

using namespace legdet;

TEST_CASE("build_A layout and small instances") {
    PrimeContext p5(5);
    IntMatrix a1 = build_A(p5, 1);
    REQUIRE(a1.rows() == 2);
    CHECK(a1(0, 0) == 0);
    CHECK(a1(0, 1) == -1);
    CHECK(a1(1, 0) == -1);
    CHECK(a1(1, 1) == 0);
    CHECK(det(a1).value == -1);

    PrimeContext p3(3);
    CHECK(build_A(p3, 2).rows() == 0);
    CHECK(det(build_A(p3, 2)).value == 1);
}

TEST_CASE("A_delta is symmetric for p = 1 (mod 4), skew-symmetric for p = 3 (mod 4)") {
    for (std::int64_t p : {5, 13, 17, 29}) {
        PrimeContext ctx(p);
        for (int delta : {0, 1, 2}) CHECK(build_A(ctx, delta).is_symmetric());
    }
    for (std::int64_t p : {3, 7, 11, 19, 23}) {
        PrimeContext ctx(p);
        for (int delta : {0, 1, 2}) CHECK(build_A(ctx, delta).is_skew_symmetric());
    }
}

TEST_CASE("build_A row zero carries the (-1/p) sign pattern") {
    for (std::int64_t p : {5, 7, 11, 13, 17, 19}) {
        PrimeContext ctx(p);
        IntMatrix a0 = build_A(ctx, 0);
        for (std::int64_t k = 0; k <= ctx.half(); ++k) {
            CHECK(a0(0, static_cast<std::size_t>(k)) ==
                  Int(ctx.chi_at(p - 1) * ctx.chi_at(k * k % p)));
        }
    }
}

TEST_CASE("build_u") {
    PrimeContext p5(5);
    IntVector u1 = build_u(p5, 1);
    REQUIRE(u1.size() == 2);
    CHECK(u1[0] == 1);
    CHECK(u1[1] == -1);

    CHECK(build_u(p5, 0)[0] == 0);

    PrimeContext p7(7);
    IntVector u7 = build_u(p7, 1);
    REQUIRE(u7.size() == 3);
    CHECK(u7[0] == 1);
    CHECK(u7[1] == 1);
    CHECK(u7[2] == -1);

    CHECK_THROWS_AS(build_u(p5, 2), std::invalid_argument);
}

TEST_CASE("build_st_matrix") {
    PrimeContext p5(5);
    IntMatrix s = build_st_matrix(p5, 1, STVariant::S);
    REQUIRE(s.rows() == 2);
    CHECK(s(0, 0) == -1);
    CHECK(s(0, 1) == 0);
    CHECK(s(1, 0) == 0);
    CHECK(s(1, 1) == -1);

    PrimeContext p3(3);
    IntMatrix t = build_st_matrix(p3, 1, STVariant::T);
    REQUIRE(t.rows() == 2);
    CHECK(t(0, 0) == 0);
    CHECK(t(0, 1) == 1);
    CHECK(t(1, 0) == 1);
    CHECK(t(1, 1) == -1);

    // d = -1 gives the same matrix as build_A at delta = 1
    for (std::int64_t p : {5, 7, 11, 13}) {
        PrimeContext ctx(p);
        CHECK(build_st_matrix(ctx, -1, STVariant::S) == build_A(ctx, 1));
        CHECK(build_st_matrix(ctx, -1, STVariant::T) == build_A(ctx, 0));
    }
}

TEST_CASE("the (jk/p) perturbation matrix factors as u u^T") {
    for (std::int64_t p : {5, 7, 11, 13, 17, 19}) {
        PrimeContext ctx(p);
        for (int delta : {0, 1}) {
            IntVector u = build_u(ctx, delta);
            for (std::int64_t j = delta; j <= ctx.half(); ++j) {
                for (std::int64_t k = delta; k <= ctx.half(); ++k) {
                    CHECK(Int(ctx.chi_at(j * k % p)) ==
                          u[static_cast<std::size_t>(j - delta)] *
                              u[static_cast<std::size_t>(k - delta)]);
                }
            }
        }
    }
}

TEST_CASE("d_poly closed-form examples") {
    CHECK(d_poly(PrimeContext(5), 0) == LinearPoly{Int(0), Int(-4)});
    CHECK(d_poly(PrimeContext(7), 1) == LinearPoly{Int(0), Int(1)});

    // zero slope at delta = 0 for p = 3 (mod 4)
    for (std::int64_t p : {3, 7, 11, 19, 23}) {
        CHECK(d_poly(PrimeContext(p), 0).slope == 0);
    }

    // proportionality for p = 1 (mod 4)
    for (std::int64_t p : {5, 13, 17, 29}) {
        PrimeContext ctx(p);
        CHECK(d_poly(ctx, 0).slope == Int(ctx.half()) * d_poly(ctx, 1).slope);
    }

    CHECK_THROWS_AS(d_poly(PrimeContext(5), 2), std::invalid_argument);
}

TEST_CASE("d_poly constant is zero and eval is linear") {
    PrimeContext ctx(13);
    LinearPoly poly = d_poly(ctx, 1);
    CHECK(poly.constant == 0);
    CHECK(poly.eval(Int(0)) == 0);
    CHECK(poly.eval(Int(5)) == 5 * poly.slope);

    // against a direct determinant difference at an arbitrary w
    IntMatrix a = build_A(ctx, 1);
    IntVector u = build_u(ctx, 1);
    Int w = 37;
    CHECK(poly.eval(w) == rank1_update_det(a, u, u, w) - det(a).value);
}

TEST_CASE("eigen relation A_delta u_delta = J(-1) u_delta for p = 1 (mod 4)") {
    for (std::int64_t p : {5, 13, 17, 29, 37}) {
        PrimeContext ctx(p);
        Int j = jacobsthal_sum(ctx, -1);
        for (int delta : {0, 1}) {
            IntVector u = build_u(ctx, delta);
            IntVector lhs = build_A(ctx, delta) * u;
            for (std::size_t i = 0; i < u.size(); ++i) {
                CHECK(lhs[i] == j * u[i]);
            }
        }
    }
}

TEST_CASE("row sums of A_1 vanish for p = 3 (mod 4)") {
    for (std::int64_t p : {7, 11, 19, 23, 31}) {
        IntMatrix a1 = build_A(PrimeContext(p), 1);
        for (std::size_t i = 0; i < a1.rows(); ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < a1.cols(); ++j) s += a1(i, j);
            CHECK(s == 0);
        }
    }
}

TEST_CASE("|A_0| = ((p-1)/2)|A_1|, nonvanishing mod p, for p = 1 (mod 4)") {
    for (std::int64_t p : {5, 13, 17, 29}) {
        PrimeContext ctx(p);
        Int a0 = det(build_A(ctx, 0)).value;
        Int a1 = det(build_A(ctx, 1)).value;
        CHECK(a0 == Int(ctx.half()) * a1);
        CHECK(a0 % p != 0);
    }
}

TEST_CASE("compute_cp golden values") {
    CHECK(compute_cp(PrimeContext(3)).c_p == 1);
    CHECK(compute_cp(PrimeContext(5)).c_p == 1);
    CHECK(compute_cp(PrimeContext(13)).c_p == 3);
    CHECK(compute_cp(PrimeContext(47)).c_p == Int("1870591"));
}

TEST_CASE("compute_cp record invariants") {
    // p = 1 (mod 4) branch
    CpRecord r13 = compute_cp(PrimeContext(13));
    REQUIRE(r13.j_minus_1.has_value());
    CHECK(*r13.j_minus_1 == -3);
    CHECK(r13.c_p * r13.c_p * *r13.j_minus_1 == -r13.det_A1);
    CHECK_FALSE(r13.det_A2.has_value());
    CHECK_FALSE(r13.class_number.has_value());
    CHECK(r13.half_sum == 0);
    CHECK(r13.jacobi_p_cp == jacobi_symbol(13, r13.c_p));

    // p = 3 (mod 4) branch
    CpRecord r23 = compute_cp(PrimeContext(23));
    REQUIRE(r23.det_A2.has_value());
    REQUIRE(r23.pfaffian_A2.has_value());
    CHECK(r23.c_p * r23.c_p == *r23.det_A2);
    CHECK(*r23.pfaffian_A2 * *r23.pfaffian_A2 == *r23.det_A2);
    CHECK(r23.det_A1 == 0);
    REQUIRE(r23.class_number.has_value());
    CHECK(*r23.class_number == 3);
    CHECK_FALSE(r23.j_minus_1.has_value());

    // p = 3: empty A_2, no class number
    CpRecord r3 = compute_cp(PrimeContext(3));
    CHECK(*r3.det_A2 == 1);
    CHECK_FALSE(r3.class_number.has_value());

    // parity claims
    for (std::int64_t p : {5, 13, 17, 29}) CHECK(is_odd(compute_cp(PrimeContext(p)).det_A1));
    for (std::int64_t p : {7, 11, 19, 23}) CHECK(is_odd(*compute_cp(PrimeContext(p)).det_A2));
}

TEST_CASE("liwu_poly closed forms") {
    LinearPoly p7 = liwu_poly(PrimeContext(7));
    CHECK(p7.constant == -7);
    CHECK(p7.slope == 21);

    LinearPoly p3 = liwu_poly(PrimeContext(3));
    CHECK(p3.constant == -1);
    CHECK(p3.slope == 1);

    LinearPoly p11 = liwu_poly(PrimeContext(11));
    CHECK(p11.constant == -121);
    CHECK(p11.slope == 5 * 121);

    CHECK_THROWS_AS(liwu_poly(PrimeContext(13)), std::invalid_argument);
}
