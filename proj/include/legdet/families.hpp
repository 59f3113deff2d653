#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "legdet/exactla.hpp"
#include "legdet/integer.hpp"
#include "legdet/matrix.hpp"
#include "legdet/numtheory.hpp"

namespace legdet {

/// constant + slope * w, for determinants that are provably linear in the
/// perturbation weight.
struct LinearPoly {
    Int constant;
    Int slope;

    Int eval(const Int& w) const { return constant + slope * w; }
    bool operator==(const LinearPoly& other) const {
        return constant == other.constant && slope == other.slope;
    }
};

/// The square matrix with entry (j,k) = ((j^2-k^2)/p) for delta <= j,k <= (p-1)/2.
/// Order is (p-1)/2 - delta + 1; an empty range yields the 0x0 matrix.
inline IntMatrix build_A(const PrimeContext& ctx, int delta) {
    if (delta < 0 || delta > 2) throw std::invalid_argument("build_A: delta must be 0, 1 or 2");
    const std::int64_t lo = delta;
    const std::int64_t hi = ctx.half();
    const std::size_t n = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    IntMatrix m(n, n);
    const std::int64_t p = ctx.p();
    for (std::int64_t j = lo; j <= hi; ++j) {
        const std::int64_t j2 = j * j % p;
        for (std::int64_t k = lo; k <= hi; ++k) {
            std::int64_t d = (j2 - k * k % p) % p;
            if (d < 0) d += p;
            m(static_cast<std::size_t>(j - lo), static_cast<std::size_t>(k - lo)) = ctx.chi_at(d);
        }
    }
    return m;
}

/// The column vector [(delta/p), ((delta+1)/p), ..., (((p-1)/2)/p)]^T.
inline IntVector build_u(const PrimeContext& ctx, int delta) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("build_u: delta must be 0 or 1");
    const std::int64_t lo = delta;
    const std::int64_t hi = ctx.half();
    IntVector v(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t k = lo; k <= hi; ++k) {
        v[static_cast<std::size_t>(k - lo)] = ctx.chi_at(k);
    }
    return v;
}

enum class STVariant { S, T };

/// Matrix with entry ((j^2 + d k^2)/p); indices run over 1..(p-1)/2 for the
/// S variant and 0..(p-1)/2 for the T variant.
inline IntMatrix build_st_matrix(const PrimeContext& ctx, std::int64_t d, STVariant variant) {
    const std::int64_t lo = variant == STVariant::S ? 1 : 0;
    const std::int64_t hi = ctx.half();
    const std::int64_t p = ctx.p();
    std::int64_t dr = d % p;
    if (dr < 0) dr += p;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    IntMatrix m(n, n);
    for (std::int64_t j = lo; j <= hi; ++j) {
        const std::int64_t j2 = j * j % p;
        for (std::int64_t k = lo; k <= hi; ++k) {
            std::int64_t e = (j2 + dr * (k * k % p)) % p;
            m(static_cast<std::size_t>(j - lo), static_cast<std::size_t>(k - lo)) = ctx.chi_at(e);
        }
    }
    return m;
}

/// Determinant shift D(w) = |A_delta + w u_delta u_delta^T| - |A_delta| as an
/// exact linear polynomial in w. The slope is the adjugate quadratic form
/// u^T adj(A) u (two determinant evaluations); a third evaluation at w = 2
/// pins collinearity, and the rank-1 factorization of the ((jk)/p) matrix is
/// asserted on the way.
inline LinearPoly d_poly(const PrimeContext& ctx, int delta) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("d_poly: delta must be 0 or 1");
    const IntMatrix a = build_A(ctx, delta);
    const IntVector u = build_u(ctx, delta);

    // [(jk/p)] = u u^T entrywise, by multiplicativity of the character.
    const std::int64_t lo = delta;
    const std::int64_t p = ctx.p();
    for (std::int64_t j = lo; j <= ctx.half(); ++j) {
        for (std::int64_t k = lo; k <= ctx.half(); ++k) {
            Int prod = ctx.chi_at(j * k % p);
            if (prod != u[static_cast<std::size_t>(j - lo)] * u[static_cast<std::size_t>(k - lo)]) {
                throw theorem_violation("d_poly: rank-1 factorization of the (jk/p) matrix failed at p=" +
                                        std::to_string(p) + " j=" + std::to_string(j) +
                                        " k=" + std::to_string(k));
            }
        }
    }

    const Int f0 = rank1_update_det(a, u, u, Int(0));
    const Int f1 = rank1_update_det(a, u, u, Int(1));
    const Int f2 = rank1_update_det(a, u, u, Int(2));
    const Int slope = f1 - f0;  // = u^T adj(A) u
    if (f2 - f1 != slope) {
        throw theorem_violation("d_poly: evaluations at w=0,1,2 not collinear for p=" +
                                std::to_string(p) + " delta=" + std::to_string(delta) +
                                " (f0=" + f0.str() + " f1=" + f1.str() + " f2=" + f2.str() + ")");
    }
    return LinearPoly{Int(0), slope};
}

/// Per-prime result bundle around the odd integer c_p.
struct CpRecord {
    std::int64_t p = 0;
    int residue_class = 0;            // p mod 4
    Int det_A1;                       // always defined
    std::optional<Int> det_A2;        // p = 3 (mod 4)
    std::optional<Int> j_minus_1;     // p = 1 (mod 4)
    Int half_sum;                     // sum_{k=1}^{(p-1)/2} (k/p)
    Int c_p;                          // positive odd
    int jacobi_p_cp = 0;              // Jacobi symbol (p / c_p)
    std::optional<Int> class_number;  // p = 3 (mod 4), p > 3
    std::optional<Int> pfaffian_A2;   // consistency witness, p = 3 (mod 4)
};

/// Extracts c_p for an odd prime p:
///   p = 1 (mod 4): c_p = sqrt(-|A_1| / J(-1)), the division exact;
///   p = 3 (mod 4): c_p = sqrt(|A_2|), cross-checked against |Pf(A_2)|.
/// Both square roots must exist and be odd; anything else aborts loudly with
/// the witnessing values, since these properties are proved.
inline CpRecord compute_cp(const PrimeContext& ctx) {
    CpRecord rec;
    rec.p = ctx.p();
    rec.residue_class = ctx.residue_class();
    rec.det_A1 = det(build_A(ctx, 1)).value;
    rec.half_sum = half_range_character_sum(ctx);

    if (rec.residue_class == 1) {
        rec.j_minus_1 = jacobsthal_sum(ctx, -1);
        Int q = exact_div(-rec.det_A1, *rec.j_minus_1, "compute_cp: -|A_1| / J(-1)");
        auto root = integer_sqrt_exact(q);
        if (!root) {
            throw theorem_violation("compute_cp: -|A_1|/J(-1) not a perfect square at p=" +
                                    std::to_string(rec.p) + ": " + q.str());
        }
        rec.c_p = *root;
    } else {
        const IntMatrix a2 = build_A(ctx, 2);
        rec.det_A2 = det(a2).value;
        rec.pfaffian_A2 = pfaffian(a2);
        if (*rec.pfaffian_A2 * *rec.pfaffian_A2 != *rec.det_A2) {
            throw theorem_violation("compute_cp: Pf(A_2)^2 != |A_2| at p=" + std::to_string(rec.p) +
                                    " (Pf=" + rec.pfaffian_A2->str() +
                                    ", det=" + rec.det_A2->str() + ")");
        }
        auto root = integer_sqrt_exact(*rec.det_A2);
        if (!root) {
            throw theorem_violation("compute_cp: |A_2| not a perfect square at p=" +
                                    std::to_string(rec.p) + ": " + rec.det_A2->str());
        }
        rec.c_p = *root;  // positive root; the Pfaffian's sign is only a witness
        if (rec.p > 3) rec.class_number = class_number_from_sum(ctx);
    }

    if (rec.c_p <= 0 || !is_odd(rec.c_p)) {
        throw theorem_violation("compute_cp: c_p not a positive odd integer at p=" +
                                std::to_string(rec.p) + ": c_p=" + rec.c_p.str());
    }
    rec.jacobi_p_cp = jacobi_symbol(Int(rec.p), rec.c_p);
    return rec;
}

/// |x + ((j^2+k^2)/p) + ((j^2-k^2)/p)|_{1<=j,k<=(p-1)/2} as constant + slope*x,
/// for p = 3 (mod 4). The x term is the all-ones rank-1 perturbation, so the
/// determinant is linear in x; evaluations at x = 0, 1, 2 must be collinear.
inline LinearPoly liwu_poly(const PrimeContext& ctx) {
    if (ctx.residue_class() != 3) {
        throw std::invalid_argument("liwu_poly: requires p = 3 (mod 4)");
    }
    const std::int64_t p = ctx.p();
    const std::size_t n = static_cast<std::size_t>(ctx.half());
    IntMatrix base(n, n);
    for (std::int64_t j = 1; j <= ctx.half(); ++j) {
        const std::int64_t j2 = j * j % p;
        for (std::int64_t k = 1; k <= ctx.half(); ++k) {
            const std::int64_t k2 = k * k % p;
            std::int64_t s = (j2 + k2) % p;
            std::int64_t d = (j2 - k2) % p;
            if (d < 0) d += p;
            base(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1)) =
                ctx.chi_at(s) + ctx.chi_at(d);
        }
    }
    const IntVector ones = IntVector::ones(n);
    const Int f0 = rank1_update_det(base, ones, ones, Int(0));
    const Int f1 = rank1_update_det(base, ones, ones, Int(1));
    const Int f2 = rank1_update_det(base, ones, ones, Int(2));
    if (f2 - f1 != f1 - f0) {
        throw theorem_violation("liwu_poly: evaluations at x=0,1,2 not collinear for p=" +
                                std::to_string(p) + " (f0=" + f0.str() + " f1=" + f1.str() +
                                " f2=" + f2.str() + ")");
    }
    return LinearPoly{f0, f1 - f0};
}

}  // namespace legdet
