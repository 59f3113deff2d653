#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "legdet/integer.hpp"
#include "legdet/matrix.hpp"
#include "legdet/modarith.hpp"

namespace legdet {

enum class DetAlgorithm { bareiss, multimodular };

struct DetResult {
    Int value;
    DetAlgorithm algorithm;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Every interior
/// division is exact; the 0x0 determinant is 1.
inline DetResult det_bareiss(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det_bareiss: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return {Int(1), DetAlgorithm::bareiss};

    IntMatrix w = m;
    Int prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && w(pivot, k) == 0) ++pivot;
        if (pivot == n) return {Int(0), DetAlgorithm::bareiss};
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) w(k, j).swap(w(pivot, j));
            negate = !negate;
        }
        const Int& pv = w(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                w(i, j) = (w(i, j) * pv - w(i, k) * w(k, j)) / prev;
            }
            w(i, k) = 0;
        }
        prev = pv;
    }
    Int det = w(n - 1, n - 1);
    return {negate ? -det : det, DetAlgorithm::bareiss};
}

namespace detail {

/// Hadamard bound on |det|: product of row Euclidean norms, computed on
/// squared quantities with one integer square root at the end.
inline Int hadamard_bound(const IntMatrix& m) {
    const std::size_t n = m.rows();
    Int prod_sq = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < n; ++j) row += m(i, j) * m(i, j);
        if (row == 0) return 0;
        prod_sq *= row;
    }
    Int h = boost::multiprecision::sqrt(prod_sq);
    if (h * h < prod_sq) ++h;
    return h;
}

inline u64 residue_of(const Int& x, u64 q) {
    Int r = x % q;
    if (r < 0) r += q;
    return static_cast<u64>(r);
}

}  // namespace detail

/// Exact determinant by residues mod word-sized primes plus CRT
/// reconstruction in the symmetric range; the modulus product exceeds
/// 2*Hadamard+1. Residues are combined in a fixed pool order, so the result
/// is deterministic.
inline DetResult det_multimodular(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det_multimodular: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return {Int(1), DetAlgorithm::multimodular};

    const Int bound = detail::hadamard_bound(m);
    if (bound == 0) return {Int(0), DetAlgorithm::multimodular};
    const Int target = 2 * bound + 1;

    const auto& pool = detail::modulus_pool();
    std::vector<detail::u64> moduli;
    Int prod = 1;
    for (detail::u64 q : pool) {
        if (prod > target) break;
        moduli.push_back(q);
        prod *= q;
    }
    if (prod <= target) {
        throw std::length_error("det_multimodular: matrix exceeds the modulus pool capacity");
    }

    // Residues in fixed modulus order, then incremental CRT (Garner).
    Int result = 0;
    Int partial = 1;
    std::vector<detail::u64> work(n * n);
    for (std::size_t mi = 0; mi < moduli.size(); ++mi) {
        const detail::Montgomery mont(moduli[mi]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                work[i * n + j] = mont.to_mont(detail::residue_of(m(i, j), mont.modulus()));
        detail::u64 r = detail::mod_det(work, n, mont);
        if (mi == 0) {
            result = r;
            partial = mont.modulus();
            continue;
        }
        detail::u64 cur = detail::residue_of(result, mont.modulus());
        detail::u64 diff = mont.sub(r, cur);
        detail::u64 pinv = mont.inv(mont.to_mont(detail::residue_of(partial, mont.modulus())));
        detail::u64 t = mont.from_mont(mont.mul(mont.to_mont(diff), pinv));
        result += partial * t;
        partial *= mont.modulus();
    }
    if (2 * result > partial) result -= partial;
    return {result, DetAlgorithm::multimodular};
}

/// Dispatching determinant: Bareiss up to order 8, multimodular beyond. Both
/// paths stay available for cross-checks.
inline DetResult det(const IntMatrix& m) {
    return m.rows() > 8 ? det_multimodular(m) : det_bareiss(m);
}

/// Exact Pfaffian of an even-order skew-symmetric matrix by fraction-free
/// condensation; Pf([[0,a],[-a,0]]) = a and Pf of the 0x0 matrix is 1.
/// Satisfies pfaffian(M)^2 = det(M).
inline Int pfaffian(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("pfaffian: matrix not square");
    const std::size_t n = m.rows();
    if (n % 2 != 0) throw std::invalid_argument("pfaffian: order must be even");
    if (!m.is_skew_symmetric()) throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
    if (n == 0) return 1;

    IntMatrix w = m;
    Int prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 2 < n; k += 2) {
        // Secure a nonzero pivot at (k, k+1) by swapping a later index pair in;
        // each swap of two indices flips the Pfaffian's sign.
        if (w(k, k + 1) == 0) {
            std::size_t s = k + 2;
            while (s < n && w(k, s) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) w(k + 1, j).swap(w(s, j));
            for (std::size_t i = 0; i < n; ++i) w(i, k + 1).swap(w(i, s));
            negate = !negate;
        }
        const Int& pv = w(k, k + 1);
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                // Division by the previous pivot is exact (Pfaffian analogue
                // of the Sylvester identity for bordered minors).
                w(i, j) = (w(i, j) * pv + w(k + 1, i) * w(k, j) - w(k, i) * w(k + 1, j)) / prev;
                w(j, i) = -w(i, j);
            }
        }
        prev = pv;
    }
    Int pf = w(n - 2, n - 1);
    return negate ? -pf : pf;
}

/// det(M + w*u*v^T), formed explicitly and evaluated with the dispatching
/// determinant. Linear in w: det(M + w u v^T) = det(M) + w * v^T adj(M) u.
inline Int rank1_update_det(const IntMatrix& m, const IntVector& u, const IntVector& v,
                            const Int& w) {
    if (!m.is_square() || m.rows() != u.size() || m.cols() != v.size()) {
        throw std::invalid_argument("rank1_update_det: dimension mismatch");
    }
    return det(add_rank_one(m, u, v, w)).value;
}

/// u^T adj(M) u, via two determinant evaluations. Valid even when det(M) = 0.
inline Int adjugate_quadratic_form(const IntMatrix& m, const IntVector& u) {
    if (!m.is_square() || m.rows() != u.size()) {
        throw std::invalid_argument("adjugate_quadratic_form: dimension mismatch");
    }
    return rank1_update_det(m, u, u, Int(1)) - det(m).value;
}

inline constexpr std::size_t kDefaultAdjugateCap = 40;

/// Full adjugate by explicit cofactors, transposed; M * adj(M) = det(M) * I.
/// Cofactor cost is O(n^5), so the order is capped.
inline IntMatrix adjugate_full(const IntMatrix& m, std::size_t order_cap = kDefaultAdjugateCap) {
    if (!m.is_square()) throw std::invalid_argument("adjugate_full: matrix not square");
    const std::size_t n = m.rows();
    if (n > order_cap) {
        throw std::invalid_argument("adjugate_full: order " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(order_cap));
    }
    IntMatrix adj(n, n);
    if (n == 0) return adj;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(mr, mc) = m(r, c);
                    ++mc;
                }
                ++mr;
            }
            Int cof = det(minor).value;
            if ((i + j) % 2 != 0) cof = -cof;
            adj(j, i) = cof;  // transpose of the cofactor matrix
        }
    }
    return adj;
}

}  // namespace legdet
