#pragma once

#include <cstdint>
#include <vector>

#include "legdet/numtheory.hpp"

namespace legdet::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Montgomery arithmetic mod an odd prime q < 2^62.
class Montgomery {
public:
    explicit Montgomery(u64 q) : q_(q) {
        // qinv_neg = -q^{-1} mod 2^64 by Newton iteration.
        u64 inv = q;
        for (int i = 0; i < 5; ++i) inv *= 2 - q * inv;
        qinv_neg_ = ~inv + 1;
        u64 r = static_cast<u64>((u128(1) << 64) % q);
        r2_ = static_cast<u64>(u128(r) * r % q);
        one_ = reduce(r2_);  // = 2^64 mod q, i.e. Montgomery form of 1
    }

    u64 modulus() const { return q_; }
    u64 one() const { return one_; }

    u64 reduce(u128 t) const {
        u64 m = static_cast<u64>(t) * qinv_neg_;
        u64 r = static_cast<u64>((t + u128(m) * q_) >> 64);
        return r >= q_ ? r - q_ : r;
    }

    u64 to_mont(u64 x) const { return reduce(u128(x) * r2_); }
    u64 from_mont(u64 x) const { return reduce(u128(x)); }

    u64 mul(u64 a, u64 b) const { return reduce(u128(a) * b); }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }

    u64 pow(u64 base, u64 exp) const {
        u64 r = one_;
        while (exp) {
            if (exp & 1) r = mul(r, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const { return pow(a, q_ - 2); }

private:
    u64 q_;
    u64 qinv_neg_;
    u64 r2_;
    u64 one_;
};

/// Fixed pool of word-sized primes just below 2^62, descending. Built once
/// (thread-safe magic static); consumers take a prefix until their CRT
/// product is large enough. 128 primes cover ~7900 bits of determinant,
/// far past desk scale.
inline const std::vector<u64>& modulus_pool() {
    static const std::vector<u64> pool = [] {
        std::vector<u64> v;
        v.reserve(128);
        for (u64 c = (u64(1) << 62) - 1; v.size() < 128; c -= 2) {
            if (is_prime_u64(c)) v.push_back(c);
        }
        return v;
    }();
    return pool;
}

/// Determinant of an n x n residue matrix (Montgomery form, row-major),
/// destroying its argument. Returns the residue of det mod q, in plain form.
inline u64 mod_det(std::vector<u64>& m, std::size_t n, const Montgomery& mont) {
    u64 det = mont.one();
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot * n + k] == 0) ++pivot;
        if (pivot == n) return 0;  // det = 0 mod q
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
            negate = !negate;
        }
        const u64 pv = m[k * n + k];
        det = mont.mul(det, pv);
        const u64 pv_inv = mont.inv(pv);
        for (std::size_t i = k + 1; i < n; ++i) {
            u64 f = mont.mul(m[i * n + k], pv_inv);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) {
                m[i * n + j] = mont.sub(m[i * n + j], mont.mul(f, m[k * n + j]));
            }
        }
    }
    u64 r = mont.from_mont(det);
    if (negate && r != 0) r = mont.modulus() - r;
    return r;
}

}  // namespace legdet::detail
