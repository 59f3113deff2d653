#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "legdet/integer.hpp"

namespace legdet {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs. The witness set
/// {2,...,37} is known to be sound for every n < 3.3e24.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_odd_prime(std::int64_t p) {
    return p > 2 && (p & 1) != 0 && is_prime_u64(static_cast<std::uint64_t>(p));
}

/// Jacobi symbol (a/n) for odd n >= 1, by the binary reciprocity algorithm.
/// Equals the Legendre symbol when n is prime; jacobi_symbol(a, 1) == 1.
inline int jacobi_symbol(Int a, Int n) {
    if (n <= 0 || !is_odd(n)) {
        throw std::invalid_argument("jacobi_symbol: modulus must be positive and odd");
    }
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (!is_odd(a)) {
            a >>= 1;
            unsigned m8 = static_cast<unsigned>(n & 7);
            if (m8 == 3 || m8 == 5) result = -result;
        }
        a.swap(n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Legendre symbol (a/p) for an odd prime p: 0 if p | a, +1 on nonzero
/// quadratic residues, -1 otherwise. p is checked with deterministic
/// Miller-Rabin; a silent composite would poison every downstream check.
inline int legendre_symbol(const Int& a, std::int64_t p) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("legendre_symbol: modulus is not an odd prime");
    }
    return jacobi_symbol(a, Int(p));
}

/// An odd prime together with its full Legendre character table.
/// chi[a] = (a/p) for a in [0, p); immutable after construction and safe to
/// share across threads.
class PrimeContext {
public:
    explicit PrimeContext(std::int64_t p) : p_(p) {
        if (!is_odd_prime(p)) {
            throw std::invalid_argument("PrimeContext: not an odd prime: " + std::to_string(p));
        }
        half_ = (p - 1) / 2;
        chi_.assign(static_cast<std::size_t>(p), -1);
        chi_[0] = 0;
        for (std::int64_t k = 1; k <= half_; ++k) {
            std::uint64_t sq = detail::mulmod_u64(static_cast<std::uint64_t>(k),
                                                  static_cast<std::uint64_t>(k),
                                                  static_cast<std::uint64_t>(p));
            chi_[static_cast<std::size_t>(sq)] = 1;
        }
    }

    std::int64_t p() const { return p_; }
    std::int64_t half() const { return half_; }
    int residue_class() const { return static_cast<int>(p_ % 4); }

    /// chi at a residue already reduced into [0, p).
    int chi_at(std::int64_t r) const { return chi_[static_cast<std::size_t>(r)]; }

    /// chi at an arbitrary integer (reduced mod p).
    int chi(std::int64_t a) const {
        std::int64_t r = a % p_;
        if (r < 0) r += p_;
        return chi_[static_cast<std::size_t>(r)];
    }

private:
    std::int64_t p_;
    std::int64_t half_;
    std::vector<signed char> chi_;
};

/// Jacobsthal sum J(k) = sum_{x=1}^{(p-1)/2} ((x(x^2+k))/p).
/// For p = 1 (mod 4) this also equals half the full-range sum.
inline Int jacobsthal_sum(const PrimeContext& ctx, std::int64_t k) {
    const std::int64_t p = ctx.p();
    std::int64_t kr = k % p;
    if (kr < 0) kr += p;
    std::int64_t sum = 0;
    for (std::int64_t x = 1; x <= ctx.half(); ++x) {
        std::uint64_t x2 = detail::mulmod_u64(static_cast<std::uint64_t>(x),
                                              static_cast<std::uint64_t>(x),
                                              static_cast<std::uint64_t>(p));
        std::uint64_t t = (x2 + static_cast<std::uint64_t>(kr)) % static_cast<std::uint64_t>(p);
        t = detail::mulmod_u64(static_cast<std::uint64_t>(x), t, static_cast<std::uint64_t>(p));
        sum += ctx.chi_at(static_cast<std::int64_t>(t));
    }
    return Int(sum);
}

/// Writes p = a^2 + b^2 with a = 1 (mod 4) and b >= 0. Requires p = 1 (mod 4).
/// The congruence on a pins its sign; b is even and its sign is never used.
inline std::pair<Int, Int> two_squares_decomposition(std::int64_t p) {
    if (!is_odd_prime(p) || p % 4 != 1) {
        throw std::invalid_argument("two_squares_decomposition: requires a prime p = 1 (mod 4)");
    }
    for (std::int64_t b = 0; b * b <= p; ++b) {
        Int rest = Int(p) - Int(b) * b;
        if (auto a = integer_sqrt_exact(rest)) {
            // a odd, b even for p = 1 (mod 4); flip a's sign to force a = 1 (mod 4).
            if (!is_odd(*a)) continue;
            Int av = *a;
            if ((av & 3) != 1) av = -av;
            return {av, Int(b)};
        }
    }
    throw theorem_violation("two_squares_decomposition: no representation found for p=" +
                            std::to_string(p));
}

/// sum_{k=1}^{(p-1)/2} (k/p). Zero when p = 1 (mod 4).
inline Int half_range_character_sum(const PrimeContext& ctx) {
    std::int64_t sum = 0;
    for (std::int64_t k = 1; k <= ctx.half(); ++k) sum += ctx.chi_at(k);
    return Int(sum);
}

/// Class number h(-p) of Q(sqrt(-p)) for p = 3 (mod 4), p > 3, via
/// sum_{k=1}^{(p-1)/2} (k/p) = (2 - (2/p)) h(-p). The division is exact;
/// anything else is an implementation bug.
inline Int class_number_from_sum(const PrimeContext& ctx) {
    if (ctx.p() % 4 != 3 || ctx.p() <= 3) {
        throw std::invalid_argument("class_number_from_sum: requires p = 3 (mod 4), p > 3");
    }
    Int sum = half_range_character_sum(ctx);
    Int divisor = Int(2 - ctx.chi_at(2));
    return exact_div(sum, divisor, "class_number_from_sum");
}

/// Independent h(-p) oracle: counts reduced primitive forms ax^2+bxy+cy^2 of
/// discriminant -p, i.e. |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
inline Int class_number_oracle(std::int64_t p) {
    if (!is_odd_prime(p) || p % 4 != 3 || p <= 3) {
        throw std::invalid_argument("class_number_oracle: requires a prime p = 3 (mod 4), p > 3");
    }
    std::int64_t count = 0;
    // b^2 - 4ac = -p forces b odd; b <= a <= c gives 4b^2 <= 4ac = b^2 + p, so 3b^2 <= p.
    for (std::int64_t b = 1; 3 * b * b <= p; b += 2) {
        std::int64_t n4 = b * b + p;
        if (n4 % 4 != 0) continue;
        std::int64_t n = n4 / 4;  // = a*c
        for (std::int64_t a = b; a * a <= n; ++a) {
            if (n % a != 0) continue;
            std::int64_t c = n / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            // (a, b, c) always counts; (a, -b, c) only when not on the boundary.
            count += (a == b || a == c) ? 1 : 2;
        }
    }
    return Int(count);
}

/// Derangement number D_n = sum_{k=0}^{n} (-1)^k n!/k!, exact.
inline Int derangement_count(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("derangement_count: negative n");
    // D_0 = 1, D_n = n*D_{n-1} + (-1)^n.
    Int d = 1;
    for (std::int64_t i = 1; i <= n; ++i) {
        d = d * i + ((i & 1) ? -1 : 1);
    }
    return d;
}

/// All odd primes p with lo <= p <= hi, ascending. Plain sieve; desk scale.
inline std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("primes_in_range: lo > hi");
    std::vector<std::int64_t> out;
    if (hi < 3) return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (std::int64_t i = 2; i * i <= hi; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        for (std::int64_t j = i * i; j <= hi; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    for (std::int64_t p = std::max<std::int64_t>(lo, 3); p <= hi; ++p) {
        if ((p & 1) && !composite[static_cast<std::size_t>(p)]) out.push_back(p);
    }
    return out;
}

}  // namespace legdet
