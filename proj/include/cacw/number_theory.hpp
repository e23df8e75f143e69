#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cacw/residue_set.hpp"

namespace cacw {

inline Int mul_mod(Int a, Int b, Int m) {
    return static_cast<Int>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

inline Int pow_mod(Int base, Int exp, Int m) {
    Int result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline Int ipow(Int base, int exp) {
    Int r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

inline bool is_prime(Int n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

struct PrimePower {
    Int prime = 2;
    int exponent = 1;

    Int value() const { return ipow(prime, exponent); }
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes ascending. factorize(1) is empty.
inline std::vector<PrimePower> factorize(Int n) {
    detail::require(n >= 1, "factorize: n must be positive");
    std::vector<PrimePower> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

/// True when every prime factor of n is >= bound (vacuously for n = 1).
inline bool prime_factors_at_least(Int n, Int bound) {
    for (const auto& pp : factorize(n))
        if (pp.prime < bound) return false;
    return true;
}

inline Int smallest_prime_factor(Int n) {
    const auto f = factorize(n);
    return f.empty() ? 0 : f.front().prime;
}

/// Number of positive divisors.
inline Int tau(Int n) {
    detail::require(n >= 1, "tau: n must be positive");
    Int count = 1;
    for (const auto& pp : factorize(n)) count *= pp.exponent + 1;
    return count;
}

namespace detail {
inline void require_odd_prime(Int p) {
    require(p > 2 && is_prime(p), "p=" + std::to_string(p) + " is not an odd prime");
}
}  // namespace detail

/// Legendre symbol (a/p) by Euler's criterion.
inline int legendre(Int a, Int p) {
    detail::require_odd_prime(p);
    const Int r = pow_mod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

/// Non-zero squares modulo an odd prime.
inline ResidueSet quadratic_residues(Int p) {
    detail::require_odd_prime(p);
    std::vector<Int> squares;
    for (Int x = 1; x < p; ++x) squares.push_back(mul_mod(x, x, p));
    return ResidueSet(p, std::move(squares));
}

/// Multiplicative inverse of a modulo m; requires gcd(a, m) = 1.
inline Int inverse_mod(Int a, Int m) {
    Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const Int q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    detail::require(old_r == 1, "inverse_mod: " + std::to_string(a) + " is not a unit mod " +
                                    std::to_string(m));
    return mod(old_s, m);
}

/// Units of Z_n in ascending order.
inline std::vector<Int> units(Int n) {
    std::vector<Int> out;
    for (Int x = 1; x < n; ++x)
        if (std::gcd(x, n) == 1) out.push_back(x);
    if (n == 1) out.push_back(0);
    return out;
}

}  // namespace cacw
