#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "cacw/number_theory.hpp"

namespace cacw {

/// Coordinates for Z_L ≅ Z_c × Z_{p1^r1} × ... × Z_{pn^rn}, L = c·∏pi^ri.
/// Component 0 is always the cofactor c (trivial when c = 1), followed by
/// the prime powers in ascending prime order.
class CrtSystem {
public:
    CrtSystem(Int cofactor, std::vector<PrimePower> primePowers)
        : cofactor_(cofactor), primePowers_(std::move(primePowers)) {
        detail::require(cofactor >= 1, "CrtSystem: cofactor must be positive");
        Int prev = 1;
        for (const auto& pp : primePowers_) {
            detail::require(is_prime(pp.prime),
                            "CrtSystem: " + std::to_string(pp.prime) + " is not prime");
            detail::require(pp.exponent >= 1, "CrtSystem: exponents must be >= 1");
            detail::require(pp.prime > prev, "CrtSystem: primes must be strictly increasing");
            prev = pp.prime;
        }
        moduli_.push_back(cofactor_);
        for (const auto& pp : primePowers_) moduli_.push_back(pp.value());
        tail_ = 1;
        for (std::size_t i = 1; i < moduli_.size(); ++i) tail_ *= moduli_[i];
        detail::require(std::gcd(cofactor_, tail_) == 1,
                        "CrtSystem: cofactor must be coprime to the prime powers");
        modulus_ = cofactor_ * tail_;
    }

    Int cofactor() const { return cofactor_; }
    /// L' = ∏ pi^ri
    Int tail_modulus() const { return tail_; }
    Int modulus() const { return modulus_; }
    const std::vector<PrimePower>& prime_powers() const { return primePowers_; }
    const std::vector<Int>& moduli() const { return moduli_; }

    Int encode(std::span<const Int> coords) const {
        detail::require(coords.size() == moduli_.size(), "crt_encode: wrong number of coordinates");
        Int x = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            detail::require(coords[i] >= 0 && coords[i] < moduli_[i],
                            "crt_encode: coordinate " + std::to_string(coords[i]) +
                                " out of range for modulus " + std::to_string(moduli_[i]));
            const Int mi = moduli_[i];
            const Int rest = modulus_ / mi;
            const Int basis = mul_mod(rest, inverse_mod(rest, mi), modulus_);
            x = mod(x + mul_mod(coords[i], basis, modulus_), modulus_);
        }
        return x;
    }

    std::vector<Int> decode(Int x) const {
        x = mod(x, modulus_);
        std::vector<Int> out;
        out.reserve(moduli_.size());
        for (Int m : moduli_) out.push_back(x % m);
        return out;
    }

    /// Element of Z_L with coordinates (z, x) in Z_c × Z_{L'}.
    Int encode_pair(Int z, Int x) const { return pair_encode(cofactor_, tail_, z, x); }

    /// Element of Z_{L'} with the given per-prime-power coordinates.
    Int encode_tail(std::span<const Int> coords) const {
        detail::require(coords.size() == primePowers_.size(),
                        "crt_encode: wrong number of prime-power coordinates");
        std::vector<Int> full;
        full.push_back(0);
        full.insert(full.end(), coords.begin(), coords.end());
        return mod(encode(full), tail_);
    }

    /// CRT for two coprime moduli a, b.
    static Int pair_encode(Int a, Int b, Int z, Int x) {
        detail::require(std::gcd(a, b) == 1, "pair_encode: moduli must be coprime");
        const Int L = a * b;
        if (a == 1) return mod(x, L);
        if (b == 1) return mod(z, L);
        const Int ea = mul_mod(b, inverse_mod(b, a), L);  // ≡1 mod a, ≡0 mod b
        const Int eb = mul_mod(a, inverse_mod(a, b), L);  // ≡0 mod a, ≡1 mod b
        return mod(mul_mod(mod(z, a), ea, L) + mul_mod(mod(x, b), eb, L), L);
    }

private:
    Int cofactor_;
    std::vector<PrimePower> primePowers_;
    std::vector<Int> moduli_;
    Int tail_ = 1;
    Int modulus_ = 1;
};

inline Int crt_encode(std::span<const Int> coords, const CrtSystem& system) {
    return system.encode(coords);
}

inline std::vector<Int> crt_decode(Int x, const CrtSystem& system) { return system.decode(x); }

}  // namespace cacw
