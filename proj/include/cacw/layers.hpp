#pragma once

#include "cacw/number_theory.hpp"

namespace cacw {

/// Position of c in the p-ary layer decomposition of Z*_{p^r}: the index t
/// of its lowest non-zero digit and that digit's value c_t.
struct LayerPosition {
    int layer = 0;
    Int digit = 0;
    friend bool operator==(const LayerPosition&, const LayerPosition&) = default;
};

/// Layer structure of Z*_{p^r}. Layer t holds the elements whose lowest
/// non-zero p-ary digit sits at position t; it has (p-1)p^(r-t-1) members.
class LayerView {
public:
    LayerView(Int prime, int exponent) : prime_(prime), exponent_(exponent) {
        detail::require_odd_prime(prime);
        detail::require(exponent >= 1, "LayerView: exponent must be >= 1");
        modulus_ = ipow(prime, exponent);
    }

    Int prime() const { return prime_; }
    int exponent() const { return exponent_; }
    Int modulus() const { return modulus_; }

    Int layer_size(int t) const {
        detail::require(t >= 0 && t < exponent_, "LayerView: layer out of range");
        return (prime_ - 1) * ipow(prime_, exponent_ - t - 1);
    }

    LayerPosition locate(Int c) const {
        c = mod(c, modulus_);
        detail::require(c != 0, "layer_of: 0 has no layer");
        LayerPosition pos;
        while (c % prime_ == 0) {
            c /= prime_;
            ++pos.layer;
        }
        pos.digit = c % prime_;
        return pos;
    }

    /// All members of layer t, ascending.
    ResidueSet layer(int t) const {
        std::vector<Int> out;
        for (Int c = 1; c < modulus_; ++c)
            if (locate(c).layer == t) out.push_back(c);
        return ResidueSet(modulus_, std::move(out));
    }

private:
    Int prime_;
    int exponent_;
    Int modulus_ = 1;
};

inline LayerPosition layer_of(Int c, const LayerView& view) { return view.locate(c); }

/// Lifts a digit set A ⊆ Z*_p to the elements of Z*_{p^r} whose lowest
/// non-zero p-ary digit lies in A. Size is |A|(p^r - 1)/(p - 1).
inline ResidueSet lift_layers(const ResidueSet& digits, Int p, int r) {
    detail::require_odd_prime(p);
    detail::require(r >= 1, "lift_layers: exponent must be >= 1");
    detail::require(digits.modulus() == p, "lift_layers: digit set must live in Z_p");
    detail::require(!digits.empty(), "lift_layers: digit set is empty");
    detail::require(!digits.contains(0), "lift_layers: digit set contains 0");
    const Int q = ipow(p, r);
    std::vector<Int> out;
    for (int t = 0; t < r; ++t) {
        const Int scale = ipow(p, t);
        const Int upper = ipow(p, r - t - 1);
        for (Int d : digits)
            for (Int k = 0; k < upper; ++k) out.push_back(scale * (d + p * k));
    }
    return ResidueSet(q, std::move(out));
}

}  // namespace cacw
