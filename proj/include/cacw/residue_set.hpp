#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cacw/error.hpp"

namespace cacw {

using Int = std::int64_t;

/// Least non-negative residue of a modulo m (m > 0).
constexpr Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

/// A subset of Z_L stored as a sorted, duplicate-free list of residues.
class ResidueSet {
public:
    using const_iterator = std::vector<Int>::const_iterator;

    ResidueSet() = default;

    explicit ResidueSet(Int modulus) : modulus_(modulus) {
        detail::require(modulus >= 1, "ResidueSet: modulus must be positive");
    }

    /// Elements are reduced modulo L, sorted and deduplicated.
    ResidueSet(Int modulus, std::vector<Int> elements) : ResidueSet(modulus) {
        for (auto& e : elements) e = mod(e, modulus_);
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        elements_ = std::move(elements);
    }

    ResidueSet(Int modulus, std::initializer_list<Int> elements)
        : ResidueSet(modulus, std::vector<Int>(elements)) {}

    /// Builds a set from a membership table of length L.
    static ResidueSet from_indicator(const std::vector<char>& present) {
        ResidueSet s(static_cast<Int>(present.size()));
        for (std::size_t i = 0; i < present.size(); ++i)
            if (present[i]) s.elements_.push_back(static_cast<Int>(i));
        return s;
    }

    static ResidueSet full(Int modulus) {
        ResidueSet s(modulus);
        s.elements_.resize(static_cast<std::size_t>(modulus));
        std::iota(s.elements_.begin(), s.elements_.end(), Int{0});
        return s;
    }

    /// Z*_L, the non-zero residues.
    static ResidueSet nonzero(Int modulus) {
        ResidueSet s(modulus);
        for (Int x = 1; x < modulus; ++x) s.elements_.push_back(x);
        return s;
    }

    Int modulus() const { return modulus_; }
    const std::vector<Int>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const_iterator begin() const { return elements_.begin(); }
    const_iterator end() const { return elements_.end(); }
    Int operator[](std::size_t i) const { return elements_[i]; }

    bool contains(Int x) const {
        return std::binary_search(elements_.begin(), elements_.end(), mod(x, modulus_));
    }

    std::vector<char> indicator() const {
        std::vector<char> present(static_cast<std::size_t>(modulus_), 0);
        for (Int e : elements_) present[static_cast<std::size_t>(e)] = 1;
        return present;
    }

    /// x + S
    ResidueSet translate(Int x) const {
        std::vector<Int> out(elements_);
        for (auto& e : out) e += x;
        return ResidueSet(modulus_, std::move(out));
    }

    /// -S
    ResidueSet negate() const { return scale(-1); }

    /// c * S (not necessarily the same size when gcd(c, L) > 1)
    ResidueSet scale(Int c) const {
        std::vector<Int> out(elements_);
        for (auto& e : out) e = mod(e * mod(c, modulus_), modulus_);
        return ResidueSet(modulus_, std::move(out));
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(elements_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

private:
    Int modulus_ = 1;
    std::vector<Int> elements_;
};

namespace detail {
inline void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
    require(a.modulus() == b.modulus(), "modulus mismatch: " + std::to_string(a.modulus()) +
                                            " vs " + std::to_string(b.modulus()));
}
}  // namespace detail

inline ResidueSet set_union(const ResidueSet& a, const ResidueSet& b) {
    detail::require_same_modulus(a, b);
    std::vector<Int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ResidueSet(a.modulus(), std::move(out));
}

inline ResidueSet set_intersection(const ResidueSet& a, const ResidueSet& b) {
    detail::require_same_modulus(a, b);
    std::vector<Int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ResidueSet(a.modulus(), std::move(out));
}

/// Elements of a that are not in b.
inline ResidueSet set_minus(const ResidueSet& a, const ResidueSet& b) {
    detail::require_same_modulus(a, b);
    std::vector<Int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ResidueSet(a.modulus(), std::move(out));
}

inline bool disjoint(const ResidueSet& a, const ResidueSet& b) {
    return set_intersection(a, b).empty();
}

/// A + B = {a + b}
inline ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
    detail::require_same_modulus(a, b);
    const Int L = a.modulus();
    std::vector<char> present(static_cast<std::size_t>(L), 0);
    for (Int x : a)
        for (Int y : b) present[static_cast<std::size_t>(mod(x + y, L))] = 1;
    return ResidueSet::from_indicator(present);
}

/// A - B = {a - b}, containing 0 whenever A and B meet.
inline ResidueSet signed_diff(const ResidueSet& a, const ResidueSet& b) {
    detail::require_same_modulus(a, b);
    const Int L = a.modulus();
    std::vector<char> present(static_cast<std::size_t>(L), 0);
    for (Int x : a)
        for (Int y : b) present[static_cast<std::size_t>(mod(x - y, L))] = 1;
    return ResidueSet::from_indicator(present);
}

/// d(S) = S - S
inline ResidueSet full_diff(const ResidueSet& s) { return signed_diff(s, s); }

/// d*(S), the non-zero differences of S.
inline ResidueSet diff_set(const ResidueSet& s) {
    const Int L = s.modulus();
    std::vector<char> present(static_cast<std::size_t>(L), 0);
    for (Int x : s)
        for (Int y : s)
            if (x != y) present[static_cast<std::size_t>(mod(x - y, L))] = 1;
    return ResidueSet::from_indicator(present);
}

inline std::vector<Int> divisors(Int n) {
    detail::require(n >= 1, "divisors: n must be positive");
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// The subgroup of Z_L of order d, i.e. the multiples of L/d.
class SubgroupDescriptor {
public:
    SubgroupDescriptor(Int order, Int modulus) : modulus_(modulus), order_(order) {
        detail::require(modulus >= 1, "subgroup: modulus must be positive");
        detail::require(order >= 1 && modulus % order == 0,
                        "subgroup: order " + std::to_string(order) + " does not divide " +
                            std::to_string(modulus));
    }

    Int modulus() const { return modulus_; }
    Int order() const { return order_; }
    /// Generator L/d; every element is a multiple of it.
    Int step() const { return modulus_ / order_; }
    bool contains(Int x) const { return mod(x, modulus_) % step() == 0; }

    ResidueSet elements() const {
        std::vector<Int> out;
        for (Int k = 0; k < order_; ++k) out.push_back(k * step());
        return ResidueSet(modulus_, std::move(out));
    }

    friend bool operator==(const SubgroupDescriptor&, const SubgroupDescriptor&) = default;

private:
    Int modulus_;
    Int order_;
};

inline SubgroupDescriptor subgroup_of_order(Int d, Int modulus) {
    return SubgroupDescriptor(d, modulus);
}

/// H(T) = {h : h + T = T}. Tries the subgroups of Z_L from largest to
/// smallest; the first one whose generator fixes T is the stabilizer.
inline SubgroupDescriptor stabilizer(const ResidueSet& t) {
    detail::require(!t.empty(), "stabilizer: empty set");
    const Int L = t.modulus();
    const auto present = t.indicator();
    const auto divs = divisors(L);
    for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
        const Int d = *it;
        if (static_cast<Int>(t.size()) % d != 0) continue;
        const Int step = L / d;
        const bool fixed = std::all_of(t.begin(), t.end(), [&](Int e) {
            return present[static_cast<std::size_t>(mod(e + step, L))] != 0;
        });
        if (fixed) return SubgroupDescriptor(d, L);
    }
    return SubgroupDescriptor(1, L);
}

/// A + H for a subgroup H.
inline ResidueSet add_subgroup(const ResidueSet& a, const SubgroupDescriptor& h) {
    return sumset(a, h.elements());
}

struct KneserReport {
    SubgroupDescriptor stabilizer{1, 1};
    Int sumsetSize = 0;
    Int strongRhs = 0;  ///< |A+H| + |B+H| - |H|
    Int weakRhs = 0;    ///< |A| + |B| - |H|
    bool strongHolds = false;
    bool weakHolds = false;
};

/// Evaluates both sides of Kneser's inequality with H = H(A+B).
inline KneserReport kneser_check(const ResidueSet& a, const ResidueSet& b) {
    detail::require(!a.empty() && !b.empty(), "kneser_check: empty input");
    detail::require_same_modulus(a, b);
    const ResidueSet ab = sumset(a, b);
    KneserReport r;
    r.stabilizer = stabilizer(ab);
    const Int h = r.stabilizer.order();
    r.sumsetSize = static_cast<Int>(ab.size());
    r.strongRhs = static_cast<Int>(add_subgroup(a, r.stabilizer).size() +
                                   add_subgroup(b, r.stabilizer).size()) - h;
    r.weakRhs = static_cast<Int>(a.size() + b.size()) - h;
    r.strongHolds = r.sumsetSize >= r.strongRhs;
    r.weakHolds = r.sumsetSize >= r.weakRhs;
    return r;
}

/// |A - A| <= 2|A| - 2
inline bool is_exceptional_set(const ResidueSet& a) {
    detail::require(!a.empty(), "is_exceptional_set: empty set");
    return static_cast<Int>(full_diff(a).size()) <= 2 * static_cast<Int>(a.size()) - 2;
}

/// |A - B| <= |A| + |B| - 2
inline bool is_exceptional_pair(const ResidueSet& a, const ResidueSet& b) {
    detail::require(!a.empty() && !b.empty(), "is_exceptional_pair: empty input");
    detail::require_same_modulus(a, b);
    return static_cast<Int>(signed_diff(a, b).size()) <=
           static_cast<Int>(a.size() + b.size()) - 2;
}

/// Witness of an exceptional pattern: first == second for an exceptional
/// channel, first < second for an exceptional pair. Channels are 1-indexed.
struct ExceptionalWitness {
    int first = 0;
    int second = 0;
    friend bool operator==(const ExceptionalWitness&, const ExceptionalWitness&) = default;
};

struct ExceptionalityReport {
    bool verdict = false;
    std::optional<ExceptionalWitness> witness;
};

/// Exceptionality of a multichannel pattern given its per-channel slot sets.
/// Candidates are scanned in lexicographic order (1,1),(1,2),...,(2,2),...;
/// empty channels take part in neither case.
inline ExceptionalityReport is_exceptional_pattern(std::span<const ResidueSet> channels) {
    const int m = static_cast<int>(channels.size());
    for (int i = 0; i < m; ++i) {
        if (channels[i].empty()) continue;
        if (is_exceptional_set(channels[i])) return {true, ExceptionalWitness{i + 1, i + 1}};
        for (int j = i + 1; j < m; ++j) {
            if (channels[j].empty()) continue;
            if (is_exceptional_pair(channels[i], channels[j]))
                return {true, ExceptionalWitness{i + 1, j + 1}};
        }
    }
    return {};
}

}  // namespace cacw
