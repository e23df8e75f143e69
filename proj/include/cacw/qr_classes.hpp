#pragma once

#include <string>
#include <vector>

#include "cacw/number_theory.hpp"
#include "cacw/single.hpp"

namespace cacw {

/// Published residue classes of primes p for which K((w-1)L', w) = (L'-1)/2
/// holds when every prime of L' lies in one of them.
struct QrClassList {
    int w;
    Int modulus;
    std::vector<Int> residues;  ///< as published, possibly negative
};

inline const std::vector<QrClassList>& published_qr_classes() {
    static const std::vector<QrClassList> table{
        {4, 8, {1, -1}},
        {5, 12, {-1}},
        {6, 24, {-1, -5}},
        {7, 40, {-1, -9}},
        {8, 120, {-1, -49}},
        {9, 420, {-1, 59, -109, -121, 131, -169}},
        {10, 280, {-1, -9, 31, -81, 111, -121}},
        {11, 168, {-1, -5, -25, 43, 47, 67}},
    };
    return table;
}

inline const QrClassList* qr_class_list(int w) {
    for (const auto& c : published_qr_classes())
        if (c.w == w) return &c;
    return nullptr;
}

inline bool in_published_class(const QrClassList& c, Int p) {
    for (Int r : c.residues)
        if (mod(p - r, c.modulus) == 0) return true;
    return false;
}

/// One odd prime p >= w, with the direct (Q1)/(Q2) verdict next to the
/// published class membership.
struct QrCheckRow {
    Int p;
    bool q1;
    bool q2;
    bool listed;  ///< p lies in a published class (false when w has no list)

    bool passes() const { return q1 && q2; }
    bool agrees() const { return passes() == listed; }
};

/// Direct evaluation for every odd prime p in [max(lo, w), hi].
inline std::vector<QrCheckRow> qr_check(int w, Int lo, Int hi) {
    detail::require(w >= 3, "qr_check: requires w >= 3");
    detail::require(lo <= hi, "qr_check: empty prime range");
    const QrClassList* cls = qr_class_list(w);
    std::vector<QrCheckRow> rows;
    for (Int p = std::max<Int>(lo, w); p <= hi; ++p) {
        if (p == 2 || !is_prime(p)) continue;
        const auto r = qr_conditions(w, p);
        rows.push_back({p, r.q1, r.q2Failures.empty(), cls && in_published_class(*cls, p)});
    }
    return rows;
}

/// Label for a row whose direct verdict differs from the published list.
inline std::string qr_discrepancy(const QrCheckRow& row) {
    if (row.agrees()) return {};
    if (row.listed) return row.q1 ? "paper-listed / fails direct Q2 check"
                                  : "paper-listed / fails direct Q1 check";
    return "passes direct check / not paper-listed";
}

}  // namespace cacw
