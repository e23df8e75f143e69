#pragma once

#include <array>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "cacw/codes.hpp"
#include "cacw/crt.hpp"
#include "cacw/single.hpp"

namespace cacw {

/// M×M grid of difference sets; entry (i,j) = S_i - S_j, with 0 removed on
/// the diagonal. Indices are 1-based.
class DifferenceArray {
public:
    DifferenceArray(int channels, Int L)
        : channels_(channels), entries_(static_cast<std::size_t>(channels * channels), ResidueSet(L)) {}

    int channels() const { return channels_; }
    const ResidueSet& at(int i, int j) const { return entries_[index(i, j)]; }
    ResidueSet& at(int i, int j) { return entries_[index(i, j)]; }

    bool all_empty() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.empty(); });
    }

    /// Entry-wise disjointness.
    friend bool disjoint(const DifferenceArray& a, const DifferenceArray& b) {
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            if (!disjoint(a.entries_[k], b.entries_[k])) return false;
        return true;
    }

    friend bool operator==(const DifferenceArray&, const DifferenceArray&) = default;

private:
    std::size_t index(int i, int j) const {
        detail::require(i >= 1 && i <= channels_ && j >= 1 && j <= channels_,
                        "DifferenceArray: index out of range");
        return static_cast<std::size_t>((i - 1) * channels_ + (j - 1));
    }

    int channels_;
    std::vector<ResidueSet> entries_;
};

inline DifferenceArray difference_array(const MultiCodeword& s) {
    const int m = s.channels();
    DifferenceArray d(m, s.length());
    const auto sets = s.channel_sets();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            d.at(i, j) = i == j ? diff_set(sets[i - 1]) : signed_diff(sets[i - 1], sets[j - 1]);
    return d;
}

inline ExceptionalityReport is_exceptional_pattern(const MultiCodeword& s) {
    const auto sets = s.channel_sets();
    return is_exceptional_pattern(std::span<const ResidueSet>(sets));
}

/// Disjoint-difference-array check. The reported conflict is the
/// lexicographically first (codeword pair, entry, residue); codeword
/// indices are 0-based.
inline VerificationReport verify_mccac(const MultiCode& code) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    const int m = code.M;
    const Int L = code.L;
    const std::size_t slots = static_cast<std::size_t>(m) * m * static_cast<std::size_t>(L);
    std::vector<std::array<std::size_t, 2>> owners(slots, {none, none});
    for (std::size_t k = 0; k < code.codewords.size(); ++k) {
        const auto& cw = code.codewords[k];
        detail::require(cw.channels() == m && cw.length() == L,
                        "verify_mccac: codeword shape differs from the code");
        const auto d = difference_array(cw);
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                for (Int r : d.at(i, j)) {
                    auto& o = owners[(static_cast<std::size_t>((i - 1) * m + (j - 1))) *
                                         static_cast<std::size_t>(L) +
                                     static_cast<std::size_t>(r)];
                    if (o[0] == none) o[0] = k;
                    else if (o[1] == none) o[1] = k;
                }
    }
    VerificationReport report;
    for (std::size_t idx = 0; idx < slots; ++idx) {
        const auto& o = owners[idx];
        if (o[1] == none) continue;
        const int entry = static_cast<int>(idx / static_cast<std::size_t>(L));
        Conflict c{o[0], o[1], entry / m + 1, entry % m + 1,
                   static_cast<Int>(idx % static_cast<std::size_t>(L))};
        if (!report.firstConflict ||
            std::tie(c.first, c.second) <
                std::tie(report.firstConflict->first, report.firstConflict->second))
            report.firstConflict = c;
    }
    report.ok = !report.firstConflict.has_value();
    return report;
}

/// At most one packet per slot in every codeword. Requires L >= max weight.
inline bool verify_amoppts(const MultiCode& code) {
    detail::require(code.L >= code.max_weight(),
                    "verify_amoppts: L=" + std::to_string(code.L) + " is smaller than the weight");
    for (const auto& cw : code.codewords) {
        std::vector<char> used(static_cast<std::size_t>(code.L), 0);
        for (const auto& c : cw.cells()) {
            auto& u = used[static_cast<std::size_t>(c.slot)];
            if (u) return false;
            u = 1;
        }
    }
    return true;
}

/// All weights lie in the given set and the difference arrays are disjoint.
inline bool verify_mixed_weight_mccac(const MultiCode& code, const std::vector<int>& weightSet) {
    for (const auto& cw : code.codewords)
        if (std::find(weightSet.begin(), weightSet.end(), cw.weight()) == weightSet.end())
            return false;
    return verify_mccac(code).ok;
}

/// Places every codeword of a single-channel code on channel m of M.
inline MultiCode embed_single(const SingleCode& code, int m, int M) {
    detail::require(M >= 1 && m >= 1 && m <= M,
                    "embed_single: channel " + std::to_string(m) + " outside 1.." +
                        std::to_string(M));
    MultiCode out;
    out.M = M;
    out.L = code.L;
    out.weights = code.weights;
    out.provenance = code.provenance;
    for (const auto& cw : code.codewords) {
        std::vector<Cell> cells;
        for (Int t : cw.elements) cells.push_back({m, t});
        out.codewords.emplace_back(M, code.L, std::move(cells));
    }
    return out;
}

namespace detail {
inline void require_verified(const MultiCode& code, const std::string& what) {
    const auto report = verify_mccac(code);
    if (!report.ok) throw ConstructionError(what + " produced an invalid code: " + report.describe());
}
}  // namespace detail

/// Two-channel code of length (w-1)·∏pi^ri built from three classes:
/// paired QR codewords split across both channels, lifted base codewords
/// placed on one channel each, and the single codeword U. Dropping U
/// (amOppts = true) leaves an at-most-one-packet-per-slot code.
inline MultiCode construct_two_channel(int w, const std::vector<PrimePower>& primePowers,
                                       const std::vector<std::vector<Int>>& baseGenerators,
                                       bool amOppts = false) {
    detail::require(w >= 3, "construct_two_channel: w must be >= 3");
    detail::require(baseGenerators.size() == primePowers.size(),
                    "construct_two_channel: one base generator set per prime is required");
    // Class 1 comes from the QR construction; it re-validates p1 >= w and Q1/Q2.
    const SingleCode qr = construct_qr_code(w, primePowers);
    // Class 2 generators: lifted tuples in Z_{L'} for primes with a non-empty base.
    const CrtSystem tail(1, primePowers);
    std::vector<Int> lifted;
    for (std::size_t i = 0; i < primePowers.size(); ++i) {
        if (baseGenerators[i].empty()) continue;
        const Int p = primePowers[i].prime;
        if (p < 2 * w - 1)
            throw ConstructionError("p=" + std::to_string(p) + " is smaller than 2w-1=" +
                                    std::to_string(2 * w - 1) + " but has a non-empty base");
        detail::require_equidiff_base(p, w, baseGenerators[i]);
        const ResidueSet lift = lift_layers(ResidueSet(p, baseGenerators[i]), p,
                                            primePowers[i].exponent);
        for (Int a : detail::layered_tuples(tail, i, lift)) lifted.push_back(a);
    }

    const CrtSystem sys(w - 1, primePowers);
    const Int L = sys.modulus();
    const Int Lp = sys.tail_modulus();
    MultiCode code;
    code.M = 2;
    code.L = L;
    code.weights = {w};
    code.amOppts = amOppts;

    for (const auto& cw : qr.codewords) {
        const Int g = *cw.generator;  // crt(1, a)
        // The lone cell is -(1, a); its differences against j(1, a) are then
        // exactly -(j+1)(1, a).
        const Int lone = mod(-g, L);
        std::vector<Cell> s1{{1, lone}}, s2{{2, lone}};
        for (int j = 0; j <= w - 2; ++j) {
            s1.push_back({2, mod(static_cast<Int>(j) * g, L)});
            s2.push_back({1, mod(static_cast<Int>(j) * g, L)});
        }
        code.codewords.emplace_back(2, L, std::move(s1));
        code.codewords.emplace_back(2, L, std::move(s2));
    }
    for (Int a : lifted) {
        for (int ch = 1; ch <= 2; ++ch) {
            std::vector<Cell> t;
            for (int j = 0; j < w; ++j) t.push_back({ch, sys.encode_pair(0, mod(j * a, Lp))});
            code.codewords.emplace_back(2, L, std::move(t));
        }
    }
    if (!amOppts) {
        std::vector<Cell> u;
        for (int j = 0; j <= w - 2; ++j) u.push_back({1, sys.encode_pair(j, 0)});
        u.push_back({2, 0});
        code.codewords.emplace_back(2, L, std::move(u));
    }
    code.provenance = {"construction", "two-channel",
                       {{"w", w},
                        {"primePowers", detail::prime_powers_json(primePowers)},
                        {"baseGenerators", baseGenerators},
                        {"amOppts", amOppts}}};
    detail::require_verified(code, "construct_two_channel");
    if (amOppts && !verify_amoppts(code))
        throw ConstructionError("construct_two_channel: AM-OPPTS variant uses a slot twice");
    return code;
}

/// M-channel code of length (2w/M - 1)·L' for w > M >= 3, M | w: every base
/// codeword embedded on each channel, plus one codeword per g in Z_{L'}
/// spreading w/M consecutive multiples of crt(1, g) over each channel.
/// The g = 0 codeword repeats slot 0 across channels 1 and 2, so the full
/// code is not AM-OPPTS; dropZeroClass omits it and the rest is.
inline MultiCode construct_m_channel(int M, int w, Int Lprime, const SingleCode& baseCode,
                                     bool dropZeroClass = false) {
    if (!(w > M && M >= 3))
        throw ConstructionError("construct_m_channel: requires w > M >= 3");
    if (w % M != 0)
        throw ConstructionError("construct_m_channel: M=" + std::to_string(M) +
                                " does not divide w=" + std::to_string(w));
    if (Lprime < 1 || !prime_factors_at_least(Lprime, 2 * w - 1))
        throw ConstructionError("construct_m_channel: every prime factor of L'=" +
                                std::to_string(Lprime) + " must be >= 2w-1=" +
                                std::to_string(2 * w - 1));
    if (baseCode.L != Lprime)
        throw ConstructionError("construct_m_channel: base code length differs from L'");
    for (const auto& cw : baseCode.codewords)
        if (cw.weight() != w)
            throw ConstructionError("construct_m_channel: base code has a codeword of weight " +
                                    std::to_string(cw.weight()));
    if (const auto v = verify_cac(baseCode); !v.ok)
        throw ConstructionError("construct_m_channel: base code is not a CAC: " + v.describe());
    if (static_cast<Int>(baseCode.size()) * (2 * w - 2) != Lprime - 1)
        throw ConstructionError("construct_m_channel: base code must have (L'-1)/(2w-2) codewords");

    const int t = w / M;
    const Int cof = 2 * t - 1;
    const Int L = cof * Lprime;
    MultiCode code;
    code.M = M;
    code.L = L;
    code.weights = {w};
    for (int m = 1; m <= M; ++m)
        for (const auto& cw : baseCode.codewords) {
            std::vector<Cell> cells;
            for (Int a : cw.elements) cells.push_back({m, CrtSystem::pair_encode(cof, Lprime, 0, a)});
            code.codewords.emplace_back(M, L, std::move(cells));
        }
    for (Int g = dropZeroClass ? 1 : 0; g < Lprime; ++g) {
        const Int a = CrtSystem::pair_encode(cof, Lprime, 1, g);
        std::vector<Cell> cells;
        for (int m = 1; m <= M; ++m)
            for (int k = (m - 1) * t; k < m * t; ++k) cells.push_back({m, mod(k * a, L)});
        code.codewords.emplace_back(M, L, std::move(cells));
    }
    code.provenance = {"construction", "m-channel",
                       {{"M", M}, {"w", w}, {"Lprime", Lprime}, {"dropZeroClass", dropZeroClass},
                        {"baseProvenance",
                        nlohmann::json{{"kind", baseCode.provenance.kind},
                                       {"name", baseCode.provenance.name},
                                       {"parameters", baseCode.provenance.parameters}}}}};
    detail::require_verified(code, "construct_m_channel");
    code.amOppts = verify_amoppts(code);
    return code;
}

}  // namespace cacw
