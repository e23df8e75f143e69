#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cacw/residue_set.hpp"

namespace cacw {

/// Where a code came from: a named construction with its parameters, a
/// search with its options, or manual entry.
struct Provenance {
    std::string kind = "manual";  ///< "construction" | "search" | "manual"
    std::string name;
    nlohmann::json parameters = nlohmann::json::object();
};

/// A w-subset of Z_L, optionally tagged as equi-difference {0, g, ..., (w-1)g}.
struct SingleCodeword {
    ResidueSet elements;
    std::optional<Int> generator;

    int weight() const { return static_cast<int>(elements.size()); }
    friend bool operator==(const SingleCodeword&, const SingleCodeword&) = default;
};

/// A single-channel code: codewords in Z_L with sizes drawn from a weight set.
struct SingleCode {
    Int L = 1;
    std::vector<int> weights;
    std::vector<SingleCodeword> codewords;
    Provenance provenance;

    std::size_t size() const { return codewords.size(); }
    int max_weight() const {
        int w = 0;
        for (const auto& c : codewords) w = std::max(w, c.weight());
        return w;
    }
};

/// {0, g, 2g, ..., (w-1)g} in Z_L; the multiples must be distinct.
inline SingleCodeword make_equidiff(Int g, int w, Int L) {
    detail::require(L >= 1 && w >= 1, "make_equidiff: need L >= 1 and w >= 1");
    std::vector<Int> elems;
    for (int j = 0; j < w; ++j) elems.push_back(mod(static_cast<Int>(j) * g, L));
    ResidueSet s(L, elems);
    detail::require(static_cast<int>(s.size()) == w,
                    "make_equidiff: multiples of g=" + std::to_string(g) + " collide in Z_" +
                        std::to_string(L));
    return {std::move(s), mod(g, L)};
}

/// Channel index (1-based) and slot (0-based).
struct Cell {
    int channel = 1;
    Int slot = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A transmission pattern: a set of cells in I_M × Z_L.
class MultiCodeword {
public:
    MultiCodeword() = default;

    MultiCodeword(int channels, Int L, std::vector<Cell> cells)
        : channels_(channels), L_(L), cells_(std::move(cells)) {
        detail::require(channels >= 1 && L >= 1, "MultiCodeword: need M >= 1 and L >= 1");
        for (auto& c : cells_) {
            detail::require(c.channel >= 1 && c.channel <= channels,
                            "MultiCodeword: channel " + std::to_string(c.channel) +
                                " outside 1.." + std::to_string(channels));
            c.slot = mod(c.slot, L);
        }
        std::sort(cells_.begin(), cells_.end());
        detail::require(std::adjacent_find(cells_.begin(), cells_.end()) == cells_.end(),
                        "MultiCodeword: repeated cell");
    }

    int channels() const { return channels_; }
    Int length() const { return L_; }
    const std::vector<Cell>& cells() const { return cells_; }
    int weight() const { return static_cast<int>(cells_.size()); }

    /// S_i, the slots used on channel i.
    ResidueSet channel_set(int i) const {
        std::vector<Int> slots;
        for (const auto& c : cells_)
            if (c.channel == i) slots.push_back(c.slot);
        return ResidueSet(L_, std::move(slots));
    }

    std::vector<ResidueSet> channel_sets() const {
        std::vector<ResidueSet> out;
        for (int i = 1; i <= channels_; ++i) out.push_back(channel_set(i));
        return out;
    }

    /// e_S, the number of channels carrying at least one packet.
    int occupied_channels() const {
        std::set<int> used;
        for (const auto& c : cells_) used.insert(c.channel);
        return static_cast<int>(used.size());
    }

    /// The same pattern with every slot shifted by delta.
    MultiCodeword shifted(Int delta) const {
        std::vector<Cell> out(cells_);
        for (auto& c : out) c.slot += delta;
        return MultiCodeword(channels_, L_, std::move(out));
    }

    friend bool operator==(const MultiCodeword&, const MultiCodeword&) = default;

private:
    int channels_ = 1;
    Int L_ = 1;
    std::vector<Cell> cells_;
};

struct MultiCode {
    int M = 1;
    Int L = 1;
    std::vector<int> weights;
    std::vector<MultiCodeword> codewords;
    bool amOppts = false;
    Provenance provenance;

    std::size_t size() const { return codewords.size(); }
    int max_weight() const {
        int w = 0;
        for (const auto& c : codewords) w = std::max(w, c.weight());
        return w;
    }
};

/// Weight set of a list of codewords, ascending.
template <class Codewords>
std::vector<int> weight_census(const Codewords& codewords) {
    std::set<int> ws;
    for (const auto& c : codewords) ws.insert(c.weight());
    return {ws.begin(), ws.end()};
}

/// Single-channel code viewed as an M = 1 pattern code (channel 1 throughout).
inline MultiCode as_multi(const SingleCode& code) {
    MultiCode out;
    out.M = 1;
    out.L = code.L;
    out.weights = code.weights;
    out.provenance = code.provenance;
    for (const auto& cw : code.codewords) {
        std::vector<Cell> cells;
        for (Int t : cw.elements) cells.push_back({1, t});
        out.codewords.emplace_back(1, code.L, std::move(cells));
    }
    return out;
}

/// Inverse of as_multi; requires M = 1.
inline SingleCode as_single(const MultiCode& code) {
    detail::require(code.M == 1, "as_single: code has " + std::to_string(code.M) + " channels");
    SingleCode out;
    out.L = code.L;
    out.weights = code.weights;
    out.provenance = code.provenance;
    for (const auto& cw : code.codewords) out.codewords.push_back({cw.channel_set(1), {}});
    return out;
}

/// Location of the first clash between two codewords' difference sets or
/// arrays. Entry indices are 1-based; single-channel codes report (1,1).
struct Conflict {
    std::size_t first = 0;
    std::size_t second = 0;
    int row = 1;
    int col = 1;
    Int residue = 0;
    friend bool operator==(const Conflict&, const Conflict&) = default;
};

struct VerificationReport {
    bool ok = true;
    std::optional<Conflict> firstConflict;

    std::string describe() const {
        if (ok) return "ok";
        const auto& c = *firstConflict;
        return "conflict between codewords " + std::to_string(c.first) + " and " +
               std::to_string(c.second) + " at entry (" + std::to_string(c.row) + "," +
               std::to_string(c.col) + "), shared difference " + std::to_string(c.residue);
    }
};

}  // namespace cacw
