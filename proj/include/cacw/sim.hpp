#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cacw/codes.hpp"
#include "cacw/multi.hpp"

namespace cacw {

/// A user transmitting codeword `codeword` (0-based) with frame offset `offset`.
struct Activation {
    std::size_t codeword = 0;
    Int offset = 0;
    friend bool operator==(const Activation&, const Activation&) = default;
};

struct UserOutcome {
    std::size_t codeword = 0;
    Int offset = 0;
    int sent = 0;
    int collided = 0;
    int successes = 0;
};

struct FrameOutcome {
    std::vector<UserOutcome> users;
    /// Number of users on each cell, indexed (channel-1)·L + slot.
    std::vector<int> cellLoad;
    /// Most packets of one user destroyed by a single other user.
    int maxPairDamage = 0;
    /// A user sent two packets in one slot.
    bool amOpptsViolation = false;

    int collisions() const {
        return static_cast<int>(std::count_if(cellLoad.begin(), cellLoad.end(),
                                              [](int n) { return n >= 2; }));
    }
    bool all_succeed() const {
        return std::all_of(users.begin(), users.end(),
                           [](const UserOutcome& u) { return u.successes > 0; });
    }
};

/// One frame of the collision channel: user u occupies (i, t + offset_u)
/// for every (i, t) in its codeword, and a cell with two or more users is lost.
inline FrameOutcome simulate_frame(const MultiCode& code, const std::vector<Activation>& acts) {
    const Int L = code.L;
    const std::size_t cells = static_cast<std::size_t>(code.M) * static_cast<std::size_t>(L);
    std::vector<std::size_t> seen;
    for (const auto& a : acts) {
        detail::require(a.codeword < code.size(),
                        "simulate_frame: codeword index " + std::to_string(a.codeword) +
                            " out of range");
        detail::require(std::find(seen.begin(), seen.end(), a.codeword) == seen.end(),
                        "simulate_frame: codeword " + std::to_string(a.codeword) +
                            " is assigned to two users");
        seen.push_back(a.codeword);
    }
    FrameOutcome out;
    out.cellLoad.assign(cells, 0);
    std::vector<std::vector<std::size_t>> occupied(acts.size());
    for (std::size_t u = 0; u < acts.size(); ++u) {
        std::vector<char> slotUsed(static_cast<std::size_t>(L), 0);
        for (const auto& c : code.codewords[acts[u].codeword].cells()) {
            const Int t = mod(c.slot + acts[u].offset, L);
            const std::size_t idx = static_cast<std::size_t>(c.channel - 1) * static_cast<std::size_t>(L) +
                                    static_cast<std::size_t>(t);
            occupied[u].push_back(idx);
            ++out.cellLoad[idx];
            auto& s = slotUsed[static_cast<std::size_t>(t)];
            if (s) out.amOpptsViolation = true;
            s = 1;
        }
    }
    for (std::size_t u = 0; u < acts.size(); ++u) {
        UserOutcome r{acts[u].codeword, acts[u].offset, static_cast<int>(occupied[u].size()), 0, 0};
        for (auto idx : occupied[u]) (out.cellLoad[idx] >= 2 ? r.collided : r.successes)++;
        out.users.push_back(r);
    }
    for (std::size_t u = 0; u < acts.size(); ++u)
        for (std::size_t v = 0; v < acts.size(); ++v) {
            if (u == v) continue;
            int hit = 0;
            for (auto a : occupied[u])
                hit += static_cast<int>(std::count(occupied[v].begin(), occupied[v].end(), a));
            out.maxPairDamage = std::max(out.maxPairDamage, hit);
        }
    return out;
}

struct GuaranteeCheck {
    bool holds = true;
    std::optional<std::vector<Activation>> counterexample;
    std::string method;  ///< "enumeration" or "per-user"
    /// Frames simulated (enumeration) or search nodes (per-user).
    std::uint64_t work = 0;
};

struct GuaranteeOptions {
    /// Largest C(n,k)·L^(k-1) handled by direct enumeration.
    double enumerationLimit = 2e7;
    std::uint64_t nodeBudget = 100'000'000;
};

namespace detail {
inline double choose(double n, double k) {
    double r = 1;
    for (double i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline void require_k(const MultiCode& code, int k) {
    require(k >= 1 && static_cast<std::size_t>(k) <= code.size(),
            "guarantee: k must lie in 1..|code|=" + std::to_string(code.size()));
}
}  // namespace detail

/// Direct enumeration: every k-subset of codewords and every offset tuple,
/// the first user's offset fixed to 0.
inline GuaranteeCheck brute_force_guarantee(const MultiCode& code, int k, double limit = 2e7) {
    detail::require_k(code, k);
    const Int L = code.L;
    const double total = detail::choose(static_cast<double>(code.size()), k) *
                         std::pow(static_cast<double>(L), k - 1);
    if (total > limit)
        throw BudgetError("brute_force_guarantee: " + std::to_string(total) +
                          " configurations exceed the limit");
    GuaranteeCheck res;
    res.method = "enumeration";
    const std::size_t n = code.size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::vector<Activation> acts(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i) acts[i] = {pick[i], 0};
        while (true) {
            ++res.work;
            if (!simulate_frame(code, acts).all_succeed()) {
                res.holds = false;
                res.counterexample = acts;
                return res;
            }
            int j = k - 1;
            while (j >= 1 && acts[j].offset == L - 1) acts[j--].offset = 0;
            if (j < 1) break;
            ++acts[j].offset;
        }
        int j = k - 1;
        while (j >= 0 && pick[j] == n - static_cast<std::size_t>(k - j)) --j;
        if (j < 0) break;
        ++pick[j];
        for (int q = j + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
    return res;
}

/// Exact check organised per target user: user u (offset 0) fails iff at
/// most k-1 other codewords, each at some offset, jointly cover all of u's
/// cells (further users only add coverage).
/// For each interferer the distinct coverage masks over all offsets are
/// collected, then a pruned search looks for a covering choice.
inline GuaranteeCheck per_user_guarantee(const MultiCode& code, int k,
                                         std::uint64_t nodeBudget = 100'000'000) {
    detail::require_k(code, k);
    GuaranteeCheck res;
    res.method = "per-user";
    const Int L = code.L;
    const std::size_t n = code.size();
    for (std::size_t u = 0; u < n; ++u) {
        const auto& target = code.codewords[u].cells();
        const int w = static_cast<int>(target.size());
        if (w > 62) throw PreconditionError("per_user_guarantee: weight above 62");
        const std::uint64_t full = (std::uint64_t{1} << w) - 1;
        struct Option {
            std::uint64_t mask;
            Int offset;
        };
        std::vector<std::size_t> others;
        std::vector<std::vector<Option>> options;
        std::vector<int> maxPop;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            std::vector<Option> opts;
            int best = 0;
            for (Int d = 0; d < L; ++d) {
                std::uint64_t m = 0;
                for (const auto& c : code.codewords[v].cells()) {
                    const Cell moved{c.channel, mod(c.slot + d, L)};
                    const auto it = std::lower_bound(target.begin(), target.end(), moved);
                    if (it != target.end() && *it == moved)
                        m |= std::uint64_t{1} << (it - target.begin());
                }
                if (m == 0) continue;
                if (std::none_of(opts.begin(), opts.end(), [&](const Option& o) { return o.mask == m; })) {
                    opts.push_back({m, d});
                    best = std::max(best, std::popcount(m));
                }
            }
            others.push_back(v);
            options.push_back(std::move(opts));
            maxPop.push_back(best);
        }
        const int picks = k - 1;
        // suffixTop[i][r]: the r largest maxPop values among others[i..].
        std::vector<std::vector<int>> suffixTop(others.size() + 1);
        for (std::size_t i = others.size(); i-- > 0;) {
            auto s = suffixTop[i + 1];
            s.insert(std::upper_bound(s.begin(), s.end(), maxPop[i], std::greater<>()), maxPop[i]);
            if (static_cast<int>(s.size()) > picks) s.resize(static_cast<std::size_t>(picks));
            suffixTop[i] = std::move(s);
        }
        std::vector<Activation> chosen;
        std::function<bool(std::size_t, int, std::uint64_t)> dfs =
            [&](std::size_t from, int left, std::uint64_t cover) -> bool {
            if (++res.work > nodeBudget) throw BudgetError("per_user_guarantee: node budget exhausted");
            if (cover == full) return true;
            if (left == 0) return false;
            for (std::size_t i = from; i < others.size(); ++i) {
                const auto& top = suffixTop[i];
                int reach = std::popcount(cover);
                for (int r = 0; r < left && r < static_cast<int>(top.size()); ++r) reach += top[r];
                if (reach < w) return false;
                for (const auto& o : options[i]) {
                    chosen.push_back({others[i], o.offset});
                    if (dfs(i + 1, left - 1, cover | o.mask)) return true;
                    chosen.pop_back();
                }
            }
            return false;
        };
        if (dfs(0, picks, 0)) {
            std::vector<Activation> acts{{u, 0}};
            acts.insert(acts.end(), chosen.begin(), chosen.end());
            for (std::size_t v : others) {
                if (static_cast<int>(acts.size()) == k) break;
                if (std::none_of(acts.begin(), acts.end(),
                                 [&](const Activation& a) { return a.codeword == v; }))
                    acts.push_back({v, 0});
            }
            std::sort(acts.begin() + 1, acts.end(),
                      [](const Activation& a, const Activation& b) { return a.codeword < b.codeword; });
            res.holds = false;
            res.counterexample = acts;
            return res;
        }
    }
    return res;
}

/// Whether every active user succeeds at least once in every frame, over
/// all choices of k codewords and offsets. Uses direct enumeration when it
/// fits the limit and the exact per-user decomposition otherwise.
inline GuaranteeCheck exhaustive_guarantee(const MultiCode& code, int k,
                                           const GuaranteeOptions& opts = {}) {
    detail::require_k(code, k);
    const double total = detail::choose(static_cast<double>(code.size()), k) *
                         std::pow(static_cast<double>(code.L), k - 1);
    if (total <= opts.enumerationLimit) return brute_force_guarantee(code, k, opts.enumerationLimit);
    return per_user_guarantee(code, k, opts.nodeBudget);
}

struct GuaranteeReport {
    int k = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Trials in which some active user had no successful packet.
    std::uint64_t failures = 0;
    /// successHistogram[s] = number of (trial, user) pairs with s successes.
    std::vector<std::uint64_t> successHistogram;
    /// Frames where one interferer destroyed two or more packets of a user.
    std::uint64_t pairDamageViolations = 0;
    std::uint64_t amOpptsViolations = 0;
    /// Collisions per cell summed over all trials, indexed (channel-1)·L + slot.
    std::vector<std::uint64_t> collisionCounts;
    std::optional<std::vector<Activation>> firstFailure;
};

/// Random frames with k distinct codewords at uniform offsets. Trial i draws
/// from mt19937_64 seeded by (seed, i), so any trial is reproducible alone.
inline GuaranteeReport random_campaign(const MultiCode& code, int k, std::uint64_t trials,
                                       std::uint64_t seed) {
    detail::require(trials >= 1, "random_campaign: trials must be >= 1");
    detail::require_k(code, k);
    GuaranteeReport rep;
    rep.k = k;
    rep.trials = trials;
    rep.seed = seed;
    rep.successHistogram.assign(static_cast<std::size_t>(code.max_weight()) + 1, 0);
    rep.collisionCounts.assign(static_cast<std::size_t>(code.M * code.L), 0);
    std::vector<std::size_t> pool(code.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
        std::mt19937_64 rng(seq);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        std::vector<Activation> acts;
        std::uniform_int_distribution<Int> off(0, code.L - 1);
        for (int i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
            acts.push_back({pool[static_cast<std::size_t>(i)], off(rng)});
        }
        const auto f = simulate_frame(code, acts);
        if (!f.all_succeed()) {
            ++rep.failures;
            if (!rep.firstFailure) rep.firstFailure = acts;
        }
        for (const auto& u : f.users) ++rep.successHistogram[static_cast<std::size_t>(u.successes)];
        if (f.maxPairDamage >= 2) ++rep.pairDamageViolations;
        if (f.amOpptsViolation) ++rep.amOpptsViolations;
        for (std::size_t c = 0; c < f.cellLoad.size(); ++c)
            if (f.cellLoad[c] >= 2) ++rep.collisionCounts[c];
    }
    return rep;
}

inline nlohmann::json to_json(const std::vector<Activation>& acts) {
    auto a = nlohmann::json::array();
    for (const auto& x : acts) a.push_back({{"codeword", x.codeword}, {"offset", x.offset}});
    return a;
}

inline nlohmann::json to_json(const GuaranteeReport& r) {
    nlohmann::json j{{"k", r.k},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"failures", r.failures},
                     {"successHistogram", r.successHistogram},
                     {"pairDamageViolations", r.pairDamageViolations},
                     {"amOpptsViolations", r.amOpptsViolations}};
    if (r.firstFailure) j["firstFailure"] = to_json(*r.firstFailure);
    return j;
}

inline nlohmann::json to_json(const GuaranteeCheck& g, int k) {
    nlohmann::json j{{"k", k}, {"holds", g.holds}, {"method", g.method}, {"work", g.work}};
    if (g.counterexample) j["counterexample"] = to_json(*g.counterexample);
    return j;
}

/// Per-cell collision totals as CSV: one row per channel, one column per slot.
inline std::string heatmap_csv(const GuaranteeReport& r, int M, Int L) {
    std::string out = "channel";
    for (Int t = 0; t < L; ++t) out += "," + std::to_string(t);
    out += "\n";
    for (int i = 0; i < M; ++i) {
        out += std::to_string(i + 1);
        for (Int t = 0; t < L; ++t)
            out += "," + std::to_string(r.collisionCounts[static_cast<std::size_t>(i * L + t)]);
        out += "\n";
    }
    return out;
}

}  // namespace cacw
