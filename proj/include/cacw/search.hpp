#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cacw/bounds.hpp"
#include "cacw/codes.hpp"
#include "cacw/multi.hpp"
#include "cacw/single.hpp"

namespace cacw {

struct SearchOptions {
    std::uint64_t nodeBudget = 100'000'000;
    /// Split the root by orbits of unit multiplication and channel permutation.
    bool symmetry = true;
    /// Coloring and difference-budget bounds; off leaves only |C| + |P|.
    bool boundPruning = true;
    /// Stop once the incumbent meets an applicable closed-form bound.
    bool theoryBounds = false;
    unsigned workers = 1;
    std::size_t candidateLimit = 40'000;
};

struct SearchResult {
    Int maxSize = 0;
    MultiCode witness;
    std::uint64_t nodesExplored = 0;
    /// True iff the search completed; otherwise maxSize is only a lower bound.
    bool exhaustive = false;
    std::size_t candidates = 0;
    std::string stoppedBy;  ///< "", "budget" or "bound:<name>"
};

namespace detail {

struct MaskHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) h = (h ^ std::hash<std::uint64_t>{}(x)) * 0x100000001b3ULL;
        return h;
    }
};

/// Patterns up to slot rotation, deduplicated by difference array. Bit
/// ((i-1)M + (j-1))L + r of a mask marks residue r in entry (i,j).
struct CandidateSet {
    int M = 1;
    Int L = 1;
    std::size_t words = 1;
    std::vector<std::vector<Cell>> patterns;
    std::vector<std::uint64_t> masks;
    std::vector<int> diagUse, offUse;
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, MaskHash> index;

    std::size_t size() const { return patterns.size(); }
    const std::uint64_t* mask(std::size_t i) const { return masks.data() + i * words; }
};

inline double binomial(double n, double k) {
    double r = 1;
    for (double i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline CandidateSet enumerate_candidates(int M, Int L, int w, bool amOppts, std::size_t limit) {
    CandidateSet cs;
    cs.M = M;
    cs.L = L;
    const Int cells = M * L;
    const std::size_t bits = static_cast<std::size_t>(M) * M * static_cast<std::size_t>(L);
    cs.words = (bits + 63) / 64;
    if (w > cells) return cs;
    if (binomial(static_cast<double>(cells), w) > 2e8)
        throw BudgetError("search: C(" + std::to_string(cells) + "," + std::to_string(w) +
                          ") patterns exceed the enumeration limit");
    std::vector<Int> idx(static_cast<std::size_t>(w));
    std::iota(idx.begin(), idx.end(), Int{0});
    std::vector<std::uint64_t> mask(cs.words);
    std::vector<Int> ch(static_cast<std::size_t>(w)), sl(static_cast<std::size_t>(w));
    while (true) {
        bool hasZero = false, distinctSlots = true;
        for (int a = 0; a < w; ++a) {
            ch[a] = idx[a] / L;
            sl[a] = idx[a] % L;
            hasZero |= sl[a] == 0;
        }
        if (amOppts)
            for (int a = 0; a < w && distinctSlots; ++a)
                for (int b = a + 1; b < w; ++b)
                    if (sl[a] == sl[b]) { distinctSlots = false; break; }
        if (hasZero && distinctSlots) {
            std::fill(mask.begin(), mask.end(), 0);
            int diag = 0, off = 0;
            for (int a = 0; a < w; ++a)
                for (int b = 0; b < w; ++b) {
                    if (a == b) continue;
                    const std::size_t bit =
                        static_cast<std::size_t>((ch[a] * M + ch[b]) * L + mod(sl[a] - sl[b], L));
                    auto& word = mask[bit / 64];
                    const std::uint64_t m = std::uint64_t{1} << (bit % 64);
                    if (!(word & m)) (ch[a] == ch[b] ? diag : off)++;
                    word |= m;
                }
            if (cs.index.emplace(mask, cs.patterns.size()).second) {
                if (cs.patterns.size() >= limit)
                    throw BudgetError("search: more than " + std::to_string(limit) +
                                      " candidate patterns");
                std::vector<Cell> p;
                for (int a = 0; a < w; ++a) p.push_back({static_cast<int>(ch[a]) + 1, sl[a]});
                cs.patterns.push_back(std::move(p));
                cs.masks.insert(cs.masks.end(), mask.begin(), mask.end());
                cs.diagUse.push_back(diag);
                cs.offUse.push_back(off);
            }
        }
        int k = w - 1;
        while (k >= 0 && idx[k] == cells - w + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
    return cs;
}

/// Maximum clique in the compatibility graph of a candidate set, with
/// orbit-split root subproblems and a schedule-independent witness: the
/// DFS-first maximum clique of the lowest-index subproblem reaching the max.
class PackingEngine {
public:
    PackingEngine(const CandidateSet& cs, const SearchOptions& opts, Int theoryBound,
                  std::string theoryName)
        : cs_(cs), opts_(opts), theoryBound_(theoryBound), theoryName_(std::move(theoryName)) {
        n_ = cs.size();
        W_ = (n_ + 63) / 64;
        build_graph();
        build_subproblems();
    }

    SearchResult run() {
        SearchResult res;
        res.candidates = n_;
        if (n_ == 0) {
            res.exhaustive = true;
            return res;
        }
        const auto seed = greedy();
        shared_.store(static_cast<Int>(seed.size()));
        const std::size_t S = roots_.size();
        found_.assign(S, {});
        done_.assign(S, 0);
        if (static_cast<Int>(seed.size()) >= theoryBound_) theoryHit_ = true;

        auto workerFn = [this, S] {
            Buffers bufs;
            while (true) {
                const std::size_t k = next_.fetch_add(1);
                if (k >= S || aborted_.load()) break;
                solve_root(k, bufs);
            }
        };
        if (!theoryHit_) {
            const unsigned nw = std::max(1u, opts_.workers);
            if (nw == 1) {
                workerFn();
            } else {
                std::vector<std::thread> ts;
                for (unsigned i = 0; i < nw; ++i) ts.emplace_back(workerFn);
                for (auto& t : ts) t.join();
            }
        }

        // Lowest-index subproblem reaching the maximum wins; the seed only
        // stands when no subproblem matches it.
        std::size_t winner = S;
        for (std::size_t k = 0; k < S; ++k)
            if (!found_[k].empty() && (winner == S || found_[k].size() > found_[winner].size()))
                winner = k;
        const auto& best =
            winner < S && found_[winner].size() >= seed.size() ? found_[winner] : seed;
        res.maxSize = static_cast<Int>(best.size());
        res.nodesExplored = nodes_.load();
        if (budgetHit_.load()) {
            res.stoppedBy = "budget";
        } else if (theoryHit_ || stopIndex_.load() != noStop) {
            res.stoppedBy = "bound:" + theoryName_;
            res.exhaustive = true;
        } else {
            res.exhaustive = true;
        }
        for (auto v : best) chosen_.push_back(pos2orig_[v]);
        std::sort(chosen_.begin(), chosen_.end());
        return res;
    }

    /// Candidate indices of the witness, ascending.
    const std::vector<std::size_t>& chosen() const { return chosen_; }

private:
    static constexpr std::size_t noStop = std::numeric_limits<std::size_t>::max();

    const std::uint64_t* adj(std::size_t v) const { return compat_.data() + v * W_; }
    const std::uint64_t* vmask(std::size_t v) const { return cs_.mask(pos2orig_[v]); }

    void build_graph() {
        const std::size_t mw = cs_.words;
        std::vector<std::uint64_t> raw(n_ * W_, 0);
        std::vector<std::size_t> deg(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            const auto* mi = cs_.mask(i);
            for (std::size_t j = i + 1; j < n_; ++j) {
                const auto* mj = cs_.mask(j);
                bool ok = true;
                for (std::size_t q = 0; q < mw && ok; ++q) ok = (mi[q] & mj[q]) == 0;
                if (!ok) continue;
                raw[i * W_ + j / 64] |= std::uint64_t{1} << (j % 64);
                raw[j * W_ + i / 64] |= std::uint64_t{1} << (i % 64);
                ++deg[i];
                ++deg[j];
            }
        }
        pos2orig_.resize(n_);
        std::iota(pos2orig_.begin(), pos2orig_.end(), std::size_t{0});
        std::stable_sort(pos2orig_.begin(), pos2orig_.end(),
                         [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
        orig2pos_.resize(n_);
        for (std::size_t p = 0; p < n_; ++p) orig2pos_[pos2orig_[p]] = p;
        compat_.assign(n_ * W_, 0);
        for (std::size_t p = 0; p < n_; ++p) {
            const auto* row = raw.data() + pos2orig_[p] * W_;
            auto* out = compat_.data() + p * W_;
            for (std::size_t q = 0; q < W_; ++q)
                for (auto bits = row[q]; bits; bits &= bits - 1) {
                    const std::size_t j = q * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    const std::size_t pj = orig2pos_[j];
                    out[pj / 64] |= std::uint64_t{1} << (pj % 64);
                }
        }
    }

    /// Orbit of every candidate under u·x (u a unit) and channel permutations.
    std::vector<std::size_t> orbit_ids() const {
        std::vector<std::size_t> parent(n_);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        if (!opts_.symmetry) return parent;
        const int M = cs_.M;
        const Int L = cs_.L;
        std::vector<std::pair<Int, std::vector<int>>> gens;
        std::vector<int> id(static_cast<std::size_t>(M));
        std::iota(id.begin(), id.end(), 0);
        for (Int u : units(L))
            if (u != 1) gens.push_back({u, id});
        if (M >= 2) {
            auto swap = id;
            std::swap(swap[0], swap[1]);
            gens.push_back({1, swap});
            auto cyc = id;
            for (int i = 0; i < M; ++i) cyc[i] = (i + 1) % M;
            if (M >= 3) gens.push_back({1, cyc});
        }
        const std::size_t mw = cs_.words;
        std::vector<std::uint64_t> img(mw);
        for (std::size_t c = 0; c < n_; ++c) {
            const auto* m = cs_.mask(c);
            for (const auto& [u, perm] : gens) {
                std::fill(img.begin(), img.end(), 0);
                for (std::size_t q = 0; q < mw; ++q)
                    for (auto bits = m[q]; bits; bits &= bits - 1) {
                        const std::size_t b = q * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        const std::size_t e = b / static_cast<std::size_t>(L);
                        const Int r = static_cast<Int>(b % static_cast<std::size_t>(L));
                        const int i = static_cast<int>(e) / M, j = static_cast<int>(e) % M;
                        const std::size_t nb = static_cast<std::size_t>(
                            (perm[i] * M + perm[j]) * L + mod(u * r, L));
                        img[nb / 64] |= std::uint64_t{1} << (nb % 64);
                    }
                const auto it = cs_.index.find(img);
                require(it != cs_.index.end(), "search: symmetry image is not a candidate");
                const std::size_t a = find(c), b = find(it->second);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        for (std::size_t c = 0; c < n_; ++c) parent[c] = find(c);
        return parent;
    }

    void build_subproblems() {
        const auto orbit = orbit_ids();
        // Orbits ordered by their earliest member in search order.
        std::unordered_map<std::size_t, std::size_t> orbitIndex;
        std::vector<std::vector<std::size_t>> members;
        for (std::size_t p = 0; p < n_; ++p) {
            const auto o = orbit[pos2orig_[p]];
            auto [it, fresh] = orbitIndex.emplace(o, members.size());
            if (fresh) members.emplace_back();
            members[it->second].push_back(p);
        }
        std::vector<std::uint64_t> excluded(W_, 0);
        for (const auto& mem : members) {
            Root r;
            r.vertex = mem.front();
            r.P.assign(adj(r.vertex), adj(r.vertex) + W_);
            for (std::size_t q = 0; q < W_; ++q) r.P[q] &= ~excluded[q];
            roots_.push_back(std::move(r));
            for (auto p : mem) excluded[p / 64] |= std::uint64_t{1} << (p % 64);
        }
    }

    std::vector<std::size_t> greedy() const {
        std::vector<std::size_t> out;
        std::vector<std::uint64_t> P(W_, ~std::uint64_t{0});
        if (n_ % 64) P[W_ - 1] = (std::uint64_t{1} << (n_ % 64)) - 1;
        for (std::size_t v = 0; v < n_; ++v) {
            if (!(P[v / 64] >> (v % 64) & 1)) continue;
            out.push_back(v);
            for (std::size_t q = 0; q < W_; ++q) P[q] &= adj(v)[q];
        }
        return out;
    }

    using Buffers = std::deque<std::vector<std::uint64_t>>;

    struct Root {
        std::size_t vertex = 0;
        std::vector<std::uint64_t> P;
    };

    struct Local {
        std::size_t index = 0;
        Int best = 0;
        std::vector<std::size_t> clique, bestClique;
        std::uint64_t pending = 0;
    };

    bool should_prune(const Local& loc, Int bound) const {
        return bound <= loc.best || bound < shared_.load(std::memory_order_relaxed);
    }

    bool keep_going(Local& loc) {
        if (++loc.pending < 256) return true;
        const auto total = nodes_.fetch_add(loc.pending) + loc.pending;
        loc.pending = 0;
        if (total > opts_.nodeBudget) {
            budgetHit_ = true;
            aborted_ = true;
        }
        const auto stop = stopIndex_.load(std::memory_order_relaxed);
        return !aborted_.load(std::memory_order_relaxed) &&
               (loc.index < stop || (loc.index == stop && loc.best < theoryBound_));
    }

    void record(Local& loc) {
        const Int size = static_cast<Int>(loc.clique.size());
        if (size <= loc.best) return;
        loc.best = size;
        loc.bestClique = loc.clique;
        Int cur = shared_.load();
        while (size > cur && !shared_.compare_exchange_weak(cur, size)) {}
        if (size >= theoryBound_) {
            std::size_t s = stopIndex_.load();
            while (loc.index < s && !stopIndex_.compare_exchange_weak(s, loc.index)) {}
        }
    }

    /// Most candidates of P whose difference arrays fit in the residues still
    /// reachable from P: the cheapest ones are taken first, separately for
    /// diagonal entries, off-diagonal entries and both together.
    Int resource_bound(const std::uint64_t* P) const {
        const std::size_t mw = cs_.words;
        const std::size_t cap = static_cast<std::size_t>(cs_.M * cs_.M * cs_.L) + 1;
        std::vector<std::uint64_t> U(mw, 0);
        std::vector<Int> hd(cap, 0), ho(cap, 0), ht(cap, 0);
        for (std::size_t q = 0; q < W_; ++q)
            for (auto bits = P[q]; bits; bits &= bits - 1) {
                const std::size_t v = q * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const auto* m = vmask(v);
                for (std::size_t k = 0; k < mw; ++k) U[k] |= m[k];
                const int d = cs_.diagUse[pos2orig_[v]], o = cs_.offUse[pos2orig_[v]];
                ++hd[static_cast<std::size_t>(d)];
                ++ho[static_cast<std::size_t>(o)];
                ++ht[static_cast<std::size_t>(d + o)];
            }
        Int freeD = 0, freeO = 0;
        const std::size_t L = static_cast<std::size_t>(cs_.L);
        const std::size_t M = static_cast<std::size_t>(cs_.M);
        for (std::size_t k = 0; k < mw; ++k)
            for (auto bits = U[k]; bits; bits &= bits - 1) {
                const std::size_t b = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const std::size_t e = b / L;
                (e / M == e % M ? freeD : freeO)++;
            }
        auto fit = [](const std::vector<Int>& hist, Int budget) {
            Int count = 0;
            for (std::size_t c = 0; c < hist.size(); ++c) {
                if (hist[c] == 0) continue;
                const Int cost = static_cast<Int>(c);
                if (cost == 0) { count += hist[c]; continue; }
                const Int take = std::min(hist[c], budget / cost);
                count += take;
                budget -= take * cost;
                if (take < hist[c]) break;
            }
            return count;
        };
        return std::min({fit(hd, freeD), fit(ho, freeO), fit(ht, freeD + freeO)});
    }

    /// Returns false when the subproblem has to stop early.
    bool expand(Local& loc, std::size_t depth, Buffers& bufs) {
        if (!keep_going(loc)) return false;
        const Int size = static_cast<Int>(loc.clique.size());
        const std::size_t need = (depth + 2) * 3;
        if (bufs.size() < need) bufs.resize(need, std::vector<std::uint64_t>(W_));
        auto& P = bufs[depth * 3];
        auto& U = bufs[depth * 3 + 1];
        auto& Q = bufs[depth * 3 + 2];
        if (opts_.boundPruning && should_prune(loc, size + resource_bound(P.data()))) return true;

        // Greedy coloring; a color class is a set of pairwise conflicting candidates.
        std::vector<std::size_t> order;
        std::vector<Int> colors;
        U = P;
        Int color = 0;
        auto nonEmpty = [&](const std::vector<std::uint64_t>& b) {
            return std::any_of(b.begin(), b.end(), [](auto x) { return x != 0; });
        };
        while (nonEmpty(U)) {
            ++color;
            Q = U;
            for (std::size_t q = 0; q < W_; ++q) {
                while (Q[q]) {
                    const std::size_t v = q * 64 + static_cast<std::size_t>(std::countr_zero(Q[q]));
                    Q[q] &= Q[q] - 1;
                    U[q] &= ~(std::uint64_t{1} << (v % 64));
                    const auto* a = adj(v);
                    for (std::size_t r = q; r < W_; ++r) Q[r] &= ~a[r];
                    order.push_back(v);
                    colors.push_back(opts_.boundPruning ? color
                                                        : static_cast<Int>(order.size()));
                }
            }
        }
        if (!opts_.boundPruning) {
            // Only the |P| bound: the i-th vertex from the end sees i+1 candidates.
            for (std::size_t i = 0; i < order.size(); ++i) colors[i] = static_cast<Int>(i + 1);
            std::sort(order.begin(), order.end());
        }

        for (std::size_t i = order.size(); i-- > 0;) {
            if (should_prune(loc, size + colors[i])) return true;
            const std::size_t v = order[i];
            loc.clique.push_back(v);
            auto& next = bufs[(depth + 1) * 3];
            bool any = false;
            const auto* a = adj(v);
            for (std::size_t q = 0; q < W_; ++q) {
                next[q] = P[q] & a[q];
                any |= next[q] != 0;
            }
            if (!any) record(loc);
            else if (!expand(loc, depth + 1, bufs)) return false;
            loc.clique.pop_back();
            P[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
        return true;
    }

    void solve_root(std::size_t k, Buffers& bufs) {
        Local loc;
        loc.index = k;
        {
            std::lock_guard<std::mutex> lock(mu_);
            for (std::size_t j = 0; j < k; ++j)
                if (done_[j]) loc.best = std::max(loc.best, static_cast<Int>(found_[j].size()));
        }
        const Int floorBest = loc.best;
        if (k > stopIndex_.load()) return;
        loc.clique = {roots_[k].vertex};
        if (bufs.empty()) bufs.resize(3, std::vector<std::uint64_t>(W_));
        bufs[0] = roots_[k].P;
        const bool any = std::any_of(bufs[0].begin(), bufs[0].end(), [](auto x) { return x; });
        bool complete = true;
        if (!any) record(loc);
        else complete = expand(loc, 0, bufs);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (loc.best > floorBest) found_[k] = loc.bestClique;
            done_[k] = complete;
        }
        nodes_.fetch_add(loc.pending);
    }

    const CandidateSet& cs_;
    SearchOptions opts_;
    Int theoryBound_;
    std::string theoryName_;
    std::size_t n_ = 0, W_ = 0;
    std::vector<std::uint64_t> compat_;
    std::vector<std::size_t> pos2orig_, orig2pos_;
    std::vector<Root> roots_;
    std::vector<std::vector<std::size_t>> found_;
    std::vector<char> done_;
    std::mutex mu_;
    std::atomic<std::size_t> next_{0};
    std::atomic<Int> shared_{0};
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> aborted_{false}, budgetHit_{false};
    std::atomic<std::size_t> stopIndex_{noStop};
    bool theoryHit_ = false;
    std::vector<std::size_t> chosen_;
};

inline nlohmann::json options_json(const SearchOptions& o) {
    return {{"nodeBudget", o.nodeBudget},
            {"symmetry", o.symmetry},
            {"boundPruning", o.boundPruning},
            {"theoryBounds", o.theoryBounds},
            {"workers", o.workers}};
}

inline SearchResult run_search(int M, Int L, int w, bool amOppts, const SearchOptions& opts,
                               const std::string& name) {
    require(M >= 1 && L >= 1 && w >= 1, "search: need M, L, w >= 1");
    require(!amOppts || L >= w, "search: AM-OPPTS needs L >= w");
    SearchResult res;
    MultiCode& code = res.witness;
    code.M = M;
    code.L = L;
    code.weights = {w};
    code.amOppts = amOppts;
    code.provenance = {"search", name,
                       {{"M", M}, {"L", L}, {"w", w}, {"options", options_json(opts)}}};

    if (w == 1) {
        // Single-cell patterns have empty difference arrays: every cell is a codeword.
        for (int i = 1; i <= M; ++i)
            for (Int t = 0; t < L; ++t) code.codewords.emplace_back(M, L, std::vector<Cell>{{i, t}});
        res.maxSize = M * L;
        res.exhaustive = true;
        res.candidates = static_cast<std::size_t>(M * L);
        return res;
    }

    Int theory = std::numeric_limits<Int>::max();
    std::string theoryName;
    if (opts.theoryBounds) {
        for (const auto& r : bound_table(M, L, w, std::nullopt, amOppts)) {
            if (!r.applicable || (!amOppts && r.name.starts_with("amoppts"))) continue;
            if (*r.intBound < theory) {
                theory = *r.intBound;
                theoryName = r.name;
            }
        }
    }

    const auto cs = enumerate_candidates(M, L, w, amOppts, opts.candidateLimit);
    PackingEngine engine(cs, opts, theory, theoryName);
    const auto out = engine.run();
    res.maxSize = out.maxSize;
    res.nodesExplored = out.nodesExplored;
    res.exhaustive = out.exhaustive;
    res.candidates = out.candidates;
    res.stoppedBy = out.stoppedBy;
    for (auto c : engine.chosen()) code.codewords.emplace_back(M, L, cs.patterns[c]);
    code.provenance.parameters["exhaustive"] = res.exhaustive;
    const auto v = verify_mccac(code);
    if (!v.ok) throw VerificationError("search witness failed verification: " + v.describe());
    if (amOppts && !verify_amoppts(code))
        throw VerificationError("search witness is not AM-OPPTS");
    return res;
}

}  // namespace detail

/// K(M,L,w) by exact branch and bound.
inline SearchResult max_mccac(int M, Int L, int w, const SearchOptions& opts = {}) {
    return detail::run_search(M, L, w, false, opts, "max-mccac");
}

/// A(M,L,w): as max_mccac over one-packet-per-slot patterns.
inline SearchResult max_amoppts(int M, Int L, int w, const SearchOptions& opts = {}) {
    return detail::run_search(M, L, w, true, opts, "max-amoppts");
}

/// K(L,w); the witness is a one-channel code, see as_single.
inline SearchResult max_cac(Int L, int w, const SearchOptions& opts = {}) {
    detail::require(L >= w, "max_cac: requires L >= w");
    return detail::run_search(1, L, w, false, opts, "max-cac");
}

struct EquidiffFamilies {
    Int maxCount = 0;
    /// Every maximum family, each an ascending list of generators in
    /// 1..(p-1)/2 (g and -g are identified). Families are in lexicographic order.
    std::vector<std::vector<Int>> generatorFamilies;
    bool truncated = false;  ///< more than maxFamilies maximum families exist
};

/// Maximum families of equi-difference codewords in Z_p with pairwise
/// disjoint difference sets.
inline EquidiffFamilies search_equidiff(Int p, int w, std::size_t maxFamilies = 1000) {
    detail::require(is_prime(p), "search_equidiff: " + std::to_string(p) + " is not prime");
    detail::require(w >= 2, "search_equidiff: w must be >= 2");
    std::vector<Int> gens;
    std::vector<std::vector<char>> sets;
    for (Int g = 1; g <= (p - 1) / 2; ++g) {
        std::vector<char> d(static_cast<std::size_t>(p), 0);
        bool ok = true;
        std::vector<char> seen(static_cast<std::size_t>(p), 0);
        for (int j = 0; j < w && ok; ++j) {
            auto& s = seen[static_cast<std::size_t>(mod(j * g, p))];
            ok = !s;
            s = 1;
        }
        if (!ok) continue;
        for (int j = 1; j < w; ++j) {
            d[static_cast<std::size_t>(mod(j * g, p))] = 1;
            d[static_cast<std::size_t>(mod(-j * g, p))] = 1;
        }
        gens.push_back(g);
        sets.push_back(std::move(d));
    }
    EquidiffFamilies out;
    const std::size_t n = gens.size();
    std::vector<char> used(static_cast<std::size_t>(p), 0);
    std::vector<Int> cur;
    std::vector<int> sizes(n);
    for (std::size_t i = 0; i < n; ++i)
        sizes[i] = static_cast<int>(std::count(sets[i].begin(), sets[i].end(), 1));
    const int minSize = n ? *std::min_element(sizes.begin(), sizes.end()) : 1;
    Int freeCount = p - 1;
    // With p >= 2w-1 every difference set has 2w-2 elements.
    const Int ceiling = p >= 2 * w - 1 ? (p - 1) / (2 * w - 2) : static_cast<Int>(n);
    bool stop = false;

    std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        const Int c = static_cast<Int>(cur.size());
        if (c > out.maxCount) {
            out.maxCount = c;
            out.generatorFamilies.clear();
            out.truncated = false;
        }
        if (c == out.maxCount && c > 0) {
            if (out.generatorFamilies.size() < maxFamilies) out.generatorFamilies.push_back(cur);
            else out.truncated = true;
            if (out.truncated && c == ceiling) stop = true;
        }
        if (c + freeCount / minSize < out.maxCount) return;
        for (std::size_t i = from; i < n && !stop; ++i) {
            if (c + static_cast<Int>(n - i) < out.maxCount) return;
            bool ok = true;
            for (Int r = 1; r < p && ok; ++r)
                ok = !(sets[i][static_cast<std::size_t>(r)] && used[static_cast<std::size_t>(r)]);
            if (!ok) continue;
            for (Int r = 1; r < p; ++r)
                if (sets[i][static_cast<std::size_t>(r)]) used[static_cast<std::size_t>(r)] = 1;
            freeCount -= sizes[i];
            cur.push_back(gens[i]);
            dfs(i + 1);
            cur.pop_back();
            freeCount += sizes[i];
            for (Int r = 1; r < p; ++r)
                if (sets[i][static_cast<std::size_t>(r)]) used[static_cast<std::size_t>(r)] = 0;
        }
    };
    dfs(0);
    return out;
}

struct ExceptionalRecord {
    enum class Kind { Set, Pair } kind = Kind::Set;
    ResidueSet first;
    ResidueSet second;  ///< equals first for Kind::Set
    Int stabilizerOrder = 1;  ///< |H(A-A)| or |H(A-B)|
};

namespace detail {
inline std::uint64_t rotl(std::uint64_t x, Int s, Int L, std::uint64_t full) {
    s = mod(s, L);
    if (s == 0) return x;
    return ((x << s) | (x >> (L - s))) & full;
}
inline ResidueSet from_bits(std::uint64_t x, Int L) {
    std::vector<Int> e;
    for (; x; x &= x - 1) e.push_back(std::countr_zero(x));
    return ResidueSet(L, std::move(e));
}
}  // namespace detail

/// Every exceptional set (one per translation class) and exceptional pair
/// {A,B} (each up to translation, A <= B) of sizes 1..sizeMax in Z_L,
/// passed to the callback in a fixed order: all sets, then all pairs.
inline void enumerate_exceptional(Int L, int sizeMax,
                                  const std::function<void(const ExceptionalRecord&)>& emit) {
    detail::require(L >= 1 && L <= 64, "enumerate_exceptional: L must lie in 1..64");
    detail::require(sizeMax >= 1, "enumerate_exceptional: sizeMax must be >= 1");
    const std::uint64_t full = L == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << L) - 1;
    // Translation-class representatives: the numerically smallest rotation.
    std::vector<std::uint64_t> reps;
    for (int k = 1; k <= std::min<Int>(sizeMax, L); ++k) {
        std::vector<Int> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), Int{0});
        while (true) {
            std::uint64_t x = 0;
            for (Int i : idx) x |= std::uint64_t{1} << i;
            bool canonical = true;
            for (Int s = 1; s < L && canonical; ++s) canonical = detail::rotl(x, s, L, full) >= x;
            if (canonical) reps.push_back(x);
            int j = k - 1;
            while (j >= 1 && idx[j] == L - k + j) --j;
            if (j < 1) break;
            ++idx[j];
            for (int q = j + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    std::sort(reps.begin(), reps.end());
    auto diff = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t out = 0;
        for (auto bb = b; bb; bb &= bb - 1) out |= detail::rotl(a, -std::countr_zero(bb), L, full);
        return out;
    };
    for (auto a : reps) {
        const int sa = std::popcount(a);
        const auto d = diff(a, a);
        if (std::popcount(d) <= 2 * sa - 2) {
            const auto A = detail::from_bits(a, L);
            emit({ExceptionalRecord::Kind::Set, A, A,
                  stabilizer(detail::from_bits(d, L)).order()});
        }
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i; j < reps.size(); ++j) {
            const auto a = reps[i], b = reps[j];
            const auto d = diff(a, b);
            if (std::popcount(d) <= std::popcount(a) + std::popcount(b) - 2)
                emit({ExceptionalRecord::Kind::Pair, detail::from_bits(a, L),
                      detail::from_bits(b, L), stabilizer(detail::from_bits(d, L)).order()});
        }
}

inline std::vector<ExceptionalRecord> enumerate_exceptional(Int L, int sizeMax) {
    std::vector<ExceptionalRecord> out;
    enumerate_exceptional(L, sizeMax, [&](const ExceptionalRecord& r) { out.push_back(r); });
    return out;
}

}  // namespace cacw
