#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cacw/bounds.hpp"
#include "cacw/multi.hpp"
#include "cacw/search.hpp"
#include "cacw/single.hpp"

namespace cacw {

inline const std::string kThmQrLength = "K((w-1)p1^r1...pn^rn, w) = (p1^r1...pn^rn - 1)/2";
inline const std::string kThmPrimePower = "K(p1^r1...pn^rn, w) = (p1^r1...pn^rn - 1)/(2w-2)";
inline const std::string kThmTwoChannel = "K(2, (w-1)L', w) = L' + (L'-1)/(w-1)";

/// A closed-form optimal value whose hypotheses were re-checked.
struct TheoremCheck {
    std::string theorem;
    bool hypothesesHold = false;
    std::string failedHypothesis;
    std::optional<Int> value;
};

struct Certificate {
    std::string codeName;
    int M = 1;
    Int L = 1;
    std::vector<int> weights;
    bool amOppts = false;
    Int achievedSize = 0;
    std::vector<TheoremCheck> theorems;
    /// Set only when achievedSize equals a re-verified optimal value or an
    /// applicable upper bound.
    std::optional<std::string> matchedTheorem;
    std::optional<Int> optimalValue;
    std::vector<BoundReport> bounds;
    std::optional<BoundReport> bestBound;
    /// (achieved, best bound) when optimality is not established.
    std::optional<std::pair<Int, Int>> gap;
    /// [lower, upper] on A(2, L, w) for AM-OPPTS two-channel codes.
    std::optional<std::pair<Int, Int>> amOpptsInterval;
    /// Codeword count per number of occupied channels.
    std::map<int, Int> occupancyCensus;
    std::vector<std::string> notes;
};

/// Supplies CAC^e(p, w) base codes for hypothesis checks. By default each
/// prime is settled by search_equidiff; explicit generator sets are verified.
struct CertifyContext {
    std::map<Int, std::vector<Int>> baseWitnesses;
    bool searchBases = true;
};

namespace detail {

/// Whether CAC^e(p, w) has a code with (p-1)/(2w-2) codewords.
inline bool full_equidiff_base_exists(Int p, int w, const CertifyContext& ctx) {
    const Int need = (p - 1) / (2 * w - 2);
    if (auto it = ctx.baseWitnesses.find(p); it != ctx.baseWitnesses.end()) {
        try {
            require_equidiff_base(p, w, it->second);
            if (static_cast<Int>(it->second.size()) >= need) return true;
        } catch (const ConstructionError&) {
        }
    }
    if (!ctx.searchBases) return false;
    return search_equidiff(p, w, 1).maxCount >= need;
}

inline TheoremCheck check_qr_length(Int L, int w) {
    TheoremCheck t;
    t.theorem = kThmQrLength;
    if (w < 2 || L % (w - 1) != 0) {
        t.failedHypothesis = "L is not a multiple of w-1";
        return t;
    }
    const Int Lp = L / (w - 1);
    if (Lp < 2) {
        t.failedHypothesis = "L' = L/(w-1) has no prime factor";
        return t;
    }
    std::vector<Int> primes;
    for (const auto& pp : factorize(Lp)) {
        if (pp.prime < w) {
            t.failedHypothesis = "prime " + std::to_string(pp.prime) + " of L' is below w";
            return t;
        }
        if (pp.prime == 2) {
            t.failedHypothesis = "Q1 fails for p=2";
            return t;
        }
        const auto qr = qr_conditions(w, pp.prime);
        if (!qr.q1) {
            t.failedHypothesis = "Q1 fails for p=" + std::to_string(pp.prime);
            return t;
        }
        if (!qr.q2Failures.empty()) {
            t.failedHypothesis = "Q2 fails for p=" + std::to_string(pp.prime) + " at j=" +
                                 std::to_string(qr.q2Failures.front());
            return t;
        }
        primes.push_back(pp.prime);
    }
    if (!optimality_condition_w1(w, primes)) {
        t.failedHypothesis = "sum of (2w-1-p_i) over p_i < 2w-1 exceeds w-1";
        return t;
    }
    t.hypothesesHold = true;
    t.value = (Lp - 1) / 2;
    return t;
}

inline TheoremCheck check_prime_power(Int L, int w, const CertifyContext& ctx) {
    TheoremCheck t;
    t.theorem = kThmPrimePower;
    if (w < 2 || L < 2) {
        t.failedHypothesis = "requires w >= 2 and L >= 2";
        return t;
    }
    for (const auto& pp : factorize(L)) {
        if ((pp.prime - 1) % (2 * w - 2) != 0) {
            t.failedHypothesis = "2w-2 does not divide p-1 for p=" + std::to_string(pp.prime);
            return t;
        }
        if (!full_equidiff_base_exists(pp.prime, w, ctx)) {
            t.failedHypothesis = "no CAC^e(" + std::to_string(pp.prime) + "," + std::to_string(w) +
                                 ") with (p-1)/(2w-2) codewords was confirmed";
            return t;
        }
    }
    t.hypothesesHold = true;
    t.value = (L - 1) / (2 * w - 2);
    return t;
}

inline TheoremCheck check_two_channel(Int L, int w, const CertifyContext& ctx) {
    TheoremCheck t;
    t.theorem = kThmTwoChannel;
    if (w < 2 || L % (w - 1) != 0 || L / (w - 1) < 2) {
        t.failedHypothesis = "L must be (w-1)L' with L' > 1";
        return t;
    }
    const Int Lp = L / (w - 1);
    for (const auto& pp : factorize(Lp)) {
        const Int p = pp.prime;
        if ((p - 1) % (2 * w - 2) != 0) {
            t.failedHypothesis = "2w-2 does not divide p-1 for p=" + std::to_string(p);
            return t;
        }
        if (p < w || p == 2) {
            t.failedHypothesis = "prime " + std::to_string(p) + " of L' is below w";
            return t;
        }
        const auto qr = qr_conditions(w, p);
        if (!qr.passes()) {
            t.failedHypothesis = (qr.q1 ? "Q2" : "Q1") + std::string(" fails for p=") +
                                 std::to_string(p);
            return t;
        }
        if (!full_equidiff_base_exists(p, w, ctx)) {
            t.failedHypothesis = "no CAC^e(" + std::to_string(p) + "," + std::to_string(w) +
                                 ") with (p-1)/(2w-2) codewords was confirmed";
            return t;
        }
    }
    t.hypothesesHold = true;
    t.value = Lp + (Lp - 1) / (w - 1);
    return t;
}

}  // namespace detail

/// Checks every optimality theorem and upper bound against the code's
/// parameters. Throws VerificationError for an invalid code.
inline Certificate certify(const MultiCode& code, const CertifyContext& ctx = {}) {
    const auto v = verify_mccac(code);
    if (!v.ok) throw VerificationError("certify: code does not verify: " + v.describe());
    if (code.amOppts && !verify_amoppts(code))
        throw VerificationError("certify: code is flagged AM-OPPTS but uses a slot twice");

    Certificate c;
    c.codeName = code.provenance.name;
    c.M = code.M;
    c.L = code.L;
    c.weights = weight_census(code.codewords);
    c.amOppts = code.amOppts;
    c.achievedSize = static_cast<Int>(code.size());
    for (const auto& cw : code.codewords) ++c.occupancyCensus[cw.occupied_channels()];

    if (c.weights.size() > 1) {
        c.notes.push_back("mixed weights: only verification applies, no bound is certified");
        return c;
    }
    if (c.weights.empty()) {
        c.notes.push_back("empty code");
        return c;
    }
    const int w = c.weights.front();

    if (code.M == 1) {
        c.theorems.push_back(detail::check_qr_length(code.L, w));
        c.theorems.push_back(detail::check_prime_power(code.L, w, ctx));
    } else if (code.M == 2) {
        c.theorems.push_back(detail::check_two_channel(code.L, w, ctx));
    }
    for (const auto& t : c.theorems)
        if (t.hypothesesHold && !c.optimalValue) c.optimalValue = t.value;
    for (const auto& t : c.theorems)
        if (t.hypothesesHold && *t.value == c.achievedSize) {
            c.matchedTheorem = t.theorem;
            break;
        }

    for (auto& r : bound_table(code.M, code.L, w, std::nullopt, code.amOppts)) {
        if (!code.amOppts && r.name.starts_with("amoppts")) continue;
        c.bounds.push_back(r);
    }
    c.bestBound = best_bound(c.bounds);
    if (c.bestBound && c.achievedSize > *c.bestBound->intBound)
        c.notes.push_back("achieved size exceeds the " + c.bestBound->name + " bound");
    if (!c.matchedTheorem && c.bestBound && c.achievedSize == *c.bestBound->intBound)
        c.matchedTheorem = "upper bound " + c.bestBound->name + " is met";

    if (code.M == 2 && code.amOppts) {
        if (const auto& t = c.theorems.front(); t.hypothesesHold)
            c.amOpptsInterval = std::make_pair(*t.value - 1, *t.value);
    }

    if (!c.matchedTheorem) {
        Int upper = c.achievedSize;
        bool known = false;
        if (c.optimalValue) {
            upper = *c.optimalValue;
            known = true;
        }
        if (c.bestBound && (!known || *c.bestBound->intBound < upper)) {
            upper = *c.bestBound->intBound;
            known = true;
        }
        if (known) c.gap = std::make_pair(c.achievedSize, upper);
        else c.notes.push_back("no applicable theorem or bound");
    }

    if (code.M >= 3) {
        Int mid = 0;
        for (const auto& [e, count] : c.occupancyCensus)
            if (e > 1 && e < code.M) mid += count;
        c.notes.push_back(
            "a code meeting the bound may only use codewords with e_S in {1, M}; this code has " +
            std::to_string(mid) + " codeword(s) with 2 <= e_S <= M-1");
    }
    return c;
}

inline Certificate certify(const SingleCode& code, const CertifyContext& ctx = {}) {
    return certify(as_multi(code), ctx);
}

}  // namespace cacw
