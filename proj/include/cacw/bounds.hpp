#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "cacw/number_theory.hpp"

namespace cacw {

using Rational = boost::rational<Int>;

inline Int floor_of(const Rational& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
    return q;
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// One upper bound evaluated at (M, L, w[, L']). When the hypotheses fail,
/// applicable is false, note names the failed condition and intBound is
/// empty; rawValue is still filled in when the formula is defined.
struct BoundReport {
    std::string name;
    int M = 1;
    Int L = 1;
    int w = 1;
    std::optional<Int> Lprime;
    bool applicable = false;
    std::string note;
    std::optional<Rational> rawValue;
    std::optional<Int> intBound;
};

namespace detail {

inline BoundReport make_report(std::string name, int M, Int L, int w,
                               std::optional<Int> Lprime = std::nullopt) {
    BoundReport r;
    r.name = std::move(name);
    r.M = M;
    r.L = L;
    r.w = w;
    r.Lprime = Lprime;
    return r;
}

/// Fills rawValue/intBound, or records why the bound does not apply.
inline BoundReport& finish(BoundReport& r, const std::string& failure,
                           std::optional<Rational> value) {
    r.rawValue = value;
    r.applicable = failure.empty() && value.has_value();
    r.note = failure;
    if (r.applicable) r.intBound = floor_of(*value);
    return r;
}

inline std::string factor_failure(Int n, int w, const char* what) {
    if (n < 1) return std::string(what) + " must be positive";
    const Int need = 2 * static_cast<Int>(w) - 1;
    if (prime_factors_at_least(n, need)) return {};
    return std::string("prime factor ") + std::to_string(smallest_prime_factor(n)) + " of " +
           what + "=" + std::to_string(n) + " is below 2w-1=" + std::to_string(need);
}

inline void require_basic(int M, Int L, int w) {
    require(M >= 1 && L >= 1 && w >= 1, "bounds: need M, L, w >= 1");
}

/// Shared form  M(M-1)·first/den + M(L-1)/(2w-2).
inline std::optional<Rational> two_term(int M, Int L, int w, Int first, Int den) {
    if (w < 2) return std::nullopt;
    const Int m = M;
    return Rational(m * (m - 1) * first, den) + Rational(m * (L - 1), 2 * static_cast<Int>(w) - 2);
}

}  // namespace detail

/// K(L,w) <= (L-1)/(2w-2) when every prime factor of L is >= 2w-1.
inline BoundReport ub_single(Int L, int w) {
    detail::require_basic(1, L, w);
    auto r = detail::make_report("single", 1, L, w);
    std::optional<Rational> v;
    std::string fail = w < 2 ? "w must be >= 2" : detail::factor_failure(L, w, "L");
    if (w >= 2) v = Rational(L - 1, 2 * static_cast<Int>(w) - 2);
    return detail::finish(r, fail, v);
}

/// M(M-1)L/(w(w-1)) + M(L-1)/(2w-2)
inline BoundReport ub_general(int M, Int L, int w) {
    detail::require_basic(M, L, w);
    auto r = detail::make_report("general", M, L, w);
    const Int ww = w;
    std::string fail = w < 2 ? "w must be >= 2" : detail::factor_failure(L, w, "L");
    return detail::finish(r, fail, detail::two_term(M, L, w, L, ww * (ww - 1)));
}

/// M(M-1)L/((2w-M)(w-1)) + M(L-1)/(2w-2); requires M < w.
inline BoundReport ub_small_channels(int M, Int L, int w) {
    detail::require_basic(M, L, w);
    detail::require(M < w, "ub_small_channels: requires M < w (M=" + std::to_string(M) +
                               ", w=" + std::to_string(w) + ")");
    auto r = detail::make_report("small-channels", M, L, w);
    const Int ww = w;
    std::string fail = detail::factor_failure(L, w, "L");
    return detail::finish(r, fail, detail::two_term(M, L, w, L, (2 * ww - M) * (ww - 1)));
}

/// K(2,(w-1)L',w) <= L' + floor((L'+w-3)/(w-1)).
inline BoundReport ub_two_channel(Int Lprime, int w) {
    detail::require(Lprime >= 1 && w >= 2, "ub_two_channel: need L' >= 1 and w >= 2");
    const Int ww = w;
    auto r = detail::make_report("two-channel", 2, (ww - 1) * Lprime, w, Lprime);
    std::string fail = detail::factor_failure(Lprime, w, "L'");
    Int q = (Lprime + ww - 3) / (ww - 1);
    if ((Lprime + ww - 3) < 0 && q * (ww - 1) != Lprime + ww - 3) --q;
    return detail::finish(r, fail, Rational(Lprime + q));
}

/// M(M-1)(L + (tau(2w/M-1)-1)(L-L'))/((2w-M)(w-1)) + (M(L-1)+2(w-M))/(2w-2)
/// for w > M >= 3, M | w and L = (2w/M-1)L'.
inline BoundReport ub_m_channel_tau(int M, Int L, Int Lprime, int w) {
    detail::require_basic(M, L, w);
    detail::require(w > M && M >= 3, "ub_m_channel_tau: requires w > M >= 3");
    detail::require(w % M == 0, "ub_m_channel_tau: M=" + std::to_string(M) +
                                    " does not divide w=" + std::to_string(w));
    const Int m = M, ww = w, c = 2 * ww / m - 1;
    detail::require(Lprime >= 1 && L == c * Lprime,
                    "ub_m_channel_tau: L must equal (2w/M-1)L' = " + std::to_string(c * Lprime));
    auto r = detail::make_report("m-channel-tau", M, L, w, Lprime);
    std::string fail = detail::factor_failure(Lprime, w, "L'");
    const Rational v = Rational(m * (m - 1) * (L + (tau(c) - 1) * (L - Lprime)),
                                (2 * ww - m) * (ww - 1)) +
                       Rational(m * (L - 1) + 2 * (ww - m), 2 * ww - 2);
    return detail::finish(r, fail, v);
}

/// A(M,L,w) <= M(M-1)(L-1)/(w(w-1)) + M(L-1)/(2w-2)
inline BoundReport ub_amoppts_general(int M, Int L, int w) {
    detail::require_basic(M, L, w);
    auto r = detail::make_report("amoppts-general", M, L, w);
    const Int ww = w;
    std::string fail = w < 2 ? "w must be >= 2" : detail::factor_failure(L, w, "L");
    return detail::finish(r, fail, detail::two_term(M, L, w, L - 1, ww * (ww - 1)));
}

/// A(M,L,w) <= M(M-1)(L-1)/((2w-M)(w-1)) + M(L-1)/(2w-2); requires M < w.
inline BoundReport ub_amoppts_small_channels(int M, Int L, int w) {
    detail::require_basic(M, L, w);
    detail::require(M < w, "ub_amoppts_small_channels: requires M < w (M=" +
                               std::to_string(M) + ", w=" + std::to_string(w) + ")");
    auto r = detail::make_report("amoppts-small-channels", M, L, w);
    const Int ww = w;
    std::string fail = detail::factor_failure(L, w, "L");
    return detail::finish(r, fail, detail::two_term(M, L, w, L - 1, (2 * ww - M) * (ww - 1)));
}

/// Conjectured limsup K(M,L,w)/L = M(M-1)/((2w-M)(w-1)) + M/(2w-2).
inline Rational conjectured_ratio(int M, int w) {
    detail::require(w >= M && M >= 1 && w >= 2, "conjectured_ratio: requires w >= M >= 1, w >= 2");
    const Int m = M, ww = w;
    return Rational(m * (m - 1), (2 * ww - m) * (ww - 1)) + Rational(m, 2 * ww - 2);
}

/// Every bound evaluated at (M, L, w). Bounds whose structural hypotheses
/// fail (M >= w, M not dividing w, L not of the required shape) appear as
/// inapplicable rows. L' defaults to L/(w-1) for two channels and
/// L/(2w/M-1) for M >= 3 when those divide evenly.
inline std::vector<BoundReport> bound_table(int M, Int L, int w,
                                            std::optional<Int> Lprime = std::nullopt,
                                            bool includeAmoppts = true) {
    detail::require_basic(M, L, w);
    std::vector<BoundReport> rows;
    auto inapplicable = [&](std::string name, std::string why, std::optional<Int> lp = {}) {
        auto r = detail::make_report(std::move(name), M, L, w, lp);
        r.note = std::move(why);
        rows.push_back(std::move(r));
    };
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            rows.push_back(fn());
        } catch (const PreconditionError& e) {
            inapplicable(name, e.what());
        }
    };

    if (M == 1) rows.push_back(ub_single(L, w));
    else inapplicable("single", "requires M = 1");
    rows.push_back(ub_general(M, L, w));
    guarded("small-channels", [&] { return ub_small_channels(M, L, w); });

    if (M != 2 || w < 2) {
        inapplicable("two-channel", M != 2 ? "requires M = 2" : "w must be >= 2");
    } else {
        std::optional<Int> lp = Lprime;
        if (!lp && L % (w - 1) == 0) lp = L / (w - 1);
        if (!lp || (w - 1) * *lp != L)
            inapplicable("two-channel", "L must equal (w-1)L'", lp);
        else
            rows.push_back(ub_two_channel(*lp, w));
    }

    std::optional<Int> lp = Lprime;
    if (!lp && M >= 3 && w % M == 0) {
        const Int c = 2 * static_cast<Int>(w) / M - 1;
        if (c >= 1 && L % c == 0) lp = L / c;
    }
    if (lp) guarded("m-channel-tau", [&] { return ub_m_channel_tau(M, L, *lp, w); });
    else inapplicable("m-channel-tau", "requires w > M >= 3, M | w and L = (2w/M-1)L'");

    if (includeAmoppts) {
        rows.push_back(ub_amoppts_general(M, L, w));
        guarded("amoppts-small-channels", [&] { return ub_amoppts_small_channels(M, L, w); });
    }
    return rows;
}

/// Smallest applicable intBound among the rows, if any.
inline std::optional<BoundReport> best_bound(const std::vector<BoundReport>& rows) {
    std::optional<BoundReport> best;
    for (const auto& r : rows)
        if (r.applicable && (!best || *r.intBound < *best->intBound)) best = r;
    return best;
}

}  // namespace cacw
