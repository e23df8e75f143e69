#include <gtest/gtest.h>

#include "cacw/bounds.hpp"
#include "cacw/certify.hpp"
#include "cacw/layers.hpp"
#include "cacw/residue_set.hpp"
#include "cacw/search.hpp"
#include "helpers.hpp"

using namespace cacw;

namespace {

/// Subsets of Z_L of size 1..k that contain 0.
std::vector<ResidueSet> rooted_subsets(Int L, int k) {
    std::vector<ResidueSet> out;
    std::vector<Int> cur{0};
    std::function<void(Int)> rec = [&](Int from) {
        out.emplace_back(L, cur);
        if (static_cast<int>(cur.size()) == k) return;
        for (Int x = from; x < L; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace

// Translating A or B translates A+B, so rooted sets cover every case.
TEST(Properties, KneserExhaustiveSmall) {
    for (Int L = 1; L <= 24; ++L) {
        const auto sets = rooted_subsets(L, 4);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i; j < sets.size(); ++j) {
                const auto r = kneser_check(sets[i], sets[j]);
                ASSERT_TRUE(r.strongHolds && r.weakHolds) << sets[i].to_string() << sets[j].to_string();
            }
    }
}

TEST(Properties, KneserRandomLarge) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20000; ++trial) {
        const Int L = 25 + static_cast<Int>(rng() % 200);
        const int a = 1 + static_cast<int>(rng() % 12), b = 1 + static_cast<int>(rng() % 12);
        const auto r = kneser_check(testing_helpers::random_subset(L, a, rng),
                                    testing_helpers::random_subset(L, b, rng));
        ASSERT_TRUE(r.strongHolds && r.weakHolds);
    }
}

TEST(Properties, PeriodicSetsAreCosetUnions) {
    for (Int L = 1; L <= 16; ++L)
        for (std::uint32_t mask = 1; mask < (1u << L); ++mask) {
            std::vector<Int> e;
            for (Int t = 0; t < L; ++t)
                if (mask >> t & 1) e.push_back(t);
            const ResidueSet t(L, e);
            const auto h = stabilizer(t);
            ASSERT_EQ(L % h.order(), 0);
            ASSERT_EQ(static_cast<Int>(t.size()) % h.order(), 0);
            ASSERT_EQ(add_subgroup(t, h), t);
            if (t.contains(0))
                for (Int x : h.elements()) { ASSERT_TRUE(t.contains(x)); }
        }
}

TEST(Properties, ExceptionalStabilizerClaimsSmall) {
    for (Int L = 2; L <= 18; ++L)
        enumerate_exceptional(L, 4, [&](const ExceptionalRecord& r) {
            const Int h = r.stabilizerOrder;
            const Int a = static_cast<Int>(r.first.size()), b = static_cast<Int>(r.second.size());
            if (r.kind == ExceptionalRecord::Kind::Set) {
                ASSERT_GE(h, 2);
                ASSERT_LE(h, 2 * a - 2);
                ASSERT_NE((2 * a - 1) % h, 0);
                ASSERT_NE((a - 1) % h, 0);
            } else {
                ASSERT_GE(h, 2);
                ASSERT_LE(h, a + b - 2);
                ASSERT_NE((a + b - 1) % h, 0);
                if (a == b) { ASSERT_NE((a - 1) % h, 0); }
            }
        });
}

TEST(Properties, LayerMultiplicationLaw) {
    for (Int p : {3, 5, 7})
        for (int r = 1; ipow(p, r) <= 343; ++r) {
            const LayerView v(p, r);
            const Int q = v.modulus();
            for (Int j : v.layer(0))
                for (Int c = 1; c < q; ++c) {
                    const auto pc = v.locate(c);
                    const auto pj = v.locate(j);
                    const auto prod = v.locate(mod(j * c, q));
                    ASSERT_EQ(prod.layer, pc.layer);
                    ASSERT_EQ(prod.digit, mod(pj.digit * pc.digit, p));
                }
        }
}

TEST(Properties, LegendreMultiplicative) {
    for (Int p = 3; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (Int a = 0; a < p; ++a)
            for (Int b = 0; b < p; ++b) ASSERT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    }
}

TEST(Properties, SearchNeverBeatsApplicableBounds) {
    for (int M = 1; M <= 2; ++M)
        for (int w = 2; w <= 3; ++w)
            for (Int L = w; L <= 13; ++L) {
                const auto k = max_mccac(M, L, w);
                ASSERT_TRUE(k.exhaustive);
                for (const auto& r : bound_table(M, L, w, std::nullopt, false))
                    if (r.applicable) { ASSERT_LE(k.maxSize, *r.intBound) << r.name << " L=" << L; }
                const auto a = max_amoppts(M, L, w);
                ASSERT_LE(a.maxSize, k.maxSize);
                for (const auto& r : bound_table(M, L, w))
                    if (r.applicable) { ASSERT_LE(a.maxSize, *r.intBound) << r.name << " L=" << L; }
            }
}

TEST(Properties, SearchMatchesTheoremValues) {
    struct Case {
        Int L;
        int w;
    };
    for (const auto& c : std::vector<Case>{{6, 3}, {14, 3}, {22, 3}, {21, 4}, {13, 3}, {25, 3}, {7, 4}, {37, 4}, {69, 4}}) {
        const auto r = max_cac(c.L, c.w);
        ASSERT_TRUE(r.exhaustive);
        SingleCode code = as_single(r.witness);
        const auto cert = certify(code);
        ASSERT_TRUE(cert.optimalValue.has_value()) << c.L << " " << c.w;
        EXPECT_EQ(r.maxSize, *cert.optimalValue) << c.L << " " << c.w;
    }
}
