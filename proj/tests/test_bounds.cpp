#include <gtest/gtest.h>

#include "cacw/bounds.hpp"
#include "cacw/certify.hpp"

using namespace cacw;

namespace {
const BoundReport* row(const std::vector<BoundReport>& rows, const std::string& name) {
    for (const auto& r : rows)
        if (r.name == name) return &r;
    return nullptr;
}
}  // namespace

TEST(Bounds, KnownValues) {
    EXPECT_EQ(*ub_two_channel(7, 4).intBound, 9);
    EXPECT_EQ(*ub_single(25, 3).intBound, 6);
    EXPECT_EQ(*ub_single(5, 3).intBound, 1);
    const auto tau17 = ub_m_channel_tau(3, 33, 11, 6);
    EXPECT_TRUE(tau17.applicable);
    EXPECT_EQ(*tau17.rawValue, Rational(263, 15));
    EXPECT_EQ(*tau17.intBound, 17);
}

TEST(Bounds, ExactRationals) {
    const auto g = ub_general(2, 49, 4);
    ASSERT_TRUE(g.applicable);
    // 2·49/12 + 2·48/6 = 49/6 + 16 = 145/6
    EXPECT_EQ(*g.rawValue, Rational(145, 6));
    EXPECT_EQ(*g.intBound, 24);
    EXPECT_EQ(floor_of(Rational(-7, 2)), -4);
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
}

TEST(Bounds, InapplicableIsData) {
    const auto s = ub_single(21, 4);
    EXPECT_FALSE(s.applicable);
    EXPECT_FALSE(s.intBound.has_value());
    EXPECT_NE(s.note.find("prime factor 3"), std::string::npos);
    EXPECT_TRUE(s.rawValue.has_value());
}

TEST(Bounds, StructuralPreconditionsThrow) {
    EXPECT_THROW(ub_small_channels(4, 49, 4), PreconditionError);
    EXPECT_THROW(ub_amoppts_small_channels(5, 49, 4), PreconditionError);
    EXPECT_THROW(ub_m_channel_tau(4, 33, 11, 6), PreconditionError);
    EXPECT_THROW(ub_m_channel_tau(3, 34, 11, 6), PreconditionError);
    EXPECT_THROW(ub_m_channel_tau(2, 21, 7, 4), PreconditionError);
    EXPECT_THROW(ub_general(0, 5, 3), PreconditionError);
}

TEST(Bounds, TableTurnsThrowsIntoRows) {
    const auto rows = bound_table(4, 49, 4);
    const auto* sc = row(rows, "small-channels");
    ASSERT_NE(sc, nullptr);
    EXPECT_FALSE(sc->applicable);
    EXPECT_NE(sc->note.find("M < w"), std::string::npos);
    EXPECT_FALSE(row(rows, "two-channel")->applicable);
    EXPECT_TRUE(row(rows, "general")->applicable);

    const auto two = bound_table(2, 21, 4);
    EXPECT_EQ(*row(two, "two-channel")->intBound, 9);
    EXPECT_EQ(best_bound(two)->name, "two-channel");
    EXPECT_EQ(row(bound_table(3, 33, 6), "m-channel-tau")->Lprime, 11);
}

TEST(Bounds, SmallChannelsDominatesGeneral) {
    for (int w = 2; w <= 8; ++w)
        for (int M = 1; M < w; ++M)
            for (Int L = w; L <= 200; ++L) {
                const auto g = ub_general(M, L, w);
                const auto s = ub_small_channels(M, L, w);
                ASSERT_LE(*s.rawValue, *g.rawValue);
                const auto ag = ub_amoppts_general(M, L, w);
                const auto as = ub_amoppts_small_channels(M, L, w);
                ASSERT_LE(*as.rawValue, *ag.rawValue);
                ASSERT_LE(*ag.rawValue, *g.rawValue);
                ASSERT_EQ(s.applicable, g.applicable);
            }
}

TEST(Bounds, ConjecturedRatio) {
    EXPECT_EQ(conjectured_ratio(1, 4), Rational(1, 6));
    EXPECT_EQ(conjectured_ratio(2, 4), Rational(2, 18) + Rational(2, 6));
    EXPECT_THROW(conjectured_ratio(5, 4), PreconditionError);
}

TEST(Certify, QrCodeMatchesTheorem) {
    const auto c = certify(construct_qr_code(4, {{7, 1}}));
    ASSERT_TRUE(c.matchedTheorem.has_value());
    EXPECT_EQ(*c.matchedTheorem, kThmQrLength);
    EXPECT_EQ(*c.optimalValue, 3);
    EXPECT_FALSE(c.gap.has_value());
}

TEST(Certify, LiftedCodeMatchesPrimePowerTheorem) {
    const auto c = certify(construct_lifted_code(3, {{5, 2}}, {{1}}));
    EXPECT_EQ(c.achievedSize, 6);
    ASSERT_TRUE(c.matchedTheorem.has_value());
    EXPECT_EQ(*c.matchedTheorem, kThmPrimePower);
}

TEST(Certify, TwoChannelAndAmOpptsInterval) {
    const auto full = certify(construct_two_channel(4, {{7, 1}}, {{1}}));
    EXPECT_EQ(*full.matchedTheorem, kThmTwoChannel);
    const auto am = certify(construct_two_channel(4, {{7, 1}}, {{1}}, true));
    ASSERT_TRUE(am.amOpptsInterval.has_value());
    EXPECT_EQ(*am.amOpptsInterval, std::make_pair(Int{8}, Int{9}));
}

TEST(Certify, MChannelGap) {
    const auto base = construct_lifted_code(6, {{11, 1}}, {{1}});
    const auto c = certify(construct_m_channel(3, 6, 11, base));
    EXPECT_FALSE(c.matchedTheorem.has_value());
    ASSERT_TRUE(c.gap.has_value());
    EXPECT_EQ(*c.gap, std::make_pair(Int{14}, Int{17}));
    EXPECT_EQ(c.bestBound->name, "m-channel-tau");
}

TEST(Certify, HypothesesAreRechecked) {
    // L = 3·5: Q1 fails at 5, and no prime-power statement applies.
    SingleCode code;
    code.L = 15;
    code.weights = {4};
    code.codewords.push_back(make_equidiff(1, 4, 15));
    const auto c = certify(code);
    EXPECT_FALSE(c.matchedTheorem.has_value());
    for (const auto& t : c.theorems) EXPECT_FALSE(t.hypothesesHold);
    EXPECT_NE(c.theorems[0].failedHypothesis.find("Q1 fails for p=5"), std::string::npos);

    // A supplied witness that is not a valid base is ignored when searching is off.
    CertifyContext ctx;
    ctx.searchBases = false;
    ctx.baseWitnesses[13] = {1, 2};
    const auto gens = search_equidiff(13, 3).generatorFamilies.front();
    const auto lifted = construct_lifted_code(3, {{13, 1}}, {gens});
    const auto c2 = certify(lifted, ctx);
    EXPECT_FALSE(c2.theorems[1].hypothesesHold);
    ctx.baseWitnesses[13] = gens;
    EXPECT_TRUE(certify(lifted, ctx).theorems[1].hypothesesHold);
}

TEST(Certify, RejectsInvalidCodes) {
    SingleCode code;
    code.L = 7;
    code.codewords = {{ResidueSet(7, {0, 1}), {}}, {ResidueSet(7, {2, 3}), {}}};
    EXPECT_THROW(certify(code), VerificationError);
}
