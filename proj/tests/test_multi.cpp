#include <gtest/gtest.h>

#include "cacw/multi.hpp"
#include "cacw/search.hpp"
#include "helpers.hpp"

using namespace cacw;
using testing_helpers::patterns;

namespace {

MultiCode two_channel_21(bool am = false) { return construct_two_channel(4, {{7, 1}}, {{1}}, am); }

MultiCode m_channel_33(bool drop = false) {
    return construct_m_channel(3, 6, 11, construct_lifted_code(6, {{11, 1}}, {{1}}), drop);
}

}  // namespace

TEST(DifferenceArray, EntriesAndAntisymmetry) {
    const MultiCodeword s(2, 10, {{1, 0}, {1, 3}, {2, 5}});
    const auto d = difference_array(s);
    EXPECT_EQ(d.at(1, 1).to_string(), ResidueSet(10, {3, 7}).to_string());
    EXPECT_EQ(d.at(1, 2).to_string(), ResidueSet(10, {5, 8}).to_string());
    EXPECT_TRUE(d.at(2, 2).empty());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = testing_helpers::random_pattern(3, 11, 4, rng);
        const auto a = difference_array(p);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) ASSERT_EQ(a.at(j, i), a.at(i, j).negate());
    }
    EXPECT_THROW(d.at(3, 1), PreconditionError);
}

TEST(VerifyMccac, AgreesWithShiftOracle) {
    std::mt19937_64 rng(21);
    int valid = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int M = 1 + static_cast<int>(rng() % 3);
        const Int L = 5 + static_cast<Int>(rng() % 8);
        const int w = 2 + static_cast<int>(rng() % 2);
        MultiCode code;
        code.M = M;
        code.L = L;
        code.weights = {w};
        const int n = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) code.codewords.push_back(testing_helpers::random_pattern(M, L, w, rng));
        const bool ok = verify_mccac(code).ok;
        valid += ok;
        ASSERT_EQ(ok, oracle::is_code(patterns(code), L));
    }
    EXPECT_GT(valid, 20);
}

TEST(VerifyMccac, ShiftedCodewordsKeepVerdict) {
    auto code = two_channel_21();
    std::mt19937_64 rng(1);
    for (auto& cw : code.codewords) {
        const auto before = difference_array(cw);
        cw = cw.shifted(static_cast<Int>(rng() % 21));
        EXPECT_EQ(difference_array(cw), before);
    }
    EXPECT_TRUE(verify_mccac(code).ok);
}

TEST(VerifyMccac, DuplicateCodewordConflict) {
    auto code = two_channel_21();
    code.codewords.push_back(code.codewords[3]);
    const auto r = verify_mccac(code);
    ASSERT_FALSE(r.ok);
    EXPECT_EQ(r.firstConflict->first, 3u);
    EXPECT_EQ(r.firstConflict->second, 9u);
}

TEST(TwoChannel, NineCodewordsOfLengthTwentyOne) {
    const auto code = two_channel_21();
    EXPECT_EQ(code.M, 2);
    EXPECT_EQ(code.L, 21);
    ASSERT_EQ(code.size(), 9u);
    EXPECT_TRUE(oracle::is_code(patterns(code), 21));
    EXPECT_FALSE(code.amOppts);
    // The first class-1 codeword pairs the lone cell -(1,1) = 20 with {0, 1, 2}.
    const std::vector<Cell> first{{1, 20}, {2, 0}, {2, 1}, {2, 2}};
    EXPECT_EQ(code.codewords[0].cells(), first);
}

TEST(TwoChannel, AmOpptsVariantDropsLastCodeword) {
    const auto full = two_channel_21();
    const auto am = two_channel_21(true);
    ASSERT_EQ(am.size(), 8u);
    EXPECT_TRUE(am.amOppts);
    EXPECT_TRUE(verify_amoppts(am));
    EXPECT_FALSE(verify_amoppts(full));
    for (std::size_t i = 0; i < am.size(); ++i) EXPECT_EQ(am.codewords[i], full.codewords[i]);
}

TEST(TwoChannel, CoverageOfDifferenceArrays) {
    const auto code = two_channel_21();
    const Int L = 21;
    std::vector<char> diag(L, 0), off(L, 0);
    for (const auto& cw : code.codewords) {
        const auto d = difference_array(cw);
        for (int i = 1; i <= 2; ++i)
            for (Int r : d.at(i, i)) diag[static_cast<std::size_t>(r)] = 1;
        for (Int r : d.at(1, 2)) off[static_cast<std::size_t>(r)] = 1;
    }
    for (Int r = 1; r < L; ++r) EXPECT_TRUE(diag[static_cast<std::size_t>(r)]) << r;
    for (Int r = 0; r < L; ++r) EXPECT_TRUE(off[static_cast<std::size_t>(r)]) << r;
}

TEST(TwoChannel, LargerInstancesVerify) {
    // Only 3 of the 5 generators a full base at 31 would need exist.
    const auto fam = search_equidiff(31, 4);
    ASSERT_EQ(fam.maxCount, 3);
    const auto c = construct_two_channel(4, {{7, 1}, {31, 1}}, {{1}, fam.generatorFamilies.front()});
    EXPECT_TRUE(verify_mccac(c).ok);
    EXPECT_EQ(c.size(), 285u);
    EXPECT_EQ(*ub_two_channel(217, 4).intBound, 289);
    EXPECT_THROW(construct_two_channel(4, {{5, 1}}, {{1}}), ConstructionError);
    EXPECT_THROW(construct_two_channel(3, {{3, 1}}, {{1}}), ConstructionError);
}

TEST(MChannel, FourteenCodewordsOfLengthThirtyThree) {
    const auto code = m_channel_33();
    EXPECT_EQ(code.L, 33);
    ASSERT_EQ(code.size(), 14u);
    EXPECT_TRUE(oracle::is_code(patterns(code), 33));
    // The g = 0 codeword stacks slot 0 on channels 1 and 2.
    const std::vector<Cell> zero{{1, 0}, {1, 22}, {2, 0}, {2, 11}, {3, 11}, {3, 22}};
    EXPECT_EQ(code.codewords[3].cells(), zero);
    EXPECT_FALSE(code.amOppts);
}

TEST(MChannel, DroppingZeroClassGivesAmOppts) {
    const auto code = m_channel_33(true);
    EXPECT_EQ(code.size(), 13u);
    EXPECT_TRUE(code.amOppts);
    EXPECT_TRUE(verify_amoppts(code));
    for (std::size_t k = 3; k < code.size(); ++k) {
        const auto d = difference_array(code.codewords[k]);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (i != j) { EXPECT_FALSE(d.at(i, j).contains(0)); }
    }
}

TEST(MChannel, RejectsBadParameters) {
    const auto base = construct_lifted_code(6, {{11, 1}}, {{1}});
    EXPECT_THROW(construct_m_channel(4, 6, 11, base), ConstructionError);
    EXPECT_THROW(construct_m_channel(3, 3, 11, base), ConstructionError);
    EXPECT_THROW(construct_m_channel(3, 6, 13, base), ConstructionError);
    EXPECT_THROW(construct_m_channel(3, 6, 7, base), ConstructionError);
}

TEST(Exceptionality, PrimeLengthPatternsAreNot) {
    std::mt19937_64 rng(4);
    for (Int p : {7, 11, 13, 17, 29, 31}) {
        for (int trial = 0; trial < 200; ++trial) {
            const int w = 2 + static_cast<int>(rng() % ((p + 1) / 2 - 1));
            const int M = 1 + static_cast<int>(rng() % 3);
            const auto s = testing_helpers::random_pattern(M, p, w, rng);
            ASSERT_FALSE(is_exceptional_pattern(s).verdict);
        }
    }
}

TEST(Exceptionality, ConstructedCodewordsOnGoodLengths) {
    const auto lifted = as_multi(construct_lifted_code(3, {{5, 2}}, {{1}}));
    for (const auto& cw : lifted.codewords) EXPECT_FALSE(is_exceptional_pattern(cw).verdict);
    const auto emb = embed_single(construct_lifted_code(6, {{11, 1}}, {{1}}), 2, 3);
    for (const auto& cw : emb.codewords) EXPECT_FALSE(is_exceptional_pattern(cw).verdict);
}

TEST(MixedWeight, Verification) {
    MultiCode code = as_multi(construct_lifted_mixed({{5, 2}, {11, 1}}, {{3, {1}}, {6, {1}}}));
    EXPECT_TRUE(verify_mixed_weight_mccac(code, {3, 6}));
    EXPECT_FALSE(verify_mixed_weight_mccac(code, {3}));
}

TEST(EmbedSingle, PlacesOnChannel) {
    const auto e = embed_single(construct_qr_code(4, {{7, 1}}), 2, 3);
    EXPECT_EQ(e.M, 3);
    for (const auto& cw : e.codewords)
        for (const auto& c : cw.cells()) EXPECT_EQ(c.channel, 2);
    EXPECT_TRUE(verify_mccac(e).ok);
    EXPECT_THROW(embed_single(construct_qr_code(4, {{7, 1}}), 4, 3), PreconditionError);
}
