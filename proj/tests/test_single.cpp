#include <gtest/gtest.h>

#include "cacw/search.hpp"
#include "cacw/single.hpp"
#include "helpers.hpp"

using namespace cacw;
using testing_helpers::patterns;

TEST(VerifyCac, AgreesWithShiftOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const Int L = 7 + static_cast<Int>(rng() % 10);
        const int w = 2 + static_cast<int>(rng() % 3);
        SingleCode code;
        code.L = L;
        code.weights = {w};
        const int n = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i)
            code.codewords.push_back({testing_helpers::random_subset(L, w, rng), {}});
        ASSERT_EQ(verify_cac(code).ok, oracle::is_code(patterns(code), L));
    }
}

TEST(VerifyCac, ReportsConflictLocation) {
    SingleCode code;
    code.L = 13;
    code.codewords = {{ResidueSet(13, {0, 1, 3}), {}}, {ResidueSet(13, {0, 4, 9}), {}},
                      {ResidueSet(13, {0, 2, 7}), {}}};
    const auto r = verify_cac(code);
    ASSERT_FALSE(r.ok);
    EXPECT_EQ(r.firstConflict->first, 0u);
    EXPECT_EQ(r.firstConflict->second, 2u);
    EXPECT_EQ(r.firstConflict->residue, 2);
}

TEST(QrConditions, SmallCases) {
    EXPECT_TRUE(qr_conditions(4, 7).passes());
    const auto r5 = qr_conditions(4, 5);
    EXPECT_FALSE(r5.q1);
    const auto r11 = qr_conditions(4, 11);
    EXPECT_TRUE(r11.q1);
    EXPECT_FALSE(r11.q2Failures.empty());
    EXPECT_THROW(qr_conditions(4, 9), PreconditionError);
    EXPECT_THROW(qr_conditions(8, 5), PreconditionError);
}

TEST(QrConstruction, LengthTwentyOne) {
    const auto code = construct_qr_code(4, {{7, 1}});
    EXPECT_EQ(code.L, 21);
    ASSERT_EQ(code.size(), 3u);
    std::vector<Int> gens;
    for (const auto& cw : code.codewords) gens.push_back(*cw.generator);
    EXPECT_EQ(gens, (std::vector<Int>{1, 16, 4}));
    EXPECT_TRUE(oracle::is_code(patterns(code), 21));
}

TEST(QrConstruction, RejectsFailingPrimes) {
    try {
        construct_qr_code(4, {{5, 1}});
        FAIL() << "expected ConstructionError";
    } catch (const ConstructionError& e) {
        EXPECT_STREQ(e.what(), "Q1 fails for p=5");
    }
    EXPECT_THROW(construct_qr_code(4, {{11, 1}}), ConstructionError);
    EXPECT_THROW(construct_qr_code(4, {{23, 1}, {7, 1}}), PreconditionError);
}

TEST(QrConstruction, SizesAndDifferenceCounts) {
    struct Case {
        int w;
        std::vector<PrimePower> pps;
    };
    const std::vector<Case> cases{{3, {{3, 1}}},           {3, {{7, 1}, {11, 1}}}, {4, {{7, 2}}},
                                  {4, {{7, 1}, {23, 1}}},  {5, {{11, 1}}},         {6, {{19, 1}}},
                                  {3, {{3, 2}, {7, 1}}}};
    for (const auto& c : cases) {
        const auto code = construct_qr_code(c.w, c.pps);
        Int prod = 1;
        for (const auto& pp : c.pps) prod *= pp.value();
        EXPECT_EQ(static_cast<Int>(code.size()), (prod - 1) / 2);
        EXPECT_EQ(code.L, (c.w - 1) * prod);
        EXPECT_TRUE(verify_cac(code).ok);
        for (const auto& cw : code.codewords)
            EXPECT_EQ(static_cast<int>(diff_set(cw.elements).size()), 2 * (c.w - 1));
    }
    // Exhaustive shift check on the smaller instances.
    EXPECT_TRUE(oracle::is_code(patterns(construct_qr_code(4, {{7, 2}})), 3 * 49));
}

TEST(OptimalityCondition, SumRule) {
    EXPECT_TRUE(optimality_condition_w1(4, {7}));
    EXPECT_TRUE(optimality_condition_w1(4, {5}));       // 7-5 = 2 <= 3
    EXPECT_FALSE(optimality_condition_w1(4, {5, 3}));   // 2 + 4 > 3
    EXPECT_TRUE(optimality_condition_w1(6, {7, 11}));   // 4 <= 5
}

TEST(LiftedConstruction, TwentyFiveWeightThree) {
    const auto base = search_equidiff(5, 3);
    ASSERT_EQ(base.maxCount, 1);
    const auto code = construct_lifted_code(3, {{5, 2}}, {base.generatorFamilies.front()});
    EXPECT_EQ(code.size(), 6u);
    EXPECT_TRUE(oracle::is_code(patterns(code), 25));
    const auto cov = coverage_report(code);
    EXPECT_TRUE(cov.tight);
    EXPECT_TRUE(cov.unused.empty());

    const auto five = construct_lifted_code(3, {{5, 1}}, {{1}});
    EXPECT_EQ(five.size(), 1u);
    EXPECT_TRUE(coverage_report(five).tight);
}

TEST(LiftedConstruction, CoverageTightOnlyWithFullBases) {
    // p = 13, w = 3: (13-1)/4 = 3 codewords are needed for tightness.
    const auto fam = search_equidiff(13, 3);
    ASSERT_EQ(fam.maxCount, 3);
    const auto full = construct_lifted_code(3, {{13, 1}}, {fam.generatorFamilies.front()});
    EXPECT_TRUE(coverage_report(full).tight);
    const auto partial = construct_lifted_code(
        3, {{13, 1}}, {{fam.generatorFamilies.front().front()}});
    EXPECT_FALSE(coverage_report(partial).tight);
    EXPECT_EQ(coverage_report(partial).unused.size(), 8u);
}

TEST(LiftedConstruction, RejectsBadBases) {
    EXPECT_THROW(construct_lifted_code(3, {{5, 1}}, {{1, 2}}), ConstructionError);
    EXPECT_THROW(construct_lifted_code(4, {{5, 1}}, {{1}}), ConstructionError);
}

TEST(LiftedMixed, TwoHundredSeventyFive) {
    const auto code = construct_lifted_mixed({{5, 2}, {11, 1}}, {{3, {1}}, {6, {1}}});
    EXPECT_EQ(code.L, 275);
    EXPECT_EQ(code.size(), 67u);
    EXPECT_EQ(code.weights, (std::vector<int>{3, 6}));
    EXPECT_TRUE(verify_cac(code).ok);
}

TEST(Translation, VerdictInvariant) {
    auto code = construct_qr_code(4, {{7, 1}, {23, 1}});
    std::mt19937_64 rng(3);
    for (auto& cw : code.codewords) {
        const Int x = static_cast<Int>(rng() % code.L);
        EXPECT_EQ(diff_set(cw.elements.translate(x)).to_string(), diff_set(cw.elements).to_string());
        cw.elements = cw.elements.translate(x);
    }
    EXPECT_TRUE(verify_cac(code).ok);
}
