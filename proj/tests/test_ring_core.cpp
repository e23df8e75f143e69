#include <gtest/gtest.h>

#include <random>

#include "cacw/crt.hpp"
#include "cacw/layers.hpp"
#include "cacw/number_theory.hpp"
#include "cacw/residue_set.hpp"
#include "helpers.hpp"

using namespace cacw;
using testing_helpers::to_vec;

TEST(ResidueSet, NormalizesAndSorts) {
    ResidueSet s(7, {9, -1, 2, 16});
    EXPECT_EQ(to_vec(s), (std::vector<oracle::I>{2, 6}));
    EXPECT_TRUE(s.contains(-5));
    EXPECT_EQ(s.translate(3).to_string(), ResidueSet(7, {5, 2}).to_string());
    EXPECT_THROW(ResidueSet(0), PreconditionError);
}

TEST(ResidueSet, DiffSetMatchesOracle) {
    std::mt19937_64 rng(11);
    for (Int L = 1; L <= 20; ++L)
        for (int k = 1; k <= std::min<Int>(L, 6); ++k) {
            const auto s = testing_helpers::random_subset(L, k, rng);
            const auto want = oracle::nonzero_diffs(to_vec(s), L);
            EXPECT_EQ(to_vec(diff_set(s)), std::vector<oracle::I>(want.begin(), want.end()));
            const auto t = testing_helpers::random_subset(L, std::max(1, k - 1), rng);
            const auto sd = oracle::diffset(to_vec(s), to_vec(t), L);
            EXPECT_EQ(to_vec(signed_diff(s, t)), std::vector<oracle::I>(sd.begin(), sd.end()));
            const auto ss = oracle::sumset(to_vec(s), to_vec(t), L);
            EXPECT_EQ(to_vec(sumset(s, t)), std::vector<oracle::I>(ss.begin(), ss.end()));
        }
}

TEST(ResidueSet, MixedModuliRejected) {
    EXPECT_THROW(sumset(ResidueSet(5, {1}), ResidueSet(6, {1})), PreconditionError);
}

TEST(Stabilizer, MatchesOracleOnAllSubsets) {
    for (Int L = 1; L <= 12; ++L)
        for (std::uint32_t mask = 1; mask < (1u << L); ++mask) {
            std::vector<Int> e;
            for (Int t = 0; t < L; ++t)
                if (mask >> t & 1) e.push_back(t);
            const ResidueSet s(L, e);
            const std::set<oracle::I> os(e.begin(), e.end());
            ASSERT_EQ(stabilizer(s).order(), oracle::stabilizer_order(os, L)) << s.to_string();
        }
}

TEST(Stabilizer, KnownValues) {
    EXPECT_EQ(stabilizer(ResidueSet(12, {0, 3, 6, 9})).order(), 4);
    EXPECT_EQ(stabilizer(ResidueSet(12, {0, 1, 6, 7})).order(), 2);
    EXPECT_EQ(stabilizer(ResidueSet(12, {0, 1, 2})).order(), 1);
    EXPECT_EQ(stabilizer(ResidueSet::full(10)).order(), 10);
    EXPECT_THROW(stabilizer(ResidueSet(5)), PreconditionError);
    EXPECT_THROW(subgroup_of_order(5, 12), PreconditionError);
}

TEST(Kneser, ReportFields) {
    const ResidueSet a(12, {0, 4}), b(12, {0, 3, 6, 9});
    const auto r = kneser_check(a, b);
    EXPECT_EQ(r.sumsetSize, 8);
    EXPECT_EQ(r.stabilizer.order(), 4);
    EXPECT_EQ(r.strongRhs, 8 + 4 - 4);
    EXPECT_TRUE(r.strongHolds);
    EXPECT_TRUE(r.weakHolds);
}

TEST(Exceptional, SetAndPair) {
    EXPECT_TRUE(is_exceptional_set(ResidueSet(12, {0, 4, 8})));   // |A-A| = 3 <= 4
    EXPECT_FALSE(is_exceptional_set(ResidueSet(13, {0, 1, 3})));
    EXPECT_TRUE(is_exceptional_pair(ResidueSet(10, {0, 5}), ResidueSet(10, {1, 6})));
    EXPECT_FALSE(is_exceptional_pair(ResidueSet(11, {0, 1}), ResidueSet(11, {0, 3})));
}

TEST(Exceptional, PatternWitnessIsLexicographic) {
    const std::vector<ResidueSet> chans{ResidueSet(12, {0, 1}), ResidueSet(12),
                                        ResidueSet(12, {0, 6}), ResidueSet(12, {3, 9})};
    const auto r = is_exceptional_pattern(std::span<const ResidueSet>(chans));
    ASSERT_TRUE(r.verdict);
    // Channel 2 is empty and is skipped; {S3, S3} is exceptional (|{0,6}-{0,6}| = 2).
    EXPECT_EQ(*r.witness, (ExceptionalWitness{3, 3}));
    const std::vector<ResidueSet> none{ResidueSet(13, {0, 1, 3}), ResidueSet(13, {0, 5})};
    EXPECT_FALSE(is_exceptional_pattern(std::span<const ResidueSet>(none)).verdict);
}

TEST(NumberTheory, LegendreMatchesSquares) {
    for (Int p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        for (Int a = -3; a < p; ++a) ASSERT_EQ(legendre(a, p), oracle::legendre(a, p)) << a << " " << p;
    }
    EXPECT_THROW(legendre(3, 9), PreconditionError);
    EXPECT_THROW(legendre(1, 2), PreconditionError);
}

TEST(NumberTheory, FactorizeAndTau) {
    const auto f = factorize(2 * 2 * 3 * 49);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[2], (PrimePower{7, 2}));
    EXPECT_EQ(tau(12), 6);
    EXPECT_EQ(tau(1), 1);
    EXPECT_TRUE(factorize(1).empty());
    EXPECT_TRUE(prime_factors_at_least(7 * 11, 7));
    EXPECT_FALSE(prime_factors_at_least(21, 7));
    EXPECT_EQ(smallest_prime_factor(77), 7);
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_THROW(inverse_mod(2, 4), PreconditionError);
}

TEST(NumberTheory, QuadraticResidues) {
    EXPECT_EQ(to_vec(quadratic_residues(7)), (std::vector<oracle::I>{1, 2, 4}));
    EXPECT_EQ(quadratic_residues(23).size(), 11u);
}

TEST(Layers, SizesPartitionUnitsAndNonunits) {
    const LayerView v(5, 3);
    Int total = 0;
    for (int t = 0; t < 3; ++t) {
        EXPECT_EQ(static_cast<Int>(v.layer(t).size()), v.layer_size(t));
        total += v.layer_size(t);
    }
    EXPECT_EQ(total, 124);
    EXPECT_EQ(v.locate(50), (LayerPosition{2, 2}));
    EXPECT_EQ(v.locate(7), (LayerPosition{0, 2}));
    EXPECT_THROW(v.locate(0), PreconditionError);
}

TEST(Layers, LiftSize) {
    const ResidueSet a(7, {1, 2, 4});
    const auto lifted = lift_layers(a, 7, 2);
    EXPECT_EQ(lifted.size(), 3u * (49 - 1) / 6);
    const LayerView v(7, 2);
    for (Int c : lifted) EXPECT_TRUE(a.contains(v.locate(c).digit));
    EXPECT_THROW(lift_layers(ResidueSet(7, {0, 1}), 7, 2), PreconditionError);
}

TEST(Crt, RoundTripAndPairEncoding) {
    const CrtSystem sys(3, {{5, 1}, {7, 2}});
    EXPECT_EQ(sys.modulus(), 3 * 5 * 49);
    EXPECT_EQ(sys.tail_modulus(), 245);
    for (Int x = 0; x < sys.modulus(); x += 17) EXPECT_EQ(crt_encode(crt_decode(x, sys), sys), x);
    const Int g = sys.encode_pair(1, 100);
    EXPECT_EQ(g % 3, 1);
    EXPECT_EQ(g % 245, 100);
    EXPECT_THROW(CrtSystem(5, {{5, 1}}), PreconditionError);
    EXPECT_THROW(CrtSystem(1, {{7, 1}, {5, 1}}), PreconditionError);
}

TEST(Crt, QrGeneratorsForSevenAndWeightFour) {
    // crt(1, a) over Z_3 x Z_7 for a in {1, 2, 4}.
    const CrtSystem sys(3, {{7, 1}});
    EXPECT_EQ(sys.encode_pair(1, 1), 1);
    EXPECT_EQ(sys.encode_pair(1, 2), 16);
    EXPECT_EQ(sys.encode_pair(1, 4), 4);
}
