#pragma once

#include <random>
#include <vector>

#include "cacw/codes.hpp"
#include "oracle.hpp"

namespace testing_helpers {

inline std::vector<oracle::Pattern> patterns(const cacw::MultiCode& code) {
    std::vector<oracle::Pattern> out;
    for (const auto& cw : code.codewords) {
        oracle::Pattern p;
        for (const auto& c : cw.cells()) p.push_back({c.channel, c.slot});
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<oracle::Pattern> patterns(const cacw::SingleCode& code) {
    return patterns(cacw::as_multi(code));
}

/// Uniform random w-subset of I_M x Z_L.
inline cacw::MultiCodeword random_pattern(int M, cacw::Int L, int w, std::mt19937_64& rng) {
    std::vector<cacw::Cell> all;
    for (int i = 1; i <= M; ++i)
        for (cacw::Int t = 0; t < L; ++t) all.push_back({i, t});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(w));
    return cacw::MultiCodeword(M, L, all);
}

inline cacw::ResidueSet random_subset(cacw::Int L, int size, std::mt19937_64& rng) {
    std::vector<cacw::Int> all(static_cast<std::size_t>(L));
    for (cacw::Int t = 0; t < L; ++t) all[static_cast<std::size_t>(t)] = t;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(size));
    return cacw::ResidueSet(L, all);
}

inline std::vector<oracle::I> to_vec(const cacw::ResidueSet& s) {
    return {s.begin(), s.end()};
}

}  // namespace testing_helpers
