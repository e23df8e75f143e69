#pragma once

#include <array>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "cacw/codes.hpp"
#include "cacw/crt.hpp"
#include "cacw/layers.hpp"
#include "cacw/number_theory.hpp"

namespace cacw {

/// Disjoint-difference-set check. Reports the lexicographically first
/// (codeword pair, residue) clash; codeword indices are 0-based.
inline VerificationReport verify_cac(const SingleCode& code) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    const Int L = code.L;
    // Two smallest codeword indices whose d* contains each residue.
    std::vector<std::array<std::size_t, 2>> owners(static_cast<std::size_t>(L), {none, none});
    for (std::size_t k = 0; k < code.codewords.size(); ++k) {
        detail::require(code.codewords[k].elements.modulus() == L,
                        "verify_cac: codeword modulus differs from code length");
        for (Int r : diff_set(code.codewords[k].elements)) {
            auto& o = owners[static_cast<std::size_t>(r)];
            if (o[0] == none) o[0] = k;
            else if (o[1] == none) o[1] = k;
        }
    }
    VerificationReport report;
    for (Int r = 1; r < L; ++r) {
        const auto& o = owners[static_cast<std::size_t>(r)];
        if (o[1] == none) continue;
        Conflict c{o[0], o[1], 1, 1, r};
        if (!report.firstConflict ||
            std::tie(c.first, c.second) < std::tie(report.firstConflict->first,
                                                   report.firstConflict->second))
            report.firstConflict = c;
    }
    report.ok = !report.firstConflict.has_value();
    return report;
}

struct QrReport {
    bool q1 = false;              ///< (-1/p) = -1
    std::vector<int> q2Failures;  ///< j in 1..w-2 with (j/p)((j-w+1)/p) != -1

    bool passes() const { return q1 && q2Failures.empty(); }
};

/// Quadratic-residue conditions on a prime p for weight w:
///   (-1/p) = -1  and  (j/p)((j-w+1)/p) = -1 for j = 1..w-2.
inline QrReport qr_conditions(int w, Int p) {
    detail::require(is_prime(p), "qr_conditions: " + std::to_string(p) + " is not prime");
    detail::require(p >= w, "qr_conditions: p=" + std::to_string(p) + " is smaller than w=" +
                                std::to_string(w));
    QrReport r;
    r.q1 = legendre(-1, p) == -1;
    for (int j = 1; j <= w - 2; ++j)
        if (legendre(j, p) * legendre(j - w + 1, p) != -1) r.q2Failures.push_back(j);
    return r;
}

/// Whether sum_{i<=t} (2w-1-p_i) <= w-1, where t counts the primes below 2w-1.
inline bool optimality_condition_w1(int w, const std::vector<Int>& primes) {
    Int sum = 0;
    for (Int p : primes)
        if (p < 2 * w - 1) sum += 2 * w - 1 - p;
    return sum <= w - 1;
}

namespace detail {

inline nlohmann::json prime_powers_json(const std::vector<PrimePower>& pps) {
    auto arr = nlohmann::json::array();
    for (const auto& pp : pps) arr.push_back({pp.prime, pp.exponent});
    return arr;
}

inline void require_increasing_primes(const std::vector<PrimePower>& pps) {
    require(!pps.empty(), "at least one prime power is required");
    Int prev = 1;
    for (const auto& pp : pps) {
        require(is_prime(pp.prime), std::to_string(pp.prime) + " is not prime");
        require(pp.exponent >= 1, "exponents must be >= 1");
        require(pp.prime > prev, "primes must be strictly increasing");
        prev = pp.prime;
    }
}

/// Elements of Z_{L'} with coordinates (0,...,0,g,x_{i+1},...,x_n), g drawn
/// from `lifted` in ascending order, trailing coordinates in odometer order.
inline std::vector<Int> layered_tuples(const CrtSystem& sys, std::size_t i,
                                       const ResidueSet& lifted) {
    const auto& pps = sys.prime_powers();
    const std::size_t n = pps.size();
    std::vector<Int> out;
    std::vector<Int> coords(n, 0);
    for (Int g : lifted) {
        coords.assign(n, 0);
        coords[i] = g;
        while (true) {
            out.push_back(sys.encode_tail(coords));
            bool advanced = false;
            for (std::size_t k = n; k > i + 1 && !advanced;) {
                --k;
                if (++coords[k] < pps[k].value()) advanced = true;
                else coords[k] = 0;
            }
            if (!advanced) break;
        }
    }
    return out;
}

/// Checks that generators `gens` give an equi-difference CAC of weight w in Z_p.
inline void require_equidiff_base(Int p, int w, const std::vector<Int>& gens) {
    SingleCode base;
    base.L = p;
    base.weights = {w};
    for (Int g : gens) {
        if (mod(g, p) == 0)
            throw ConstructionError("base generator 0 is invalid for p=" + std::to_string(p));
        try {
            base.codewords.push_back(make_equidiff(g, w, p));
        } catch (const PreconditionError&) {
            throw ConstructionError("base generator " + std::to_string(g) +
                                    " does not give a weight-" + std::to_string(w) +
                                    " codeword for p=" + std::to_string(p));
        }
    }
    if (!verify_cac(base).ok)
        throw ConstructionError("base generators for p=" + std::to_string(p) +
                                " do not form a CAC^e(" + std::to_string(p) + "," +
                                std::to_string(w) + ")");
}

/// Lifted equi-difference code of length ∏pi^ri where prime i contributes
/// weight ws[i] codewords generated from its base generator set.
inline SingleCode lifted_equidiff(const std::vector<PrimePower>& pps, const std::vector<int>& ws,
                                  const std::vector<std::vector<Int>>& bases) {
    require_increasing_primes(pps);
    require(ws.size() == pps.size() && bases.size() == pps.size(),
            "one weight and one base generator set per prime is required");
    for (std::size_t i = 0; i < pps.size(); ++i) {
        require(ws[i] >= 2, "weights must be >= 2");
        if (pps[i].prime < 2 * ws[i] - 1)
            throw ConstructionError("p=" + std::to_string(pps[i].prime) + " is smaller than 2w-1=" +
                                    std::to_string(2 * ws[i] - 1));
        require_equidiff_base(pps[i].prime, ws[i], bases[i]);
    }
    const CrtSystem sys(1, pps);
    SingleCode code;
    code.L = sys.modulus();
    std::set<int> weightSet(ws.begin(), ws.end());
    code.weights.assign(weightSet.begin(), weightSet.end());
    for (std::size_t i = 0; i < pps.size(); ++i) {
        if (bases[i].empty()) continue;
        const ResidueSet digits(pps[i].prime, bases[i]);
        const ResidueSet lifted = lift_layers(digits, pps[i].prime, pps[i].exponent);
        for (Int a : layered_tuples(sys, i, lifted))
            code.codewords.push_back(make_equidiff(a, ws[i], code.L));
    }
    return code;
}

inline void require_verified(const SingleCode& code, const std::string& what) {
    const auto report = verify_cac(code);
    if (!report.ok) throw ConstructionError(what + " produced an invalid code: " + report.describe());
}

}  // namespace detail

/// Equi-difference code of length (w-1)·∏pi^ri and size (∏pi^ri - 1)/2,
/// generated by the CRT images of (1, a) with a ranging over the lifted
/// quadratic-residue tuples.
inline SingleCode construct_qr_code(int w, const std::vector<PrimePower>& primePowers) {
    detail::require(w >= 2, "construct_qr_code: w must be >= 2");
    detail::require_increasing_primes(primePowers);
    if (primePowers.front().prime < w)
        throw ConstructionError("p1=" + std::to_string(primePowers.front().prime) +
                                " is smaller than w=" + std::to_string(w));
    for (const auto& pp : primePowers) {
        if (pp.prime == 2) throw ConstructionError("Q1 fails for p=2");
        const auto qr = qr_conditions(w, pp.prime);
        if (!qr.q1) throw ConstructionError("Q1 fails for p=" + std::to_string(pp.prime));
        if (!qr.q2Failures.empty())
            throw ConstructionError("Q2 fails for p=" + std::to_string(pp.prime) +
                                    " at j=" + std::to_string(qr.q2Failures.front()));
    }
    const CrtSystem sys(w - 1, primePowers);
    SingleCode code;
    code.L = sys.modulus();
    code.weights = {w};
    for (std::size_t i = 0; i < primePowers.size(); ++i) {
        const auto& pp = primePowers[i];
        const ResidueSet lifted = lift_layers(quadratic_residues(pp.prime), pp.prime, pp.exponent);
        for (Int a : detail::layered_tuples(sys, i, lifted)) {
            const Int g = sys.encode_pair(1, a);
            code.codewords.push_back(make_equidiff(g, w, code.L));
        }
    }
    code.provenance = {"construction", "qr",
                       {{"w", w}, {"primePowers", detail::prime_powers_json(primePowers)}}};
    detail::require_verified(code, "construct_qr_code");
    return code;
}

/// Equi-difference code of length ∏pi^ri lifted from base codes
/// CAC^e(pi, w) given by their generator sets; requires p1 >= 2w-1.
inline SingleCode construct_lifted_code(int w, const std::vector<PrimePower>& primePowers,
                                        const std::vector<std::vector<Int>>& baseGenerators) {
    detail::require(w >= 2, "construct_lifted_code: w must be >= 2");
    auto code = detail::lifted_equidiff(
        primePowers, std::vector<int>(primePowers.size(), w), baseGenerators);
    code.provenance = {"construction", "lifted",
                       {{"w", w},
                        {"primePowers", detail::prime_powers_json(primePowers)},
                        {"baseGenerators", baseGenerators}}};
    detail::require_verified(code, "construct_lifted_code");
    return code;
}

struct MixedBaseSpec {
    int weight = 2;
    std::vector<Int> generators;
};

/// Mixed-weight variant: prime i contributes codewords of weight wi lifted
/// from a CAC^e(pi, wi) base; requires pi >= 2wi-1.
inline SingleCode construct_lifted_mixed(const std::vector<PrimePower>& primePowers,
                                         const std::vector<MixedBaseSpec>& baseSpecs) {
    detail::require(baseSpecs.size() == primePowers.size(),
                    "construct_lifted_mixed: one base per prime is required");
    std::vector<int> ws;
    std::vector<std::vector<Int>> gens;
    auto specs = nlohmann::json::array();
    for (const auto& b : baseSpecs) {
        ws.push_back(b.weight);
        gens.push_back(b.generators);
        specs.push_back({{"w", b.weight}, {"generators", b.generators}});
    }
    auto code = detail::lifted_equidiff(primePowers, ws, gens);
    code.provenance = {"construction", "lifted-mixed",
                       {{"primePowers", detail::prime_powers_json(primePowers)},
                        {"bases", specs}}};
    detail::require_verified(code, "construct_lifted_mixed");
    return code;
}

struct CoverageReport {
    ResidueSet used;    ///< union of all d*(S)
    ResidueSet unused;  ///< Z*_L minus used
    bool tight = false;
};

inline CoverageReport coverage_report(const SingleCode& code) {
    const auto v = verify_cac(code);
    if (!v.ok) throw VerificationError("coverage_report: " + v.describe());
    std::vector<char> present(static_cast<std::size_t>(code.L), 0);
    for (const auto& cw : code.codewords)
        for (Int r : diff_set(cw.elements)) present[static_cast<std::size_t>(r)] = 1;
    CoverageReport r;
    r.used = ResidueSet::from_indicator(present);
    r.unused = set_minus(ResidueSet::nonzero(code.L), r.used);
    r.tight = r.unused.empty();
    return r;
}

}  // namespace cacw
