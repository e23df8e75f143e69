#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cacw/bounds.hpp"
#include "cacw/certify.hpp"
#include "cacw/io.hpp"
#include "cacw/multi.hpp"
#include "cacw/qr_classes.hpp"
#include "cacw/search.hpp"
#include "cacw/sim.hpp"
#include "cacw/single.hpp"

namespace cacw::app {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("CACW_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw PreconditionError("CACW_BUDGET is not a number: " + std::string(env));
        }
    }
    return 100'000'000;
}

/// "7^1,11^2,13" -> [(7,1),(11,2),(13,1)]
inline std::vector<PrimePower> parse_prime_powers(const std::string& text) {
    std::vector<PrimePower> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto caret = tok.find('^');
        try {
            PrimePower pp;
            pp.prime = std::stoll(tok.substr(0, caret));
            pp.exponent = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
            detail::require(is_prime(pp.prime) && pp.exponent >= 1, "bad prime power '" + tok + "'");
            out.push_back(pp);
        } catch (const std::logic_error&) {
            throw PreconditionError("bad prime power '" + tok + "'");
        }
    }
    detail::require(!out.empty(), "--prime-powers is empty");
    return out;
}

/// "lo..hi"
inline std::pair<Int, Int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    detail::require(dots != std::string::npos, "range must look like lo..hi");
    try {
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw PreconditionError("bad range '" + text + "'");
    }
}

/// Base generator sets, one per prime. "auto" takes the first maximum family
/// from search_equidiff; otherwise "1,3;;2" lists generators per prime.
inline std::vector<std::vector<Int>> resolve_bases(const std::string& spec,
                                                   const std::vector<PrimePower>& pps,
                                                   const std::vector<int>& weights) {
    std::vector<std::vector<Int>> out;
    if (spec == "auto") {
        for (std::size_t i = 0; i < pps.size(); ++i) {
            const int w = weights[i];
            const Int p = pps[i].prime;
            if (p < 2 * w - 1) {
                out.emplace_back();
                continue;
            }
            const auto fam = search_equidiff(p, w, 1);
            out.push_back(fam.generatorFamilies.empty() ? std::vector<Int>{}
                                                        : fam.generatorFamilies.front());
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string group;
    while (std::getline(ss, group, ';')) {
        std::vector<Int> gens;
        std::stringstream gs(group);
        std::string tok;
        while (std::getline(gs, tok, ','))
            if (!tok.empty()) {
                try {
                    gens.push_back(std::stoll(tok));
                } catch (const std::logic_error&) {
                    throw PreconditionError("bad generator '" + tok + "'");
                }
            }
        out.push_back(std::move(gens));
    }
    if (!spec.empty() && spec.back() == ';') out.emplace_back();
    detail::require(out.size() == pps.size(),
                    "--base needs one ';'-separated generator list per prime");
    return out;
}

inline void emit(const nlohmann::json& j, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") out << j.dump(2) << "\n";
    else save_json(j, path);
}

inline LoadedCode load_checked(const std::string& path) {
    try {
        return load_code(path);
    } catch (const PreconditionError& e) {
        throw VerificationError(e.what());
    }
}

/// Runs the tool on argv-style arguments (program name excluded).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Workbench for conflict-avoiding codes", "cacw"};
    app.require_subcommand(1);

    // construct
    std::string outPath;
    int w = 0, M = 0;
    Int L = 0, Lprime = 0;
    std::string ppText, baseSpec = "auto";
    std::vector<int> mixedWeights;
    bool amFlag = false;

    auto* construct = app.add_subcommand("construct", "Build a code and write it as JSON");
    construct->require_subcommand(1);
    auto* cQr = construct->add_subcommand("qr", "Quadratic-residue code of length (w-1)L'");
    auto* cLifted = construct->add_subcommand("lifted", "Lifted equi-difference code");
    auto* cMixed = construct->add_subcommand("lifted-mixed", "Mixed-weight lifted code");
    auto* cTwo = construct->add_subcommand("two-channel", "Two-channel code of length (w-1)L'");
    auto* cMch = construct->add_subcommand("m-channel", "M-channel code of length (2w/M-1)L'");
    for (auto* sc : {cQr, cLifted, cTwo, cMch}) sc->add_option("--w", w, "Weight")->required();
    for (auto* sc : {cQr, cLifted, cMixed, cTwo})
        sc->add_option("--prime-powers", ppText, "Comma list like 7^1,11")->required();
    for (auto* sc : {cLifted, cMixed, cTwo, cMch})
        sc->add_option("--base", baseSpec, "auto, or generators per prime like 1;3,4")
            ->capture_default_str();
    cMixed->add_option("--weights", mixedWeights, "Weight per prime")->required()->delimiter(',');
    cTwo->add_flag("--amoppts", amFlag, "Drop the last codeword");
    cMch->add_option("--M", M, "Channels")->required();
    cMch->add_option("--Lprime", Lprime, "L'")->required();
    cMch->add_flag("--amoppts", amFlag, "Drop the g=0 codeword");
    for (auto* sc : {cQr, cLifted, cMixed, cTwo, cMch})
        sc->add_option("-o,--output", outPath, "Output file (default stdout)");

    // verify
    std::string file;
    std::vector<int> verifyMixed;
    auto* verify = app.add_subcommand("verify", "Re-verify a code file");
    verify->add_option("file", file)->required();
    verify->add_flag("--amoppts", amFlag, "Also require at most one packet per slot");
    verify->add_option("--mixed", verifyMixed, "Allowed weight set")->delimiter(',');

    // bound
    std::optional<Int> boundLprime;
    std::string format = "csv";
    auto* bound = app.add_subcommand("bound", "Evaluate every upper bound");
    bound->add_option("--M", M)->default_val(1);
    bound->add_option("--L", L)->required();
    bound->add_option("--w", w)->required();
    bound->add_option("--Lprime", boundLprime);
    bound->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    // search
    std::optional<std::uint64_t> budget;
    unsigned workers = 1;
    bool noSymmetry = false, theory = false;
    auto* search = app.add_subcommand("search", "Exact maximum code size by branch and bound");
    search->add_option("--M", M)->default_val(1);
    search->add_option("--L", L)->required();
    search->add_option("--w", w)->required();
    search->add_flag("--amoppts", amFlag, "Search AM-OPPTS codes");
    search->add_option("--budget", budget, "Node budget (default $CACW_BUDGET or 1e8)");
    search->add_option("--workers", workers)->capture_default_str();
    search->add_flag("--no-symmetry", noSymmetry);
    search->add_flag("--theory-bounds", theory, "Stop when a closed-form bound is met");
    search->add_option("-o,--output", outPath);

    // certify
    auto* cert = app.add_subcommand("certify", "Compare a code with theorems and bounds");
    cert->add_option("file", file)->required();
    cert->add_option("-o,--output", outPath);

    // simulate
    int k = 0;
    std::uint64_t trials = 0, seed = 1;
    bool exhaustive = false;
    std::string heatmap;
    auto* sim = app.add_subcommand("simulate", "Frame-level collision simulation");
    sim->add_option("file", file)->required();
    sim->add_option("--k", k, "Active users")->required();
    auto* trialsOpt = sim->add_option("--trials", trials);
    auto* exOpt = sim->add_flag("--exhaustive", exhaustive, "Check every configuration");
    trialsOpt->excludes(exOpt);
    sim->add_option("--seed", seed)->capture_default_str();
    sim->add_option("--budget", budget);
    sim->add_option("--heatmap", heatmap, "Write per-cell collision counts as CSV");
    sim->add_option("-o,--output", outPath);

    // qr-check
    std::string range = "2..100";
    bool allRows = false;
    auto* qr = app.add_subcommand("qr-check", "Primes satisfying the quadratic-residue conditions");
    qr->add_option("--w", w)->required();
    qr->add_option("--p-range", range)->capture_default_str();
    qr->add_flag("--all", allRows, "List failing primes too");
    qr->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (construct->parsed()) {
            nlohmann::json doc;
            if (cQr->parsed()) {
                doc = to_json(construct_qr_code(w, parse_prime_powers(ppText)));
            } else if (cLifted->parsed()) {
                const auto pps = parse_prime_powers(ppText);
                const auto bases = resolve_bases(baseSpec, pps, std::vector<int>(pps.size(), w));
                doc = to_json(construct_lifted_code(w, pps, bases));
            } else if (cMixed->parsed()) {
                const auto pps = parse_prime_powers(ppText);
                detail::require(mixedWeights.size() == pps.size(), "--weights needs one weight per prime");
                const auto bases = resolve_bases(baseSpec, pps, mixedWeights);
                std::vector<MixedBaseSpec> specs;
                for (std::size_t i = 0; i < pps.size(); ++i) specs.push_back({mixedWeights[i], bases[i]});
                doc = to_json(construct_lifted_mixed(pps, specs));
            } else if (cTwo->parsed()) {
                const auto pps = parse_prime_powers(ppText);
                const auto bases = resolve_bases(baseSpec, pps, std::vector<int>(pps.size(), w));
                doc = to_json(construct_two_channel(w, pps, bases, amFlag));
            } else {
                detail::require(Lprime >= 2, "--Lprime must be >= 2");
                const auto pps = factorize(Lprime);
                const auto bases = resolve_bases(baseSpec, pps, std::vector<int>(pps.size(), w));
                const auto base = construct_lifted_code(w, pps, bases);
                doc = to_json(construct_m_channel(M, w, Lprime, base, amFlag));
            }
            if (baseSpec == "auto") doc["provenance"]["parameters"]["baseSource"] = "search_equidiff";
            // Re-read what will be written so the file is known to verify.
            const auto check = code_from_json(doc);
            if (!check.ok()) {
                err << "constructed code failed verification: " << check.report.describe() << "\n";
                return kFailure;
            }
            emit(doc, outPath, out);
            err << "constructed " << check.code.size() << " codewords, M=" << check.code.M
                << ", L=" << check.code.L << (check.code.amOppts ? ", AM-OPPTS" : "") << "\n";
            return kOk;
        }

        if (verify->parsed()) {
            const auto lc = load_checked(file);
            nlohmann::json rep{{"file", file},
                               {"codewords", lc.code.size()},
                               {"M", lc.code.M},
                               {"L", lc.code.L},
                               {"valid", lc.report.ok}};
            bool ok = lc.report.ok;
            if (!lc.report.ok) rep["conflict"] = lc.report.describe();
            if (lc.amOpptsOk) {
                rep["amOpptsClaimHolds"] = *lc.amOpptsOk;
                ok = ok && *lc.amOpptsOk;
            }
            if (amFlag) {
                const bool am = verify_amoppts(lc.code);
                rep["amOppts"] = am;
                ok = ok && am;
            }
            if (!verifyMixed.empty()) {
                const bool mixed = verify_mixed_weight_mccac(lc.code, verifyMixed);
                rep["mixedWeight"] = mixed;
                ok = ok && mixed;
            }
            out << rep.dump(2) << "\n";
            return ok ? kOk : kFailure;
        }

        if (bound->parsed()) {
            const auto rows = bound_table(M, L, w, boundLprime);
            if (format == "json") {
                auto arr = nlohmann::json::array();
                for (const auto& r : rows) arr.push_back(to_json(r));
                nlohmann::json doc{{"rows", arr}};
                if (auto best = best_bound(rows)) doc["best"] = to_json(*best);
                if (w >= M && w >= 2) doc["conjecturedRatio"] = to_string(conjectured_ratio(M, w));
                out << doc.dump(2) << "\n";
            } else {
                out << bounds_csv(rows);
            }
            return kOk;
        }

        if (search->parsed()) {
            SearchOptions opts;
            opts.nodeBudget = budget ? *budget : default_budget();
            opts.symmetry = !noSymmetry;
            opts.theoryBounds = theory;
            opts.workers = std::max(1u, workers);
            const auto res = amFlag ? max_amoppts(M, L, w, opts) : max_mccac(M, L, w, opts);
            emit(to_json(res), outPath, out);
            err << (amFlag ? "A(" : "K(") << M << "," << L << "," << w << ") "
                << (res.exhaustive ? "= " : ">= ") << res.maxSize << " after " << res.nodesExplored
                << " nodes\n";
            return res.exhaustive || res.stoppedBy.starts_with("bound") ? kOk : kBudget;
        }

        if (cert->parsed()) {
            const auto lc = load_checked(file);
            if (!lc.ok()) {
                err << file << ": " << (lc.report.ok ? "AM-OPPTS claim fails" : lc.report.describe())
                    << "\n";
                return kFailure;
            }
            emit(to_json(certify(lc.code)), outPath, out);
            return kOk;
        }

        if (sim->parsed()) {
            const auto lc = load_checked(file);
            if (!lc.ok()) {
                err << file << ": " << (lc.report.ok ? "AM-OPPTS claim fails" : lc.report.describe())
                    << "\n";
                return kFailure;
            }
            if (exhaustive) {
                GuaranteeOptions go;
                go.nodeBudget = budget ? *budget : default_budget();
                const auto g = exhaustive_guarantee(lc.code, k, go);
                emit(to_json(g, k), outPath, out);
                return g.holds ? kOk : kFailure;
            }
            detail::require(trials >= 1, "simulate needs --trials N or --exhaustive");
            const auto rep = random_campaign(lc.code, k, trials, seed);
            emit(to_json(rep), outPath, out);
            if (!heatmap.empty()) {
                std::ofstream h(heatmap);
                if (!h) throw PreconditionError("cannot write " + heatmap);
                h << heatmap_csv(rep, lc.code.M, lc.code.L);
            }
            return rep.failures == 0 ? kOk : kFailure;
        }

        if (qr->parsed()) {
            const auto [lo, hi] = parse_range(range);
            const auto rows = qr_check(w, lo, hi);
            const QrClassList* cls = qr_class_list(w);
            if (format == "json") {
                auto arr = nlohmann::json::array();
                for (const auto& r : rows) {
                    if (!allRows && !r.passes() && r.agrees()) continue;
                    nlohmann::json x{{"p", r.p}, {"q1", r.q1}, {"q2", r.q2}, {"passes", r.passes()}};
                    if (cls) x["listed"] = r.listed;
                    if (cls && !r.agrees()) x["flag"] = qr_discrepancy(r);
                    arr.push_back(std::move(x));
                }
                nlohmann::json doc{{"w", w}, {"range", {lo, hi}}, {"rows", arr}};
                if (cls) doc["publishedClasses"] = {{"modulus", cls->modulus}, {"residues", cls->residues}};
                out << doc.dump(2) << "\n";
            } else {
                out << "p,p_mod,q1,q2,passes,listed,flag\n";
                for (const auto& r : rows) {
                    if (!allRows && !r.passes() && r.agrees()) continue;
                    out << r.p << "," << (cls ? std::to_string(mod(r.p, cls->modulus)) : "") << ","
                        << r.q1 << "," << r.q2 << "," << r.passes() << ","
                        << (cls ? (r.listed ? "1" : "0") : "") << ","
                        << (cls ? qr_discrepancy(r) : "") << "\n";
                }
            }
            return kOk;
        }
    } catch (const BudgetError& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const ConstructionError& e) {
        err << e.what() << "\n";
        return kFailure;
    } catch (const VerificationError& e) {
        err << e.what() << "\n";
        return kFailure;
    } catch (const PreconditionError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cacw::app
