#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cacw/bounds.hpp"
#include "cacw/certify.hpp"
#include "cacw/codes.hpp"
#include "cacw/multi.hpp"
#include "cacw/search.hpp"

namespace cacw {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json to_json(const Provenance& p) {
    return {{"kind", p.kind}, {"name", p.name}, {"parameters", p.parameters}};
}

/// CodeObject document. Generators are written when every codeword carries one.
inline nlohmann::json to_json(const MultiCode& code,
                              const std::vector<std::optional<Int>>& generators = {}) {
    nlohmann::json j;
    j["schemaVersion"] = kSchemaVersion;
    j["M"] = code.M;
    j["L"] = code.L;
    j["weights"] = code.weights.empty() ? weight_census(code.codewords) : code.weights;
    j["amOppts"] = code.amOppts;
    auto cws = nlohmann::json::array();
    for (const auto& cw : code.codewords) {
        auto cells = nlohmann::json::array();
        for (const auto& c : cw.cells()) cells.push_back({c.channel, c.slot});
        cws.push_back(std::move(cells));
    }
    j["codewords"] = std::move(cws);
    if (!generators.empty() &&
        std::all_of(generators.begin(), generators.end(), [](const auto& g) { return g.has_value(); })) {
        auto g = nlohmann::json::array();
        for (const auto& x : generators) g.push_back(*x);
        j["generators"] = std::move(g);
    }
    j["provenance"] = to_json(code.provenance);
    return j;
}

inline nlohmann::json to_json(const SingleCode& code) {
    std::vector<std::optional<Int>> gens;
    for (const auto& cw : code.codewords) gens.push_back(cw.generator);
    return to_json(as_multi(code), gens);
}

/// A parsed CodeObject together with the verification verdicts computed on
/// load. Nothing in the file is trusted about validity.
struct LoadedCode {
    MultiCode code;
    std::vector<std::optional<Int>> generators;
    VerificationReport report;
    std::optional<bool> amOpptsOk;  ///< set when the file claims AM-OPPTS

    bool ok() const { return report.ok && amOpptsOk.value_or(true); }

    SingleCode single() const {
        SingleCode s = as_single(code);
        for (std::size_t i = 0; i < s.codewords.size() && i < generators.size(); ++i)
            s.codewords[i].generator = generators[i];
        return s;
    }
};

inline LoadedCode code_from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& what) { throw PreconditionError("code file: " + what); };
    if (!j.is_object()) fail("top level must be an object");
    for (const char* key : {"schemaVersion", "M", "L", "codewords"})
        if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    if (j["schemaVersion"] != kSchemaVersion)
        fail("unsupported schemaVersion " + j["schemaVersion"].dump());
    LoadedCode out;
    MultiCode& c = out.code;
    try {
        c.M = j["M"].get<int>();
        c.L = j["L"].get<Int>();
        if (c.M < 1 || c.L < 1) fail("M and L must be positive");
        c.amOppts = j.value("amOppts", false);
        for (const auto& cw : j["codewords"]) {
            std::vector<Cell> cells;
            for (const auto& cell : cw) {
                if (!cell.is_array() || cell.size() != 2) fail("each cell must be [channel, slot]");
                const Int slot = cell[1].get<Int>();
                if (slot < 0 || slot >= c.L) fail("slot " + std::to_string(slot) + " outside Z_L");
                cells.push_back({cell[0].get<int>(), slot});
            }
            c.codewords.emplace_back(c.M, c.L, std::move(cells));
        }
        c.weights = j.contains("weights") ? j["weights"].get<std::vector<int>>()
                                          : weight_census(c.codewords);
        if (j.contains("generators")) {
            const auto g = j["generators"].get<std::vector<Int>>();
            if (g.size() != c.codewords.size()) fail("generators and codewords differ in length");
            for (Int x : g) out.generators.push_back(x);
        }
        if (j.contains("provenance")) {
            const auto& p = j["provenance"];
            c.provenance.kind = p.value("kind", "manual");
            c.provenance.name = p.value("name", "");
            c.provenance.parameters = p.value("parameters", nlohmann::json::object());
        }
    } catch (const nlohmann::json::exception& e) {
        fail(e.what());
    }
    for (const auto& cw : c.codewords)
        if (std::find(c.weights.begin(), c.weights.end(), cw.weight()) == c.weights.end())
            fail("codeword of weight " + std::to_string(cw.weight()) + " outside the weight set");
    out.report = verify_mccac(c);
    if (c.amOppts) out.amOpptsOk = c.L >= c.max_weight() && verify_amoppts(c);
    return out;
}

inline LoadedCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(path + ": " + e.what());
    }
    return code_from_json(j);
}

inline void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j{{"name", r.name}, {"M", r.M}, {"L", r.L}, {"w", r.w},
                     {"applicable", r.applicable}};
    if (r.Lprime) j["Lprime"] = *r.Lprime;
    if (r.rawValue) j["rawValue"] = to_string(*r.rawValue);
    if (r.intBound) j["intBound"] = *r.intBound;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline std::string bounds_csv(const std::vector<BoundReport>& rows) {
    std::ostringstream os;
    os << "bound,M,L,w,Lprime,applicable,rawValue,intBound,note\n";
    for (const auto& r : rows) {
        std::string note = r.note;
        std::replace(note.begin(), note.end(), ',', ';');
        os << r.name << "," << r.M << "," << r.L << "," << r.w << ","
           << (r.Lprime ? std::to_string(*r.Lprime) : "") << "," << (r.applicable ? "yes" : "no")
           << "," << (r.rawValue ? to_string(*r.rawValue) : "") << ","
           << (r.intBound ? std::to_string(*r.intBound) : "") << "," << note << "\n";
    }
    return os.str();
}

inline nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j{{"code", c.codeName},
                     {"M", c.M},
                     {"L", c.L},
                     {"weights", c.weights},
                     {"amOppts", c.amOppts},
                     {"achievedSize", c.achievedSize}};
    auto th = nlohmann::json::array();
    for (const auto& t : c.theorems) {
        nlohmann::json x{{"theorem", t.theorem}, {"hypothesesHold", t.hypothesesHold}};
        if (t.value) x["value"] = *t.value;
        if (!t.failedHypothesis.empty()) x["failedHypothesis"] = t.failedHypothesis;
        th.push_back(std::move(x));
    }
    j["theorems"] = std::move(th);
    if (c.matchedTheorem) j["matchedTheorem"] = *c.matchedTheorem;
    if (c.optimalValue) j["optimalValue"] = *c.optimalValue;
    if (c.bestBound) j["bestBound"] = to_json(*c.bestBound);
    if (c.gap) j["gap"] = {c.gap->first, c.gap->second};
    if (c.amOpptsInterval) j["amOpptsInterval"] = {c.amOpptsInterval->first, c.amOpptsInterval->second};
    nlohmann::json census = nlohmann::json::object();
    for (const auto& [e, n] : c.occupancyCensus) census[std::to_string(e)] = n;
    j["occupancyCensus"] = std::move(census);
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

inline nlohmann::json to_json(const SearchResult& r) {
    return {{"maxSize", r.maxSize},
            {"exhaustive", r.exhaustive},
            {"nodesExplored", r.nodesExplored},
            {"candidates", r.candidates},
            {"stoppedBy", r.stoppedBy},
            {"witness", to_json(r.witness)}};
}

}  // namespace cacw
