#pragma once

// Machine-readable run reports: one JSON document per run with stable key
// order, so identical inputs give byte-identical output. Timing is only
// included on request, keeping the default document reproducible.

#include <json.hpp>

#include <string>

#include "lv3/obstructions.hpp"
#include "lv3/series.hpp"

namespace lv3 {

using Json = nlohmann::ordered_json;

inline const char* tool_version() { return "0.1.0"; }

inline Json report_skeleton(const std::string& command) {
    Json r;
    r["tool"] = "lv3";
    r["version"] = tool_version();
    r["command"] = command;
    r["inputs"] = Json::object();
    r["results"] = Json::object();
    return r;
}

inline std::string render_report(const Json& r) { return r.dump(2) + "\n"; }

inline Json json_triple(const std::array<Rational, 3>& t) {
    Json a = Json::array();
    for (const Rational& v : t)
        a.push_back(v.str());
    return a;
}

inline Json json_expo(const Expo3& e) {
    Json a = Json::array();
    for (int i = 0; i < 3; ++i)
        a.push_back(e[i]);
    return a;
}

inline Json json_system(const LVSystem& s) {
    Json r;
    Json eigs = Json::array();
    for (const Rational& v : s.eigs)
        eigs.push_back(static_cast<long long>(v.to_long()));
    r["eigenvalues"] = eigs;
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j)
            row.push_back(s.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].str());
        rows.push_back(row);
    }
    r["matrix"] = rows;
    return r;
}

inline Json json_series(const TruncatedSeries<Rational>& u) {
    Json terms = Json::array();
    for (const auto& [e, c] : u.coefficients()) {
        Json t;
        t["exponent"] = json_expo(e);
        t["value"] = c.str();
        terms.push_back(t);
    }
    Json r;
    r["order"] = u.order();
    r["terms"] = terms;
    return r;
}

inline Json json_obstructions(const std::vector<std::pair<Expo3, Rational>>& obs) {
    Json a = Json::array();
    for (const auto& [e, v] : obs) {
        Json t;
        t["exponent"] = json_expo(e);
        t["value"] = v.str();
        a.push_back(t);
    }
    return a;
}

inline Json json_obstruction_set(const ObstructionSet& set) {
    Json r;
    r["prefactor"] = json_triple(set.rho);
    r["order"] = set.order;
    Json a = Json::array();
    for (const auto& [e, p] : set.entries) {
        Json t;
        t["exponent"] = json_expo(e);
        t["value"] = p.str();
        a.push_back(t);
    }
    r["entries"] = a;
    return r;
}

}  // namespace lv3
