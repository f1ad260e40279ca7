#pragma once

// Text descriptions of systems, one directive per line:
//
//   # comment
//   label <free text>            optional, repeatable
//   eigenvalues <l> <m> <n>      integers, (positive, negative, positive)
//   matrix <p> <q> <r>           three rows of exact rationals
//
// Entries are written "p/q" or as integers; decimal literals are rejected.
// Emitted text re-parses to an identical system.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lv3/lv_system.hpp"

namespace lv3 {

struct SystemFile {
    LVSystem system;
    std::vector<std::string> labels;
};

inline SystemFile parse_system_text(std::istream& in) {
    SystemFile out;
    bool have_eigs = false;
    int rows = 0;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("system file line " + std::to_string(lineno) + ": " + msg);
    };

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "label") {
            std::string rest;
            std::getline(ls, rest);
            std::size_t s = rest.find_first_not_of(" \t");
            out.labels.push_back(s == std::string::npos ? "" : rest.substr(s));
        } else if (key == "eigenvalues") {
            if (have_eigs)
                fail("duplicate eigenvalues line");
            std::string tok;
            for (int i = 0; i < 3; ++i) {
                if (!(ls >> tok))
                    fail("eigenvalues needs three integers");
                Rational v = Rational::parse(tok);
                if (!v.is_integer())
                    fail("eigenvalue '" + tok + "' is not an integer");
                out.system.eigs[static_cast<std::size_t>(i)] = v;
            }
            have_eigs = true;
        } else if (key == "matrix") {
            if (rows == 3)
                fail("more than three matrix rows");
            std::string tok;
            for (int j = 0; j < 3; ++j) {
                if (!(ls >> tok))
                    fail("matrix row needs three entries");
                out.system.m[static_cast<std::size_t>(rows)][static_cast<std::size_t>(j)] =
                    Rational::parse(tok);
            }
            ++rows;
        } else {
            fail("unknown directive '" + key + "'");
        }
        std::string extra;
        if (key != "label" && (ls >> extra))
            fail("trailing input '" + extra + "'");
    }
    if (!have_eigs)
        throw ParseError("system file has no eigenvalues line");
    if (rows != 3)
        throw ParseError("system file has " + std::to_string(rows) + " matrix rows, needs 3");
    if (!is_resonant_triple(out.system.eigs))
        throw PreconditionViolated(
            "eigenvalues must be coprime integers (positive, negative, positive)");
    return out;
}

inline SystemFile parse_system_string(const std::string& text) {
    std::istringstream is(text);
    return parse_system_text(is);
}

inline SystemFile load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open system file '" + path + "'");
    try {
        return parse_system_text(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline std::string emit_system_file(const LVSystem& s,
                                    const std::vector<std::string>& labels = {}) {
    std::ostringstream os;
    for (const std::string& l : labels)
        os << "label " << l << "\n";
    os << "eigenvalues";
    for (int i = 0; i < 3; ++i)
        os << " " << s.eigs[static_cast<std::size_t>(i)];
    os << "\n";
    for (int i = 0; i < 3; ++i) {
        os << "matrix";
        for (int j = 0; j < 3; ++j)
            os << " " << s.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        os << "\n";
    }
    return os.str();
}

}  // namespace lv3
