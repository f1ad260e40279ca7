// Command-line front end. Subcommands map one-to-one onto the library:
//
//   obstructions     resonant forced values, numeric or symbolic
//   series-integral  candidate integral x^rho (1 + ...) for a given prefactor
//   check            verify a Darboux expression as FI / IJM / eigenfunction
//   combine          solve for exponents combining cofactors to 0 or div
//   theorem1         second integral from a first integral and a multiplier
//   linearize        coordinate-by-coordinate linearizing series
//   verify-case      seeded spot checks of a catalog record
//   catalog          list or validate the shipped catalog
//   dual             emit the outer-coordinate-swapped system
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or input errors.
// Reports are JSON on stdout with stable key order; timing is opt-in so a
// rerun with the same inputs is byte-identical.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "lv3/catalog.hpp"
#include "lv3/report.hpp"
#include "lv3/system_file.hpp"
#include "lv3/theorem1.hpp"

#ifndef LV3_CATALOG_FILE
#define LV3_CATALOG_FILE "data/catalog.txt"
#endif

using namespace lv3;

namespace {

int thread_count() {
    const char* env = std::getenv("LV3_THREADS");
    if (!env)
        return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

std::array<Rational, 3> parse_resonance(const std::string& text) {
    std::array<Rational, 3> eigs;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t pos = i < 2 ? text.find(':', start) : text.size();
        if (pos == std::string::npos)
            throw ParseError("resonance must be written L:M:N");
        eigs[static_cast<std::size_t>(i)] = Rational::parse(text.substr(start, pos - start));
        start = pos + 1;
    }
    if (!is_resonant_triple(eigs))
        throw PreconditionViolated("resonance " + text +
                                   " is not coprime (positive, negative, positive)");
    return eigs;
}

RelationKind parse_relation_kind(const std::string& text) {
    if (text == "fi")
        return FirstIntegralKind{};
    if (text == "ijm")
        return InverseJacobiMultiplierKind{};
    if (text.rfind("eig:", 0) == 0)
        return EigenfunctionKind{Rational::parse(text.substr(4))};
    throw ParseError("kind must be fi, ijm or eig:<value>");
}

Json json_eigen_result(const EigenSeriesResult<Rational>& r, bool include_series) {
    Json j;
    j["prefactor"] = json_triple(r.rho);
    j["order"] = r.order;
    if (include_series)
        j["series"] = json_series(r.u);
    j["obstructions"] = json_obstructions(r.obstructions);
    j["all_zero"] = r.obstructions_all_zero();
    return j;
}

struct Emit {
    Json report;
    bool timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Emit(const std::string& command) : report(report_skeleton(command)) {}

    int finish(int code) {
        if (timing)
            report["timing_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
        std::cout << render_report(report);
        return code;
    }
};

// Accepts the exact label, the label with a literal "case" infix dropped
// (T3.case2 -> T3.2), or a bare suffix resolved through the resonance flag.
const CatalogCase* resolve_case(const Catalog& cat, const std::string& label,
                                const std::array<Rational, 3>& eigs) {
    if (const CatalogCase* c = cat.find(label))
        return c;
    std::string stripped = label;
    std::size_t pos = stripped.find("case");
    if (pos != std::string::npos) {
        stripped.erase(pos, 4);
        if (const CatalogCase* c = cat.find(stripped))
            return c;
    }
    std::string prefix;
    if (eigs == std::array<Rational, 3>{Rational(1), Rational(-1), Rational(1)})
        prefix = "T3.";
    else if (eigs == std::array<Rational, 3>{Rational(2), Rational(-1), Rational(1)})
        prefix = "T4.";
    else if (eigs == std::array<Rational, 3>{Rational(1), Rational(-2), Rational(1)})
        prefix = "T5.";
    if (!prefix.empty()) {
        if (const CatalogCase* c = cat.find(prefix + stripped))
            return c;
    }
    return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of three-dimensional Lotka-Volterra resonances"};
    app.set_version_flag("--version", std::string("lv3 ") + tool_version());
    app.require_subcommand(1);

    std::string file, target = "int", rho_text, expr, kind_text = "fi", phi_text, m_text;
    std::string resonance_text, case_label, catalog_path = LV3_CATALOG_FILE;
    std::vector<std::string> rho_parts, atom_texts;
    std::string combine_target = "zero";
    int order = 0, samples = 5;
    std::uint64_t seed = 1;
    bool symbolic = false, timing = false, validate = false;

    auto add_timing = [&](CLI::App* sub) {
        sub->add_flag("--timing", timing, "include wall time in the report");
    };

    CLI::App* obst = app.add_subcommand("obstructions", "resonant obstruction values");
    obst->add_option("file", file, "system description file")->required();
    obst->add_option("--target", target, "int (candidate integrals) or lin (coordinates)")
        ->check(CLI::IsMember({"int", "lin"}));
    obst->add_option("--order", order, "truncation order")->required();
    obst->add_flag("--symbolic", symbolic, "keep the nine coefficients symbolic");
    add_timing(obst);

    CLI::App* seri = app.add_subcommand("series-integral", "candidate integral for a prefactor");
    seri->add_option("file", file, "system description file")->required();
    seri->add_option("--rho", rho_parts, "prefactor exponents r1 r2 r3")
        ->expected(3)
        ->required();
    seri->add_option("--order", order, "truncation order")->required();
    add_timing(seri);

    CLI::App* chk = app.add_subcommand("check", "verify a Darboux expression");
    chk->add_option("file", file, "system description file")->required();
    chk->add_option("--expr", expr, "Darboux expression")->required();
    chk->add_option("--kind", kind_text, "fi, ijm or eig:<value>");
    add_timing(chk);

    CLI::App* comb = app.add_subcommand("combine", "combine cofactors to zero or divergence");
    comb->add_option("file", file, "system description file")->required();
    comb->add_option("--atoms", atom_texts, "atoms: coordinate, (poly) or exp(...)")
        ->required();
    comb->add_option("--target", combine_target, "zero or div")
        ->check(CLI::IsMember({"zero", "div"}));
    add_timing(comb);

    CLI::App* th1 = app.add_subcommand("theorem1", "second integral from integral + multiplier");
    th1->add_option("file", file, "system description file")->required();
    th1->add_option("--phi", phi_text, "first integral expression")->required();
    th1->add_option("--m", m_text, "inverse Jacobi multiplier expression")->required();
    th1->add_option("--order", order, "truncation order")->required();
    add_timing(th1);

    CLI::App* lin = app.add_subcommand("linearize", "linearizing coordinate series");
    lin->add_option("file", file, "system description file")->required();
    lin->add_option("--order", order, "truncation order")->required();
    add_timing(lin);

    CLI::App* ver = app.add_subcommand("verify-case", "seeded checks of a catalog record");
    ver->add_option("--resonance", resonance_text, "resonance L:M:N")->required();
    ver->add_option("--case", case_label, "case label")->required();
    ver->add_option("--samples", samples, "number of seeded samples");
    ver->add_option("--order", order, "truncation order (0 = default for the resonance)");
    ver->add_option("--seed", seed, "base seed");
    ver->add_option("--catalog", catalog_path, "catalog file");
    add_timing(ver);

    CLI::App* catl = app.add_subcommand("catalog", "list or validate the catalog");
    catl->add_option("--resonance", resonance_text, "restrict to one resonance L:M:N");
    catl->add_option("--catalog", catalog_path, "catalog file");
    catl->add_flag("--validate", validate, "run structural validation");
    add_timing(catl);

    CLI::App* dua = app.add_subcommand("dual", "emit the coordinate-reversed system");
    dua->add_option("file", file, "system description file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*obst) {
            SystemFile sf = load_system_file(file);
            Emit out("obstructions");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["target"] = target;
            out.report["inputs"]["order"] = order;
            out.report["inputs"]["symbolic"] = symbolic;
            Json sets = Json::array();
            bool all_zero = true;
            if (symbolic) {
                if (target == "int") {
                    auto [pri, sec] = integrability_obstructions(sf.system.eigs, order);
                    sets.push_back(json_obstruction_set(pri));
                    sets.push_back(json_obstruction_set(sec));
                    for (const ObstructionSet* s : {&pri, &sec})
                        for (const auto& [e, p] : s->entries)
                            all_zero = all_zero && p.is_zero();
                } else {
                    for (const ObstructionSet& s :
                         linearizability_obstructions(sf.system.eigs, order)) {
                        sets.push_back(json_obstruction_set(s));
                        for (const auto& [e, p] : s.entries)
                            all_zero = all_zero && p.is_zero();
                    }
                }
            } else {
                std::vector<EigenSeriesResult<Rational>> rs;
                if (target == "int") {
                    rs.push_back(resonant_series_integral(
                        sf.system, primary_rho(sf.system.eigs), order));
                    rs.push_back(resonant_series_integral(
                        sf.system, secondary_rho(sf.system.eigs), order));
                } else {
                    auto l = linearize_system(sf.system, order);
                    for (const auto& c : l.coords)
                        rs.push_back(c);
                }
                for (const auto& r : rs) {
                    sets.push_back(json_eigen_result(r, false));
                    all_zero = all_zero && r.obstructions_all_zero();
                }
            }
            out.report["results"]["sets"] = sets;
            out.report["results"]["all_zero"] = all_zero;
            return out.finish(0);
        }

        if (*seri) {
            SystemFile sf = load_system_file(file);
            std::array<Rational, 3> rho;
            for (int i = 0; i < 3; ++i)
                rho[static_cast<std::size_t>(i)] =
                    Rational::parse(rho_parts[static_cast<std::size_t>(i)]);
            Emit out("series-integral");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["rho"] = json_triple(rho);
            out.report["inputs"]["order"] = order;
            auto r = resonant_series_integral(sf.system, rho, order);
            out.report["results"] = json_eigen_result(r, true);
            return out.finish(r.obstructions_all_zero() ? 0 : 1);
        }

        if (*chk) {
            SystemFile sf = load_system_file(file);
            Emit out("check");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["expr"] = expr;
            out.report["inputs"]["kind"] = kind_text;
            DarbouxFunction d = parse_darboux(expr);
            RelationCheck rc = verify_relation(sf.system, d, parse_relation_kind(kind_text));
            out.report["results"]["ok"] = rc.ok;
            if (rc.failure) {
                out.report["results"]["failure"] =
                    rc.failure->kind == LogDerivativeFailure::NotInvariant
                        ? "factor is not an invariant surface"
                        : "exponential argument has non-polynomial derivative";
                out.report["results"]["offender"] = rc.failure->offender.str();
            } else {
                out.report["results"]["log_derivative"] = rc.log_derivative.str();
                out.report["results"]["expected"] = rc.expected.str();
            }
            return out.finish(rc.ok ? 0 : 1);
        }

        if (*comb) {
            SystemFile sf = load_system_file(file);
            Emit out("combine");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["atoms"] = atom_texts;
            out.report["inputs"]["target"] = combine_target;
            std::vector<DarbouxAtom> atoms;
            for (const std::string& t : atom_texts)
                atoms.push_back(parse_atom(t));
            CombinationResult r = find_darboux_combination(
                sf.system, atoms,
                combine_target == "div" ? CombinationTarget::Divergence
                                        : CombinationTarget::Zero);
            if (!r.ok()) {
                out.report["results"]["failure"] = r.failure->offender.str();
                return out.finish(1);
            }
            Json cofs = Json::array();
            for (const Poly& c : r.cofactors)
                cofs.push_back(c.str());
            out.report["results"]["cofactors"] = cofs;
            Json basis = Json::array();
            for (const Vec& v : r.nullspace_basis) {
                Json row = Json::array();
                for (const Rational& x : v)
                    row.push_back(x.str());
                basis.push_back(row);
            }
            out.report["results"]["nullspace"] = basis;
            bool ok;
            if (combine_target == "div") {
                ok = r.particular.has_value();
                if (r.particular) {
                    Json row = Json::array();
                    for (const Rational& x : *r.particular)
                        row.push_back(x.str());
                    out.report["results"]["particular"] = row;
                }
            } else {
                ok = !r.nullspace_basis.empty();
            }
            out.report["results"]["ok"] = ok;
            return out.finish(ok ? 0 : 1);
        }

        if (*th1) {
            SystemFile sf = load_system_file(file);
            Emit out("theorem1");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["phi"] = phi_text;
            out.report["inputs"]["m"] = m_text;
            out.report["inputs"]["order"] = order;
            try {
                Theorem1Result r = theorem1_construct(sf.system, parse_darboux(phi_text),
                                                      parse_darboux(m_text), order);
                out.report["results"]["delta"] = json_triple(r.delta);
                out.report["results"]["theta"] = json_triple(r.theta);
                out.report["results"]["psi_prefactor"] = json_triple(r.psi_rho);
                Json exc = Json::array();
                for (const Expo3& e : r.scan.exceptional)
                    exc.push_back(json_expo(e));
                out.report["results"]["exceptional_indices"] = exc;
                out.report["results"]["hypothesis_ok"] = r.hypothesis_ok();
                out.report["results"]["integral"] = json_eigen_result(r.integral, true);
                out.report["results"]["ok"] = r.ok();
                return out.finish(r.ok() ? 0 : 1);
            } catch (const PreconditionViolated& e) {
                out.report["results"]["ok"] = false;
                out.report["results"]["error"] = e.what();
                return out.finish(1);
            }
        }

        if (*lin) {
            SystemFile sf = load_system_file(file);
            Emit out("linearize");
            out.timing = timing;
            out.report["inputs"]["file"] = file;
            out.report["inputs"]["system"] = json_system(sf.system);
            out.report["inputs"]["order"] = order;
            auto r = linearize_system(sf.system, order);
            Json coords = Json::array();
            for (const auto& c : r.coords)
                coords.push_back(json_eigen_result(c, true));
            out.report["results"]["coordinates"] = coords;
            out.report["results"]["all_zero"] = r.obstructions_all_zero();
            return out.finish(r.obstructions_all_zero() ? 0 : 1);
        }

        if (*ver) {
            std::array<Rational, 3> eigs = parse_resonance(resonance_text);
            Catalog cat = load_catalog(catalog_path);
            const CatalogCase* c = resolve_case(cat, case_label, eigs);
            if (!c)
                throw UnknownCase("no case labelled '" + case_label + "' in " + catalog_path);
            if (c->eigenvalues() != eigs)
                throw PreconditionViolated("case " + c->label + " is not at resonance " +
                                           resonance_text);
            Emit out("verify-case");
            out.timing = timing;
            out.report["inputs"]["catalog"] = catalog_path;
            out.report["inputs"]["case"] = c->label;
            out.report["inputs"]["resonance"] = resonance_text;
            out.report["inputs"]["samples"] = samples;
            out.report["inputs"]["order"] = order;
            out.report["inputs"]["seed"] = seed;
            out.report["results"]["kind"] = c->linearizable ? "linearizable" : "integrable";
            out.report["results"]["branches"] = static_cast<int>(c->branches.size());

            struct Slot {
                Json j;
                bool ok = false;
            };
            std::vector<Slot> slots(static_cast<std::size_t>(samples));
            auto run_one = [&](int i) {
                Slot& slot = slots[static_cast<std::size_t>(i)];
                std::uint64_t s = seed + static_cast<std::uint64_t>(i);
                try {
                    SamplePoint pt = sample_case_point(*c, s);
                    CaseReport rep = verify_case(*c, pt, order);
                    slot.j["seed"] = s;
                    slot.j["branch"] = rep.branch;
                    slot.j["order"] = rep.order;
                    slot.j["system"] = json_system(pt.system);
                    slot.j["obstructions_zero"] = rep.obstructions_zero;
                    if (rep.linearization_checked)
                        slot.j["linearization_zero"] = rep.linearization_zero;
                    Json certs = Json::array();
                    for (const CertificateOutcome& co : rep.certificates) {
                        Json cj;
                        cj["certificate"] = co.description;
                        cj["ok"] = co.ok;
                        if (!co.detail.empty())
                            cj["detail"] = co.detail;
                        certs.push_back(cj);
                    }
                    slot.j["certificates"] = certs;
                    slot.ok = rep.ok();
                } catch (const Error& e) {
                    slot.j["seed"] = s;
                    slot.j["error"] = e.what();
                    slot.ok = false;
                }
                slot.j["ok"] = slot.ok;
            };
            int threads = thread_count();
            if (threads > 1 && samples > 1) {
                std::vector<std::thread> pool;
                std::atomic<int> next{0};
                for (int t = 0; t < threads; ++t)
                    pool.emplace_back([&]() {
                        for (int i = next.fetch_add(1); i < samples; i = next.fetch_add(1))
                            run_one(i);
                    });
                for (std::thread& t : pool)
                    t.join();
            } else {
                for (int i = 0; i < samples; ++i)
                    run_one(i);
            }
            bool all_ok = true;
            Json sample_json = Json::array();
            for (Slot& s : slots) {
                all_ok = all_ok && s.ok;
                sample_json.push_back(std::move(s.j));
            }
            out.report["results"]["samples"] = sample_json;
            out.report["results"]["ok"] = all_ok;
            return out.finish(all_ok ? 0 : 1);
        }

        if (*catl) {
            Catalog cat = load_catalog(catalog_path);
            Emit out("catalog");
            out.timing = timing;
            out.report["inputs"]["catalog"] = catalog_path;
            std::optional<std::array<Rational, 3>> filter;
            if (!resonance_text.empty()) {
                filter = parse_resonance(resonance_text);
                out.report["inputs"]["resonance"] = resonance_text;
            }
            Json cases = Json::array();
            for (const CatalogCase& c : cat.cases) {
                if (filter && c.eigenvalues() != *filter)
                    continue;
                Json cj;
                cj["label"] = c.label;
                Json res = Json::array();
                for (int v : c.resonance)
                    res.push_back(v);
                cj["resonance"] = res;
                cj["kind"] = c.linearizable ? "linearizable" : "integrable";
                cj["dual"] = c.dual.empty() ? "none" : c.dual;
                cj["conditions"] = c.conditions;
                Json branches = Json::array();
                for (const CatalogBranch& b : c.branches)
                    branches.push_back(b.name);
                cj["branches"] = branches;
                cases.push_back(cj);
            }
            out.report["results"]["cases"] = cases;
            out.report["results"]["count"] = static_cast<int>(cases.size());
            int code = 0;
            if (validate) {
                CatalogValidation v = validate_catalog(cat);
                out.report["results"]["validation"]["ok"] = v.ok();
                out.report["results"]["validation"]["problems"] = v.problems;
                code = v.ok() ? 0 : 1;
            }
            return out.finish(code);
        }

        if (*dua) {
            SystemFile sf = load_system_file(file);
            std::cout << emit_system_file(dual_transform(sf.system), sf.labels);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
