#pragma once

// The case catalog: text records describing the families of systems with
// known first integrals or linearizing changes at the three resonances.
// Each record carries the polynomial conditions cutting out the family, one
// parametrized branch per chart of the family, and the closed-form
// certificates valid on that branch.
//
// Three consumers:
//   parse_catalog / load_catalog   text -> structures
//   sample_case_point, verify_case exact seeded spot checks of one record
//   validate_catalog               global structure: counts, branch
//                                  parametrizations land inside the variety,
//                                  duality links are ideal equalities

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lv3/darboux_expr.hpp"
#include "lv3/groebner.hpp"
#include "lv3/resonant.hpp"

namespace lv3 {

struct CatalogCertificate {
    enum class Kind {
        Invariant,                // parts: surface atom, stated cofactor
        FirstIntegral,            // parts: Darboux expression
        InverseJacobiMultiplier,  // parts: Darboux expression
        Eigenfunction,            // parts: Darboux expression, eigenvalue
        Linearization,            // parts: three coordinate expressions
        LinearizationCoordinate,  // parts: one coordinate expression
        RationalFirstIntegral,    // parts: numerator, denominator
    };
    Kind kind;
    int coordinate = 0;  // 1-based, LinearizationCoordinate only
    std::vector<std::string> parts;
    std::string raw;
};

struct CatalogBranch {
    std::string name;
    std::vector<std::string> wheres;  // expressions kept away from zero
    std::vector<std::pair<std::string, std::string>> lets;  // applied in order
    std::vector<std::string> notes;
    std::vector<CatalogCertificate> certificates;
};

struct CatalogCase {
    std::string label;
    std::array<int, 3> resonance{};
    bool linearizable = false;  // else integrable only
    std::string dual;           // empty when the swap image is not catalogued
    std::vector<std::string> conditions;
    std::vector<std::string> notes;
    std::vector<CatalogBranch> branches;

    std::array<Rational, 3> eigenvalues() const {
        return {Rational(resonance[0]), Rational(resonance[1]), Rational(resonance[2])};
    }
};

struct Catalog {
    int version = 0;
    std::vector<CatalogCase> cases;

    const CatalogCase* find(const std::string& label) const {
        for (const CatalogCase& c : cases)
            if (c.label == label)
                return &c;
        return nullptr;
    }
    const CatalogCase& at(const std::string& label) const {
        const CatalogCase* c = find(label);
        if (!c)
            throw UnknownCase("no case labelled '" + label + "'");
        return *c;
    }
};

// Truncation orders at which the obstruction sweeps are complete for the
// catalogued families; used whenever a caller does not fix one.
inline int default_truncation_order(const std::array<int, 3>& resonance) {
    if (resonance == std::array<int, 3>{1, -1, 1})
        return 6;
    if (resonance == std::array<int, 3>{2, -1, 1})
        return 10;
    return 12;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_clauses(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(';', start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

// "cofactor x*y + 1" with word "cofactor" -> "x*y + 1"; nullopt otherwise.
inline std::optional<std::string> strip_word(const std::string& clause, const std::string& word) {
    if (clause.size() <= word.size() || clause.compare(0, word.size(), word) != 0)
        return std::nullopt;
    if (!std::isspace(static_cast<unsigned char>(clause[word.size()])))
        return std::nullopt;
    return trim(clause.substr(word.size()));
}

}  // namespace detail

inline Catalog parse_catalog(std::istream& in) {
    Catalog cat;
    std::optional<CatalogCase> cur;
    bool in_branch = false;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("catalog line " + std::to_string(lineno) + ": " + msg);
    };

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::size_t sp = t.find_first_of(" \t");
        std::string key = sp == std::string::npos ? t : t.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : detail::trim(t.substr(sp + 1));

        if (key == "version") {
            cat.version = std::stoi(rest);
            continue;
        }
        if (key == "case") {
            if (cur)
                fail("case '" + cur->label + "' not closed before a new one");
            if (rest.empty())
                fail("case needs a label");
            cur.emplace();
            cur->label = rest;
            in_branch = false;
            continue;
        }
        if (!cur)
            fail("directive '" + key + "' outside a case record");
        if (key == "end") {
            if (cur->branches.empty())
                fail("case '" + cur->label + "' has no branches");
            cat.cases.push_back(std::move(*cur));
            cur.reset();
            in_branch = false;
            continue;
        }
        if (key == "resonance") {
            std::istringstream rs(rest);
            if (!(rs >> cur->resonance[0] >> cur->resonance[1] >> cur->resonance[2]))
                fail("resonance needs three integers");
            continue;
        }
        if (key == "kind") {
            if (rest == "integrable")
                cur->linearizable = false;
            else if (rest == "linearizable")
                cur->linearizable = true;
            else
                fail("kind must be integrable or linearizable");
            continue;
        }
        if (key == "dual") {
            cur->dual = rest == "none" ? "" : rest;
            continue;
        }
        if (key == "conditions") {
            cur->conditions = detail::split_clauses(rest);
            continue;
        }
        if (key == "note") {
            (in_branch ? cur->branches.back().notes : cur->notes).push_back(rest);
            continue;
        }
        if (key == "branch") {
            if (rest.empty())
                fail("branch needs a name");
            cur->branches.push_back({});
            cur->branches.back().name = rest;
            in_branch = true;
            continue;
        }
        if (!in_branch)
            fail("'" + key + "' must appear inside a branch");
        CatalogBranch& br = cur->branches.back();
        if (key == "where") {
            std::size_t pos = rest.find("!=");
            if (pos == std::string::npos || detail::trim(rest.substr(pos + 2)) != "0")
                fail("where clause must have the form '<expr> != 0'");
            br.wheres.push_back(detail::trim(rest.substr(0, pos)));
            continue;
        }
        if (key == "let") {
            std::size_t pos = rest.find('=');
            if (pos == std::string::npos)
                fail("let needs '<param> = <expr>'");
            std::string var = detail::trim(rest.substr(0, pos));
            std::string expr = detail::trim(rest.substr(pos + 1));
            if (param_ring()->index_of(var) < 0)
                fail("'" + var + "' is not a coefficient name");
            br.lets.push_back({var, expr});
            continue;
        }

        CatalogCertificate cert;
        cert.raw = t;
        std::vector<std::string> clauses = detail::split_clauses(rest);
        if (key == "invariant") {
            cert.kind = CatalogCertificate::Kind::Invariant;
            auto cof = clauses.size() == 2 ? detail::strip_word(clauses[1], "cofactor")
                                           : std::nullopt;
            if (!cof)
                fail("invariant needs '<surface> ; cofactor <poly>'");
            cert.parts = {clauses[0], *cof};
        } else if (key == "first-integral") {
            cert.kind = CatalogCertificate::Kind::FirstIntegral;
            if (clauses.size() != 1)
                fail("first-integral takes a single expression");
            cert.parts = {clauses[0]};
        } else if (key == "ijm") {
            cert.kind = CatalogCertificate::Kind::InverseJacobiMultiplier;
            if (clauses.size() != 1)
                fail("ijm takes a single expression");
            cert.parts = {clauses[0]};
        } else if (key == "eigenfunction") {
            cert.kind = CatalogCertificate::Kind::Eigenfunction;
            auto kap = clauses.size() == 2 ? detail::strip_word(clauses[1], "kappa")
                                           : std::nullopt;
            if (!kap)
                fail("eigenfunction needs '<expr> ; kappa <value>'");
            cert.parts = {clauses[0], *kap};
        } else if (key == "linearization") {
            cert.kind = CatalogCertificate::Kind::Linearization;
            if (clauses.size() != 3)
                fail("linearization needs three coordinate expressions");
            cert.parts = clauses;
        } else if (key == "linearization-coordinate") {
            cert.kind = CatalogCertificate::Kind::LinearizationCoordinate;
            if (clauses.size() != 2)
                fail("linearization-coordinate needs '<1|2|3> ; <expr>'");
            if (clauses[0] != "1" && clauses[0] != "2" && clauses[0] != "3")
                fail("coordinate must be 1, 2 or 3");
            cert.coordinate = clauses[0][0] - '0';
            cert.parts = {clauses[1]};
        } else if (key == "rational-first-integral") {
            cert.kind = CatalogCertificate::Kind::RationalFirstIntegral;
            auto den = clauses.size() == 2 ? detail::strip_word(clauses[1], "over")
                                           : std::nullopt;
            if (!den)
                fail("rational-first-integral needs '<num> ; over <den>'");
            cert.parts = {clauses[0], *den};
        } else {
            fail("unknown directive '" + key + "'");
        }
        br.certificates.push_back(std::move(cert));
    }
    if (cur)
        throw ParseError("catalog ends inside case '" + cur->label + "'");
    return cat;
}

inline Catalog parse_catalog_text(const std::string& text) {
    std::istringstream is(text);
    return parse_catalog(is);
}

inline Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open catalog file '" + path + "'");
    return parse_catalog(in);
}

// ------------------------------------------------------------------ sampling

struct SamplePoint {
    std::uint64_t seed = 0;
    int branch_index = 0;
    std::string branch_name;
    std::map<std::string, Rational> env;  // all nine coefficients
    LVSystem system;
};

// Draws exact small-integer values for the branch's free coefficients,
// retrying until every where clause is nonzero, then applies the lets in
// order and checks the case conditions vanish at the resulting point.
inline SamplePoint sample_case_point(const CatalogCase& c, std::uint64_t seed) {
    if (c.branches.empty())
        throw PreconditionViolated("case '" + c.label + "' has no branches");
    SamplePoint pt;
    pt.seed = seed;
    pt.branch_index = static_cast<int>(seed % c.branches.size());
    const CatalogBranch& br = c.branches[static_cast<std::size_t>(pt.branch_index)];
    pt.branch_name = br.name;

    std::vector<std::pair<std::string, ScalarExprPtr>> lets;
    std::vector<bool> is_let(9, false);
    for (const auto& [var, expr] : br.lets) {
        lets.push_back({var, parse_scalar_expr(expr)});
        is_let[static_cast<std::size_t>(param_ring()->index_of(var))] = true;
    }
    std::vector<ScalarExprPtr> wheres;
    for (const std::string& w : br.wheres)
        wheres.push_back(parse_scalar_expr(w));

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::map<std::string, Rational> env;
        for (int i = 0; i < 9; ++i)
            if (!is_let[static_cast<std::size_t>(i)])
                env[param_ring()->name(i)] =
                    Rational(static_cast<long>(rng() % 11) - 5);
        try {
            for (const auto& [var, tree] : lets)
                env[var] = eval_scalar(tree, env);
            bool admissible = true;
            for (const ScalarExprPtr& w : wheres)
                if (eval_scalar(w, env).is_zero()) {
                    admissible = false;
                    break;
                }
            if (!admissible)
                continue;
        } catch (const MathError&) {
            continue;  // a let divided by an unlucky zero; redraw
        }

        std::vector<Rational> values;
        for (int i = 0; i < 9; ++i)
            values.push_back(env.at(param_ring()->name(i)));
        for (const std::string& cond : c.conditions)
            if (!parse_poly(cond, param_ring()).eval(values).is_zero())
                throw Error("case '" + c.label + "' branch '" + br.name +
                            "' sample violates condition '" + cond + "'");

        pt.env = std::move(env);
        pt.system.eigs = c.eigenvalues();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                pt.system.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    values[static_cast<std::size_t>(3 * i + j)];
        return pt;
    }
    throw DegenerateSample("case '" + c.label + "' branch '" + br.name +
                           "': no admissible draw in 64 attempts (seed " +
                           std::to_string(seed) + ")");
}

// -------------------------------------------------------------- verification

struct CertificateOutcome {
    std::string description;
    bool ok = false;
    std::string detail;
};

struct CaseReport {
    std::string label;
    std::string branch;
    std::uint64_t seed = 0;
    int order = 0;
    bool obstructions_zero = false;
    int obstruction_count = 0;
    bool linearization_checked = false;
    bool linearization_zero = false;
    std::vector<CertificateOutcome> certificates;

    bool ok() const {
        if (!obstructions_zero)
            return false;
        if (linearization_checked && !linearization_zero)
            return false;
        for (const CertificateOutcome& c : certificates)
            if (!c.ok)
                return false;
        return true;
    }
};

namespace detail {

inline CertificateOutcome check_coordinate_series(const LVSystem& s, const std::string& text,
                                                  int axis,
                                                  const std::map<std::string, Rational>& env) {
    CertificateOutcome out;
    out.description = text;
    DarbouxFunction d = parse_darboux(text, &env);
    for (int i = 0; i < 3; ++i) {
        Rational expect = i == axis ? Rational(1) : Rational(0);
        if (d.rho[static_cast<std::size_t>(i)] != expect) {
            out.detail = "prefactor is not the bare coordinate";
            return out;
        }
    }
    for (const auto& [p, e] : d.factors)
        if (p.constant_term().is_zero()) {
            out.detail = "factor vanishes at the origin";
            return out;
        }
    RelationCheck rc = verify_relation(
        s, d, EigenfunctionKind{s.eigs[static_cast<std::size_t>(axis)]});
    out.ok = rc.ok;
    if (!rc.ok) {
        std::ostringstream os;
        os << "log-derivative " << rc.log_derivative << " != " << rc.expected;
        out.detail = os.str();
    }
    return out;
}

}  // namespace detail

inline CertificateOutcome check_certificate(const LVSystem& s, const CatalogCertificate& cert,
                                            const std::map<std::string, Rational>& env) {
    using Kind = CatalogCertificate::Kind;
    CertificateOutcome out;
    out.description = cert.raw;
    try {
        switch (cert.kind) {
            case Kind::Invariant: {
                // The surface is a plain polynomial or a single exp(...).
                DarbouxAtom atom =
                    cert.parts[0].compare(0, 4, "exp(") == 0
                        ? parse_atom(cert.parts[0], &env)
                        : DarbouxAtom{PolyAtom{parse_poly(cert.parts[0], xyz_ring(),
                                                          MonomialOrder::DegRevLex, &env)}};
                Poly expect = parse_poly(cert.parts[1], xyz_ring(), MonomialOrder::DegRevLex, &env);
                std::optional<LogDerivativeFailure> failure;
                Poly cof = atom_cofactor_or_fail(s, atom, failure);
                if (failure) {
                    out.detail = "surface is not invariant";
                    break;
                }
                if (cof != expect) {
                    std::ostringstream os;
                    os << "cofactor is " << cof;
                    out.detail = os.str();
                    break;
                }
                out.ok = true;
                break;
            }
            case Kind::FirstIntegral:
            case Kind::InverseJacobiMultiplier: {
                DarbouxFunction d = parse_darboux(cert.parts[0], &env);
                RelationKind k = cert.kind == Kind::FirstIntegral
                                     ? RelationKind{FirstIntegralKind{}}
                                     : RelationKind{InverseJacobiMultiplierKind{}};
                RelationCheck rc = verify_relation(s, d, k);
                out.ok = rc.ok;
                if (!rc.ok) {
                    std::ostringstream os;
                    os << "log-derivative " << rc.log_derivative << " != " << rc.expected;
                    out.detail = os.str();
                }
                break;
            }
            case Kind::Eigenfunction: {
                DarbouxFunction d = parse_darboux(cert.parts[0], &env);
                Rational kappa = eval_scalar(cert.parts[1], env);
                RelationCheck rc = verify_relation(s, d, EigenfunctionKind{kappa});
                out.ok = rc.ok;
                if (!rc.ok) {
                    std::ostringstream os;
                    os << "log-derivative " << rc.log_derivative << " != " << rc.expected;
                    out.detail = os.str();
                }
                break;
            }
            case Kind::Linearization: {
                out.ok = true;
                for (int i = 0; i < 3 && out.ok; ++i) {
                    CertificateOutcome one =
                        detail::check_coordinate_series(s, cert.parts[static_cast<std::size_t>(i)],
                                                        i, env);
                    if (!one.ok) {
                        out.ok = false;
                        out.detail = "coordinate " + std::to_string(i + 1) + ": " + one.detail;
                    }
                }
                break;
            }
            case Kind::LinearizationCoordinate: {
                CertificateOutcome one =
                    detail::check_coordinate_series(s, cert.parts[0], cert.coordinate - 1, env);
                out.ok = one.ok;
                out.detail = one.detail;
                break;
            }
            case Kind::RationalFirstIntegral: {
                Poly n = parse_poly(cert.parts[0], xyz_ring(), MonomialOrder::DegRevLex, &env);
                Poly d = parse_poly(cert.parts[1], xyz_ring(), MonomialOrder::DegRevLex, &env);
                if (n.is_zero() || d.is_zero()) {
                    out.detail = "numerator or denominator vanished";
                    break;
                }
                if (d.leading_coefficient() * n == n.leading_coefficient() * d) {
                    out.detail = "ratio is constant";
                    break;
                }
                out.ok = apply_vector_field(s, n) * d == n * apply_vector_field(s, d);
                if (!out.ok)
                    out.detail = "X(N) D != N X(D)";
                break;
            }
        }
    } catch (const Error& e) {
        out.ok = false;
        out.detail = e.what();
    }
    return out;
}

inline CaseReport verify_case(const CatalogCase& c, const SamplePoint& pt, int order = 0) {
    CaseReport rep;
    rep.label = c.label;
    rep.branch = pt.branch_name;
    rep.seed = pt.seed;
    rep.order = order > 0 ? order : default_truncation_order(c.resonance);

    const LVSystem& s = pt.system;
    auto pri = resonant_series_integral(s, primary_rho(s.eigs), rep.order);
    auto sec = resonant_series_integral(s, secondary_rho(s.eigs), rep.order);
    rep.obstruction_count =
        static_cast<int>(pri.obstructions.size() + sec.obstructions.size());
    rep.obstructions_zero = pri.obstructions_all_zero() && sec.obstructions_all_zero();
    if (c.linearizable) {
        rep.linearization_checked = true;
        rep.linearization_zero = linearize_system(s, rep.order).obstructions_all_zero();
    }
    const CatalogBranch& br = c.branches[static_cast<std::size_t>(pt.branch_index)];
    for (const CatalogCertificate& cert : br.certificates)
        rep.certificates.push_back(check_certificate(s, cert, pt.env));
    return rep;
}

// -------------------------------------------------------------- validation

namespace detail {

// Evaluation of scalar trees over rational functions of the coefficients,
// with names resolved through a substitution image instead of the ring.
struct FracImageOps {
    PolyFracOps base;
    const std::array<PolyFrac, 9>* img;

    PolyFrac from_rational(const Rational& r) { return base.from_rational(r); }
    PolyFrac add(const PolyFrac& a, const PolyFrac& b) { return base.add(a, b); }
    PolyFrac sub(const PolyFrac& a, const PolyFrac& b) { return base.sub(a, b); }
    PolyFrac mul(const PolyFrac& a, const PolyFrac& b) { return base.mul(a, b); }
    PolyFrac div(const PolyFrac& a, const PolyFrac& b) { return base.div(a, b); }
    PolyFrac neg(const PolyFrac& a) { return base.neg(a); }
    PolyFrac pow_int(const PolyFrac& a, int e) { return base.pow_int(a, e); }
    PolyFrac lookup(const std::string& name) {
        int idx = param_ring()->index_of(name);
        if (idx < 0)
            throw ParseError("unknown coefficient '" + name + "' in catalog expression");
        return (*img)[static_cast<std::size_t>(idx)];
    }
};

inline PolyFrac substitute_frac(const Poly& p, const std::array<PolyFrac, 9>& img) {
    PolyFracOps ops{param_ring(), nullptr};
    PolyFrac acc = ops.from_rational(Rational(0));
    for (const Term& t : p.terms()) {
        PolyFrac term = ops.from_rational(t.c);
        for (int i = 0; i < 9; ++i)
            for (int rep = 0; rep < t.m[i]; ++rep)
                term = ops.mul(term, img[static_cast<std::size_t>(i)]);
        acc = ops.add(acc, term);
    }
    return acc;
}

// Image of a coefficient polynomial under the outer-coordinate swap, which
// reverses the matrix along both diagonals: entry i -> entry 8 - i.
inline Poly swap_params(const Poly& p) {
    Poly out = Poly::zero(param_ring());
    for (const Term& t : p.terms()) {
        Monomial m;
        for (int i = 0; i < 9; ++i)
            if (t.m[i] > 0)
                m = m.mul(Monomial::var(8 - i, t.m[i]));
        out += Poly::term(m, t.c, param_ring());
    }
    return out;
}

}  // namespace detail

struct CatalogValidation {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

inline CatalogValidation validate_catalog(const Catalog& cat) {
    CatalogValidation v;
    auto problem = [&](std::string msg) { v.problems.push_back(std::move(msg)); };

    if (cat.version != 1)
        problem("unsupported catalog version " + std::to_string(cat.version));

    std::map<std::string, const CatalogCase*> by_label;
    for (const CatalogCase& c : cat.cases) {
        if (!by_label.emplace(c.label, &c).second)
            problem("duplicate label " + c.label);
        if (!is_resonant_triple(c.eigenvalues()))
            problem(c.label + ": resonance is not an admissible triple");
        if (c.conditions.empty())
            problem(c.label + ": no conditions");
    }

    // Expected record counts per resonance: families of the classification
    // plus the extra families that are only linearizable.
    struct Expected {
        std::array<int, 3> resonance;
        int main_cases;
        int sub_cases;
    };
    const Expected expected[] = {
        {{1, -1, 1}, 7, 4},
        {{2, -1, 1}, 11, 4},
        {{1, -2, 1}, 27, 3},
    };
    for (const Expected& ex : expected) {
        int mains = 0, subs = 0;
        for (const CatalogCase& c : cat.cases) {
            if (c.resonance != ex.resonance)
                continue;
            long dots = std::count(c.label.begin(), c.label.end(), '.');
            (dots >= 2 ? subs : mains) += 1;
        }
        if (mains != ex.main_cases || subs != ex.sub_cases) {
            std::ostringstream os;
            os << "resonance (" << ex.resonance[0] << "," << ex.resonance[1] << ","
               << ex.resonance[2] << "): found " << mains << "+" << subs << " cases, expected "
               << ex.main_cases << "+" << ex.sub_cases;
            problem(os.str());
        }
    }

    for (const CatalogCase& c : cat.cases) {
        std::vector<Poly> gens;
        bool parsed = true;
        for (const std::string& cond : c.conditions) {
            try {
                gens.push_back(parse_poly(cond, param_ring()));
            } catch (const Error& e) {
                problem(c.label + ": bad condition '" + cond + "': " + e.what());
                parsed = false;
            }
        }
        for (const CatalogBranch& br : c.branches) {
            std::array<detail::PolyFrac, 9> img;
            detail::PolyFracOps ops{param_ring(), nullptr};
            for (int i = 0; i < 9; ++i)
                img[static_cast<std::size_t>(i)] = {Poly::variable(i, param_ring()),
                                                    Poly::constant(Rational(1), param_ring())};
            std::vector<bool> assigned(9, false);
            bool images_ok = true;
            for (const auto& [var, expr] : br.lets) {
                int idx = param_ring()->index_of(var);
                if (idx < 0 || assigned[static_cast<std::size_t>(idx)]) {
                    problem(c.label + " branch " + br.name + ": bad let target '" + var + "'");
                    images_ok = false;
                    break;
                }
                assigned[static_cast<std::size_t>(idx)] = true;
                try {
                    detail::FracImageOps fops{ops, &img};
                    img[static_cast<std::size_t>(idx)] =
                        eval_scalar_expr(parse_scalar_expr(expr), fops);
                } catch (const Error& e) {
                    problem(c.label + " branch " + br.name + ": let " + var + ": " + e.what());
                    images_ok = false;
                    break;
                }
            }
            if (!images_ok || !parsed)
                continue;
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                detail::PolyFrac val = detail::substitute_frac(gens[gi], img);
                if (!val.num.is_zero())
                    problem(c.label + " branch " + br.name + ": parametrization leaves '" +
                            c.conditions[gi] + "' nonzero");
            }
            for (const std::string& w : br.wheres) {
                try {
                    detail::FracImageOps fops{ops, &img};
                    detail::PolyFrac val = eval_scalar_expr(parse_scalar_expr(w), fops);
                    if (val.num.is_zero())
                        problem(c.label + " branch " + br.name + ": where '" + w +
                                "' is identically zero on the branch");
                } catch (const Error& e) {
                    problem(c.label + " branch " + br.name + ": where '" + w + "': " + e.what());
                }
            }
        }
    }

    // Duality: the swap must carry the conditions of each linked case onto an
    // equal ideal, the links must be involutive, and resonances must reverse.
    for (const CatalogCase& c : cat.cases) {
        if (c.dual.empty())
            continue;
        auto it = by_label.find(c.dual);
        if (it == by_label.end()) {
            problem(c.label + ": dual '" + c.dual + "' is not in the catalog");
            continue;
        }
        const CatalogCase& d = *it->second;
        if (d.dual != c.label)
            problem(c.label + ": dual link is not involutive");
        std::array<int, 3> reversed{c.resonance[2], c.resonance[1], c.resonance[0]};
        if (d.resonance != reversed)
            problem(c.label + ": dual resonance mismatch");
        if (d.linearizable != c.linearizable)
            problem(c.label + ": dual kind mismatch");
        try {
            std::vector<Poly> image, target;
            for (const std::string& cond : c.conditions)
                image.push_back(detail::swap_params(parse_poly(cond, param_ring())));
            for (const std::string& cond : d.conditions)
                target.push_back(parse_poly(cond, param_ring()));
            GroebnerBasis gi = buchberger(image, param_ring());
            GroebnerBasis gt = buchberger(target, param_ring());
            if (gi.gens != gt.gens)
                problem(c.label + ": swap image is not the ideal of '" + c.dual + "'");
        } catch (const Error& e) {
            problem(c.label + ": duality check failed: " + e.what());
        }
    }

    return v;
}

}  // namespace lv3
