#pragma once

// Darboux-style functions and their calculus against an LV field. A function
//
//   D = x^r1 y^r2 z^r3 * prod_i F_i(x,y,z)^s_i * exp(f/g)^s0
//
// has polynomial logarithmic derivative X(D)/D whenever every F_i is an
// invariant surface and X(f/g) is polynomial; D is a first integral when that
// log-derivative vanishes, an inverse Jacobi multiplier when it equals the
// divergence, and an eigenfunction when it is a constant.

#include <optional>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "lv3/lv_system.hpp"

namespace lv3 {

struct ExpPart {
    Poly f;        // numerator
    Poly g;        // denominator, nonzero
    Rational s0;   // exponent on exp(f/g)
};

struct DarbouxFunction {
    std::array<Rational, 3> rho{Rational(0), Rational(0), Rational(0)};
    std::vector<std::pair<Poly, Rational>> factors;
    std::optional<ExpPart> exp_part;

    // Merges equal factor polynomials and drops zero exponents.
    DarbouxFunction canonical() const {
        DarbouxFunction out;
        out.rho = rho;
        out.exp_part = exp_part;
        for (const auto& [p, s] : factors) {
            bool merged = false;
            for (auto& [q, t] : out.factors)
                if (p == q) {
                    t += s;
                    merged = true;
                    break;
                }
            if (!merged)
                out.factors.push_back({p, s});
        }
        std::erase_if(out.factors, [](const auto& pr) { return pr.second.is_zero(); });
        if (out.exp_part && out.exp_part->s0.is_zero())
            out.exp_part.reset();
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        const char* vars[3] = {"x", "y", "z"};
        bool any = false;
        for (int i = 0; i < 3; ++i) {
            if (rho[static_cast<std::size_t>(i)].is_zero())
                continue;
            if (any)
                os << "*";
            os << vars[i];
            if (!rho[static_cast<std::size_t>(i)].is_one())
                os << "^(" << rho[static_cast<std::size_t>(i)] << ")";
            any = true;
        }
        for (const auto& [p, s] : factors) {
            if (any)
                os << "*";
            os << "(" << p << ")";
            if (!s.is_one())
                os << "^(" << s << ")";
            any = true;
        }
        if (exp_part) {
            if (any)
                os << "*";
            os << "exp((" << exp_part->f << ")/(" << exp_part->g << "))";
            if (!exp_part->s0.is_one())
                os << "^(" << exp_part->s0 << ")";
            any = true;
        }
        if (!any)
            os << "1";
        return os.str();
    }
};

// Why functions are rejected rather than silently mis-verified.
struct LogDerivativeFailure {
    enum Kind { NotInvariant, ExpPartNotPolynomial } kind;
    Poly offender;  // the factor or exp argument that failed
    Poly witness;   // division remainder
};

using LogDerivativeResult = std::variant<Poly, LogDerivativeFailure>;

inline LogDerivativeResult darboux_log_derivative(const LVSystem& s, const DarbouxFunction& d) {
    Poly out = Poly::zero(xyz_ring());
    for (int i = 0; i < 3; ++i)
        out += d.rho[static_cast<std::size_t>(i)] * s.rate(i);
    for (const auto& [p, e] : d.factors) {
        InvarianceCheck chk = cofactor_of(s, p);
        if (!chk.invariant)
            return LogDerivativeFailure{LogDerivativeFailure::NotInvariant, p, chk.witness};
        out += e * chk.cofactor;
    }
    if (d.exp_part) {
        // X(f/g) = (X(f) g - f X(g)) / g^2 must be polynomial.
        const Poly& f = d.exp_part->f;
        const Poly& g = d.exp_part->g;
        if (g.is_zero())
            throw PreconditionViolated("exponential factor with zero denominator");
        Poly num = apply_vector_field(s, f) * g - f * apply_vector_field(s, g);
        auto q = poly_exact_div(num, g * g);
        if (!q)
            return LogDerivativeFailure{LogDerivativeFailure::ExpPartNotPolynomial, f,
                                        poly_divide(num, g * g).remainder};
        out += d.exp_part->s0 * *q;
    }
    return out;
}

struct FirstIntegralKind {};
struct InverseJacobiMultiplierKind {};
struct EigenfunctionKind {
    Rational kappa;
};
using RelationKind = std::variant<FirstIntegralKind, InverseJacobiMultiplierKind, EigenfunctionKind>;

struct RelationCheck {
    bool ok = false;
    Poly log_derivative;  // actual X(D)/D when it exists
    Poly expected;
    std::optional<LogDerivativeFailure> failure;
};

inline RelationCheck verify_relation(const LVSystem& s, const DarbouxFunction& d,
                                     const RelationKind& kind) {
    RelationCheck out;
    LogDerivativeResult ld = darboux_log_derivative(s, d);
    if (std::holds_alternative<LogDerivativeFailure>(ld)) {
        out.failure = std::get<LogDerivativeFailure>(ld);
        return out;
    }
    out.log_derivative = std::get<Poly>(ld);
    if (std::holds_alternative<FirstIntegralKind>(kind))
        out.expected = Poly::zero(xyz_ring());
    else if (std::holds_alternative<InverseJacobiMultiplierKind>(kind))
        out.expected = divergence(s);
    else
        out.expected = Poly::constant(std::get<EigenfunctionKind>(kind).kappa, xyz_ring());
    out.ok = out.log_derivative == out.expected;
    return out;
}

// Atoms for cofactor combinations: a coordinate plane, an invariant
// polynomial, or an exponential factor exp(f/g).
struct CoordAtom {
    int axis;
};
struct PolyAtom {
    Poly f;
};
struct ExpAtom {
    Poly f, g;
};
using DarbouxAtom = std::variant<CoordAtom, PolyAtom, ExpAtom>;

enum class CombinationTarget { Zero, Divergence };

struct CombinationResult {
    std::vector<Poly> cofactors;          // one per atom, in input order
    std::vector<Vec> nullspace_basis;     // exponent vectors with zero combination
    std::optional<Vec> particular;        // solution for the divergence target
    std::optional<LogDerivativeFailure> failure;

    bool ok() const { return !failure.has_value(); }
};

inline Poly atom_cofactor_or_fail(const LVSystem& s, const DarbouxAtom& atom,
                                  std::optional<LogDerivativeFailure>& failure) {
    if (std::holds_alternative<CoordAtom>(atom))
        return s.rate(std::get<CoordAtom>(atom).axis);
    if (std::holds_alternative<PolyAtom>(atom)) {
        const Poly& f = std::get<PolyAtom>(atom).f;
        InvarianceCheck chk = cofactor_of(s, f);
        if (!chk.invariant) {
            failure = LogDerivativeFailure{LogDerivativeFailure::NotInvariant, f, chk.witness};
            return Poly::zero(xyz_ring());
        }
        return chk.cofactor;
    }
    const ExpAtom& ea = std::get<ExpAtom>(atom);
    Poly num = apply_vector_field(s, ea.f) * ea.g - ea.f * apply_vector_field(s, ea.g);
    auto q = poly_exact_div(num, ea.g * ea.g);
    if (!q) {
        failure = LogDerivativeFailure{LogDerivativeFailure::ExpPartNotPolynomial, ea.f,
                                       poly_divide(num, ea.g * ea.g).remainder};
        return Poly::zero(xyz_ring());
    }
    return *q;
}

// Solves sum_i s_i C_i = 0 (a basis of all solutions) or = div X (one
// particular solution) over the cofactors C_i of the atoms.
inline CombinationResult find_darboux_combination(const LVSystem& s,
                                                  const std::vector<DarbouxAtom>& atoms,
                                                  CombinationTarget target) {
    CombinationResult out;
    for (const DarbouxAtom& a : atoms) {
        out.cofactors.push_back(atom_cofactor_or_fail(s, a, out.failure));
        if (out.failure)
            return out;
    }
    // Rows indexed by the monomials 1, x, y, z plus anything higher that an
    // exponential atom contributed.
    std::vector<Monomial> basis{Monomial::one(), Monomial::var(0), Monomial::var(1),
                                Monomial::var(2)};
    for (const Poly& c : out.cofactors)
        for (const Term& t : c.terms())
            if (std::find(basis.begin(), basis.end(), t.m) == basis.end())
                basis.push_back(t.m);
    Poly target_poly =
        target == CombinationTarget::Divergence ? divergence(s) : Poly::zero(xyz_ring());
    for (const Term& t : target_poly.terms())
        if (std::find(basis.begin(), basis.end(), t.m) == basis.end())
            basis.push_back(t.m);

    Mat a;
    Vec b;
    for (const Monomial& m : basis) {
        Vec row;
        for (const Poly& c : out.cofactors)
            row.push_back(c.coefficient(m));
        a.push_back(std::move(row));
        b.push_back(target_poly.coefficient(m));
    }
    out.nullspace_basis = nullspace(a);
    if (target == CombinationTarget::Divergence)
        out.particular = solve(a, b);
    return out;
}

}  // namespace lv3
