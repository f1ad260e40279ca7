#pragma once

// Three-dimensional Lotka-Volterra vector fields
//
//   x' = x (l1 + a x + b y + c z)
//   y' = y (l2 + d x + e y + f z)
//   z' = z (l3 + g x + h y + k z)
//
// together with the differential-operator utilities the rest of the library
// builds on: applying the field to a polynomial, divergence, cofactors of
// invariant surfaces, the coordinate-reversal dual, and the linear
// independence test for the four basic cofactors.

#include <array>
#include <string>
#include <vector>

#include "lv3/linalg.hpp"
#include "lv3/poly.hpp"

namespace lv3 {

struct LVSystem {
    std::array<Rational, 3> eigs;               // (l1, l2, l3)
    std::array<std::array<Rational, 3>, 3> m;   // rows (a b c; d e f; g h k)

    // Log-rate of coordinate i: eigs[i] + sum_j m[i][j] * var_j.
    Poly rate(int i) const {
        Poly p = Poly::constant(eigs[static_cast<std::size_t>(i)], xyz_ring());
        for (int j = 0; j < 3; ++j)
            p += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                 Poly::variable(j, xyz_ring());
        return p;
    }

    // Component i of the field: var_i * rate(i).
    Poly component(int i) const { return Poly::variable(i, xyz_ring()) * rate(i); }

    bool operator==(const LVSystem& o) const { return eigs == o.eigs && m == o.m; }
    bool operator!=(const LVSystem& o) const { return !(*this == o); }
};

// Resonance constraint used throughout: integer eigenvalues, outer ones
// positive, middle one negative, with coprime absolute values.
inline bool is_resonant_triple(const std::array<Rational, 3>& eigs) {
    for (const Rational& e : eigs)
        if (!e.is_integer())
            return false;
    if (!(eigs[0].sign() > 0 && eigs[1].sign() < 0 && eigs[2].sign() > 0))
        return false;
    long a = eigs[0].to_long(), b = -eigs[1].to_long(), c = eigs[2].to_long();
    auto gcd = [](long u, long v) {
        while (v) {
            long t = u % v;
            u = v;
            v = t;
        }
        return u;
    };
    return gcd(gcd(a, b), c) == 1;
}

inline Poly apply_vector_field(const LVSystem& s, const Poly& f) {
    Poly out = Poly::zero(xyz_ring());
    for (int i = 0; i < 3; ++i)
        out += s.component(i) * f.derivative(i);
    return out;
}

inline Poly divergence(const LVSystem& s) {
    Poly out = Poly::zero(xyz_ring());
    for (int i = 0; i < 3; ++i)
        out += s.component(i).derivative(i);
    return out;
}

// Cofactor of an invariant surface F: the polynomial C with X(F) = C F.
// When F is not invariant the division remainder is kept as a witness.
struct InvarianceCheck {
    bool invariant = false;
    Poly cofactor;
    Poly witness;
};

inline InvarianceCheck cofactor_of(const LVSystem& s, const Poly& f) {
    if (f.is_zero())
        throw PreconditionViolated("zero polynomial cannot define a surface");
    InvarianceCheck out;
    DivisionOutcome d = poly_divide(apply_vector_field(s, f), f);
    if (d.exact()) {
        out.invariant = true;
        out.cofactor = d.quotient;
    } else {
        out.witness = d.remainder;
    }
    return out;
}

// Coordinate reversal (x, y, z) -> (z, y, x).
inline LVSystem dual_transform(const LVSystem& s) {
    LVSystem d;
    d.eigs = {s.eigs[2], s.eigs[1], s.eigs[0]};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                s.m[static_cast<std::size_t>(2 - i)][static_cast<std::size_t>(2 - j)];
    return d;
}

// Substitution the dual applies to the nine matrix entries, as parameter
// index pairs of the row-major order (a..k): a<->k, b<->h, c<->g, d<->f.
inline int dual_param_index(int i) { return 8 - i; }

// True when the three coordinate cofactors together with the divergence are
// linearly independent as affine-linear functions.
inline bool independence_check(const LVSystem& s) {
    Mat rows;
    auto push = [&rows](const Poly& p) {
        Vec r(4, Rational(0));
        r[0] = p.constant_term();
        for (int i = 0; i < 3; ++i)
            r[static_cast<std::size_t>(i + 1)] = p.coefficient(Monomial::var(i));
        rows.push_back(std::move(r));
    };
    for (int i = 0; i < 3; ++i)
        push(s.rate(i));
    push(divergence(s));
    return rank(rows) == 4;
}

}  // namespace lv3
