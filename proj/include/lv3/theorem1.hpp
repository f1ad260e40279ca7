#pragma once

// Constructive second integral from one first integral plus one inverse
// Jacobi multiplier. Writing phi = x^delta (1 + ...) and M = x^theta (1 + ...)
// the quotient x^(1-theta) survives as a formal first integral provided, for
// every exponent I of the field's coefficient vectors A_I, either
// (theta - I - 1) x delta != 0 or A_I = 0. For an LV field A_I is nonzero
// only for |I| = 1 (the matrix columns), so the hypothesis is a finite scan;
// exponents where the cross product vanishes are reported either way.

#include <optional>
#include <vector>

#include "lv3/resonant.hpp"

namespace lv3 {

inline std::array<Rational, 3> cross(const std::array<Rational, 3>& a,
                                     const std::array<Rational, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool all_zero(const std::array<Rational, 3>& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

// Leading-monomial exponents of a Darboux function whose factors do not
// vanish at the origin.
inline std::array<Rational, 3> darboux_prefactor(const DarbouxFunction& d) {
    for (const auto& [p, s] : d.factors)
        if (p.constant_term().is_zero())
            throw PreconditionViolated(
                "factor vanishing at the origin has no series prefactor");
    return d.rho;
}

struct HypothesisScan {
    std::vector<Expo3> exceptional;  // indices with vanishing cross product
    std::optional<Expo3> failed_at;  // cross product zero but A_I nonzero

    bool ok() const { return !failed_at.has_value(); }
};

// Scans (theta - I - 1) x delta over all exponents through the given degree.
// A vanishing cross product is harmless when the field coefficient vector A_I
// is zero, which for an LV field covers everything except |I| = 1 (the matrix
// columns) and so makes the scan finite. With both prefactors coming from
// genuine certificates a failure additionally needs I resonant of weight one,
// which nonzero eigenvalues rule out; the failure branch still guards
// mismatched inputs.
inline HypothesisScan theorem1_hypothesis_scan(const LVSystem& s,
                                               const std::array<Rational, 3>& delta,
                                               const std::array<Rational, 3>& theta, int order) {
    HypothesisScan out;
    std::vector<Expo3> level;
    for (int d = 0; d <= order; ++d) {
        detail::enumerate_degree(d, level);
        for (const Expo3& I : level) {
            std::array<Rational, 3> v{theta[0] - Rational(I[0]) - Rational(1),
                                      theta[1] - Rational(I[1]) - Rational(1),
                                      theta[2] - Rational(I[2]) - Rational(1)};
            if (!all_zero(cross(v, delta)))
                continue;
            out.exceptional.push_back(I);
            std::array<Rational, 3> A{Rational(0), Rational(0), Rational(0)};
            for (int axis = 0; axis < 3; ++axis)
                if (I.deg() == 1 && I[axis] == 1)
                    for (int row = 0; row < 3; ++row)
                        A[static_cast<std::size_t>(row)] =
                            s.m[static_cast<std::size_t>(row)][static_cast<std::size_t>(axis)];
            if (!all_zero(A) && !out.failed_at)
                out.failed_at = I;
        }
    }
    return out;
}

struct Theorem1Result {
    std::array<Rational, 3> delta;    // prefactor of phi
    std::array<Rational, 3> theta;    // prefactor of M
    std::array<Rational, 3> psi_rho;  // 1 - theta
    HypothesisScan scan;
    EigenSeriesResult<Rational> integral;

    bool hypothesis_ok() const { return scan.ok(); }
    bool ok() const { return hypothesis_ok() && integral.obstructions_all_zero(); }
};

inline Theorem1Result theorem1_construct(const LVSystem& s, const DarbouxFunction& phi,
                                         const DarbouxFunction& M, int order) {
    {
        RelationCheck fi = verify_relation(s, phi, FirstIntegralKind{});
        if (!fi.ok)
            throw PreconditionViolated("phi is not a first integral of the system");
        RelationCheck ijm = verify_relation(s, M, InverseJacobiMultiplierKind{});
        if (!ijm.ok)
            throw PreconditionViolated("M is not an inverse Jacobi multiplier of the system");
    }

    Theorem1Result out;
    out.delta = darboux_prefactor(phi);
    out.theta = darboux_prefactor(M);
    for (int i = 0; i < 3; ++i)
        out.psi_rho[static_cast<std::size_t>(i)] =
            Rational(1) - out.theta[static_cast<std::size_t>(i)];
    out.scan = theorem1_hypothesis_scan(s, out.delta, out.theta, order);
    out.integral = resonant_series_integral(s, out.psi_rho, order);
    return out;
}

}  // namespace lv3
