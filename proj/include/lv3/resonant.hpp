#pragma once

// Series construction around a resonant singular point.
//
// Everything here is one recursion in different clothes. For a candidate
// F = x^r1 y^r2 z^r3 * u(x,y,z), u = sum c_I X^I with c_0 = 1, the demand
// X(F) = (rho . eigs) F turns into, per exponent J,
//
//   c_J (J . eigs) + sum_m [coeff of X^J in U_m * Lt_m] = 0
//
// where U_m = sum c_I (rho_m + I_m) X^I and Lt_m is the non-constant part of
// the m-th log-rate. Exponents with J . eigs = 0 are resonant: the recursion
// cannot choose c_J, so the gauge c_J := 0 is taken and the forced value that
// would have to vanish is recorded as an obstruction.

#include <algorithm>
#include <optional>
#include <vector>

#include "lv3/darboux.hpp"
#include "lv3/series.hpp"

namespace lv3 {

// A vector field in log-rate form: component i is var_i * (eigs[i] + tails[i]),
// with tails[i] a series without constant term. LV systems have linear tails;
// the planar node helper passes arbitrary ones.
template <class R>
struct LogRates {
    std::array<Rational, 3> eigs;
    std::array<TruncatedSeries<R>, 3> tails;
};

inline LogRates<Rational> log_rates_of(const LVSystem& s, int order) {
    LogRates<Rational> lr;
    lr.eigs = s.eigs;
    for (int i = 0; i < 3; ++i) {
        TruncatedSeries<Rational> t(order);
        for (int j = 0; j < 3; ++j) {
            Expo3 e;
            e.e[static_cast<std::size_t>(j)] = 1;
            t.add_to(e, s.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        lr.tails[static_cast<std::size_t>(i)] = t;
    }
    return lr;
}

// Log-rates with the nine matrix entries kept as parameter polynomials.
inline LogRates<Poly> symbolic_log_rates(const std::array<Rational, 3>& eigs, int order) {
    LogRates<Poly> lr;
    lr.eigs = eigs;
    for (int i = 0; i < 3; ++i) {
        TruncatedSeries<Poly> t(order);
        for (int j = 0; j < 3; ++j) {
            Expo3 e;
            e.e[static_cast<std::size_t>(j)] = 1;
            t.add_to(e, Poly::variable(3 * i + j, param_ring()));
        }
        lr.tails[static_cast<std::size_t>(i)] = t;
    }
    return lr;
}

template <class R>
struct EigenSeriesResult {
    std::array<Rational, 3> rho;
    int order = 0;
    TruncatedSeries<R> u;
    // Every resonant exponent in degree order with its forced value; the
    // construction is a certificate exactly when all these values vanish.
    std::vector<std::pair<Expo3, R>> obstructions;

    bool obstructions_all_zero() const {
        return std::all_of(obstructions.begin(), obstructions.end(),
                           [](const auto& p) { return CoeffOps<R>::is_zero(p.second); });
    }
};

namespace detail {

inline void enumerate_degree(int d, std::vector<Expo3>& out) {
    out.clear();
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
            out.push_back(Expo3{{i, j, d - i - j}});
    std::sort(out.begin(), out.end());
}

}  // namespace detail

// Core recursion. Builds u with X(x^rho u) = (rho . eigs) x^rho u through the
// requested order, gauge-fixing resonant coefficients to zero.
template <class R>
EigenSeriesResult<R> eigen_series(const LogRates<R>& field, const std::array<Rational, 3>& rho,
                                  int order) {
    EigenSeriesResult<R> out;
    out.rho = rho;
    out.order = order;
    out.u = TruncatedSeries<R>::one(order);

    // U_m carries c_I (rho_m + I_m); seeded by c_0 = 1.
    std::array<TruncatedSeries<R>, 3> U;
    for (int m2 = 0; m2 < 3; ++m2) {
        U[static_cast<std::size_t>(m2)] = TruncatedSeries<R>(order);
        U[static_cast<std::size_t>(m2)].set(
            Expo3{}, CoeffOps<R>::lift(rho[static_cast<std::size_t>(m2)]));
    }

    std::vector<Expo3> level;
    for (int d = 1; d <= order; ++d) {
        detail::enumerate_degree(d, level);
        for (const Expo3& J : level) {
            R val = CoeffOps<R>::lift(Rational(0));
            for (int m2 = 0; m2 < 3; ++m2) {
                const auto& tail = field.tails[static_cast<std::size_t>(m2)];
                for (const auto& [K, tv] : tail.coefficients()) {
                    if (K.deg() == 0 || K.deg() > d)
                        continue;
                    Expo3 I{{J[0] - K[0], J[1] - K[1], J[2] - K[2]}};
                    if (I[0] < 0 || I[1] < 0 || I[2] < 0)
                        continue;
                    R uc = U[static_cast<std::size_t>(m2)].get(I);
                    if (!CoeffOps<R>::is_zero(uc))
                        val = val + uc * tv;
                }
            }
            Rational w = Rational(J[0]) * field.eigs[0] + Rational(J[1]) * field.eigs[1] +
                         Rational(J[2]) * field.eigs[2];
            if (w.is_zero()) {
                out.obstructions.push_back({J, val});
                continue;  // c_J stays 0, so does U_m at J
            }
            R cj = CoeffOps<R>::scale(val, -w.inv());
            if (CoeffOps<R>::is_zero(cj))
                continue;
            out.u.set(J, cj);
            for (int m2 = 0; m2 < 3; ++m2) {
                Rational factor = rho[static_cast<std::size_t>(m2)] + Rational(J[m2]);
                if (!factor.is_zero())
                    U[static_cast<std::size_t>(m2)].set(J, CoeffOps<R>::scale(cj, factor));
            }
        }
    }
    return out;
}

// Recomputes X(x^rho u) / x^rho - (rho . eigs) u by direct series arithmetic;
// used as an internal cross-check on the recursion's bookkeeping.
template <class R>
TruncatedSeries<R> eigen_residual(const LogRates<R>& field, const std::array<Rational, 3>& rho,
                                  const TruncatedSeries<R>& u) {
    int order = u.order();
    TruncatedSeries<R> res(order);
    for (int m2 = 0; m2 < 3; ++m2) {
        TruncatedSeries<R> Um(order);
        for (const auto& [I, c] : u.coefficients()) {
            Rational factor = rho[static_cast<std::size_t>(m2)] + Rational(I[m2]);
            if (!factor.is_zero())
                Um.set(I, CoeffOps<R>::scale(c, factor));
        }
        res = res + Um * field.tails[static_cast<std::size_t>(m2)];
    }
    for (const auto& [I, c] : u.coefficients()) {
        Rational w = Rational(I[0]) * field.eigs[0] + Rational(I[1]) * field.eigs[1] +
                     Rational(I[2]) * field.eigs[2];
        if (!w.is_zero())
            res = res + TruncatedSeries<R>::monomial(I, CoeffOps<R>::scale(c, w), order);
    }
    return res;
}

// First integral candidate x^rho (1 + ...) for a resonant exponent rho.
template <class R>
EigenSeriesResult<R> resonant_series_integral(const LogRates<R>& field,
                                              const std::array<Rational, 3>& rho, int order) {
    Rational dot = rho[0] * field.eigs[0] + rho[1] * field.eigs[1] + rho[2] * field.eigs[2];
    if (!dot.is_zero())
        throw PreconditionViolated("prefactor exponents must annihilate the eigenvalues");
    return eigen_series(field, rho, order);
}

inline EigenSeriesResult<Rational> resonant_series_integral(const LVSystem& s,
                                                            const std::array<Rational, 3>& rho,
                                                            int order) {
    return resonant_series_integral(log_rates_of(s, order), rho, order);
}

// The two privileged resonant prefactors: x^-l2 y^l1 and y^l3 z^-l2.
inline std::array<Rational, 3> primary_rho(const std::array<Rational, 3>& eigs) {
    return {-eigs[1], eigs[0], Rational(0)};
}
inline std::array<Rational, 3> secondary_rho(const std::array<Rational, 3>& eigs) {
    return {Rational(0), eigs[2], -eigs[1]};
}

// Linearizing change of coordinates X_i = var_i * u_i, built coordinatewise.
template <class R>
struct LinearizeResult {
    std::array<EigenSeriesResult<R>, 3> coords;

    bool obstructions_all_zero() const {
        for (const auto& c : coords)
            if (!c.obstructions_all_zero())
                return false;
        return true;
    }
};

template <class R>
LinearizeResult<R> linearize_field(const LogRates<R>& field, int order) {
    LinearizeResult<R> out;
    for (int i = 0; i < 3; ++i) {
        std::array<Rational, 3> rho{Rational(0), Rational(0), Rational(0)};
        rho[static_cast<std::size_t>(i)] = Rational(1);
        out.coords[static_cast<std::size_t>(i)] = eigen_series(field, rho, order);
    }
    return out;
}

inline LinearizeResult<Rational> linearize_system(const LVSystem& s, int order) {
    return linearize_field(log_rates_of(s, order), order);
}

// Divides termwise by (w . I - w0), leaving the resonant terms untouched and
// reporting them.
struct HomologicalSolution {
    TruncatedSeries<Rational> solution;
    std::vector<std::pair<Expo3, Rational>> residual;
};

inline HomologicalSolution solve_homological(const std::array<Rational, 3>& w, const Rational& w0,
                                             const TruncatedSeries<Rational>& rhs) {
    HomologicalSolution out;
    out.solution = TruncatedSeries<Rational>(rhs.order());
    for (const auto& [I, c] : rhs.coefficients()) {
        Rational denom =
            Rational(I[0]) * w[0] + Rational(I[1]) * w[1] + Rational(I[2]) * w[2] - w0;
        if (denom.is_zero())
            out.residual.push_back({I, c});
        else
            out.solution.set(I, c / denom);
    }
    return out;
}

// Linearization of a planar node x' = x(l1 + p), z' = z(l2 + q) with l1, l2
// positive rationals and p, q series in x and z only. No resonances occur, so
// both coordinate series are unobstructed.
struct NodeLinearization {
    TruncatedSeries<Rational> u;  // X = x u
    TruncatedSeries<Rational> v;  // Z = z v
};

inline NodeLinearization node_linearize_2d(const std::array<Rational, 2>& lam,
                                           const TruncatedSeries<Rational>& p,
                                           const TruncatedSeries<Rational>& q) {
    if (!(lam[0].sign() > 0 && lam[1].sign() > 0))
        throw PreconditionViolated("node eigenvalues must be positive");
    for (const auto* s : {&p, &q}) {
        if (!CoeffOps<Rational>::is_zero(s->get(Expo3{})))
            throw PreconditionViolated("node log-rate tails must vanish at the origin");
        for (const auto& [I, c] : s->coefficients())
            if (I[1] != 0)
                throw PreconditionViolated("node series must not involve the middle variable");
    }
    int order = std::min(p.order(), q.order());
    LogRates<Rational> field;
    // The middle slot is unused; give it a positive eigenvalue that keeps
    // every exponent off resonance.
    field.eigs = {lam[0], lam[0] + lam[1] + Rational(1), lam[1]};
    field.tails = {p.truncated(order), TruncatedSeries<Rational>(order), q.truncated(order)};

    NodeLinearization out;
    auto ux = eigen_series(field, {Rational(1), Rational(0), Rational(0)}, order);
    auto uz = eigen_series(field, {Rational(0), Rational(0), Rational(1)}, order);
    out.u = ux.u;
    out.v = uz.u;
    return out;
}

}  // namespace lv3
