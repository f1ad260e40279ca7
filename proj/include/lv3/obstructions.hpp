#pragma once

// Obstruction polynomials: the resonant forced values of the series
// constructions, computed once with the nine matrix entries symbolic. A
// system with concrete entries is formally integrable through order N exactly
// when every entry of both integral sets vanishes at its parameter point, and
// linearizable through order N when the three coordinate sets vanish too.

#include <vector>

#include "lv3/groebner.hpp"
#include "lv3/resonant.hpp"

namespace lv3 {

struct ObstructionSet {
    std::array<Rational, 3> eigs;
    std::array<Rational, 3> rho;
    int order = 0;
    // (exponent, obstruction polynomial), ordered by degree then exponent.
    std::vector<std::pair<Expo3, Poly>> entries;
};

inline ObstructionSet obstruction_set_for(const std::array<Rational, 3>& eigs,
                                          const std::array<Rational, 3>& rho, int order) {
    ObstructionSet out;
    out.eigs = eigs;
    out.rho = rho;
    out.order = order;
    auto res = eigen_series(symbolic_log_rates(eigs, order), rho, order);
    for (auto& [I, p] : res.obstructions) {
        Poly q = p + Poly::zero(param_ring());  // pin the ring on zero polys too
        out.entries.push_back({I, q});
    }
    return out;
}

// The two candidate-integral sets for a resonance.
inline std::pair<ObstructionSet, ObstructionSet> integrability_obstructions(
    const std::array<Rational, 3>& eigs, int order) {
    return {obstruction_set_for(eigs, primary_rho(eigs), order),
            obstruction_set_for(eigs, secondary_rho(eigs), order)};
}

// The three coordinate sets of the linearizing change.
inline std::array<ObstructionSet, 3> linearizability_obstructions(
    const std::array<Rational, 3>& eigs, int order) {
    std::array<ObstructionSet, 3> out;
    for (int i = 0; i < 3; ++i) {
        std::array<Rational, 3> rho{Rational(0), Rational(0), Rational(0)};
        rho[static_cast<std::size_t>(i)] = Rational(1);
        out[static_cast<std::size_t>(i)] = obstruction_set_for(eigs, rho, order);
    }
    return out;
}

inline std::vector<Rational> evaluate_entries(const ObstructionSet& set,
                                              const std::vector<Rational>& point) {
    std::vector<Rational> out;
    out.reserve(set.entries.size());
    for (const auto& [I, p] : set.entries)
        out.push_back(p.eval(point));
    return out;
}

// Reduction of a symbolic obstruction set modulo a case's condition ideal.
// Members reduce to zero outright; for entries that do not, the fallback
// verdict records whether they at least vanish at the supplied points of the
// case variety.
struct ObstructionReduction {
    std::vector<Poly> normal_forms;     // one per entry
    bool all_members = true;            // every normal form is zero
    bool all_vanish_on_samples = true;  // nonmembers checked pointwise
    std::vector<std::size_t> nonmembers;
};

inline ObstructionReduction reduce_obstructions_mod_case(
    const ObstructionSet& set, const GroebnerBasis& case_ideal,
    const std::vector<std::vector<Rational>>& sample_points = {}) {
    ObstructionReduction out;
    for (std::size_t idx = 0; idx < set.entries.size(); ++idx) {
        Poly nf = case_ideal.reduce(set.entries[idx].second);
        out.normal_forms.push_back(nf);
        if (nf.is_zero())
            continue;
        out.all_members = false;
        out.nonmembers.push_back(idx);
        for (const auto& pt : sample_points)
            if (!set.entries[idx].second.eval(pt).is_zero()) {
                out.all_vanish_on_samples = false;
                break;
            }
    }
    if (!out.all_members && sample_points.empty())
        out.all_vanish_on_samples = false;
    return out;
}

}  // namespace lv3
