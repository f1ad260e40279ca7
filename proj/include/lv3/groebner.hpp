#pragma once

// Buchberger's algorithm with the product and chain criteria, full
// interreduction, and normal forms for ideal membership tests. Bases come out
// reduced: monic generators, no leading monomial divides another, every
// generator fully reduced against the rest, sorted by leading monomial.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "lv3/poly.hpp"

namespace lv3 {

// Remainder of p on division by the list G (not required to be a basis).
// Deterministic: at each step the first listed divisor whose leading monomial
// divides the current lead is used.
inline Poly normal_form(const Poly& p, const std::vector<Poly>& G) {
    Poly r = p.ring() ? Poly::zero(p.ring(), p.order()) : Poly();
    Poly h = p;
    while (!h.is_zero()) {
        const Term lead = h.terms().front();
        bool reduced = false;
        for (const Poly& g : G) {
            if (g.is_zero())
                continue;
            if (g.leading_monomial().divides(lead.m)) {
                Poly t = Poly::term(g.leading_monomial().quotient_of(lead.m),
                                    lead.c / g.leading_coefficient(), h.ring(), h.order());
                h -= t * g;
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Poly lt = Poly::term(lead.m, lead.c, h.ring(), h.order());
            r += lt;
            h -= lt;
        }
    }
    return r;
}

inline Poly s_polynomial(const Poly& f, const Poly& g) {
    Monomial L = f.leading_monomial().lcm(g.leading_monomial());
    Poly tf = Poly::term(f.leading_monomial().quotient_of(L), f.leading_coefficient().inv(),
                         f.ring(), f.order());
    Poly tg = Poly::term(g.leading_monomial().quotient_of(L), g.leading_coefficient().inv(),
                         g.ring(), g.order());
    return tf * f - tg * g;
}

struct GroebnerBasis {
    std::vector<Poly> gens;
    RingPtr ring;
    MonomialOrder order = MonomialOrder::DegRevLex;

    bool contains(const Poly& p) const { return normal_form(p, gens).is_zero(); }
    Poly reduce(const Poly& p) const { return normal_form(p, gens); }
};

namespace detail {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

}  // namespace detail

inline GroebnerBasis buchberger(std::vector<Poly> gens, RingPtr ring,
                                MonomialOrder ord = MonomialOrder::DegRevLex) {
    GroebnerBasis out;
    out.ring = std::move(ring);
    out.order = ord;
    int nv = out.ring ? out.ring->size() : kMaxVars;

    std::vector<Poly> G;
    for (Poly& g : gens) {
        if (g.is_zero())
            continue;
        if (g.ring() && out.ring && !same_ring(g.ring(), out.ring))
            throw RingMismatchError("generator over a different ring");
        G.push_back(g.monic());
    }

    auto lcm_less = [nv, ord](const detail::Pair& a, const detail::Pair& b) {
        int rel = mono_cmp(a.lcm, b.lcm, nv, ord);
        if (rel != 0)
            return rel < 0;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<detail::Pair> todo;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto push_pair = [&](std::size_t i, std::size_t j) {
        todo.push_back({i, j, G[i].leading_monomial().lcm(G[j].leading_monomial())});
    };
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            push_pair(i, j);

    while (!todo.empty()) {
        auto it = std::min_element(todo.begin(), todo.end(), lcm_less);
        detail::Pair pr = *it;
        todo.erase(it);
        done.insert({pr.i, pr.j});

        const Monomial& mi = G[pr.i].leading_monomial();
        const Monomial& mj = G[pr.j].leading_monomial();
        if (mi.coprime_with(mj))
            continue;  // product criterion
        bool chained = false;
        for (std::size_t k2 = 0; k2 < G.size() && !chained; ++k2) {
            if (k2 == pr.i || k2 == pr.j)
                continue;
            if (!G[k2].leading_monomial().divides(pr.lcm))
                continue;
            auto key1 = std::minmax(pr.i, k2);
            auto key2 = std::minmax(pr.j, k2);
            if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                chained = true;  // chain criterion
        }
        if (chained)
            continue;

        Poly s = normal_form(s_polynomial(G[pr.i], G[pr.j]), G);
        if (s.is_zero())
            continue;
        G.push_back(s.monic());
        std::size_t n = G.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            push_pair(i, n);
    }

    // Minimalize: drop generators whose lead is divisible by another lead.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j)
                continue;
            const Monomial& mj = G[j].leading_monomial();
            const Monomial& mi = G[i].leading_monomial();
            if (mj.divides(mi) && !(mi == mj && j > i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(G[i]);
    }

    // Full interreduction.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> rest;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i)
                    rest.push_back(minimal[j]);
            Poly r = normal_form(minimal[i], rest);
            if (r.is_zero()) {
                minimal.erase(minimal.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            r = r.monic();
            if (r != minimal[i]) {
                minimal[i] = r;
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [nv, ord](const Poly& a, const Poly& b) {
        return mono_cmp(a.leading_monomial(), b.leading_monomial(), nv, ord) < 0;
    });
    out.gens = std::move(minimal);
    return out;
}

}  // namespace lv3
