#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lv3/obstructions.hpp"

using namespace lv3;

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long pick(long lo, long hi) {
        return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational rat() { return Rational(pick(-5, 5), pick(1, 3)); }
};

const std::array<Rational, 3> r111{Rational(1), Rational(-1), Rational(1)};
const std::array<Rational, 3> r211{Rational(2), Rational(-1), Rational(1)};
const std::array<Rational, 3> r121{Rational(1), Rational(-2), Rational(1)};

LVSystem system_at(std::array<Rational, 3> eigs, const std::vector<Rational>& point) {
    LVSystem s;
    s.eigs = eigs;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                point[static_cast<std::size_t>(3 * i + j)];
    return s;
}

std::vector<Rational> random_point(Rng& rng) {
    std::vector<Rational> p;
    for (int i = 0; i < 9; ++i)
        p.push_back(rng.rat());
    return p;
}

Poly pvar(int i) { return Poly::variable(i, param_ring()); }

// a..k with e skipped at index 4 maps i -> 8 - i
Poly sigma(const Poly& p) {
    std::vector<Poly> images;
    for (int i = 0; i < 9; ++i)
        images.push_back(pvar(8 - i));
    return p.substitute(images);
}

Expo3 ex(int i, int j, int k2) { return Expo3{{i, j, k2}}; }

Expo3 swap_xz(const Expo3& e) { return ex(e[2], e[1], e[0]); }

GroebnerBasis ideal_of(std::vector<Poly> gens) {
    return buchberger(std::move(gens), param_ring(), MonomialOrder::DegRevLex);
}

}  // namespace

TEST_CASE("degree-two entries of the (1,-1,1) sets match the hand reduction") {
    auto [prim, sec] = integrability_obstructions(r111, 2);
    const Poly a = pvar(0), b = pvar(1), c = pvar(2), d = pvar(3), e = pvar(4), f = pvar(5),
               g = pvar(6), h = pvar(7), k = pvar(8);

    REQUIRE(prim.entries.size() == 2);
    CHECK(prim.entries[0].first == ex(0, 1, 1));
    CHECK(prim.entries[0].second == b * f + e * f - c * h - f * h);
    CHECK(prim.entries[1].first == ex(1, 1, 0));
    CHECK(prim.entries[1].second == d * e - a * b);

    REQUIRE(sec.entries.size() == 2);
    CHECK(sec.entries[0].first == ex(0, 1, 1));
    CHECK(sec.entries[0].second == e * f - h * k);
    CHECK(sec.entries[1].first == ex(1, 1, 0));
    CHECK(sec.entries[1].second == d * e + d * h - b * d - b * g);
}

TEST_CASE("raising the order extends a set without rewriting earlier entries") {
    for (auto eigs : {r111, r211}) {
        auto lo = obstruction_set_for(eigs, primary_rho(eigs), 4);
        auto hi = obstruction_set_for(eigs, primary_rho(eigs), 6);
        REQUIRE(lo.entries.size() <= hi.entries.size());
        for (std::size_t i = 0; i < lo.entries.size(); ++i) {
            CHECK(lo.entries[i].first == hi.entries[i].first);
            CHECK(lo.entries[i].second == hi.entries[i].second);
        }
        CHECK(lo.entries.size() < hi.entries.size());  // new degrees do appear
    }
}

TEST_CASE("evaluating the symbolic sets reproduces the numeric recursion") {
    Rng rng(97);
    for (auto eigs : {r111, r211, r121}) {
        std::vector<std::array<Rational, 3>> rhos{primary_rho(eigs), secondary_rho(eigs)};
        rhos.push_back({Rational(1), Rational(0), Rational(0)});
        for (const auto& rho : rhos) {
            auto sym = obstruction_set_for(eigs, rho, 4);
            for (int trial = 0; trial < 4; ++trial) {
                auto pt = random_point(rng);
                auto num = eigen_series(log_rates_of(system_at(eigs, pt), 4), rho, 4);
                REQUIRE(num.obstructions.size() == sym.entries.size());
                auto values = evaluate_entries(sym, pt);
                for (std::size_t i = 0; i < sym.entries.size(); ++i) {
                    CHECK(sym.entries[i].first == num.obstructions[i].first);
                    CHECK(values[i] == num.obstructions[i].second);
                }
            }
        }
    }
}

TEST_CASE("the zero matrix annihilates every obstruction set") {
    std::vector<Rational> origin(9, Rational(0));
    for (auto eigs : {r111, r211, r121}) {
        auto [prim, sec] = integrability_obstructions(eigs, 5);
        auto lin = linearizability_obstructions(eigs, 5);
        for (const ObstructionSet* set : {&prim, &sec, &lin[0], &lin[1], &lin[2]}) {
            CHECK_FALSE(set->entries.empty());
            for (const auto& v : evaluate_entries(*set, origin))
                CHECK(v.is_zero());
        }
        // yet the sets are not identically zero
        CHECK_FALSE(prim.entries[0].second.is_zero());
        CHECK_FALSE(sec.entries[0].second.is_zero());
    }
}

TEST_CASE("integrability sets reduce to zero modulo known integrable ideals") {
    auto [prim, sec] = integrability_obstructions(r111, 4);
    for (auto gens : {std::vector<int>{1, 3, 5, 7}, std::vector<int>{1, 4, 7}}) {
        std::vector<Poly> ideal;
        for (int i : gens)
            ideal.push_back(pvar(i));
        auto gb = ideal_of(ideal);
        for (const ObstructionSet* set : {&prim, &sec}) {
            auto red = reduce_obstructions_mod_case(*set, gb);
            CHECK(red.all_members);
            CHECK(red.nonmembers.empty());
            REQUIRE(red.normal_forms.size() == set->entries.size());
        }
    }
}

TEST_CASE("the unit ideal absorbs everything") {
    auto set = obstruction_set_for(r111, primary_rho(r111), 4);
    auto gb = ideal_of({Poly::constant(Rational(1), param_ring())});
    auto red = reduce_obstructions_mod_case(set, gb);
    CHECK(red.all_members);
}

TEST_CASE("a hyperplane that misses the integrable locus leaves survivors") {
    auto sec = obstruction_set_for(r111, secondary_rho(r111), 4);
    auto gb = ideal_of({pvar(0)});  // a = 0

    auto bare = reduce_obstructions_mod_case(sec, gb);
    CHECK_FALSE(bare.all_members);
    CHECK_FALSE(bare.nonmembers.empty());
    CHECK_FALSE(bare.all_vanish_on_samples);  // no samples supplied

    // x' = x(1+y), y' = y(-1+x), z' = z sits on a = 0 and obstructs
    std::vector<Rational> witness(9, Rational(0));
    witness[1] = Rational(1);
    witness[3] = Rational(1);
    auto red = reduce_obstructions_mod_case(sec, gb, {witness});
    CHECK_FALSE(red.all_members);
    CHECK_FALSE(red.all_vanish_on_samples);
}

TEST_CASE("swapping the outer coordinates transports one set onto the other") {
    for (auto eigs : {r111, r121}) {
        auto [prim, sec] = integrability_obstructions(eigs, 5);
        REQUIRE(prim.entries.size() == sec.entries.size());
        for (const auto& [J, p] : prim.entries) {
            bool matched = false;
            for (const auto& [K, q] : sec.entries)
                if (K == swap_xz(J)) {
                    matched = true;
                    CHECK(q == sigma(p));
                }
            CHECK(matched);
        }
        auto lin = linearizability_obstructions(eigs, 4);
        for (const auto& [J, p] : lin[0].entries) {
            bool matched = false;
            for (const auto& [K, q] : lin[2].entries)
                if (K == swap_xz(J)) {
                    matched = true;
                    CHECK(q == sigma(p));
                }
            CHECK(matched);
        }
    }
}

TEST_CASE("numeric duality: a point obstructs exactly when its dual does") {
    Rng rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        auto pt = random_point(rng);
        LVSystem s = system_at(r121, pt);
        LVSystem t = dual_transform(s);
        auto a = resonant_series_integral(s, primary_rho(r121), 5);
        auto b = resonant_series_integral(t, secondary_rho(r121), 5);
        REQUIRE(a.obstructions.size() == b.obstructions.size());
        for (const auto& [J, v] : a.obstructions) {
            bool matched = false;
            for (const auto& [K, w] : b.obstructions)
                if (K == swap_xz(J)) {
                    matched = true;
                    CHECK(w == v);
                }
            CHECK(matched);
        }
    }
}
