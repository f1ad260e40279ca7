#pragma once

// Variable lists, exponent vectors and monomial orders.
//
// A Ring is an immutable ordered list of variable names; polynomials remember
// which ring they live in and refuse to combine across different rings. The
// first listed variable is the most significant one for every order, so a
// ring (x, y, z) compares with x > y > z.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lv3/errors.hpp"

namespace lv3 {

inline constexpr int kMaxVars = 12;

class Ring {
  public:
    explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {
        if (vars_.empty() || vars_.size() > kMaxVars)
            throw PreconditionViolated("ring must have between 1 and 12 variables");
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j])
                    throw PreconditionViolated("duplicate ring variable " + vars_[i]);
    }

    int size() const { return static_cast<int>(vars_.size()); }
    const std::string& name(int i) const { return vars_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return vars_; }

    int index_of(const std::string& v) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == v)
                return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Ring& o) const { return vars_ == o.vars_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

  private:
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

// Phase-space variables of the three-dimensional systems.
inline const RingPtr& xyz_ring() {
    static const RingPtr r = std::make_shared<Ring>(std::vector<std::string>{"x", "y", "z"});
    return r;
}

// The nine matrix entries, in row-major reading order.
inline const RingPtr& param_ring() {
    static const RingPtr r = std::make_shared<Ring>(
        std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h", "k"});
    return r;
}

// Mixed ring used when reading catalog formulas before parameters are bound.
inline const RingPtr& mixed_ring() {
    static const RingPtr r = std::make_shared<Ring>(std::vector<std::string>{
        "x", "y", "z", "a", "b", "c", "d", "e", "f", "g", "h", "k"});
    return r;
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};
    int deg = 0;

    static Monomial one() { return Monomial{}; }

    static Monomial var(int i, int power = 1) {
        Monomial m;
        m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(power);
        m.deg = power;
        return m;
    }

    bool is_one() const { return deg == 0; }
    int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    Monomial mul(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            int s = e[static_cast<std::size_t>(i)] + o.e[static_cast<std::size_t>(i)];
            if (s > 255)
                throw MathError("monomial exponent overflow");
            r.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(s);
        }
        r.deg = deg + o.deg;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg > o.deg)
            return false;
        for (int i = 0; i < kMaxVars; ++i)
            if (e[static_cast<std::size_t>(i)] > o.e[static_cast<std::size_t>(i)])
                return false;
        return true;
    }

    // Quotient o / this; caller checks divisibility first.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(o.e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i)]);
        r.deg = o.deg - deg;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r;
        r.deg = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            r.e[static_cast<std::size_t>(i)] =
                std::max(e[static_cast<std::size_t>(i)], o.e[static_cast<std::size_t>(i)]);
            r.deg += r.e[static_cast<std::size_t>(i)];
        }
        return r;
    }

    bool coprime_with(const Monomial& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[static_cast<std::size_t>(i)] && o.e[static_cast<std::size_t>(i)])
                return false;
        return true;
    }
};

enum class MonomialOrder { DegRevLex, Lex };

// Three-way comparison under the chosen order; positive when a > b.
inline int mono_cmp(const Monomial& a, const Monomial& b, int nvars, MonomialOrder ord) {
    if (ord == MonomialOrder::Lex) {
        for (int i = 0; i < nvars; ++i) {
            if (a[i] != b[i])
                return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }
    if (a.deg != b.deg)
        return a.deg > b.deg ? 1 : -1;
    for (int i = nvars - 1; i >= 0; --i) {
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace lv3
