#pragma once

// Truncated multivariate power series in (x, y, z), generic over the
// coefficient ring: exact rationals for concrete systems, parameter
// polynomials when the matrix entries stay symbolic. Terms above the
// truncation order are dropped eagerly by every operation.

#include <array>
#include <map>
#include <sstream>
#include <vector>

#include "lv3/poly.hpp"

namespace lv3 {

// Exponent triple with the deterministic ordering used for reports and
// obstruction lists: total degree first, then lexicographic.
struct Expo3 {
    std::array<int, 3> e{0, 0, 0};

    int deg() const { return e[0] + e[1] + e[2]; }
    int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

    bool operator==(const Expo3& o) const { return e == o.e; }
    bool operator!=(const Expo3& o) const { return e != o.e; }
    bool operator<(const Expo3& o) const {
        if (deg() != o.deg())
            return deg() < o.deg();
        return e < o.e;
    }

    Expo3 plus(int i, int delta) const {
        Expo3 r = *this;
        r.e[static_cast<std::size_t>(i)] += delta;
        return r;
    }

    Expo3 operator+(const Expo3& o) const {
        return Expo3{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}};
    }

    std::string str() const {
        std::ostringstream os;
        os << "(" << e[0] << "," << e[1] << "," << e[2] << ")";
        return os.str();
    }
};

// Coefficient-ring glue: how to recognize zero and scale by a Rational.
template <class R>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& c) { return c.is_zero(); }
    static Rational scale(const Rational& c, const Rational& s) { return c * s; }
    static Rational lift(const Rational& s) { return s; }
    static std::string str(const Rational& c) { return c.str(); }
};

template <>
struct CoeffOps<Poly> {
    static bool is_zero(const Poly& c) { return c.is_zero(); }
    static Poly scale(const Poly& c, const Rational& s) { return c.scaled(s); }
    static Poly lift(const Rational& s) { return Poly::constant(s, nullptr); }
    static std::string str(const Poly& c) { return c.str(); }
};

template <class R>
class TruncatedSeries {
  public:
    TruncatedSeries() : order_(0) {}
    explicit TruncatedSeries(int order) : order_(order) {
        if (order < 0)
            throw PreconditionViolated("negative truncation order");
    }

    static TruncatedSeries one(int order) {
        TruncatedSeries s(order);
        s.set(Expo3{}, CoeffOps<R>::lift(Rational(1)));
        return s;
    }

    static TruncatedSeries monomial(const Expo3& i, const R& c, int order) {
        TruncatedSeries s(order);
        s.set(i, c);
        return s;
    }

    int order() const { return order_; }
    const std::map<Expo3, R>& coefficients() const { return c_; }

    R get(const Expo3& i) const {
        auto it = c_.find(i);
        if (it == c_.end())
            return CoeffOps<R>::lift(Rational(0));
        return it->second;
    }

    void set(const Expo3& i, const R& v) {
        if (i.deg() > order_)
            return;
        if (CoeffOps<R>::is_zero(v))
            c_.erase(i);
        else
            c_[i] = v;
    }

    void add_to(const Expo3& i, const R& v) {
        if (i.deg() > order_)
            return;
        auto it = c_.find(i);
        if (it == c_.end()) {
            if (!CoeffOps<R>::is_zero(v))
                c_[i] = v;
            return;
        }
        it->second = it->second + v;
        if (CoeffOps<R>::is_zero(it->second))
            c_.erase(it);
    }

    bool is_zero() const { return c_.empty(); }

    bool operator==(const TruncatedSeries& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    bool unit_constant_term() const {
        auto it = c_.find(Expo3{});
        if (it == c_.end())
            return false;
        R diff = it->second + CoeffOps<R>::scale(CoeffOps<R>::lift(Rational(1)), Rational(-1));
        return CoeffOps<R>::is_zero(diff);
    }

    TruncatedSeries truncated(int order) const {
        TruncatedSeries r(order);
        for (const auto& [i, v] : c_)
            r.set(i, v);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r = a;
        for (const auto& [i, v] : b.c_)
            r.add_to(i, v);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r = a;
        for (const auto& [i, v] : b.c_)
            r.add_to(i, CoeffOps<R>::scale(v, Rational(-1)));
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order_, b.order_));
        for (const auto& [ia, va] : a.c_)
            for (const auto& [ib, vb] : b.c_) {
                Expo3 i = ia + ib;
                if (i.deg() > r.order_)
                    continue;
                r.add_to(i, va * vb);
            }
        return r;
    }

    TruncatedSeries scaled(const Rational& s) const {
        TruncatedSeries r(order_);
        if (s.is_zero())
            return r;
        for (const auto& [i, v] : c_)
            r.c_[i] = CoeffOps<R>::scale(v, s);
        return r;
    }

    TruncatedSeries scaled_coeff(const R& s) const {
        TruncatedSeries r(order_);
        for (const auto& [i, v] : c_) {
            R sv = v * s;
            if (!CoeffOps<R>::is_zero(sv))
                r.c_[i] = sv;
        }
        return r;
    }

    // Drops the constant term.
    TruncatedSeries tail() const {
        TruncatedSeries r = *this;
        r.c_.erase(Expo3{});
        return r;
    }

    std::string str() const {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, v] : c_) {
            if (!first)
                os << " + ";
            first = false;
            os << "[" << CoeffOps<R>::str(v) << "]";
            const char* names[3] = {"x", "y", "z"};
            for (int t = 0; t < 3; ++t) {
                if (i[t] == 0)
                    continue;
                os << "*" << names[t];
                if (i[t] > 1)
                    os << "^" << i[t];
            }
        }
        return os.str();
    }

  private:
    int order_;
    std::map<Expo3, R> c_;
};

// Powers, inverse, log and exp for unit series (constant term 1). These are
// the pieces needed to expand Darboux factors like (1 + w)^alpha exactly.

template <class R>
TruncatedSeries<R> series_pow_int(const TruncatedSeries<R>& s, int n);

template <class R>
TruncatedSeries<R> series_inverse(const TruncatedSeries<R>& s) {
    if (!s.unit_constant_term())
        throw PreconditionViolated("series inverse needs constant term 1");
    int n = s.order();
    TruncatedSeries<R> w = s.tail();
    TruncatedSeries<R> acc = TruncatedSeries<R>::one(n);
    TruncatedSeries<R> pw = TruncatedSeries<R>::one(n);
    for (int k2 = 1; k2 <= n; ++k2) {
        pw = pw * w;
        if (pw.is_zero())
            break;
        acc = acc + pw.scaled(Rational(k2 % 2 ? -1 : 1));
    }
    return acc;
}

template <class R>
TruncatedSeries<R> series_log1(const TruncatedSeries<R>& s) {
    if (!s.unit_constant_term())
        throw PreconditionViolated("series log needs constant term 1");
    int n = s.order();
    TruncatedSeries<R> w = s.tail();
    TruncatedSeries<R> acc(n);
    TruncatedSeries<R> pw = TruncatedSeries<R>::one(n);
    for (int k2 = 1; k2 <= n; ++k2) {
        pw = pw * w;
        if (pw.is_zero())
            break;
        acc = acc + pw.scaled(Rational(k2 % 2 ? 1 : -1, k2));
    }
    return acc;
}

template <class R>
TruncatedSeries<R> series_exp0(const TruncatedSeries<R>& s) {
    if (!CoeffOps<R>::is_zero(s.get(Expo3{})))
        throw PreconditionViolated("series exp needs zero constant term");
    int n = s.order();
    TruncatedSeries<R> acc = TruncatedSeries<R>::one(n);
    TruncatedSeries<R> pw = TruncatedSeries<R>::one(n);
    Rational fact(1);
    for (int k2 = 1; k2 <= n; ++k2) {
        pw = pw * s;
        if (pw.is_zero())
            break;
        fact *= Rational(k2);
        acc = acc + pw.scaled(fact.inv());
    }
    return acc;
}

// (1 + w)^alpha for rational alpha, via exp(alpha log(1 + w)).
template <class R>
TruncatedSeries<R> series_pow_rational(const TruncatedSeries<R>& s, const Rational& alpha) {
    if (alpha.is_integer()) {
        long n = alpha.to_long();
        if (n >= 0)
            return series_pow_int(s, static_cast<int>(n));
        return series_pow_int(series_inverse(s), static_cast<int>(-n));
    }
    return series_exp0(series_log1(s).scaled(alpha));
}

template <class R>
TruncatedSeries<R> series_pow_int(const TruncatedSeries<R>& s, int n) {
    if (n < 0)
        return series_pow_int(series_inverse(s), -n);
    TruncatedSeries<R> acc = TruncatedSeries<R>::one(s.order());
    TruncatedSeries<R> base = s;
    while (n) {
        if (n & 1)
            acc = acc * base;
        if (n > 1)
            base = base * base;
        n >>= 1;
    }
    return acc;
}

// Embeds a polynomial in (x, y, z) as a truncated series.
inline TruncatedSeries<Rational> series_from_poly(const Poly& p, int order) {
    if (p.ring() && !same_ring(p.ring(), xyz_ring()))
        throw RingMismatchError("series embedding expects the coordinate ring");
    TruncatedSeries<Rational> s(order);
    for (const Term& t : p.terms())
        s.add_to(Expo3{{t.m[0], t.m[1], t.m[2]}}, t.c);
    return s;
}

}  // namespace lv3
