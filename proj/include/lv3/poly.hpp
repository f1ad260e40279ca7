#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Terms are stored sorted, leading term first, under the polynomial's monomial
// order. A default-constructed Poly is the ring-free zero; it combines with
// any ring and is how templated series code spells "zero coefficient".

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lv3/monomial.hpp"
#include "lv3/rational.hpp"

namespace lv3 {

struct Term {
    Monomial m;
    Rational c;
};

class Poly {
  public:
    Poly() = default;

    static Poly zero(RingPtr ring, MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly p;
        p.ring_ = std::move(ring);
        p.ord_ = ord;
        return p;
    }

    static Poly constant(const Rational& c, RingPtr ring,
                         MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly p = zero(std::move(ring), ord);
        if (!c.is_zero())
            p.terms_.push_back({Monomial::one(), c});
        return p;
    }

    static Poly variable(int i, const RingPtr& ring,
                         MonomialOrder ord = MonomialOrder::DegRevLex) {
        if (!ring || i < 0 || i >= ring->size())
            throw PreconditionViolated("variable index outside ring");
        Poly p = zero(ring, ord);
        p.terms_.push_back({Monomial::var(i), Rational(1)});
        return p;
    }

    static Poly term(const Monomial& m, const Rational& c, RingPtr ring,
                     MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly p = zero(std::move(ring), ord);
        if (!c.is_zero())
            p.terms_.push_back({m, c});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    MonomialOrder order() const { return ord_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

    Rational constant_term() const {
        if (!terms_.empty() && terms_.back().m.is_one())
            return terms_.back().c;
        return Rational(0);
    }

    int degree() const { return terms_.empty() ? -1 : terms_.front().m.deg; }

    const Monomial& leading_monomial() const {
        require_nonzero();
        return terms_.front().m;
    }
    const Rational& leading_coefficient() const {
        require_nonzero();
        return terms_.front().c;
    }

    Rational coefficient(const Monomial& m) const {
        for (const Term& t : terms_)
            if (t.m == m)
                return t.c;
        return Rational(0);
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    Poly operator-() const {
        Poly r = *this;
        for (Term& t : r.terms_)
            t.c = -t.c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        RingPtr ring;
        MonomialOrder ord;
        join_context(a, b, ring, ord);
        if (a.is_zero() || b.is_zero())
            return zero(ring, ord);
        if (a.terms_.size() == 1)
            return b.shifted(a.terms_[0].m, a.terms_[0].c).with_context(ring, ord);
        if (b.terms_.size() == 1)
            return a.shifted(b.terms_[0].m, b.terms_[0].c).with_context(ring, ord);
        int nv = ring ? ring->size() : kMaxVars;
        auto cmp = [nv, ord](const Monomial& x, const Monomial& y) {
            return mono_cmp(x, y, nv, ord) > 0;
        };
        std::map<Monomial, Rational, decltype(cmp)> acc(cmp);
        for (const Term& ta : a.terms_)
            for (const Term& tb : b.terms_) {
                Monomial m = ta.m.mul(tb.m);
                auto [it, fresh] = acc.try_emplace(m, ta.c * tb.c);
                if (!fresh) {
                    it->second += ta.c * tb.c;
                    if (it->second.is_zero())
                        acc.erase(it);
                }
            }
        Poly r = zero(ring, ord);
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            r.terms_.push_back({m, c});
        return r;
    }

    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly scaled(const Rational& c) const {
        if (c.is_zero())
            return zero(ring_, ord_);
        Poly r = *this;
        for (Term& t : r.terms_)
            t.c *= c;
        return r;
    }

    friend Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

    bool operator==(const Poly& o) const {
        if (terms_.size() != o.terms_.size())
            return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c)
                return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int var) const {
        Poly r = zero(ring_, ord_);
        for (const Term& t : terms_) {
            int ev = t.m[var];
            if (ev == 0)
                continue;
            Monomial m = t.m;
            m.e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(ev - 1);
            m.deg -= 1;
            r.terms_.push_back({m, t.c * Rational(ev)});
        }
        // Dropping one exponent preserves relative order in both supported
        // orders only degree-wise; re-sort to stay canonical.
        r.sort_terms();
        return r;
    }

    // Evaluation over any commutative ring; `lift` embeds a Rational into it.
    template <class T, class Lift>
    T eval_with(const std::vector<T>& values, Lift lift) const {
        T total = lift(Rational(0));
        for (const Term& t : terms_) {
            T prod = lift(t.c);
            for (int i = 0; i < (ring_ ? ring_->size() : kMaxVars); ++i)
                for (int rep = 0; rep < t.m[i]; ++rep)
                    prod = prod * values[static_cast<std::size_t>(i)];
            total = total + prod;
        }
        return total;
    }

    Rational eval(const std::vector<Rational>& values) const {
        if (ring_ && static_cast<int>(values.size()) != ring_->size())
            throw PreconditionViolated("evaluation point has wrong arity");
        Rational total(0);
        for (const Term& t : terms_) {
            Rational prod = t.c;
            for (int i = 0; i < (ring_ ? ring_->size() : kMaxVars); ++i)
                if (t.m[i])
                    prod *= values[static_cast<std::size_t>(i)].pow(t.m[i]);
            total += prod;
        }
        return total;
    }

    // Substitutes polynomials (over a common target ring) for the variables.
    Poly substitute(const std::vector<Poly>& images) const {
        if (!ring_)
            return *this;
        if (static_cast<int>(images.size()) != ring_->size())
            throw PreconditionViolated("substitution needs one image per variable");
        RingPtr target;
        MonomialOrder ord = ord_;
        for (const Poly& im : images)
            if (im.ring()) {
                target = im.ring();
                ord = im.order();
                break;
            }
        Poly total = Poly::zero(target, ord);
        for (const Term& t : terms_) {
            Poly prod = Poly::constant(t.c, target, ord);
            for (int i = 0; i < ring_->size(); ++i)
                for (int rep = 0; rep < t.m[i]; ++rep)
                    prod *= images[static_cast<std::size_t>(i)];
            total += prod;
        }
        return total;
    }

    Poly pow(int n) const {
        if (n < 0)
            throw PreconditionViolated("negative polynomial power");
        Poly acc = Poly::constant(Rational(1), ring_, ord_);
        Poly base = *this;
        while (n) {
            if (n & 1)
                acc *= base;
            base = n > 1 ? base * base : base;
            n >>= 1;
        }
        return acc;
    }

    Poly monic() const {
        require_nonzero();
        return scaled(leading_coefficient().inv());
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const Term& t : terms_) {
            Rational c = t.c;
            if (first) {
                if (c.sign() < 0) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
                c = c.abs();
            }
            first = false;
            bool coeff_shown = !c.is_one() || t.m.is_one();
            if (coeff_shown)
                os << c.str();
            bool any = false;
            for (int i = 0; i < (ring_ ? ring_->size() : kMaxVars); ++i) {
                if (!t.m[i])
                    continue;
                if (coeff_shown || any)
                    os << "*";
                os << (ring_ ? ring_->name(i) : "v" + std::to_string(i));
                if (t.m[i] > 1)
                    os << "^" << t.m[i];
                any = true;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

  private:
    void require_nonzero() const {
        if (terms_.empty())
            throw PreconditionViolated("zero polynomial has no leading term");
    }

    void sort_terms() {
        int nv = ring_ ? ring_->size() : kMaxVars;
        MonomialOrder ord = ord_;
        std::sort(terms_.begin(), terms_.end(), [nv, ord](const Term& a, const Term& b) {
            return mono_cmp(a.m, b.m, nv, ord) > 0;
        });
    }

    Poly shifted(const Monomial& m, const Rational& c) const {
        Poly r = zero(ring_, ord_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_)
            r.terms_.push_back({t.m.mul(m), t.c * c});
        return r;
    }

    Poly with_context(RingPtr ring, MonomialOrder ord) const {
        Poly r = *this;
        r.ring_ = std::move(ring);
        r.ord_ = ord;
        return r;
    }

    static void join_context(const Poly& a, const Poly& b, RingPtr& ring, MonomialOrder& ord) {
        if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_))
            throw RingMismatchError("polynomials over different rings");
        ring = a.ring_ ? a.ring_ : b.ring_;
        if (a.ring_ && b.ring_ && a.ord_ != b.ord_)
            throw RingMismatchError("polynomials under different monomial orders");
        ord = a.ring_ ? a.ord_ : b.ord_;
    }

    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        RingPtr ring;
        MonomialOrder ord;
        join_context(a, b, ring, ord);
        int nv = ring ? ring->size() : kMaxVars;
        Poly r = zero(ring, ord);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int rel;
            if (i == a.terms_.size())
                rel = -1;
            else if (j == b.terms_.size())
                rel = 1;
            else
                rel = mono_cmp(a.terms_[i].m, b.terms_[j].m, nv, ord);
            if (rel > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (rel < 0) {
                Term t = b.terms_[j++];
                if (subtract)
                    t.c = -t.c;
                r.terms_.push_back(t);
            } else {
                Rational c = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
                if (!c.is_zero())
                    r.terms_.push_back({a.terms_[i].m, c});
                ++i;
                ++j;
            }
        }
        return r;
    }

    RingPtr ring_;
    MonomialOrder ord_ = MonomialOrder::DegRevLex;
    std::vector<Term> terms_;
};

// Division by a single divisor. Returns the quotient when the remainder of
// the multivariate division algorithm is zero, otherwise nothing; the helper
// below also exposes that remainder as a witness.
struct DivisionOutcome {
    Poly quotient;
    Poly remainder;
    bool exact() const { return remainder.is_zero(); }
};

inline DivisionOutcome poly_divide(const Poly& p, const Poly& q) {
    if (q.is_zero())
        throw MathError("division by the zero polynomial");
    int nv = p.ring() ? p.ring()->size() : (q.ring() ? q.ring()->size() : kMaxVars);
    MonomialOrder ord = p.ring() ? p.order() : q.order();
    DivisionOutcome out;
    out.quotient = Poly::zero(p.ring() ? p.ring() : q.ring(), ord);
    out.remainder = out.quotient;
    Poly h = p;
    const Monomial& qm = q.leading_monomial();
    while (!h.is_zero()) {
        const Term lead = h.terms().front();
        if (qm.divides(lead.m)) {
            Poly t = Poly::term(qm.quotient_of(lead.m), lead.c / q.leading_coefficient(),
                                out.quotient.ring(), ord);
            out.quotient += t;
            h -= t * q;
        } else {
            Poly lt = Poly::term(lead.m, lead.c, out.remainder.ring(), ord);
            out.remainder += lt;
            h -= lt;
        }
    }
    (void)nv;
    return out;
}

inline std::optional<Poly> poly_exact_div(const Poly& p, const Poly& q) {
    DivisionOutcome out = poly_divide(p, q);
    if (!out.exact())
        return std::nullopt;
    return out.quotient;
}

}  // namespace lv3
