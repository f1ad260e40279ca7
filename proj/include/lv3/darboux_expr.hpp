#pragma once

// Text form of Darboux functions:
//
//   expr     := factor ('*' factor)*
//   factor   := base ('^' exponent)?
//   base     := 'x' | 'y' | 'z' | '(' poly ')' | 'exp' '(' arg ')'
//   exponent := signed rational literal | '(' scalar expression ')'
//
// The exp argument may be a polynomial or a quotient (f)/(g). Parameter
// names are only meaningful when an environment binds them to exact values;
// without one they are rejected, so exponent arithmetic never happens on
// unspecialized parameters.

#include <map>
#include <optional>
#include <string>

#include "lv3/darboux.hpp"
#include "lv3/expr.hpp"

namespace lv3 {

namespace detail {

struct PolyFrac {
    Poly num;
    Poly den;
};

struct PolyFracOps {
    RingPtr ring;
    const std::map<std::string, Rational>* env;

    PolyFrac from_rational(const Rational& r) {
        return {Poly::constant(r, ring), Poly::constant(Rational(1), ring)};
    }
    PolyFrac add(const PolyFrac& a, const PolyFrac& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    PolyFrac sub(const PolyFrac& a, const PolyFrac& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    PolyFrac mul(const PolyFrac& a, const PolyFrac& b) { return {a.num * b.num, a.den * b.den}; }
    PolyFrac div(const PolyFrac& a, const PolyFrac& b) {
        if (b.num.is_zero())
            throw MathError("division by zero in expression");
        return {a.num * b.den, a.den * b.num};
    }
    PolyFrac neg(const PolyFrac& a) { return {-a.num, a.den}; }
    PolyFrac pow_int(const PolyFrac& a, int e) {
        if (e >= 0)
            return {a.num.pow(e), a.den.pow(e)};
        if (a.num.is_zero())
            throw MathError("negative power of zero in expression");
        return {a.den.pow(-e), a.num.pow(-e)};
    }
    PolyFrac lookup(const std::string& name) {
        int idx = ring->index_of(name);
        if (idx >= 0)
            return {Poly::variable(idx, ring), Poly::constant(Rational(1), ring)};
        if (env) {
            auto it = env->find(name);
            if (it != env->end())
                return from_rational(it->second);
        }
        throw ParseError("unknown name '" + name +
                         "' (parameters need numeric values before use here)");
    }
};

inline Rational exponent_value(Lexer& lx, const std::map<std::string, Rational>* env) {
    if (lx.peek() == '(') {
        lx.expect('(');
        ScalarParser sp(lx);
        ScalarExprPtr tree = sp.expression();
        lx.expect(')');
        std::map<std::string, Rational> empty;
        RationalScalarOps ops{env ? env : &empty};
        return eval_scalar_expr(tree, ops);
    }
    bool neg = lx.accept('-');
    auto head = lx.number();
    if (!head)
        throw ParseError("expected exponent in Darboux expression");
    Rational value = *head;
    if (lx.accept('/')) {
        auto den = lx.number();
        if (!den)
            throw ParseError("expected denominator in exponent");
        value = value / *den;
    }
    return neg ? -value : value;
}

}  // namespace detail

inline DarbouxFunction parse_darboux(std::string_view text,
                                     const std::map<std::string, Rational>* env = nullptr) {
    detail::Lexer lx(text);
    DarbouxFunction d;

    auto parse_factor = [&]() {
        if (lx.peek() == '(') {
            lx.expect('(');
            detail::ScalarParser sp(lx);
            ScalarExprPtr tree = sp.expression();
            lx.expect(')');
            Rational e(1);
            if (lx.accept('^'))
                e = detail::exponent_value(lx, env);
            std::map<std::string, Rational> empty;
            PolyScalarOps ops{xyz_ring(), MonomialOrder::DegRevLex, env ? env : &empty};
            d.factors.push_back({eval_scalar_expr(tree, ops), e});
            return;
        }
        auto id = lx.ident();
        if (!id)
            throw ParseError("expected factor in Darboux expression '" + std::string(text) + "'");
        if (*id == "exp") {
            lx.expect('(');
            detail::ScalarParser sp(lx);
            ScalarExprPtr tree = sp.expression();
            lx.expect(')');
            Rational e(1);
            if (lx.accept('^'))
                e = detail::exponent_value(lx, env);
            detail::PolyFracOps ops{xyz_ring(), env};
            detail::PolyFrac fr = eval_scalar_expr(tree, ops);
            if (fr.den.is_constant()) {
                fr.num = fr.num.scaled(fr.den.constant_term().inv());
                fr.den = Poly::constant(Rational(1), xyz_ring());
            }
            if (!d.exp_part) {
                d.exp_part = ExpPart{fr.num, fr.den, e};
            } else {
                // Fold into a single exponential with a common denominator.
                ExpPart& old = *d.exp_part;
                Poly f = old.s0 * (old.f * fr.den) + e * (fr.num * old.g);
                Poly g = old.g * fr.den;
                d.exp_part = ExpPart{f, g, Rational(1)};
            }
            return;
        }
        int axis = xyz_ring()->index_of(*id);
        if (axis < 0)
            throw ParseError("unexpected name '" + *id + "' in Darboux expression");
        Rational e(1);
        if (lx.accept('^'))
            e = detail::exponent_value(lx, env);
        d.rho[static_cast<std::size_t>(axis)] += e;
    };

    parse_factor();
    while (lx.accept('*'))
        parse_factor();
    if (!lx.eof())
        throw ParseError("trailing input in Darboux expression '" + std::string(text) + "'");
    return d.canonical();
}

// A single combination atom: a coordinate plane, a parenthesized polynomial,
// or an exponential factor.
inline DarbouxAtom parse_atom(std::string_view text,
                              const std::map<std::string, Rational>* env = nullptr) {
    DarbouxFunction d = parse_darboux(text, env);
    int axes = 0, axis = -1;
    for (int i = 0; i < 3; ++i)
        if (!d.rho[static_cast<std::size_t>(i)].is_zero()) {
            ++axes;
            axis = i;
        }
    if (axes == 1 && d.factors.empty() && !d.exp_part &&
        d.rho[static_cast<std::size_t>(axis)].is_one())
        return CoordAtom{axis};
    if (axes == 0 && d.factors.size() == 1 && !d.exp_part && d.factors[0].second.is_one())
        return PolyAtom{d.factors[0].first};
    if (axes == 0 && d.factors.empty() && d.exp_part && d.exp_part->s0.is_one())
        return ExpAtom{d.exp_part->f, d.exp_part->g};
    throw ParseError("atom must be a single coordinate, (polynomial), or exp(...): '" +
                     std::string(text) + "'");
}

}  // namespace lv3
