#pragma once

// Recursive-descent parsers for the library's little input languages:
//
//   scalar expressions   +, -, *, /, integer ^, parentheses, rational
//                        literals, named parameters; evaluated exactly
//   polynomials          same surface, but division only by constants and
//                        no negative powers; produces a Poly over a ring
//
// Decimal literals are rejected everywhere; exact values are written p/q.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lv3/poly.hpp"

namespace lv3 {

struct ScalarExpr {
    enum Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow } kind;
    Rational value;      // Const
    std::string name;    // Var
    int exponent = 0;    // Pow
    std::shared_ptr<ScalarExpr> lhs, rhs;
};

using ScalarExprPtr = std::shared_ptr<ScalarExpr>;

namespace detail {

class Lexer {
  public:
    explicit Lexer(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    std::optional<std::string> ident() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
            return std::nullopt;
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::optional<Rational> number() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return std::nullopt;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.')
            throw ParseError("decimal literal in '" + std::string(s_) +
                             "', write an exact fraction p/q");
        return Rational::parse(s_.substr(start, pos_ - start));
    }

    // Signed integer, for exponents.
    std::optional<long> integer() {
        skip_ws();
        std::size_t save = pos_;
        bool neg = accept('-');
        auto n = number();
        if (!n) {
            pos_ = save;
            return std::nullopt;
        }
        if (!n->is_integer())
            throw ParseError("expected an integer exponent in '" + std::string(s_) + "'");
        return neg ? -n->to_long() : n->to_long();
    }

    std::size_t pos() const { return pos_; }
    std::string_view text() const { return s_; }

  private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

class ScalarParser {
  public:
    explicit ScalarParser(Lexer& lx) : lx_(lx) {}

    ScalarExprPtr expression() {
        ScalarExprPtr node = term();
        while (true) {
            if (lx_.accept('+'))
                node = binary(ScalarExpr::Add, node, term());
            else if (lx_.accept('-'))
                node = binary(ScalarExpr::Sub, node, term());
            else
                return node;
        }
    }

  private:
    ScalarExprPtr term() {
        ScalarExprPtr node = factor();
        while (true) {
            if (lx_.accept('*'))
                node = binary(ScalarExpr::Mul, node, factor());
            else if (lx_.accept('/'))
                node = binary(ScalarExpr::Div, node, factor());
            else
                return node;
        }
    }

    ScalarExprPtr factor() {
        if (lx_.accept('-')) {
            auto n = std::make_shared<ScalarExpr>();
            n->kind = ScalarExpr::Neg;
            n->lhs = factor();
            return n;
        }
        ScalarExprPtr node = primary();
        while (lx_.accept('^')) {
            auto e = lx_.integer();
            if (!e)
                throw ParseError("expected integer after '^' in '" + std::string(lx_.text()) + "'");
            auto n = std::make_shared<ScalarExpr>();
            n->kind = ScalarExpr::Pow;
            n->lhs = node;
            n->exponent = static_cast<int>(*e);
            node = n;
        }
        return node;
    }

    ScalarExprPtr primary() {
        if (lx_.accept('(')) {
            ScalarExprPtr node = expression();
            lx_.expect(')');
            return node;
        }
        if (auto num = lx_.number()) {
            auto n = std::make_shared<ScalarExpr>();
            n->kind = ScalarExpr::Const;
            n->value = *num;
            return n;
        }
        if (auto id = lx_.ident()) {
            auto n = std::make_shared<ScalarExpr>();
            n->kind = ScalarExpr::Var;
            n->name = *id;
            return n;
        }
        throw ParseError("unexpected character at position " + std::to_string(lx_.pos()) +
                         " in '" + std::string(lx_.text()) + "'");
    }

    static ScalarExprPtr binary(ScalarExpr::Kind k, ScalarExprPtr a, ScalarExprPtr b) {
        auto n = std::make_shared<ScalarExpr>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    Lexer& lx_;
};

}  // namespace detail

inline ScalarExprPtr parse_scalar_expr(std::string_view text) {
    detail::Lexer lx(text);
    detail::ScalarParser p(lx);
    ScalarExprPtr node = p.expression();
    if (!lx.eof())
        throw ParseError("trailing input at position " + std::to_string(lx.pos()) + " in '" +
                         std::string(text) + "'");
    return node;
}

// Generic evaluation of a scalar tree over any field-like value type.
// Ops needs: from_rational, add, sub, mul, div, neg, pow_int, lookup(name).
template <class Ops>
auto eval_scalar_expr(const ScalarExprPtr& n, Ops& ops) -> decltype(ops.from_rational(Rational(0))) {
    switch (n->kind) {
        case ScalarExpr::Const:
            return ops.from_rational(n->value);
        case ScalarExpr::Var:
            return ops.lookup(n->name);
        case ScalarExpr::Add:
            return ops.add(eval_scalar_expr(n->lhs, ops), eval_scalar_expr(n->rhs, ops));
        case ScalarExpr::Sub:
            return ops.sub(eval_scalar_expr(n->lhs, ops), eval_scalar_expr(n->rhs, ops));
        case ScalarExpr::Mul:
            return ops.mul(eval_scalar_expr(n->lhs, ops), eval_scalar_expr(n->rhs, ops));
        case ScalarExpr::Div:
            return ops.div(eval_scalar_expr(n->lhs, ops), eval_scalar_expr(n->rhs, ops));
        case ScalarExpr::Neg:
            return ops.neg(eval_scalar_expr(n->lhs, ops));
        case ScalarExpr::Pow:
            return ops.pow_int(eval_scalar_expr(n->lhs, ops), n->exponent);
    }
    throw Error("unreachable scalar expression kind");
}

struct RationalScalarOps {
    const std::map<std::string, Rational>* env = nullptr;

    Rational from_rational(const Rational& r) { return r; }
    Rational add(const Rational& a, const Rational& b) { return a + b; }
    Rational sub(const Rational& a, const Rational& b) { return a - b; }
    Rational mul(const Rational& a, const Rational& b) { return a * b; }
    Rational div(const Rational& a, const Rational& b) { return a / b; }
    Rational neg(const Rational& a) { return -a; }
    Rational pow_int(const Rational& a, int e) { return a.pow(e); }
    Rational lookup(const std::string& name) {
        if (env) {
            auto it = env->find(name);
            if (it != env->end())
                return it->second;
        }
        throw ParseError("unknown name '" + name + "' in scalar expression");
    }
};

inline Rational eval_scalar(const ScalarExprPtr& n, const std::map<std::string, Rational>& env) {
    RationalScalarOps ops{&env};
    return eval_scalar_expr(n, ops);
}

inline Rational eval_scalar(std::string_view text, const std::map<std::string, Rational>& env) {
    return eval_scalar(parse_scalar_expr(text), env);
}

// Evaluates a scalar tree to a Poly over `ring`. Ring variables become
// generators; other names resolve through `env` (when given). Division is
// restricted to constant divisors and powers must be nonnegative.
struct PolyScalarOps {
    RingPtr ring;
    MonomialOrder ord = MonomialOrder::DegRevLex;
    const std::map<std::string, Rational>* env = nullptr;

    Poly from_rational(const Rational& r) { return Poly::constant(r, ring, ord); }
    Poly add(const Poly& a, const Poly& b) { return a + b; }
    Poly sub(const Poly& a, const Poly& b) { return a - b; }
    Poly mul(const Poly& a, const Poly& b) { return a * b; }
    Poly div(const Poly& a, const Poly& b) {
        if (!b.is_constant())
            throw ParseError("division by a non-constant in a polynomial expression");
        if (b.is_zero())
            throw MathError("division by zero");
        return a.scaled(b.constant_term().inv());
    }
    Poly neg(const Poly& a) { return -a; }
    Poly pow_int(const Poly& a, int e) {
        if (e < 0) {
            if (!a.is_constant() || a.is_zero())
                throw ParseError("negative power of a non-constant in a polynomial expression");
            return Poly::constant(a.constant_term().pow(e), ring, ord);
        }
        return a.pow(e);
    }
    Poly lookup(const std::string& name) {
        int idx = ring->index_of(name);
        if (idx >= 0)
            return Poly::variable(idx, ring, ord);
        if (env) {
            auto it = env->find(name);
            if (it != env->end())
                return Poly::constant(it->second, ring, ord);
        }
        throw ParseError("unknown variable '" + name + "' for ring in polynomial expression");
    }
};

inline Poly parse_poly(std::string_view text, const RingPtr& ring,
                       MonomialOrder ord = MonomialOrder::DegRevLex,
                       const std::map<std::string, Rational>* env = nullptr) {
    ScalarExprPtr tree = parse_scalar_expr(text);
    PolyScalarOps ops{ring, ord, env};
    return eval_scalar_expr(tree, ops);
}

}  // namespace lv3
