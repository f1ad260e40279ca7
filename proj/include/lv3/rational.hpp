#pragma once

// Exact rational scalar on top of GMP. Every value is kept canonical:
// lowest terms, positive denominator, zero stored as 0/1. Construction from
// text accepts optionally signed integers and fractions "p/q"; anything else
// (in particular decimal notation) is rejected.

#include <gmpxx.h>

#include <cstdint>
#include <iostream>
#include <string>
#include <string_view>

#include "lv3/errors.hpp"

namespace lv3 {

class Rational {
  public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den) {
        if (den == 0)
            throw MathError("rational with zero denominator");
        v_ = mpq_class(mpz_class(num), mpz_class(den));
        v_.canonicalize();
    }
    Rational(double) = delete;  // no silent float round-trips

    explicit Rational(std::string_view text) { *this = parse(text); }

    // Parses "p", "+p", "-p", "p/q" with arbitrary-precision parts.
    static Rational parse(std::string_view text) {
        std::string s(text);
        if (!s.empty() && s[0] == '+')
            s.erase(0, 1);
        if (s.empty())
            throw ParseError("empty rational literal");
        if (s.find('.') != std::string::npos)
            throw ParseError("decimal literal '" + s +
                             "' not accepted, write an exact fraction p/q");
        auto slash = s.find('/');
        try {
            Rational r;
            if (slash == std::string::npos) {
                r.v_ = mpq_class(mpz_class(s));
            } else {
                mpz_class num(s.substr(0, slash));
                mpz_class den(s.substr(slash + 1));
                if (den == 0)
                    throw MathError("rational with zero denominator");
                r.v_ = mpq_class(num, den);
                r.v_.canonicalize();
            }
            return r;
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed rational literal '" + s + "'");
        }
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    // Truncation-free access for small integers; throws if out of range.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw MathError("rational " + str() + " is not a small integer");
        return v_.get_num().get_si();
    }

    std::string str() const {
        if (is_integer())
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero())
            throw MathError("division by zero");
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational inv() const {
        if (is_zero())
            throw MathError("inverse of zero");
        return Rational(1) / *this;
    }

    // Integer power with negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e == 0)
            return Rational(1);
        Rational base = e < 0 ? inv() : *this;
        unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
        Rational acc(1);
        while (n) {
            if (n & 1)
                acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace lv3
