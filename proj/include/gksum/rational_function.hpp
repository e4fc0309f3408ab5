#pragma once

#include <string>
#include <utility>

#include "gksum/errors.hpp"
#include "gksum/polynomial.hpp"

namespace gksum {

// Reduced quotient of polynomials: gcd(num, den) = 1 and den is monic (its
// leading coefficient is folded into num).
class RationalFunction {
public:
    RationalFunction() : num_(Polynomial::zero()), den_(Polynomial::constant(Rational(1))) {}

    RationalFunction(Polynomial num, Polynomial den) {
        if (den.is_zero()) throw ZeroDenominatorError("rational function with zero denominator");
        const Polynomial g = poly_gcd(num, den);
        if (!g.is_constant()) {
            num = num.exact_div(g);
            den = den.exact_div(g);
        }
        const Rational lead = den.leading();
        if (lead != 1) {
            const Rational inv = Rational(1) / lead;
            num = inv * num;
            den = inv * den;
        }
        num_ = std::move(num);
        den_ = std::move(den);
    }

    static RationalFunction from_polynomial(Polynomial p) {
        RationalFunction r;
        r.num_ = std::move(p);
        return r;
    }

    static RationalFunction constant(const Rational& v) {
        return from_polynomial(Polynomial::constant(v));
    }

    static RationalFunction variable() { return from_polynomial(Polynomial::variable()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw ZeroDenominatorError("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RationalFunction pow(long e) const {
        if (e == 0) return constant(Rational(1));
        if (is_zero()) {
            if (e < 0) throw ZeroDenominatorError("zero rational function to a negative power");
            return *this;
        }
        const unsigned u = static_cast<unsigned>(e < 0 ? -e : e);
        RationalFunction base = e < 0 ? RationalFunction(den_, num_) : *this;
        RationalFunction acc = constant(Rational(1));
        unsigned bits = u;
        while (bits != 0) {
            if (bits & 1u) acc = acc * base;
            bits >>= 1;
            if (bits != 0) base = base * base;
        }
        return acc;
    }

    RationalFunction shift(long j) const {
        RationalFunction r;
        r.num_ = num_.shift(j);
        r.den_ = den_.shift(j);
        // Shifting preserves coprimality; re-normalize the monic denominator.
        const Rational lead = r.den_.leading();
        if (lead != 1) {
            const Rational inv = Rational(1) / lead;
            r.num_ = inv * r.num_;
            r.den_ = inv * r.den_;
        }
        return r;
    }

    bool defined_at(const Rational& x) const { return den_.eval(x) != 0; }

    Rational eval(const Rational& x) const {
        const Rational d = den_.eval(x);
        if (d == 0) throw DomainError("rational function pole at " + rat_to_string(x));
        return num_.eval(x) / d;
    }

    Rational eval(long x) const { return eval(Rational(x)); }

    std::string to_string(const std::string& var = "n") const {
        if (is_polynomial()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den) {
    return RationalFunction(num, den);
}

} // namespace gksum
