#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/polynomial.hpp"
#include "gksum/rational.hpp"
#include "gksum/rational_function.hpp"

namespace gksum {

// Integer linear form a*k + b, the only argument shape factorial and
// binomial nodes accept.
struct LinearForm {
    long a = 0;
    long b = 0;

    long eval(long k) const { return a * k + b; }
    LinearForm shifted(long j) const { return {a, b + a * j}; }
    bool operator==(const LinearForm&) const = default;
};

inline LinearForm operator-(const LinearForm& l, const LinearForm& r) {
    return {l.a - r.a, l.b - r.b};
}

enum class ExprKind {
    Constant,     // rational literal
    Variable,     // the summation variable k
    Add,          // binary sum
    Mul,          // binary product
    Div,          // quotient
    Neg,          // negation
    Pow,          // integer power of a subexpression
    Factorial,    // fact(a*k+b), a >= 0
    Binomial,     // binom(linear, linear)
    Geometric,    // c^k for a nonzero rational c
    Harmonic,     // H(k)
    GenHarmonic,  // H(k; m)
    Derangement,  // D(k)
    ZetaPartial,  // zeta(k; s)
    PrefixSum,    // the prefix-sum symbol S, used only inside identities
};

// Immutable expression handle with value semantics; all structure sharing is
// behind shared_ptr<const Node>.
class Expr {
public:
    Expr() = default;

    ExprKind kind() const { return node_->kind; }
    bool valid() const { return node_ != nullptr; }

    const Rational& value() const { return node_->value; }       // Constant, Geometric base
    long exponent() const { return node_->exponent; }            // Pow
    long param() const { return node_->param; }                  // GenHarmonic, ZetaPartial
    const LinearForm& lin1() const { return node_->lin1; }       // Factorial, Binomial
    const LinearForm& lin2() const { return node_->lin2; }       // Binomial
    const Expr& child(std::size_t i) const { return node_->kids[i]; }
    std::size_t arity() const { return node_->kids.size(); }

    static Expr constant(Rational v) {
        Node n;
        n.kind = ExprKind::Constant;
        n.value = std::move(v);
        return make(std::move(n));
    }

    static Expr constant(long v) { return constant(Rational(v)); }

    static Expr variable() {
        Node n;
        n.kind = ExprKind::Variable;
        return make(std::move(n));
    }

    static Expr add(Expr a, Expr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
    static Expr mul(Expr a, Expr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
    static Expr div(Expr a, Expr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

    static Expr sub(Expr a, Expr b) { return add(std::move(a), neg(std::move(b))); }

    static Expr neg(Expr a) {
        Node n;
        n.kind = ExprKind::Neg;
        n.kids.push_back(std::move(a));
        return make(std::move(n));
    }

    static Expr pow(Expr base, long e) {
        Node n;
        n.kind = ExprKind::Pow;
        n.exponent = e;
        n.kids.push_back(std::move(base));
        return make(std::move(n));
    }

    static Expr factorial(LinearForm lf) {
        if (lf.a < 0) throw DomainError("factorial argument must have nonnegative slope");
        Node n;
        n.kind = ExprKind::Factorial;
        n.lin1 = lf;
        return make(std::move(n));
    }

    static Expr binomial(LinearForm top, LinearForm bottom) {
        Node n;
        n.kind = ExprKind::Binomial;
        n.lin1 = top;
        n.lin2 = bottom;
        return make(std::move(n));
    }

    static Expr geometric(Rational base) {
        if (base == 0) throw DomainError("geometric base must be nonzero");
        Node n;
        n.kind = ExprKind::Geometric;
        n.value = std::move(base);
        return make(std::move(n));
    }

    static Expr harmonic() { return leaf(ExprKind::Harmonic); }

    static Expr gen_harmonic(long m) {
        if (m < 1) throw DomainError("generalized harmonic order must be >= 1");
        Node n;
        n.kind = ExprKind::GenHarmonic;
        n.param = m;
        return make(std::move(n));
    }

    static Expr derangement() { return leaf(ExprKind::Derangement); }

    static Expr zeta_partial(long s) {
        if (s < 1) throw DomainError("zeta partial-sum exponent must be >= 1");
        Node n;
        n.kind = ExprKind::ZetaPartial;
        n.param = s;
        return make(std::move(n));
    }

    static Expr prefix_sum_symbol() { return leaf(ExprKind::PrefixSum); }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.node_ == b.node_) return true;
        if (!a.node_ || !b.node_) return false;
        const Node& x = *a.node_;
        const Node& y = *b.node_;
        if (x.kind != y.kind || x.value != y.value || x.exponent != y.exponent ||
            x.param != y.param || !(x.lin1 == y.lin1) || !(x.lin2 == y.lin2) ||
            x.kids.size() != y.kids.size())
            return false;
        for (std::size_t i = 0; i < x.kids.size(); ++i)
            if (!(x.kids[i] == y.kids[i])) return false;
        return true;
    }

private:
    struct Node {
        ExprKind kind = ExprKind::Constant;
        Rational value = Rational(0);
        long exponent = 0;
        long param = 0;
        LinearForm lin1;
        LinearForm lin2;
        std::vector<Expr> kids;
    };

    static Expr make(Node n) {
        Expr e;
        e.node_ = std::make_shared<const Node>(std::move(n));
        return e;
    }

    static Expr leaf(ExprKind k) {
        Node n;
        n.kind = k;
        return make(std::move(n));
    }

    static Expr binary(ExprKind k, Expr a, Expr b) {
        Node n;
        n.kind = k;
        n.kids.push_back(std::move(a));
        n.kids.push_back(std::move(b));
        return make(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
inline Expr operator-(const Expr& a) { return Expr::neg(a); }

inline bool is_named_kind(ExprKind k) {
    switch (k) {
        case ExprKind::Harmonic:
        case ExprKind::GenHarmonic:
        case ExprKind::Derangement:
        case ExprKind::ZetaPartial:
        case ExprKind::PrefixSum:
            return true;
        default:
            return false;
    }
}

inline bool contains_named(const Expr& e) {
    if (is_named_kind(e.kind())) return true;
    for (std::size_t i = 0; i < e.arity(); ++i)
        if (contains_named(e.child(i))) return true;
    return false;
}

// Substitute k -> k + j.  Named-sequence nodes take no shift (their argument
// is fixed to k by the grammar), so they are rejected here.
inline Expr shift_expr(const Expr& e, long j) {
    if (j == 0) return e;
    switch (e.kind()) {
        case ExprKind::Constant:
            return e;
        case ExprKind::Variable:
            return Expr::add(Expr::variable(), Expr::constant(j));
        case ExprKind::Add:
            return Expr::add(shift_expr(e.child(0), j), shift_expr(e.child(1), j));
        case ExprKind::Mul:
            return Expr::mul(shift_expr(e.child(0), j), shift_expr(e.child(1), j));
        case ExprKind::Div:
            return Expr::div(shift_expr(e.child(0), j), shift_expr(e.child(1), j));
        case ExprKind::Neg:
            return Expr::neg(shift_expr(e.child(0), j));
        case ExprKind::Pow:
            return Expr::pow(shift_expr(e.child(0), j), e.exponent());
        case ExprKind::Factorial:
            return Expr::factorial(e.lin1().shifted(j));
        case ExprKind::Binomial:
            return Expr::binomial(e.lin1().shifted(j), e.lin2().shifted(j));
        case ExprKind::Geometric:
            // c^(k+j) = c^j * c^k
            return Expr::mul(Expr::constant(rat_pow(e.value(), j)), e);
        default:
            throw DomainError("cannot shift a named-sequence expression");
    }
}

// Reads the expression as a rational function of k where possible.  Constant
// factorials and binomials fold to their rational values.
inline std::optional<RationalFunction> as_rational_function(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Constant:
            return RationalFunction::constant(e.value());
        case ExprKind::Variable:
            return RationalFunction::variable();
        case ExprKind::Add: {
            auto a = as_rational_function(e.child(0));
            if (!a) return std::nullopt;
            auto b = as_rational_function(e.child(1));
            if (!b) return std::nullopt;
            return *a + *b;
        }
        case ExprKind::Mul: {
            auto a = as_rational_function(e.child(0));
            if (!a) return std::nullopt;
            auto b = as_rational_function(e.child(1));
            if (!b) return std::nullopt;
            return *a * *b;
        }
        case ExprKind::Div: {
            auto a = as_rational_function(e.child(0));
            if (!a) return std::nullopt;
            auto b = as_rational_function(e.child(1));
            if (!b || b->is_zero()) return std::nullopt;
            return *a / *b;
        }
        case ExprKind::Neg: {
            auto a = as_rational_function(e.child(0));
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprKind::Pow: {
            auto a = as_rational_function(e.child(0));
            if (!a) return std::nullopt;
            if (a->is_zero() && e.exponent() < 0) return std::nullopt;
            return a->pow(e.exponent());
        }
        case ExprKind::Factorial:
            if (e.lin1().a == 0 && e.lin1().b >= 0)
                return RationalFunction::constant(Rational(int_factorial(e.lin1().b)));
            return std::nullopt;
        case ExprKind::Binomial:
            if (e.lin1().a == 0 && e.lin2().a == 0 && e.lin1().b >= 0)
                return RationalFunction::constant(Rational(int_binomial(e.lin1().b, e.lin2().b)));
            return std::nullopt;
        case ExprKind::Geometric:
            if (e.value() == 1) return RationalFunction::constant(Rational(1));
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

inline std::optional<Polynomial> as_polynomial(const Expr& e) {
    auto rf = as_rational_function(e);
    if (!rf || !rf->is_polynomial()) return std::nullopt;
    const Rational d = rf->den().constant_term();
    return (Rational(1) / d) * rf->num();
}

// Canonical expression for a polynomial: sum of monomial terms, highest
// degree first.
inline Expr expr_from_polynomial(const Polynomial& p) {
    if (p.is_zero()) return Expr::constant(0);
    std::optional<Expr> acc;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coeff(i);
        if (c == 0) continue;
        const Rational mag = c < 0 ? Rational(-c) : c;
        std::optional<Expr> term;
        if (i == 0) {
            term = Expr::constant(mag);
        } else {
            Expr power = i == 1 ? Expr::variable() : Expr::pow(Expr::variable(), i);
            term = mag == 1 ? power : Expr::mul(Expr::constant(mag), power);
        }
        Expr signed_term = c < 0 ? Expr::neg(*term) : *term;
        acc = acc ? Expr::add(*acc, c < 0 ? Expr::neg(*term) : *term) : signed_term;
    }
    return *acc;
}

inline Expr expr_from_ratfun(const RationalFunction& rf) {
    if (rf.is_polynomial()) {
        const Rational d = rf.den().constant_term();
        return expr_from_polynomial((Rational(1) / d) * rf.num());
    }
    return Expr::div(expr_from_polynomial(rf.num()), expr_from_polynomial(rf.den()));
}

} // namespace gksum
