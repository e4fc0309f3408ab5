#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "gksum/errors.hpp"
#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/rational_function.hpp"

namespace gksum {

// rho(k) = t(k)/t(k-1) as a reduced rational function, plus a base index
// with a nonzero term value.  Poles or zeros of rho past the base are
// checked on demand by the summation pipeline, not here.
struct HypergeometricRatio {
    RationalFunction rho;
    long base_index = 1;
    Rational base_value = Rational(0);
};

namespace detail {

// Canonical non-rational factor: fact(a*k+b) or c^k.  Factorials produced
// by binomial expansion may carry a negative slope internally.
struct HgFactor {
    int tag;  // 0 factorial, 1 geometric
    long a = 0;
    long b = 0;
    Rational base = Rational(0);

    bool operator<(const HgFactor& o) const {
        return std::tie(tag, a, b, base) < std::tie(o.tag, o.a, o.b, o.base);
    }
    bool operator==(const HgFactor& o) const {
        return tag == o.tag && a == o.a && b == o.b && base == o.base;
    }
};

// A term written as  (rational function of k) * prod(factor^exponent).
struct HgMonomial {
    RationalFunction rat;
    std::map<HgFactor, long> factors;
};

inline void add_factor(HgMonomial& m, const HgFactor& f, long exp) {
    if (exp == 0) return;
    auto it = m.factors.find(f);
    if (it == m.factors.end()) {
        m.factors.emplace(f, exp);
    } else {
        it->second += exp;
        if (it->second == 0) m.factors.erase(it);
    }
}

inline HgMonomial decompose(const Expr& e);

inline HgMonomial decompose_factorial(const LinearForm& lf, long exp) {
    HgMonomial m;
    m.rat = RationalFunction::constant(Rational(1));
    if (lf.a == 0) {
        if (lf.b < 0) throw DomainError("factorial of a negative constant");
        m.rat = RationalFunction::constant(rat_pow(Rational(int_factorial(lf.b)), exp));
        return m;
    }
    add_factor(m, HgFactor{0, lf.a, lf.b, Rational(0)}, exp);
    return m;
}

inline HgMonomial combine_mul(HgMonomial a, const HgMonomial& b) {
    a.rat = a.rat * b.rat;
    for (const auto& [f, e] : b.factors) add_factor(a, f, e);
    return a;
}

inline HgMonomial decompose(const Expr& e) {
    // Any subtree that reads as a whole rational function of k keeps its
    // sums intact; this is what admits polynomial cofactors like 4k+1.
    if (auto rf = as_rational_function(e)) {
        HgMonomial m;
        m.rat = *rf;
        return m;
    }
    switch (e.kind()) {
        case ExprKind::Mul:
            return combine_mul(decompose(e.child(0)), decompose(e.child(1)));
        case ExprKind::Div: {
            HgMonomial a = decompose(e.child(0));
            HgMonomial b = decompose(e.child(1));
            if (b.rat.is_zero()) throw NotHypergeometricError("division by an identically zero term");
            a.rat = a.rat / b.rat;
            for (const auto& [f, ex] : b.factors) add_factor(a, f, -ex);
            return a;
        }
        case ExprKind::Neg: {
            HgMonomial a = decompose(e.child(0));
            a.rat = -a.rat;
            return a;
        }
        case ExprKind::Pow: {
            HgMonomial a = decompose(e.child(0));
            const long ex = e.exponent();
            if (a.rat.is_zero() && ex < 0)
                throw NotHypergeometricError("zero base raised to a negative power");
            a.rat = a.rat.pow(ex);
            std::map<HgFactor, long> scaled;
            for (const auto& [f, fe] : a.factors)
                if (fe * ex != 0) scaled.emplace(f, fe * ex);
            a.factors = std::move(scaled);
            return a;
        }
        case ExprKind::Factorial:
            return decompose_factorial(e.lin1(), 1);
        case ExprKind::Binomial: {
            // C(u, v) = u! / (v! (u-v)!)
            HgMonomial m = decompose_factorial(e.lin1(), 1);
            m = combine_mul(std::move(m), decompose_factorial(e.lin2(), -1));
            m = combine_mul(std::move(m), decompose_factorial(e.lin1() - e.lin2(), -1));
            return m;
        }
        case ExprKind::Geometric: {
            HgMonomial m;
            m.rat = RationalFunction::constant(Rational(1));
            add_factor(m, HgFactor{1, 0, 0, e.value()}, 1);
            return m;
        }
        case ExprKind::Add: {
            // Summands must share the exact same non-rational part; their
            // rational cofactors then add.
            HgMonomial a = decompose(e.child(0));
            HgMonomial b = decompose(e.child(1));
            if (!(a.factors == b.factors))
                throw NotHypergeometricError(
                    "summands do not share a common hypergeometric part");
            a.rat = a.rat + b.rat;
            return a;
        }
        case ExprKind::Harmonic:
        case ExprKind::GenHarmonic:
        case ExprKind::Derangement:
        case ExprKind::ZetaPartial:
        case ExprKind::PrefixSum:
            throw NotHypergeometricError("named sequences are not hypergeometric terms");
        default:
            throw NotHypergeometricError("expression has no hypergeometric ratio");
    }
}

// Ratio contributed by one canonical factor: fact-arguments telescope into a
// polynomial product, geometric factors into their base.
inline RationalFunction factor_ratio(const HgFactor& f) {
    if (f.tag == 1) return RationalFunction::constant(f.base);
    Polynomial prod = Polynomial::constant(Rational(1));
    if (f.a > 0) {
        // (ak+b)! / (a(k-1)+b)! = prod_{i=0}^{a-1} (ak+b-i)
        for (long i = 0; i < f.a; ++i)
            prod = prod * Polynomial({Rational(f.b - i), Rational(f.a)});
        return RationalFunction::from_polynomial(prod);
    }
    // a < 0: the previous index has the larger argument.
    for (long i = 1; i <= -f.a; ++i)
        prod = prod * Polynomial({Rational(f.b + i), Rational(f.a)});
    return RationalFunction(Polynomial::constant(Rational(1)), prod);
}

} // namespace detail

// The consecutive-term ratio of a hypergeometric term, computed
// compositionally.  Throws NotHypergeometricError when the term contains a
// named sequence or summands with incompatible hypergeometric parts.
inline HypergeometricRatio term_ratio(const Expr& e, long base_hint = 1) {
    detail::HgMonomial m = detail::decompose(e);
    if (m.rat.is_zero()) throw NotHypergeometricError("the zero term has no ratio");

    RationalFunction rho = m.rat / m.rat.shift(-1);
    for (const auto& [f, exp] : m.factors) rho = rho * detail::factor_ratio(f).pow(exp);

    HypergeometricRatio out;
    out.rho = rho;
    long k = std::max(base_hint, structurally_defined_from(e));
    for (int attempts = 0; attempts < 512; ++attempts, ++k) {
        if (!term_defined_at(e, k)) continue;
        const Rational v = eval_term(e, k);
        if (v != 0) {
            out.base_index = k;
            out.base_value = v;
            return out;
        }
    }
    throw DomainError("no nonzero base value found for the term");
}

} // namespace gksum
