#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/linear_solve.hpp"
#include "gksum/polynomial.hpp"
#include "gksum/rational_function.hpp"
#include "gksum/term_ratio.hpp"

namespace gksum {

// Normal form of the ratio: rho(n) = p(n) q(n) / (p(n-1) r(n)) with
// gcd(q(n), r(n+j)) = 1 for every integer j >= 0.
struct GosperForm {
    Polynomial p;
    Polynomial q;
    Polynomial r;
};

// Iterative extraction: start from rho's numerator and denominator, and for
// each dispersion candidate j move the shared factor chain into p.
inline GosperForm gosper_form(const RationalFunction& rho) {
    if (rho.is_zero()) throw DomainError("gosper form of the zero ratio");
    GosperForm out;
    out.p = Polynomial::constant(Rational(1));
    out.q = rho.num();
    out.r = rho.den();
    for (long j : dispersion_candidates(out.q, out.r)) {
        const Polynomial g = poly_gcd(out.q, out.r.shift(j));
        if (g.is_constant()) continue;
        out.q = out.q.exact_div(g);
        out.r = out.r.exact_div(g.shift(-j));
        for (long i = 0; i < j; ++i) out.p = out.p * g.shift(-i);
    }
    return out;
}

// Classical leading-coefficient analysis for the degree of a polynomial f
// solving p(n) = q(n+1) f(n) - r(n) f(n-1).  nullopt means no nonnegative
// degree is possible.
inline std::optional<long> degree_bound(const GosperForm& form) {
    const Polynomial q1 = form.q.shift(1);
    const Polynomial u = q1 - form.r;
    const Polynomial v = q1 + form.r;
    const long dp = form.p.degree();
    const long du = u.is_zero() ? LONG_MIN : u.degree();
    const long dv = v.is_zero() ? LONG_MIN : v.degree();

    if (!u.is_zero() && du >= dv) {
        const long d = dp - du;
        if (d < 0) return std::nullopt;
        return d;
    }

    // deg u < deg v here, so v is nonzero.
    std::optional<long> best;
    const long d0 = dp - dv + 1;
    if (d0 >= 0) best = d0;
    const Rational lead_ratio = Rational(-2) * u.leading() / v.leading();
    if (lead_ratio >= 0 && is_integer(lead_ratio)) {
        const long d1 = static_cast<long>(num(lead_ratio));
        if (!best || d1 > *best) best = d1;
    }
    return best;
}

// Solve the key equation for f of degree at most d by equating coefficients;
// free coefficients are fixed at zero.  nullopt when inconsistent.
inline std::optional<Polynomial> solve_key_equation(const GosperForm& form, long d) {
    if (d < 0) throw DomainError("degree bound must be nonnegative");
    const Polynomial q1 = form.q.shift(1);
    std::vector<Polynomial> basis;
    basis.reserve(static_cast<std::size_t>(d) + 1);
    long rows = form.p.degree();
    for (long i = 0; i <= d; ++i) {
        const Polynomial xi = Polynomial::monomial(Rational(1), static_cast<int>(i));
        const Polynomial ai = q1 * xi - form.r * xi.shift(-1);
        rows = std::max(rows, static_cast<long>(ai.degree()));
        basis.push_back(ai);
    }
    const std::size_t nrows = static_cast<std::size_t>(rows + 1);
    const std::size_t ncols = static_cast<std::size_t>(d + 1);
    std::vector<std::vector<Rational>> m(nrows, std::vector<Rational>(ncols, Rational(0)));
    std::vector<Rational> rhs(nrows, Rational(0));
    for (std::size_t row = 0; row < nrows; ++row) {
        for (std::size_t col = 0; col < ncols; ++col)
            m[row][col] = basis[col].coeff(static_cast<int>(row));
        rhs[row] = form.p.coeff(static_cast<int>(row));
    }
    auto sol = solve_linear(std::move(m), std::move(rhs));
    if (!sol) return std::nullopt;
    return Polynomial(std::move(*sol));
}

// A certified antidifference: F(k+1) - F(k) = t(k) for every k >= k0.
struct Antidifference {
    Expr F;
    Expr t;
    long k0 = 1;
};

struct GosperResult {
    Expr input;
    long lower = 1;
    HypergeometricRatio ratio;
    GosperForm form;
    std::optional<long> bound;
    std::optional<Polynomial> key_poly;
    std::optional<Antidifference> anti;  // empty = the definite FAIL verdict
    int telescoping_samples = 0;

    bool failed() const { return !anti.has_value(); }
};

namespace detail {

inline long max_root_or(const Polynomial& p, long fallback) {
    if (p.is_zero() || p.is_constant()) return fallback;
    long best = fallback;
    for (long r : nonneg_integer_roots(p)) best = std::max(best, r);
    return best;
}

} // namespace detail

// The full decision pipeline.  A FAIL outcome (no hypergeometric
// antidifference exists) is a successful decision, reported in-band;
// malformed inputs throw.
inline GosperResult gosper_sum(const Expr& t, long lower = 1) {
    if (lower < 0) throw DomainError("lower summation bound must be >= 0");
    if (contains_named(t))
        throw NotHypergeometricError("term contains a named sequence");

    GosperResult res;
    res.input = t;
    res.lower = lower;
    res.ratio = term_ratio(t, lower);
    const RationalFunction& rho = res.ratio.rho;

    // Past the largest integer zero of rho's numerator and denominator the
    // term can no longer vanish or lose definition, so the telescoping range
    // starts there.
    long base = std::max(lower, res.ratio.base_index);
    base = std::max(base, detail::max_root_or(rho.num(), base - 1) + 1);
    base = std::max(base, detail::max_root_or(rho.den(), base - 1) + 1);
    if (!term_defined_at(t, base) || eval_term(t, base) == 0)
        throw DomainError("term vanishes identically beyond its ratio support");

    res.form = gosper_form(rho);
    res.bound = degree_bound(res.form);
    if (!res.bound) return res;  // FAIL
    res.key_poly = solve_key_equation(res.form, *res.bound);
    if (!res.key_poly) return res;  // FAIL

    const Polynomial& p = res.form.p;
    const Polynomial& q = res.form.q;
    const Polynomial& r = res.form.r;
    const Polynomial& f = *res.key_poly;

    // Keep every denominator in F and in the definite-sum form clear of
    // integer zeros: raise the base past roots of p(k-1) and q(k).
    long k0 = base;
    k0 = std::max(k0, detail::max_root_or(p, k0 - 3) + 2);
    k0 = std::max(k0, detail::max_root_or(q, k0 - 2) + 1);

    // F(k) = (r(k) f(k-1) / p(k)) * t(k), the key-equation construction
    // rewritten on the current index.
    const RationalFunction coeff(r * f.shift(-1), p);
    Expr F = coeff.is_constant() && coeff.num().constant_term() == 1
                 ? t
                 : Expr::mul(expr_from_ratfun(coeff), t);

    for (long k = k0; k < k0 + 20; ++k) {
        const Rational lhs = eval_term(F, k + 1) - eval_term(F, k);
        if (lhs != eval_term(t, k))
            throw Error("Internal", "telescoping check failed at k=" + std::to_string(k));
    }
    res.telescoping_samples = 20;
    res.anti = Antidifference{F, t, k0};
    return res;
}

struct DefiniteSum {
    Expr closed;          // S(n), printed in the summation variable
    long lower = 1;       // sum runs k = lower .. n
    long valid_from = 1;  // closed form certified for n >= valid_from
};

// S(n) = sum_{k=lower}^{n} t(k), normalized so that S(lower-1) = 0.  The
// initial stretch up to the raised base is folded into the constant term.
inline std::optional<DefiniteSum> definite_sum(const GosperResult& res) {
    if (res.failed()) return std::nullopt;
    const Antidifference& anti = *res.anti;
    const Polynomial& p = res.form.p;
    const Polynomial& q = res.form.q;
    const Polynomial& f = *res.key_poly;

    Rational initial(0);
    for (long k = res.lower; k < anti.k0; ++k) initial += eval_term(anti.t, k);
    const Rational f_at_base = eval_term(anti.F, anti.k0);
    const Rational constant = initial - f_at_base;

    // F(n+1) = (q(n+1) f(n) / p(n)) * t(n).
    const RationalFunction coeff(q.shift(1) * f, p);
    Expr closed = coeff.is_constant() && coeff.num().constant_term() == 1
                      ? anti.t
                      : Expr::mul(expr_from_ratfun(coeff), anti.t);
    if (constant > 0) closed = Expr::add(closed, Expr::constant(constant));
    else if (constant < 0) closed = Expr::sub(closed, Expr::constant(-constant));

    // Collapse to a single reduced rational function when the whole closed
    // form is rational; factorial and geometric parts stay structured.
    if (auto rf = as_rational_function(closed)) closed = expr_from_ratfun(*rf);

    DefiniteSum out;
    out.closed = closed;
    out.lower = res.lower;
    out.valid_from = std::max(res.lower, anti.k0 - 1);
    return out;
}

inline std::optional<DefiniteSum> definite_sum(const Expr& t, long lower = 1) {
    return definite_sum(gosper_sum(t, lower));
}

} // namespace gksum
