#pragma once

// Shared generators and independent oracles for the test suites.  Everything
// here stays off the implementation paths it is used to check.

#include <string>
#include <vector>

#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/polynomial.hpp"
#include "gksum/rng.hpp"

namespace gksum::testing {

inline Polynomial random_polynomial(Rng& rng, int max_degree, long coeff_bound = 9) {
    const int deg = static_cast<int>(rng.range(0, max_degree));
    std::vector<Rational> coeffs;
    for (int i = 0; i <= deg; ++i)
        coeffs.emplace_back(rng.range(-coeff_bound, coeff_bound), rng.range(1, 4));
    if (coeffs.back() == 0) coeffs.back() = Rational(1);
    return Polynomial(std::move(coeffs));
}

inline Polynomial random_nonzero_polynomial(Rng& rng, int max_degree, long coeff_bound = 9) {
    Polynomial p = random_polynomial(rng, max_degree, coeff_bound);
    while (p.is_zero()) p = random_polynomial(rng, max_degree, coeff_bound);
    return p;
}

// Simple recursive resultant over the rationals; the independent check for
// the fraction-free subresultant implementation.
inline Rational naive_resultant(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    const int da = a.degree(), db = b.degree();
    if (db == 0) return rat_pow(b.leading(), da);
    if (da < db) {
        const Rational sign = (da * db) % 2 == 0 ? Rational(1) : Rational(-1);
        return sign * naive_resultant(b, a);
    }
    const Polynomial r = a.divmod(b).second;
    if (r.is_zero()) return Rational(0);
    const Rational sign = (da * db) % 2 == 0 ? Rational(1) : Rational(-1);
    return sign * rat_pow(b.leading(), da - r.degree()) * naive_resultant(b, r);
}

inline Rational brute_sum(const Expr& e, long lower, long n,
                          NamedSequenceCache& cache = NamedSequenceCache::global()) {
    Rational acc(0);
    for (long k = lower; k <= n; ++k) acc += eval_term(e, k, cache);
    return acc;
}

// A linear form a*k + b built from Add/Mul nodes, exercising the sum path of
// the ratio decomposition.
inline Expr linear_expr(long a, long b) {
    if (a == 0) return Expr::constant(b);
    Expr ak = a == 1 ? Expr::variable() : Expr::mul(Expr::constant(a), Expr::variable());
    if (b == 0) return ak;
    return Expr::add(ak, Expr::constant(b));
}

// Random hypergeometric terms from the grammar, constrained to be defined
// and nonzero on k >= 1 with modest ratio degrees.
inline Expr random_hyper_term(Rng& rng) {
    std::vector<Expr> numerator;
    std::vector<Expr> denominator;

    const long picks = rng.range(1, 3);
    for (long i = 0; i < picks; ++i) {
        switch (rng.range(0, 5)) {
            case 0:
                numerator.push_back(linear_expr(rng.range(1, 3), rng.range(1, 4)));
                break;
            case 1:
                numerator.push_back(
                    Expr::factorial(LinearForm{rng.range(1, 2), rng.range(0, 3)}));
                break;
            case 2:
                denominator.push_back(
                    Expr::factorial(LinearForm{rng.range(1, 2), rng.range(0, 3)}));
                break;
            case 3: {
                static const Rational bases[] = {Rational(2), Rational(3), Rational(1, 2),
                                                 Rational(-2), Rational(3, 2)};
                numerator.push_back(Expr::geometric(bases[rng.range(0, 4)]));
                break;
            }
            case 4:
                numerator.push_back(
                    Expr::binomial(LinearForm{2, rng.range(0, 3)}, LinearForm{1, 0}));
                break;
            case 5:
                denominator.push_back(linear_expr(1, rng.range(0, 3)));
                break;
        }
    }

    // Rational scalar coefficient.
    if (rng.chance(40))
        numerator.push_back(Expr::constant(Rational(rng.range(1, 5), rng.range(1, 3))));

    Expr term = numerator.empty() ? Expr::constant(1) : numerator.front();
    for (std::size_t i = 1; i < numerator.size(); ++i) term = Expr::mul(term, numerator[i]);
    for (const auto& d : denominator) term = Expr::div(term, d);

    // Occasionally a sum of two proportional copies, which must still have a
    // rational ratio.
    if (rng.chance(20))
        term = Expr::add(Expr::mul(Expr::constant(rng.range(1, 3)), term),
                         Expr::mul(linear_expr(rng.range(0, 2), rng.range(1, 3)), term));
    if (rng.chance(25)) term = Expr::neg(term);
    return term;
}

// Random ASTs over the full printable grammar, for parser round-trips.
inline Expr random_grammar_expr(Rng& rng, int depth) {
    if (depth <= 0) {
        switch (rng.range(0, 8)) {
            case 0: return Expr::constant(rng.range(0, 20));
            case 1: return Expr::variable();
            case 2: return Expr::factorial(LinearForm{rng.range(0, 3), rng.range(-4, 4)});
            case 3:
                return Expr::binomial(LinearForm{rng.range(-2, 3), rng.range(-4, 4)},
                                      LinearForm{rng.range(-2, 3), rng.range(-4, 4)});
            case 4: {
                Rational base(rng.range(-5, 5), rng.range(1, 4));
                if (base == 0) base = Rational(2);
                return Expr::geometric(base);
            }
            case 5: return Expr::harmonic();
            case 6: return Expr::gen_harmonic(rng.range(1, 4));
            case 7: return Expr::derangement();
            default: return Expr::zeta_partial(rng.range(1, 4));
        }
    }
    switch (rng.range(0, 6)) {
        case 0:
            return Expr::add(random_grammar_expr(rng, depth - 1),
                             random_grammar_expr(rng, depth - 1));
        case 1:
            return Expr::sub(random_grammar_expr(rng, depth - 1),
                             random_grammar_expr(rng, depth - 1));
        case 2:
            return Expr::mul(random_grammar_expr(rng, depth - 1),
                             random_grammar_expr(rng, depth - 1));
        case 3:
            return Expr::div(random_grammar_expr(rng, depth - 1),
                             random_grammar_expr(rng, depth - 1));
        case 4: return Expr::neg(random_grammar_expr(rng, depth - 1));
        default: {
            long e = rng.range(-5, 5);
            return Expr::pow(random_grammar_expr(rng, depth - 1), e);
        }
    }
}

} // namespace gksum::testing
