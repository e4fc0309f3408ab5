#pragma once

#include <algorithm>
#include <limits>
#include <string>

#include "gksum/errors.hpp"
#include "gksum/expr.hpp"
#include "gksum/named_sequences.hpp"
#include "gksum/rational.hpp"

namespace gksum {

// Exact evaluation of a term at an integer index.  The prefix-sum symbol S
// has no standalone value; identity evaluation substitutes it first.
inline Rational eval_term(const Expr& e, long k,
                          NamedSequenceCache& cache = NamedSequenceCache::global()) {
    switch (e.kind()) {
        case ExprKind::Constant:
            return e.value();
        case ExprKind::Variable:
            return Rational(k);
        case ExprKind::Add:
            return eval_term(e.child(0), k, cache) + eval_term(e.child(1), k, cache);
        case ExprKind::Mul:
            return eval_term(e.child(0), k, cache) * eval_term(e.child(1), k, cache);
        case ExprKind::Div: {
            const Rational d = eval_term(e.child(1), k, cache);
            if (d == 0) throw DomainError("division by zero at k=" + std::to_string(k));
            return eval_term(e.child(0), k, cache) / d;
        }
        case ExprKind::Neg:
            return -eval_term(e.child(0), k, cache);
        case ExprKind::Pow: {
            const Rational base = eval_term(e.child(0), k, cache);
            if (base == 0 && e.exponent() < 0)
                throw DomainError("zero base with negative exponent at k=" + std::to_string(k));
            return rat_pow(base, e.exponent());
        }
        case ExprKind::Factorial: {
            const long arg = e.lin1().eval(k);
            if (arg < 0)
                throw DomainError("negative factorial argument at k=" + std::to_string(k));
            return Rational(int_factorial(arg));
        }
        case ExprKind::Binomial: {
            const long top = e.lin1().eval(k);
            const long bottom = e.lin2().eval(k);
            if (top < 0)
                throw DomainError("negative binomial upper argument at k=" + std::to_string(k));
            return Rational(int_binomial(top, bottom));
        }
        case ExprKind::Geometric:
            return rat_pow(e.value(), k);
        case ExprKind::Harmonic:
            return named_sequence_eval(NamedKind::Harmonic, 0, k, cache);
        case ExprKind::GenHarmonic:
            return named_sequence_eval(NamedKind::GenHarmonic, e.param(), k, cache);
        case ExprKind::Derangement:
            return named_sequence_eval(NamedKind::Derangement, 0, k, cache);
        case ExprKind::ZetaPartial:
            return named_sequence_eval(NamedKind::ZetaPartial, e.param(), k, cache);
        case ExprKind::PrefixSum:
            throw DomainError("prefix-sum symbol cannot be evaluated on its own");
    }
    throw DomainError("unknown expression node");
}

// True when eval_term(e, k) is defined (no domain error).
inline bool term_defined_at(const Expr& e, long k,
                            NamedSequenceCache& cache = NamedSequenceCache::global()) {
    try {
        eval_term(e, k, cache);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

// Smallest index from which every factorial/binomial argument stays in
// domain for all larger k.  Division poles are not covered here; callers
// handle those through the ratio's integer roots.
inline long structurally_defined_from(const Expr& e) {
    long bound = std::numeric_limits<long>::min();
    auto consider = [&bound](const LinearForm& lf) {
        if (lf.a > 0) {
            // a*k + b >= 0  <=>  k >= ceil(-b/a), with C++ truncation fixed up
            const long x = -lf.b;
            long q = x / lf.a;
            if (x % lf.a > 0) ++q;
            bound = std::max(bound, q);
        } else if (lf.a == 0 && lf.b < 0) {
            throw DomainError("factorial/binomial argument is a negative constant");
        }
    };
    switch (e.kind()) {
        case ExprKind::Factorial:
            consider(e.lin1());
            return bound;
        case ExprKind::Binomial:
            consider(e.lin1());
            return bound;
        default:
            break;
    }
    for (std::size_t i = 0; i < e.arity(); ++i)
        bound = std::max(bound, structurally_defined_from(e.child(i)));
    return bound;
}

} // namespace gksum
