#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gksum/bivariate.hpp"
#include "gksum/errors.hpp"
#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/lsumming.hpp"
#include "gksum/rational.hpp"

namespace gksum {

// Exact two-sided comparison at one n; no tolerance anywhere.
struct OracleVerdict {
    Rational side_a;
    Rational side_b;
    bool equal = false;
    long n = 0;
};

inline OracleVerdict make_verdict(Rational a, Rational b, long n) {
    OracleVerdict v;
    v.equal = (a == b);
    v.side_a = std::move(a);
    v.side_b = std::move(b);
    v.n = n;
    return v;
}

inline OracleVerdict check_identity(const RawIdentity& id, long n,
                                    NamedSequenceCache& cache = NamedSequenceCache::global()) {
    if (n < id.lower) throw DomainError("check index below the identity's lower bound");
    Rational lhs(0);
    for (long k = id.lower; k <= n; ++k) lhs += raw_summand_value(id, k, cache);
    return make_verdict(lhs, raw_rhs_value(id, n, cache), n);
}

inline OracleVerdict check_identity(const PresentedIdentity& id, long n,
                                    NamedSequenceCache& cache = NamedSequenceCache::global()) {
    if (n < id.lower) throw DomainError("check index below the identity's lower bound");
    return make_verdict(presented_lhs_value(id, n, cache), presented_rhs_value(id, n, cache), n);
}

struct RangeSummary {
    bool all_equal = true;
    std::optional<long> first_failure;
    Rational failing_lhs;
    Rational failing_rhs;
    long n_max = 0;
};

// Running-sum sweep over n = lower..n_max, short-circuiting on the first
// inequality.
inline RangeSummary check_range(const RawIdentity& id, long n_max,
                                NamedSequenceCache& cache = NamedSequenceCache::global()) {
    RangeSummary out;
    out.n_max = n_max;
    Rational lhs(0);
    for (long n = id.lower; n <= n_max; ++n) {
        lhs += raw_summand_value(id, n, cache);
        const Rational rhs = raw_rhs_value(id, n, cache);
        if (lhs != rhs) {
            out.all_equal = false;
            out.first_failure = n;
            out.failing_lhs = lhs;
            out.failing_rhs = rhs;
            return out;
        }
    }
    return out;
}

inline RangeSummary check_range(const PresentedIdentity& id, long n_max,
                                NamedSequenceCache& cache = NamedSequenceCache::global()) {
    RangeSummary out;
    out.n_max = n_max;
    std::vector<Rational> partial(id.lhs.size(), Rational(0));
    for (long n = id.lower; n <= n_max; ++n) {
        Rational lhs(0);
        for (std::size_t i = 0; i < id.lhs.size(); ++i) {
            partial[i] += eval_term(id.lhs[i].summand, n, cache);
            lhs += id.lhs[i].coeff * partial[i];
        }
        const Rational rhs = presented_rhs_value(id, n, cache);
        if (lhs != rhs) {
            out.all_equal = false;
            out.first_failure = n;
            out.failing_lhs = lhs;
            out.failing_rhs = rhs;
            return out;
        }
    }
    return out;
}

// Square or cubic array of exact entries over indices lower..n.
struct ArraySpec {
    int dimension = 2;
    long lower = 1;
    std::function<Rational(long, long)> entry2;
    std::function<Rational(long, long, long)> entry3;

    static ArraySpec explicit2(std::vector<std::vector<Rational>> grid, long lower = 1) {
        ArraySpec a;
        a.dimension = 2;
        a.lower = lower;
        auto shared = std::make_shared<std::vector<std::vector<Rational>>>(std::move(grid));
        a.entry2 = [shared, lower](long i, long j) {
            return (*shared)[static_cast<std::size_t>(i - lower)]
                            [static_cast<std::size_t>(j - lower)];
        };
        return a;
    }

    static ArraySpec explicit3(std::vector<Rational> flat, long n, long lower = 1) {
        ArraySpec a;
        a.dimension = 3;
        a.lower = lower;
        auto shared = std::make_shared<std::vector<Rational>>(std::move(flat));
        a.entry3 = [shared, n, lower](long i, long j, long k) {
            const long x = i - lower, y = j - lower, z = k - lower;
            return (*shared)[static_cast<std::size_t>((x * n + y) * n + z)];
        };
        return a;
    }

    // Multiplication table a_ij = t_i * t_j.
    static ArraySpec product2(Expr t, long lower = 1) {
        ArraySpec a;
        a.dimension = 2;
        a.lower = lower;
        a.entry2 = [t](long i, long j) { return eval_term(t, i) * eval_term(t, j); };
        return a;
    }

    static ArraySpec product3(Expr t, long lower = 1) {
        ArraySpec a;
        a.dimension = 3;
        a.lower = lower;
        a.entry3 = [t](long i, long j, long k) {
            return eval_term(t, i) * eval_term(t, j) * eval_term(t, k);
        };
        return a;
    }

    // Row rule a_ij = f(i).
    static ArraySpec function2(Expr f, long lower = 1) {
        ArraySpec a;
        a.dimension = 2;
        a.lower = lower;
        a.entry2 = [f](long i, long) { return eval_term(f, i); };
        return a;
    }

    // a_ijk = f(i, j).
    static ArraySpec function3(std::function<Rational(long, long)> f, long lower = 1) {
        ArraySpec a;
        a.dimension = 3;
        a.lower = lower;
        a.entry3 = [f = std::move(f)](long i, long j, long) { return f(i, j); };
        return a;
    }
};

// Two-dimensional L-summing: row-by-row total against the total of L-shaped
// pieces.  Both sides walk the array independently.
inline OracleVerdict oracle_lsum2d(const ArraySpec& a, long n) {
    if (a.dimension != 2) throw DomainError("oracle_lsum2d needs a 2-dimensional array");
    Rational rows(0);
    for (long k = a.lower; k <= n; ++k)
        for (long i = a.lower; i <= n; ++i) rows += a.entry2(k, i);

    Rational shells(0);
    for (long k = a.lower; k <= n; ++k) {
        Rational piece(0);
        for (long i = a.lower; i <= k; ++i) piece += a.entry2(i, k);
        for (long j = a.lower; j <= k; ++j) piece += a.entry2(k, j);
        piece -= a.entry2(k, k);
        shells += piece;
    }
    return make_verdict(rows, shells, n);
}

// Three-dimensional L-summing: full triple sum against the
// inclusion-exclusion shell sum (three faces, minus three edges, plus the
// diagonal).
inline OracleVerdict oracle_lsum3d(const ArraySpec& a, long n) {
    if (a.dimension != 3) throw DomainError("oracle_lsum3d needs a 3-dimensional array");
    Rational full(0);
    for (long i = a.lower; i <= n; ++i)
        for (long j = a.lower; j <= n; ++j)
            for (long k = a.lower; k <= n; ++k) full += a.entry3(i, j, k);

    Rational shells(0);
    for (long k = a.lower; k <= n; ++k) {
        Rational piece(0);
        for (long i = a.lower; i <= k; ++i)
            for (long j = a.lower; j <= k; ++j)
                piece += a.entry3(k, i, j) + a.entry3(i, k, j) + a.entry3(i, j, k);
        for (long j = a.lower; j <= k; ++j)
            piece -= a.entry3(k, k, j) + a.entry3(k, j, k) + a.entry3(j, k, k);
        piece += a.entry3(k, k, k);
        shells += piece;
    }
    return make_verdict(full, shells, n);
}

// One-variable specialization a_ij = f(i).  The zero-based form follows the
// substitution directly; the one-based variant carries the extra -f(k) on
// the left and the factor n on the right.
inline OracleVerdict oracle_special_1d(const Expr& f, long n, long lower,
                                       NamedSequenceCache& cache = NamedSequenceCache::global()) {
    if (lower != 0 && lower != 1) throw DomainError("lower bound must be 0 or 1");
    Rational lhs(0);
    Rational prefix(0);
    for (long k = lower; k <= n; ++k) {
        prefix += eval_term(f, k, cache);
        Rational piece = prefix + Rational(k) * eval_term(f, k, cache);
        if (lower == 1) piece -= eval_term(f, k, cache);
        lhs += piece;
    }
    Rational total(0);
    for (long k = lower; k <= n; ++k) total += eval_term(f, k, cache);
    const Rational count = lower == 0 ? Rational(n + 1) : Rational(n);
    return make_verdict(lhs, count * total, n);
}

struct Special2dVerdicts {
    OracleVerdict as_printed;
    OracleVerdict as_derived;
};

// The bivariate specialization a_ijk = f(i, j), evaluated two ways.
//
// as_printed follows the zero-based display with one cross term,
//     sum_k ( sum_{i,j<=k} f(i,j) + k * sum_{i<=k} f(k,i) - k f(k,k) )
//       =  (n+1) * sum_{i,j<=n} f(i,j),
// reading the display's free summand index as the written summation
// variable.  as_derived substitutes the rule into the three-dimensional
// shell decomposition mechanically.
inline Special2dVerdicts oracle_special_2d(const std::function<Rational(long, long)>& f,
                                           long n) {
    Rational total(0);
    for (long i = 0; i <= n; ++i)
        for (long j = 0; j <= n; ++j) total += f(i, j);

    Rational printed_lhs(0);
    for (long k = 0; k <= n; ++k) {
        Rational square(0);
        for (long i = 0; i <= k; ++i)
            for (long j = 0; j <= k; ++j) square += f(i, j);
        Rational row(0);
        for (long i = 0; i <= k; ++i) row += f(k, i);
        printed_lhs += square + Rational(k) * row - Rational(k) * f(k, k);
    }

    Special2dVerdicts out;
    out.as_printed = make_verdict(printed_lhs, Rational(n + 1) * total, n);
    out.as_derived = oracle_lsum3d(ArraySpec::function3(f, 0), n);
    return out;
}

inline Special2dVerdicts oracle_special_2d(const BivariateExpr& f, long n) {
    return oracle_special_2d([&f](long i, long j) { return f.eval(i, j); }, n);
}

} // namespace gksum
