#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/gosper.hpp"
#include "gksum/printer.hpp"

namespace gksum {

inline constexpr long kMaxMultiplierOrder = 32;

// One monomial of the rearrangement multiplier R^(m)(s, t).
struct RMonomial {
    Rational coeff;
    long s_pow = 0;
    long t_pow = 0;
};

// R^(m)(s, t) = sum_{i=1}^{m} (-1)^(i+1) C(m,i) s^(m-i) t^(i-1), so that
// t * R^(m)(s, t) = s^m - (s-t)^m.
inline std::vector<RMonomial> r_multiplier(long m) {
    if (m < 1) throw DomainError("multiplier order must be >= 1");
    if (m > kMaxMultiplierOrder)
        throw ResourceLimitError("multiplier order capped at " +
                                 std::to_string(kMaxMultiplierOrder));
    std::vector<RMonomial> out;
    out.reserve(static_cast<std::size_t>(m));
    for (long i = 1; i <= m; ++i) {
        Rational c(int_binomial(m, i));
        if (i % 2 == 0) c = -c;
        out.push_back(RMonomial{c, m - i, i - 1});
    }
    return out;
}

// A term together with its prefix sum: s(k) - s(k-1) = t(k) on the checked
// range and s(k0) = t(k0).
struct PrefixPair {
    Expr t;
    Expr s;
    long k0 = 1;
};

namespace detail {

inline void validate_prefix_pair(const PrefixPair& pair, long horizon = 100) {
    const Rational t0 = eval_term(pair.t, pair.k0);
    const Rational s0 = eval_term(pair.s, pair.k0);
    if (t0 != s0)
        throw InvalidPrefixSumError("s(k0) != t(k0): " + rat_to_string(s0) + " vs " +
                                    rat_to_string(t0) + " at k0=" + std::to_string(pair.k0));
    Rational prev = s0;
    for (long k = pair.k0 + 1; k <= pair.k0 + horizon; ++k) {
        const Rational sk = eval_term(pair.s, k);
        const Rational tk = eval_term(pair.t, k);
        if (sk - prev != tk)
            throw InvalidPrefixSumError("s(k)-s(k-1) != t(k) at k=" + std::to_string(k));
        prev = sk;
    }
}

// Built-in antidifference table: c / k^m sums to c * H^(m) from k0 = 1.
inline std::optional<Expr> builtin_prefix_sum(const Expr& t, long k0) {
    if (k0 != 1) return std::nullopt;
    auto rf = as_rational_function(t);
    if (!rf || rf->is_zero()) return std::nullopt;
    if (!rf->num().is_constant()) return std::nullopt;
    const Polynomial& d = rf->den();
    const int m = d.degree();
    if (m < 1) return std::nullopt;
    for (int i = 0; i < m; ++i)
        if (d.coeff(i) != 0) return std::nullopt;
    const Rational c = rf->num().constant_term();  // den is monic
    Expr named = m == 1 ? Expr::harmonic() : Expr::gen_harmonic(m);
    return c == 1 ? named : Expr::mul(Expr::constant(c), named);
}

} // namespace detail

// Resolution order for the prefix sum: explicit s, then Gosper, then the
// built-in table.  The pair invariant is always validated before returning.
inline PrefixPair build_prefix_pair(const Expr& t, std::optional<Expr> s = std::nullopt,
                                    long k0 = 1) {
    PrefixPair pair;
    pair.t = t;
    pair.k0 = k0;
    if (s) {
        pair.s = *s;
        detail::validate_prefix_pair(pair);
        return pair;
    }
    bool gosper_failed = false;
    try {
        GosperResult res = gosper_sum(t, k0);
        if (!res.failed()) {
            auto ds = definite_sum(res);
            if (ds && ds->valid_from <= k0) {
                pair.s = ds->closed;
                detail::validate_prefix_pair(pair);
                return pair;
            }
        }
        gosper_failed = true;
    } catch (const NotHypergeometricError&) {
        gosper_failed = true;
    }
    if (gosper_failed) {
        if (auto named = detail::builtin_prefix_sum(t, k0)) {
            pair.s = *named;
            detail::validate_prefix_pair(pair);
            return pair;
        }
    }
    throw NoPrefixSumError("no prefix sum available for " + print_term(t));
}

// The order-m Gosper-Karaji identity
//   sum_{k=lower}^{n} t_k * R^(m)(s_k, t_k) = s(n)^m.
struct RawIdentity {
    long m = 1;
    long lower = 1;
    std::vector<RMonomial> monomials;
    Expr t;
    Expr s;
};

inline RawIdentity generate_identity(const PrefixPair& pair, long m) {
    RawIdentity id;
    id.m = m;
    id.lower = pair.k0;
    id.monomials = r_multiplier(m);
    id.t = pair.t;
    id.s = pair.s;
    return id;
}

// t_k * R^(m)(s_k, t_k) at one index.
inline Rational raw_summand_value(const RawIdentity& id, long k,
                                  NamedSequenceCache& cache = NamedSequenceCache::global()) {
    const Rational tk = eval_term(id.t, k, cache);
    const Rational sk = eval_term(id.s, k, cache);
    Rational r(0);
    for (const auto& mono : id.monomials)
        r += mono.coeff * rat_pow(sk, mono.s_pow) * rat_pow(tk, mono.t_pow);
    return tk * r;
}

inline Rational raw_rhs_value(const RawIdentity& id, long n,
                              NamedSequenceCache& cache = NamedSequenceCache::global()) {
    return rat_pow(eval_term(id.s, n, cache), id.m);
}

// The raw summand as an expression over the prefix-sum symbol S.
inline Expr raw_summand_expr(const RawIdentity& id) {
    std::optional<Expr> r;
    for (const auto& mono : id.monomials) {
        const Rational mag = mono.coeff < 0 ? Rational(-mono.coeff) : mono.coeff;
        std::optional<Expr> term;
        auto append = [&term](const Expr& factor) {
            term = term ? Expr::mul(*term, factor) : factor;
        };
        if (mag != 1) append(Expr::constant(mag));
        if (mono.s_pow == 1) append(Expr::prefix_sum_symbol());
        else if (mono.s_pow > 1) append(Expr::pow(Expr::prefix_sum_symbol(), mono.s_pow));
        if (mono.t_pow == 1) append(id.t);
        else if (mono.t_pow > 1) append(Expr::pow(id.t, mono.t_pow));
        if (!term) term = Expr::constant(mag);
        if (mono.coeff < 0) term = Expr::neg(*term);
        r = r ? Expr::add(*r, *term) : *term;
    }
    return Expr::mul(id.t, *r);
}

// t(k) * R^(m)(s(k), t(k)) expanded as one polynomial; both members of the
// pair must be polynomial-valued.
inline Polynomial expand_polynomial_case(const PrefixPair& pair, long m) {
    auto tp = as_polynomial(pair.t);
    auto sp = as_polynomial(pair.s);
    if (!tp || !sp)
        throw NotPolynomialError("pair is not polynomial in k");
    Polynomial acc;
    for (const auto& mono : r_multiplier(m))
        acc += mono.coeff * sp->pow(static_cast<unsigned>(mono.s_pow)) *
               tp->pow(static_cast<unsigned>(mono.t_pow));
    return *tp * acc;
}

// Finite-difference coefficients: P(k) = sum_j c_j * C(k, j) with
// c_j = (Delta^j P)(0).
inline std::vector<Rational> binomial_basis_coeffs(const Polynomial& p) {
    std::vector<Rational> out;
    Polynomial cur = p;
    for (int j = 0; j <= p.degree(); ++j) {
        out.push_back(cur.eval(Rational(0)));
        cur = cur.shift(1) - cur;
    }
    if (out.empty()) out.push_back(Rational(0));
    return out;
}

// One substitution rule: sum_{k=lower}^{n} pattern(k)^power = closed(n).
struct SubstitutionRule {
    Expr pattern;
    long power = 1;
    Expr closed;
    long lower = 1;
};

// Closed forms for pure t-power sums.  User rules are matched structurally;
// the c/k^m family and Gosper-summable powers are built in.
class SubstitutionTable {
public:
    void add_rule(SubstitutionRule rule) { rules_.push_back(std::move(rule)); }

    const std::vector<SubstitutionRule>& rules() const { return rules_; }

    std::optional<Expr> closed_power_sum(const Expr& t, long power, long lower) const {
        for (const auto& rule : rules_)
            if (rule.power == power && rule.lower == lower && rule.pattern == t)
                return rule.closed;
        // c/k^m: the power sum is c^power * H^(m*power).
        if (lower == 1) {
            if (auto rf = as_rational_function(t)) {
                if (!rf->is_zero() && rf->num().is_constant()) {
                    const Polynomial& d = rf->den();
                    const int m = d.degree();
                    bool monomial = m >= 1;
                    for (int i = 0; i < m && monomial; ++i) monomial = d.coeff(i) == 0;
                    if (monomial) {
                        const long total = m * power;
                        const Rational c = rat_pow(rf->num().constant_term(), power);
                        Expr named =
                            total == 1 ? Expr::harmonic() : Expr::gen_harmonic(total);
                        return c == 1 ? named : Expr::mul(Expr::constant(c), named);
                    }
                }
            }
        }
        // Anything Gosper can telescope directly.
        try {
            Expr powered = power == 1 ? t : Expr::pow(t, power);
            auto ds = definite_sum(powered, lower);
            if (ds && ds->valid_from <= lower) return ds->closed;
        } catch (const Error&) {
        }
        return std::nullopt;
    }

private:
    std::vector<SubstitutionRule> rules_;
};

// One left-hand term of a presented identity: coeff * sum_{k=lower}^n summand(k).
struct PresentedTerm {
    Rational coeff;
    Expr summand;
};

struct PresentedIdentity {
    std::vector<PresentedTerm> lhs;
    Expr rhs;  // expression in the bound variable, evaluated at n
    long lower = 1;
};

namespace detail {

inline Expr scaled(const Rational& c, const Expr& e) {
    if (c == 1) return e;
    if (c == -1) return Expr::neg(e);
    return Expr::mul(Expr::constant(c), e);
}

inline Expr power_or_self(const Expr& e, long p) {
    return p == 1 ? e : Expr::pow(e, p);
}

// Deterministic presentation for polynomial pairs: rewrite the summand in
// the binomial basis, move the constant term to the right, and when a single
// binomial sum remains give the right side its hockey-stick closed form.
inline PresentedIdentity present_polynomial(const RawIdentity& id, const Polynomial& tp,
                                            const Polynomial& sp) {
    Polynomial summand;
    for (const auto& mono : id.monomials)
        summand += mono.coeff * sp.pow(static_cast<unsigned>(mono.s_pow)) *
                   tp.pow(static_cast<unsigned>(mono.t_pow));
    summand = tp * summand;

    const std::vector<Rational> c = binomial_basis_coeffs(summand);
    PresentedIdentity out;
    out.lower = id.lower;

    std::vector<std::pair<long, Rational>> terms;
    for (std::size_t j = 1; j < c.size(); ++j)
        if (c[j] != 0) terms.emplace_back(static_cast<long>(j), c[j]);

    if (terms.empty()) {
        // Constant summand; nothing to rewrite.
        out.lhs.push_back(PresentedTerm{Rational(1), expr_from_polynomial(summand)});
        out.rhs = power_or_self(id.s, id.m);
        return out;
    }

    if (terms.size() == 1) {
        const long j = terms[0].first;
        out.lhs.push_back(
            PresentedTerm{Rational(1), Expr::binomial(LinearForm{1, 0}, LinearForm{0, j})});
        // sum_{k=lower}^n C(k,j) = C(n+1, j+1) - C(lower, j+1); the correction
        // vanishes for lower <= j.
        Expr rhs = Expr::binomial(LinearForm{1, 1}, LinearForm{0, j + 1});
        const Integer corr = id.lower <= j ? Integer(0) : int_binomial(id.lower, j + 1);
        if (corr != 0) rhs = Expr::sub(rhs, Expr::constant(Rational(corr)));
        out.rhs = rhs;
        return out;
    }

    for (const auto& [j, coeff] : terms)
        out.lhs.push_back(
            PresentedTerm{coeff, Expr::binomial(LinearForm{1, 0}, LinearForm{0, j})});
    Expr rhs = power_or_self(id.s, id.m);
    if (c[0] != 0) {
        // Move c_0 * (n - lower + 1) across.
        Expr count = id.lower == 1 ? Expr::variable()
                                   : Expr::sub(Expr::variable(), Expr::constant(id.lower - 1));
        if (c[0] < 0) rhs = Expr::add(rhs, scaled(Rational(-c[0]), count));
        else rhs = Expr::sub(rhs, scaled(c[0], count));
    }
    out.rhs = rhs;
    return out;
}

} // namespace detail

// Presentation normal form.  Polynomial pairs go to the binomial basis; for
// the rest, pure t-power monomials with a known closed sum move to the right
// side and the identity is scaled so its leading surviving term is monic.
// Falls back to the raw shape when nothing applies.
inline PresentedIdentity present_identity(const RawIdentity& id,
                                          const SubstitutionTable& table = {}) {
    auto tp = as_polynomial(id.t);
    auto sp = as_polynomial(id.s);
    if (tp && sp) return detail::present_polynomial(id, *tp, *sp);

    struct Moved {
        Rational coeff;
        Expr closed;
    };
    std::vector<PresentedTerm> kept;
    std::vector<Moved> moved;
    for (const auto& mono : id.monomials) {
        const long tpow = mono.t_pow + 1;  // the summand carries one extra t
        if (mono.s_pow == 0 && id.monomials.size() > 1) {
            if (auto closed = table.closed_power_sum(id.t, tpow, id.lower)) {
                moved.push_back(Moved{mono.coeff, *closed});
                continue;
            }
        }
        Expr summand = mono.s_pow == 0
                           ? detail::power_or_self(id.t, tpow)
                           : Expr::mul(detail::power_or_self(id.s, mono.s_pow),
                                       detail::power_or_self(id.t, tpow));
        kept.push_back(PresentedTerm{mono.coeff, summand});
    }

    PresentedIdentity out;
    out.lower = id.lower;
    const Rational lead = kept.empty() ? Rational(1) : kept.front().coeff;
    for (auto& term : kept) term.coeff /= lead;
    out.lhs = std::move(kept);

    // rhs = (1/lead) * s(n)^m - sum (c/lead) * closed(n), kept as a flat sum.
    Expr rhs = detail::scaled(Rational(1) / lead, detail::power_or_self(id.s, id.m));
    for (const auto& mv : moved) {
        const Rational c = -mv.coeff / lead;
        if (c < 0) rhs = Expr::sub(rhs, detail::scaled(Rational(-c), mv.closed));
        else rhs = Expr::add(rhs, detail::scaled(c, mv.closed));
    }
    out.rhs = rhs;
    return out;
}

inline Rational presented_lhs_value(const PresentedIdentity& id, long n,
                                    NamedSequenceCache& cache = NamedSequenceCache::global()) {
    Rational acc(0);
    for (const auto& term : id.lhs) {
        Rational partial(0);
        for (long k = id.lower; k <= n; ++k) partial += eval_term(term.summand, k, cache);
        acc += term.coeff * partial;
    }
    return acc;
}

inline Rational presented_rhs_value(const PresentedIdentity& id, long n,
                                    NamedSequenceCache& cache = NamedSequenceCache::global()) {
    return eval_term(id.rhs, n, cache);
}

} // namespace gksum
