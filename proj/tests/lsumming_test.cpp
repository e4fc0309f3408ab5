#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "gksum/lsumming.hpp"
#include "gksum/parser.hpp"
#include "gksum/printer.hpp"
#include "gksum/verifier.hpp"

#include "test_support.hpp"

using namespace gksum;
using gksum::testing::random_polynomial;

namespace {

Rational r_value(const std::vector<RMonomial>& monos, const Rational& s, const Rational& t) {
    Rational acc(0);
    for (const auto& m : monos) acc += m.coeff * rat_pow(s, m.s_pow) * rat_pow(t, m.t_pow);
    return acc;
}

} // namespace

TEST_CASE("r_multiplier special cases", "[lsumming]") {
    const auto m1 = r_multiplier(1);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0].coeff == Rational(1));
    CHECK(m1[0].s_pow == 0);
    CHECK(m1[0].t_pow == 0);

    // m=2: 2s - t
    const auto m2 = r_multiplier(2);
    REQUIRE(m2.size() == 2);
    CHECK(m2[0].coeff == Rational(2));
    CHECK(m2[0].s_pow == 1);
    CHECK(m2[1].coeff == Rational(-1));
    CHECK(m2[1].t_pow == 1);

    // m=3: 3s^2 - 3st + t^2
    const auto m3 = r_multiplier(3);
    REQUIRE(m3.size() == 3);
    CHECK(m3[0].coeff == Rational(3));
    CHECK(m3[1].coeff == Rational(-3));
    CHECK(m3[2].coeff == Rational(1));

    CHECK_THROWS_AS(r_multiplier(0), DomainError);
    CHECK_THROWS_AS(r_multiplier(33), ResourceLimitError);
}

TEST_CASE("multiplier telescopes formally", "[lsumming][property]") {
    Rng rng(31);
    for (long m = 1; m <= 32; ++m) {
        const auto monos = r_multiplier(m);
        // Coefficient checksum: R(1,1) = 1.
        CHECK(r_value(monos, Rational(1), Rational(1)) == Rational(1));
        // t * R(s,t) = s^m - (s-t)^m on random rationals.
        for (int trial = 0; trial < 4; ++trial) {
            const Rational s(rng.range(-9, 9), rng.range(1, 5));
            const Rational t(rng.range(-9, 9), rng.range(1, 5));
            CHECK(t * r_value(monos, s, t) == rat_pow(s, m) - rat_pow(s - t, m));
        }
    }
}

TEST_CASE("build_prefix_pair resolves through gosper and the table", "[lsumming]") {
    const PrefixPair via_gosper = build_prefix_pair(parse_term("k"));
    for (long k = 1; k <= 40; ++k)
        CHECK(eval_term(via_gosper.s, k) == Rational(k) * (k + 1) / 2);

    const PrefixPair via_table = build_prefix_pair(parse_term("1/k"));
    CHECK(via_table.s == Expr::harmonic());

    const PrefixPair zeta_pair = build_prefix_pair(parse_term("1/k^3"));
    CHECK(zeta_pair.s == Expr::gen_harmonic(3));

    CHECK_THROWS_AS(build_prefix_pair(parse_term("fact(k)")), NoPrefixSumError);

    // Explicit s must satisfy the difference equation.
    CHECK_NOTHROW(build_prefix_pair(parse_term("1/k"), parse_term("H(k)")));
    CHECK_THROWS_AS(build_prefix_pair(parse_term("1/k"), parse_term("H(k;2)")),
                    InvalidPrefixSumError);
    CHECK_THROWS_AS(build_prefix_pair(parse_term("k"), parse_term("k^2")),
                    InvalidPrefixSumError);
}

TEST_CASE("telescoping core across the pair corpus", "[lsumming][property]") {
    std::vector<PrefixPair> corpus = {
        build_prefix_pair(parse_term("1")),
        build_prefix_pair(parse_term("k")),
        build_prefix_pair(parse_term("1/k")),
        build_prefix_pair(parse_term("1/k^2")),
        build_prefix_pair(parse_term("1/(k*(k+1))")),
        build_prefix_pair(parse_term("(4*k+1)*fact(k)/fact(2*k+1)"), std::nullopt, 0),
        build_prefix_pair(parse_term("pow(2,k)")),
    };
    for (const auto& pair : corpus) {
        std::vector<Rational> s_vals;
        for (long k = pair.k0; k <= pair.k0 + 61; ++k)
            s_vals.push_back(eval_term(pair.s, k));
        for (long m = 1; m <= 6; ++m) {
            const auto monos = r_multiplier(m);
            for (long k = pair.k0 + 1; k <= pair.k0 + 60; ++k) {
                const Rational tk = eval_term(pair.t, k);
                const Rational sk = s_vals[static_cast<std::size_t>(k - pair.k0)];
                const Rational sk1 = s_vals[static_cast<std::size_t>(k - 1 - pair.k0)];
                CHECK(tk * r_value(monos, sk, tk) == rat_pow(sk, m) - rat_pow(sk1, m));
            }
        }
    }
}

TEST_CASE("generated identities verify and match the known displays", "[lsumming]") {
    // t = 1, m = 2: sum (2k - 1) = n^2
    const PrefixPair ones = build_prefix_pair(parse_term("1"));
    const RawIdentity id2 = generate_identity(ones, 2);
    for (long n = 1; n <= 30; ++n) {
        Rational lhs(0);
        for (long k = 1; k <= n; ++k) lhs += Rational(2 * k - 1);
        CHECK(raw_rhs_value(id2, n) == Rational(n) * n);
        CHECK(check_identity(id2, n).equal);
        CHECK(check_identity(id2, n).side_a == lhs);
    }

    // t = k, m = 2: sum k^3 = C(n+1,2)^2
    const PrefixPair tk = build_prefix_pair(parse_term("k"));
    const RawIdentity idk = generate_identity(tk, 2);
    CHECK(check_range(idk, 100).all_equal);

    // harmonic m = 2 at n = 3: both sides 85/36 after presentation
    const PrefixPair th = build_prefix_pair(parse_term("1/k"));
    const PresentedIdentity hp = present_identity(generate_identity(th, 2));
    const OracleVerdict v = check_identity(hp, 3);
    CHECK(v.equal);
    CHECK(v.side_a == Rational(85, 36));
}

TEST_CASE("expand_polynomial_case reproduces the printed summands", "[lsumming]") {
    const PrefixPair tk = build_prefix_pair(parse_term("k"));
    // m=3: (3k^5 + k^3)/4
    CHECK(expand_polynomial_case(tk, 3) ==
          Polynomial({Rational(0), Rational(0), Rational(0), Rational(1, 4), Rational(0),
                      Rational(3, 4)}));
    // m=4: (k^7 + k^5)/2
    CHECK(expand_polynomial_case(tk, 4) ==
          Polynomial({Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                      Rational(1, 2), Rational(0), Rational(1, 2)}));

    const PrefixPair ones = build_prefix_pair(parse_term("1"));
    CHECK(expand_polynomial_case(ones, 3) ==
          Polynomial({Rational(1), Rational(-3), Rational(3)}));

    CHECK_THROWS_AS(expand_polynomial_case(build_prefix_pair(parse_term("1/k")), 2),
                    NotPolynomialError);
}

TEST_CASE("binomial-basis coefficients reconstruct random polynomials",
          "[lsumming][property]") {
    Rng rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        const Polynomial p = random_polynomial(rng, 6);
        const auto coeffs = binomial_basis_coeffs(p);
        for (long k = 0; k < 20; ++k) {
            Rational acc(0);
            for (std::size_t j = 0; j < coeffs.size(); ++j)
                acc += coeffs[j] * Rational(int_binomial(k, static_cast<long>(j)));
            CHECK(acc == p.eval(k));
        }
    }
}

TEST_CASE("presentation normal forms", "[lsumming]") {
    // Polynomial route: t=1, m=3 gives sum C(k,2) = C(n+1,3).
    const PrefixPair ones = build_prefix_pair(parse_term("1"));
    const PresentedIdentity p3 = present_identity(generate_identity(ones, 3));
    REQUIRE(p3.lhs.size() == 1);
    CHECK(p3.lhs[0].coeff == Rational(1));
    CHECK(p3.lhs[0].summand == Expr::binomial(LinearForm{1, 0}, LinearForm{0, 2}));
    CHECK(p3.rhs == Expr::binomial(LinearForm{1, 1}, LinearForm{0, 3}));
    CHECK(check_range(p3, 200).all_equal);

    // Substitution route: harmonic m=2 gives sum H_k/k = 1/2 H^2 + 1/2 H^(2).
    const PrefixPair th = build_prefix_pair(parse_term("1/k"));
    const PresentedIdentity h2 = present_identity(generate_identity(th, 2));
    REQUIRE(h2.lhs.size() == 1);
    CHECK(h2.lhs[0].coeff == Rational(1));
    CHECK(check_range(h2, 200).all_equal);

    const PresentedIdentity h3 = present_identity(generate_identity(th, 3));
    REQUIRE(h3.lhs.size() == 2);
    CHECK(h3.lhs[0].coeff == Rational(1));
    CHECK(h3.lhs[1].coeff == Rational(-1));
    CHECK(check_range(h3, 200).all_equal);

    // Fallback: 1/(k(k+1)) squared has no closed power sum; the raw shape
    // survives with a monic leading coefficient.
    const PrefixPair tt = build_prefix_pair(parse_term("1/(k*(k+1))"));
    const PresentedIdentity q2 = present_identity(generate_identity(tt, 2));
    CHECK(q2.lhs.size() == 2);
    CHECK(q2.lhs[0].coeff == Rational(1));
    CHECK(check_range(q2, 200).all_equal);
}

TEST_CASE("presentation equivalence with the raw identity", "[lsumming][property]") {
    const std::vector<std::pair<const char*, long>> inputs = {
        {"1/k", 2}, {"1/k", 3}, {"1/k^2", 2}, {"1/(k*(k+1))", 2}, {"1/(k*(k+1))", 3}};
    for (const auto& [text, m] : inputs) {
        const PrefixPair pair = build_prefix_pair(parse_term(text));
        const RawIdentity raw = generate_identity(pair, m);
        const PresentedIdentity pres = present_identity(raw);
        const Rational lead = raw.monomials.front().coeff;
        for (long n = 1; n <= 40; ++n) {
            const Rational raw_gap = check_identity(raw, n).side_a - raw_rhs_value(raw, n);
            const Rational pres_gap =
                presented_lhs_value(pres, n) - presented_rhs_value(pres, n);
            CHECK(raw_gap == lead * pres_gap);
            CHECK(raw_gap == 0);
        }
    }
}

TEST_CASE("user substitution rules extend the table", "[lsumming]") {
    SubstitutionTable table;
    CHECK(table.closed_power_sum(parse_term("1/k"), 2, 1) == Expr::gen_harmonic(2));
    CHECK_FALSE(table.closed_power_sum(parse_term("fact(k)"), 1, 1).has_value());

    // A made-up rule is honored verbatim.
    table.add_rule(SubstitutionRule{parse_term("D(k)"), 1, parse_term("H(k)"), 1});
    CHECK(table.closed_power_sum(parse_term("D(k)"), 1, 1) == Expr::harmonic());

    // Gosper fallback: polynomial powers always close.
    const auto closed = table.closed_power_sum(parse_term("k"), 3, 1);
    REQUIRE(closed.has_value());
    for (long n = 1; n <= 20; ++n) {
        Rational want(0);
        for (long k = 1; k <= n; ++k) want += Rational(k) * k * k;
        CHECK(eval_term(*closed, n) == want);
    }
}

TEST_CASE("named sequence values and recurrences", "[lsumming]") {
    NamedSequenceCache cache;
    CHECK(cache.harmonic(3) == Rational(11, 6));
    CHECK(cache.derangement(4) == Rational(9));
    CHECK(cache.power_sum(2, 4) == Rational(205, 144));
    CHECK_THROWS_AS(cache.derangement(-1), DomainError);

    for (long k = 1; k <= 60; ++k) {
        CHECK(cache.harmonic(k) - cache.harmonic(k - 1) == Rational(1, k));
        CHECK(cache.power_sum(3, k) - cache.power_sum(3, k - 1) == rat_pow(Rational(1, k), 3));
        const Rational sign = k % 2 == 0 ? Rational(1) : Rational(-1);
        CHECK(cache.derangement(k) - Rational(k) * cache.derangement(k - 1) == sign);
    }
}

TEST_CASE("named sequence memo is safe under concurrent access", "[lsumming]") {
    NamedSequenceCache cache;
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int w = 0; w < 8; ++w)
        workers.emplace_back([&cache, &ok, w] {
            for (long k = 1; k <= 200; ++k) {
                const long at = (k * (w + 3)) % 180 + 1;
                if (cache.harmonic(at) - cache.harmonic(at - 1) != Rational(1, at)) ok = false;
                if (cache.derangement(at % 40) < 0) ok = false;
            }
        });
    for (auto& t : workers) t.join();
    CHECK(ok);
}
