#include <catch2/catch_amalgamated.hpp>

#include "gksum/eval.hpp"
#include "gksum/parser.hpp"
#include "gksum/printer.hpp"
#include "gksum/term_ratio.hpp"

#include "test_support.hpp"

using namespace gksum;
using gksum::testing::random_grammar_expr;
using gksum::testing::random_hyper_term;

TEST_CASE("parser builds the expected shapes", "[term]") {
    CHECK(parse_term("k").kind() == ExprKind::Variable);
    CHECK(parse_term(" k ") == parse_term("k"));

    const Expr e = parse_term("(4*k+1)*fact(k)/fact(2*k+1)");
    REQUIRE(e.kind() == ExprKind::Div);
    REQUIRE(e.child(0).kind() == ExprKind::Mul);
    CHECK(e.child(0).child(1).kind() == ExprKind::Factorial);
    CHECK(e.child(0).child(1).lin1() == LinearForm{1, 0});
    CHECK(e.child(1).kind() == ExprKind::Factorial);
    CHECK(e.child(1).lin1() == LinearForm{2, 1});

    CHECK(parse_term("binom(10,k)").lin1() == LinearForm{0, 10});
    CHECK(parse_term("H(k;3)").param() == 3);
    CHECK(parse_term("pow(-1/2,k)").value() == Rational(-1, 2));
    CHECK(parse_term("fact(k)^-2").exponent() == -2);
}

TEST_CASE("parse errors carry the byte offset", "[term]") {
    try {
        parse_term("fact(k");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(parse_term("2k"), ParseError);         // implicit multiplication
    CHECK_THROWS_AS(parse_term("fact(-k)"), ParseError);   // negative factorial slope
    CHECK_THROWS_AS(parse_term("pow(0,k)"), ParseError);   // zero geometric base
    CHECK_THROWS_AS(parse_term("H(k;0)"), ParseError);
    CHECK_THROWS_AS(parse_term("S"), ParseError);          // identity-only symbol
    CHECK_THROWS_AS(parse_term(""), ParseError);
    CHECK_THROWS_AS(parse_term("x"), ParseError);
}

TEST_CASE("exact term evaluation", "[term]") {
    CHECK(eval_term(parse_term("1/(k*(k+1))"), 3) == Rational(1, 12));
    CHECK(eval_term(parse_term("fact(2*k+1)"), 2) == Rational(120));
    CHECK(eval_term(parse_term("H(k)"), 3) == Rational(11, 6));
    CHECK(eval_term(parse_term("D(k)"), 4) == Rational(9));
    CHECK(eval_term(parse_term("zeta(k;2)"), 4) == Rational(205, 144));
    CHECK(eval_term(parse_term("binom(10,k)"), 12) == Rational(0));
    CHECK(eval_term(parse_term("pow(-1/2,k)"), 3) == Rational(-1, 8));

    CHECK_THROWS_AS(eval_term(parse_term("fact(k-2)"), 1), DomainError);
    CHECK_THROWS_AS(eval_term(parse_term("1/(k-3)"), 3), DomainError);
    CHECK_THROWS_AS(eval_term(parse_term("k^-1"), 0), DomainError);
}

TEST_CASE("term_ratio worked examples", "[term]") {
    // fact(k): rho(n) = n
    CHECK(term_ratio(parse_term("fact(k)")).rho ==
          RationalFunction::from_polynomial(Polynomial::variable()));
    // k: rho = n/(n-1)
    const auto rk = term_ratio(parse_term("k"));
    CHECK(rk.rho == RationalFunction(Polynomial::variable(),
                                     Polynomial({Rational(-1), Rational(1)})));
    CHECK(rk.base_index == 1);
    CHECK(rk.base_value == Rational(1));
    // named sequences are rejected
    CHECK_THROWS_AS(term_ratio(parse_term("H(k)")), NotHypergeometricError);
    // binom(10, k): rho = (11 - k)/k
    const auto rb = term_ratio(parse_term("binom(10,k)"));
    CHECK(rb.rho == RationalFunction(Polynomial({Rational(11), Rational(-1)}),
                                     Polynomial::variable()));
}

TEST_CASE("ratio is consistent with evaluation", "[term][property]") {
    std::vector<Expr> corpus = {
        parse_term("k"),
        parse_term("1/k"),
        parse_term("1/(k*(k+1))"),
        parse_term("(4*k+1)*fact(k)/fact(2*k+1)"),
        parse_term("pow(2,k)"),
        parse_term("k*fact(k)"),
        parse_term("binom(2*k,k)/pow(4,k)"),
        parse_term("fact(k)^2/fact(2*k)"),
    };
    Rng rng(11);
    for (int i = 0; i < 40; ++i) corpus.push_back(random_hyper_term(rng));

    for (const auto& e : corpus) {
        const auto ratio = term_ratio(e);
        for (long k = ratio.base_index + 1; k <= ratio.base_index + 50; ++k) {
            REQUIRE(ratio.rho.defined_at(Rational(k)));
            CHECK(eval_term(e, k) == eval_term(e, k - 1) * ratio.rho.eval(k));
        }
    }
}

TEST_CASE("polynomial cofactors keep sums hypergeometric", "[term][property]") {
    Rng rng(13);
    for (int i = 0; i < 25; ++i) {
        const Expr u = random_hyper_term(rng);
        const Expr scaled = Expr::mul(parse_term("4*k+1"), u);
        const auto ru = term_ratio(u);
        const auto rs = term_ratio(scaled);
        // (4k+1)u(k) / ((4k-3)u(k-1)) must match the computed ratio.
        const RationalFunction cof(Polynomial({Rational(1), Rational(4)}),
                                   Polynomial({Rational(-3), Rational(4)}));
        CHECK(rs.rho == ru.rho * cof);
    }
    // And incompatible sums are rejected.
    CHECK_THROWS_AS(term_ratio(parse_term("fact(k)+pow(2,k)")), NotHypergeometricError);
    CHECK_THROWS_AS(term_ratio(parse_term("fact(k)+fact(2*k)")), NotHypergeometricError);
    CHECK_NOTHROW(term_ratio(parse_term("fact(k)+2*fact(k)")));
}

TEST_CASE("printer round-trips through the parser", "[term][property]") {
    Rng rng(17);
    for (int i = 0; i < 250; ++i) {
        const Expr e = random_grammar_expr(rng, static_cast<int>(rng.range(0, 3)));
        const std::string printed = print_term(e);
        Expr back = parse_term(printed);
        INFO(printed);
        CHECK(back == e);
    }
}

TEST_CASE("shift substitutes the index", "[term][property]") {
    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        const Expr e = random_hyper_term(rng);
        const long j = rng.range(-2, 3);
        const Expr shifted = shift_expr(e, j);
        for (long k = 5; k <= 12; ++k) {
            if (!term_defined_at(e, k + j)) continue;
            CHECK(eval_term(shifted, k) == eval_term(e, k + j));
        }
    }
    CHECK_THROWS_AS(shift_expr(parse_term("H(k)"), 1), DomainError);
}

TEST_CASE("latex rendering stays stable on the showcase terms", "[term]") {
    CHECK(latex_term(parse_term("1/k")) == "\\frac{1}{k}");
    CHECK(latex_term(parse_term("fact(2*k+1)")) == "(2k+1)!");
    CHECK(latex_term(parse_term("H(k;2)")) == "H^{(2)}_{k}");
    CHECK(latex_term(parse_term("binom(k+1,2)")) == "\\binom{k+1}{2}");
}
