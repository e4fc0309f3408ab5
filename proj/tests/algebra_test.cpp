#include <catch2/catch_amalgamated.hpp>

#include "gksum/linear_solve.hpp"
#include "gksum/polynomial.hpp"
#include "gksum/rational_function.hpp"

#include "test_support.hpp"

using namespace gksum;
using gksum::testing::naive_resultant;
using gksum::testing::random_nonzero_polynomial;
using gksum::testing::random_polynomial;

namespace {

const Polynomial x = Polynomial::variable();
const Polynomial one = Polynomial::constant(Rational(1));

} // namespace

TEST_CASE("poly_gcd on the worked examples", "[algebra]") {
    // gcd(n^2 - 1, n - 1) = n - 1
    CHECK(poly_gcd(x * x - one, x - one) == x - one);
    // gcd(p, 0) is p made monic
    const Polynomial p({Rational(2), Rational(4)});
    CHECK(poly_gcd(p, Polynomial::zero()) == p.monic());
    CHECK(poly_gcd(Polynomial::zero(), Polynomial::zero()) == Polynomial::zero());
    // gcd(n, n + 3) = 1
    CHECK(poly_gcd(x, x + Polynomial::constant(Rational(3))) == one);
}

TEST_CASE("poly_shift expands in the standard basis", "[algebra]") {
    CHECK(poly_shift(x * x, 1) == Polynomial({Rational(1), Rational(2), Rational(1)}));
    Rng rng(7);
    const Polynomial p = random_polynomial(rng, 5);
    CHECK(poly_shift(p, 0) == p);
    CHECK(poly_shift(x - one, 1) == x);
}

TEST_CASE("shift composes additively", "[algebra][property]") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const Polynomial p = random_polynomial(rng, 6);
        const long a = rng.range(-5, 5);
        const long b = rng.range(-5, 5);
        CHECK(poly_shift(poly_shift(p, a), b) == poly_shift(p, a + b));
    }
}

TEST_CASE("gcd of common-multiple pairs contains the common factor", "[algebra][property]") {
    Rng rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = random_nonzero_polynomial(rng, 3);
        const Polynomial q = random_nonzero_polynomial(rng, 3);
        const Polynomial g = random_nonzero_polynomial(rng, 2);
        const Polynomial d = poly_gcd(p * g, q * g);
        CHECK(d.divmod(g.monic()).second.is_zero());
    }
}

TEST_CASE("poly_eval is exact and respects the ring operations", "[algebra][property]") {
    const Polynomial half_square({Rational(0), Rational(1, 2), Rational(1, 2)});
    CHECK(poly_eval(half_square, Rational(3)) == Rational(6));
    CHECK(poly_eval(x - one, Rational(1)) == Rational(0));

    Rng rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = random_polynomial(rng, 5);
        const Polynomial q = random_polynomial(rng, 5);
        const Rational at(rng.range(-9, 9), rng.range(1, 5));
        CHECK(poly_eval(p, Rational(0)) == p.constant_term());
        CHECK(poly_eval(p * q, at) == poly_eval(p, at) * poly_eval(q, at));
        CHECK(poly_eval(p + q, at) == poly_eval(p, at) + poly_eval(q, at));
    }
}

TEST_CASE("nonneg_integer_roots via the rational-root theorem", "[algebra]") {
    // (j - 1)(j - 3)
    const Polynomial p = (x - one) * (x - Polynomial::constant(Rational(3)));
    CHECK(nonneg_integer_roots(p) == std::vector<long>{1, 3});
    CHECK(nonneg_integer_roots(x * x + one).empty());
    CHECK(nonneg_integer_roots(Polynomial({Rational(-5), Rational(2)})).empty());
    // zero roots and repeated factors
    CHECK(nonneg_integer_roots(x * x * (x - one)) == std::vector<long>{0, 1});
}

TEST_CASE("dispersion candidates from the j-resultant", "[algebra]") {
    CHECK(dispersion_candidates(x, x - one) == std::vector<long>{1});
    Rng rng(5);
    CHECK(dispersion_candidates(one, random_nonzero_polynomial(rng, 4)).empty());
    CHECK(dispersion_candidates(x, x - Polynomial::constant(Rational(2))) ==
          std::vector<long>{2});
}

TEST_CASE("dispersion candidates are exactly the nonconstant-gcd shifts",
          "[algebra][property]") {
    Rng rng(404);
    for (int trial = 0; trial < 12; ++trial) {
        Polynomial q = random_nonzero_polynomial(rng, 2);
        Polynomial r = random_nonzero_polynomial(rng, 2);
        // Plant a shared factor at a known shift.
        const long planted = rng.range(0, 6);
        const Polynomial g = x - Polynomial::constant(Rational(rng.range(-3, 3)));
        q = q * g;
        r = r * poly_shift(g, planted);
        // r(n + planted) contains g(n + planted ... shifted back) -- i.e.
        // gcd(q(n), r(n+j)) is nonconstant at least at j = planted.
        const auto candidates = dispersion_candidates(q, r);
        long bound = 10;
        for (long j : candidates) {
            bound = std::max(bound, j + 10);
            CHECK(!poly_gcd(q, poly_shift(r, j)).is_constant());
        }
        CHECK(std::find(candidates.begin(), candidates.end(), planted) != candidates.end());
        // Shifts not in the list give constant gcds.
        long tested = 0;
        for (long j = 0; j <= bound && tested < 20; ++j) {
            if (std::find(candidates.begin(), candidates.end(), j) != candidates.end())
                continue;
            ++tested;
            CHECK(poly_gcd(q, poly_shift(r, j)).is_constant());
        }
    }
}

TEST_CASE("subresultant resultant agrees with the naive recursion", "[algebra][property]") {
    Rng rng(505);
    for (int trial = 0; trial < 40; ++trial) {
        const Polynomial a = random_nonzero_polynomial(rng, 4);
        const Polynomial b = random_nonzero_polynomial(rng, 4);
        CHECK(resultant(a, b) == naive_resultant(a, b));
    }
    // Common factor forces a zero resultant.
    const Polynomial g = x - one;
    CHECK(resultant(g * (x + one), g * (x * x + one)) == Rational(0));
}

TEST_CASE("ratfun_normalize reduces and makes the denominator monic", "[algebra]") {
    const RationalFunction a = ratfun_normalize(x * x - one, x - one);
    CHECK(a.num() == x + one);
    CHECK(a.den() == one);

    const RationalFunction z = ratfun_normalize(Polynomial::zero(), x * x + one);
    CHECK(z.num().is_zero());
    CHECK(z.den() == one);

    // (2n + 2) / 4 -> ((1/2) n + 1/2) / 1
    const RationalFunction c =
        ratfun_normalize(Polynomial({Rational(2), Rational(2)}), Polynomial::constant(Rational(4)));
    CHECK(c.num() == Polynomial({Rational(1, 2), Rational(1, 2)}));
    CHECK(c.den() == one);

    CHECK_THROWS_AS(ratfun_normalize(x, Polynomial::zero()), ZeroDenominatorError);
}

TEST_CASE("ratfun_normalize is idempotent", "[algebra][property]") {
    Rng rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        const RationalFunction f(random_polynomial(rng, 4), random_nonzero_polynomial(rng, 4));
        const RationalFunction again = ratfun_normalize(f.num(), f.den());
        CHECK(f == again);
    }
}

TEST_CASE("resource caps guard degree and coefficient size", "[algebra]") {
    CHECK_THROWS_AS(Polynomial::monomial(Rational(1), 32) * Polynomial::monomial(Rational(1), 33),
                    ResourceLimitError);
    const Rational huge = rat_pow(Rational(2), 17000);
    CHECK_THROWS_AS(Polynomial::constant(huge), ResourceLimitError);
}

TEST_CASE("fraction-free linear solver", "[algebra]") {
    // x + y = 3, x - y = 1  =>  (2, 1)
    auto sol = solve_linear({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}},
                            {Rational(3), Rational(1)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(2));
    CHECK((*sol)[1] == Rational(1));

    // Inconsistent pair.
    CHECK_FALSE(solve_linear({{Rational(1), Rational(1)}, {Rational(2), Rational(2)}},
                             {Rational(1), Rational(3)})
                    .has_value());

    // Underdetermined: free variable pinned at zero, residual must vanish.
    auto under = solve_linear({{Rational(1), Rational(2)}}, {Rational(5)});
    REQUIRE(under.has_value());
    CHECK((*under)[0] + Rational(2) * (*under)[1] == Rational(5));

    Rng rng(707);
    for (int trial = 0; trial < 25; ++trial) {
        // Random consistent systems: pick a solution, then derive the rhs.
        const std::size_t ncols = static_cast<std::size_t>(rng.range(1, 4));
        const std::size_t nrows = static_cast<std::size_t>(rng.range(1, 5));
        std::vector<std::vector<Rational>> m(nrows, std::vector<Rational>(ncols));
        std::vector<Rational> want(ncols);
        for (auto& v : want) v = Rational(rng.range(-5, 5), rng.range(1, 3));
        std::vector<Rational> rhs(nrows, Rational(0));
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) {
                m[i][j] = Rational(rng.range(-5, 5), rng.range(1, 3));
                rhs[i] += m[i][j] * want[j];
            }
        auto got = solve_linear(m, rhs);
        REQUIRE(got.has_value());
        for (std::size_t i = 0; i < nrows; ++i) {
            Rational acc(0);
            for (std::size_t j = 0; j < ncols; ++j) acc += m[i][j] * (*got)[j];
            CHECK(acc == rhs[i]);
        }
    }
}
