#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/gosper.hpp"
#include "gksum/lsumming.hpp"
#include "gksum/named_sequences.hpp"
#include "gksum/parser.hpp"
#include "gksum/rational.hpp"
#include "gksum/verifier.hpp"

namespace gksum {

// Adjudication record for one printed display.  A refuted entry always
// carries the first failing index with both exact side values; confirmed
// entries carry a small witness plus the full checked range.
struct ErrataEntry {
    std::string location;
    std::string claim;
    std::string verdict;  // "confirmed" | "refuted" | "reinterpreted"
    std::optional<long> first_failing_n;
    long witness_n = 0;
    Rational side_a;
    Rational side_b;
    long checked_lower = 0;
    long checked_n_max = 0;
    std::string note;
};

namespace detail {

// Sweeps n ascending and fills in verdict/witness data.  Side callbacks may
// keep running state; they are called once per n, in order.
inline ErrataEntry adjudicate(std::string location, std::string claim, std::string note,
                              long lower, long n_max,
                              const std::function<Rational(long)>& side_a,
                              const std::function<Rational(long)>& side_b,
                              std::string verdict_if_refuted = "refuted") {
    ErrataEntry e;
    e.location = std::move(location);
    e.claim = std::move(claim);
    e.note = std::move(note);
    e.checked_lower = lower;
    e.checked_n_max = n_max;
    Rational wa, wb;
    bool have_witness = false;
    for (long n = lower; n <= n_max; ++n) {
        const Rational a = side_a(n);
        const Rational b = side_b(n);
        if (a != b) {
            e.verdict = verdict_if_refuted;
            e.first_failing_n = n;
            e.witness_n = n;
            e.side_a = a;
            e.side_b = b;
            return e;
        }
        if (!have_witness && n >= lower + 2) {
            wa = a;
            wb = b;
            e.witness_n = n;
            have_witness = true;
        }
        if (n == n_max && !have_witness) {
            wa = a;
            wb = b;
            e.witness_n = n;
        }
    }
    e.verdict = "confirmed";
    e.side_a = wa;
    e.side_b = wb;
    return e;
}

inline Rational binom_rat(long n, long k) { return Rational(int_binomial(n, k)); }

} // namespace detail

// Every flagged display of the source text, adjudicated by exact evaluation.
// Verdicts are computed, never assumed.
inline std::vector<ErrataEntry> errata_report(long n_max = 100) {
    std::vector<ErrataEntry> report;
    NamedSequenceCache& cache = NamedSequenceCache::global();

    // -- The antidifference display in the Gosper theorem. ------------------
    // As printed, f(n) = t(n) p(n) / (q(n+1) t(n)) cancels to p(n)/q(n+1).
    // Probe it on t = k, whose normal form is (p, q, r) = (n, 1, 1).
    {
        auto literal_f = [](long x) { return Rational(x); };  // p(x)/q(x+1) = x
        report.push_back(detail::adjudicate(
            "sec2-theorem-antidifference-display",
            "f(n) = t(n)*p(n)/(q(n+1)*t(n)) satisfies p(n) = q(n+1)*f(n) - r(n)*f(n-1)",
            "The displayed f cancels its t(n) factors, leaving p(n)/q(n+1); for t = k "
            "that candidate breaks the key equation.  The engine instead solves the key "
            "equation for f and builds F(k) = (r(k)*f(k-1)/p(k))*t(k); its f = "
            "(n^2+n)/2 satisfies the equation on the whole checked range.",
            1, 20,
            [&literal_f](long n) { return literal_f(n) - literal_f(n - 1); },  // q(n+1)f(n)-r(n)f(n-1)
            [](long n) { return Rational(n); },                                // p(n)
            "reinterpreted"));
    }

    // -- The general multiplier display. ------------------------------------
    // Its m = 3 instance reads 3s^2 - 3s^2 t - t^3, which contradicts the
    // section's own three-dimensional case 3s^2 - 3st + t^2.
    {
        report.push_back(detail::adjudicate(
            "sec3-general-multiplier-display",
            "t_k*R_k = s_k^3 - s_{k-1}^3 with R_k = C(3,1)s^{3-1} - C(3,2)s^{3-1}t + "
            "(-1)^3 C(3,3)t^3, probed on t = 1, s = k",
            "The printed exponent pattern keeps s^{m-1} on the second term and ends at "
            "(-1)^m t^m.  The engine's multiplier is the expansion of s^m - (s-t)^m, "
            "which reproduces the section's own m = 2 and m = 3 special cases.",
            1, 20,
            [](long k) {
                const Rational s(k), t(1);
                return t * (Rational(3) * s * s - Rational(3) * s * s * t - t * t * t);
            },
            [](long k) { return Rational(k) * k * k - Rational(k - 1) * (k - 1) * (k - 1); }));
    }

    // -- The binomial double-sum closed form. --------------------------------
    // sum_{k=0}^n sum_{j=0}^k k*C(n,k): the inner summand is j-free, so the
    // inner sum contributes k+1 copies.
    {
        report.push_back(detail::adjudicate(
            "sec1-binomial-double-sum-closed-form",
            "sum_{k=0}^{n} sum_{j=0}^{k} k*C(n,k) = 3n^2*2^(n-3) + 5n*2^(n-3)",
            "Left side read literally: the summand does not mention j, so the inner "
            "sum multiplies by k+1, giving sum_k k(k+1)C(n,k).  Exact evaluation gives "
            "(2n^2+6n)*2^(n-3), not (3n^2+5n)*2^(n-3); the sides agree only at n <= 1.",
            0, 40,
            [](long n) {
                Rational acc(0);
                for (long k = 0; k <= n; ++k)
                    acc += Rational(k) * Rational(k + 1) * detail::binom_rat(n, k);
                return acc;
            },
            [](long n) {
                return (Rational(3) * n * n + Rational(5) * n) * rat_pow(Rational(2), n - 3);
            }));
    }

    // -- Third worked example, printed item 2. --------------------------------
    {
        Rational run_a(0);
        report.push_back(detail::adjudicate(
            "sec4-example3-item2",
            "sum 1/C(k+1,1)^2 + (1/4) sum 1/C(k+1,2)^2 = 1 - 1/(n+1)^2",
            "The order-2 identity for t = 1/(k(k+1)) actually carries summand "
            "2/(k+1)^2 - 1/(k^2(k+1)^2) and right side n^2/(n+1)^2; the printed "
            "coefficients do not telescope.",
            1, 40,
            [run_a](long n) mutable -> Rational {
                run_a += Rational(1) / (detail::binom_rat(n + 1, 1) * detail::binom_rat(n + 1, 1)) +
                         Rational(1, 4) /
                             (detail::binom_rat(n + 1, 2) * detail::binom_rat(n + 1, 2));
                return run_a;
            },
            [](long n) { return Rational(1) - Rational(1) / (Rational(n + 1) * (n + 1)); }));
    }

    // -- Third worked example, printed item 3. --------------------------------
    {
        Rational run_a(0);
        report.push_back(detail::adjudicate(
            "sec4-example3-item3",
            "(12/8) sum C(k+1,2)C(k,2)/C(k+1,2)^3 + (1/8) sum 1/C(k+1,2)^3 = "
            "C(n,1)^3/C(n+1,1)^3",
            "Exactly the engine's order-3 identity for t = 1/(k(k+1)), s = k/(k+1), "
            "rewritten through binomials.",
            1, n_max,
            [run_a](long n) mutable -> Rational {
                const Rational c2 = detail::binom_rat(n + 1, 2);
                run_a += Rational(12, 8) * detail::binom_rat(n + 1, 2) * detail::binom_rat(n, 2) /
                             (c2 * c2 * c2) +
                         Rational(1, 8) / (c2 * c2 * c2);
                return run_a;
            },
            [](long n) {
                return Rational(n) * n * n / (Rational(n + 1) * (n + 1) * (n + 1));
            }));
    }

    // -- Fourth worked example, printed item 2. --------------------------------
    {
        Rational run_a(0);
        Rational fact_k(1), fact_2k1(1);  // k! and (2k+1)! tracked incrementally
        report.push_back(detail::adjudicate(
            "sec4-example4-item2",
            "sum_{k=0}^{n} (4k+3)(4k+1) (k!)^2/((2k+1)!)^2 = 4 - (n!)^2/((2n+1)!)^2",
            "Telescopes exactly: the summand equals s_k^2 - s_{k-1}^2 rearranged "
            "through 4*t_k - t_k*(s_k + s_{k-1}) for s_k = 2 - k!/(2k+1)!.",
            0, n_max,
            [run_a, fact_k, fact_2k1](long n) mutable -> Rational {
                if (n > 0) {
                    fact_k *= n;
                    fact_2k1 *= Rational(2 * n) * Rational(2 * n + 1);
                }
                const Rational w = fact_k / fact_2k1;
                run_a += Rational(4 * n + 3) * Rational(4 * n + 1) * w * w;
                return run_a;
            },
            [](long n) {
                Rational w = Rational(int_factorial(n)) / Rational(int_factorial(2 * n + 1));
                return Rational(4) - w * w;
            }));
    }

    // -- The bivariate specialization as printed. ------------------------------
    {
        auto ones = [](long, long) { return Rational(1); };
        report.push_back(detail::adjudicate(
            "sec1-eq4-as-printed",
            "sum_k ( sum_{i,j<=k} f(i,j) + sum_{i<=k} k*f(k,j) - k*f(k,k) ) = "
            "(n+1) * sum_{i,j<=n} f(i,j), probed on f = 1",
            "Mechanical reading: the free index j in the second term is bound by the "
            "written summation variable, and the doubled i-binder on the right is read "
            "as an independent (i, j) double sum.  One of the two symmetric cross "
            "terms of the shell decomposition is missing, so equality fails for any "
            "f with nonzero rows.",
            0, 12,
            [&ones](long n) { return oracle_special_2d(ones, n).as_printed.side_a; },
            [&ones](long n) { return oracle_special_2d(ones, n).as_printed.side_b; }));

        auto binom_f = [](long i, long j) { return detail::binom_rat(i, j); };
        report.push_back(detail::adjudicate(
            "sec1-eq4-as-derived",
            "substituting a_ijk = f(i,j) into the three-dimensional shell "
            "decomposition, probed on f = 1 and f = C(i,j)",
            "The mechanical substitution of the rule into the shell formula; this is "
            "the reading the verifier adopts.",
            0, 8,
            [&ones, &binom_f](long n) {
                return oracle_special_2d(ones, n).as_derived.side_a +
                       oracle_special_2d(binom_f, n).as_derived.side_a;
            },
            [&ones, &binom_f](long n) {
                return oracle_special_2d(ones, n).as_derived.side_b +
                       oracle_special_2d(binom_f, n).as_derived.side_b;
            }));
    }

    // -- The FAIL transcript for 1/(k(k+1)). -----------------------------------
    {
        const Expr t = parse_term("1/(k*(k+1))");
        auto ds = definite_sum(t, 1);
        Rational brute(0);
        report.push_back(detail::adjudicate(
            "sec4-example3-gosper-fail-claim",
            "sumtools[gosper](1/(k(k+1))) = FAIL",
            "The engine's decision is success, with sum 1 - 1/(n+1); a session block "
            "in the following example prints exactly that answer for the same input. "
            "Sides below compare the brute-force partial sum with the engine's closed "
            "form, which agree everywhere, refuting the FAIL claim.",
            1, n_max,
            [brute, t, &cache](long n) mutable -> Rational {
                brute += eval_term(t, n, cache);
                return brute;
            },
            [ds, &cache](long n) { return eval_term(ds->closed, n, cache); }));
    }

    // -- Positive controls: displays the engine confirms. -----------------------
    {
        Rational run(0);
        report.push_back(detail::adjudicate(
            "sec3-m2-identity", "sum_{k=1}^{n} (2k-1) = n^2", "", 1, n_max,
            [run](long n) mutable -> Rational {
                run += Rational(2 * n - 1);
                return run;
            },
            [](long n) { return Rational(n) * n; }));
    }
    {
        Rational run(0);
        report.push_back(detail::adjudicate(
            "sec3-m3-binomial-identity", "sum_{k=1}^{n} C(k,2) = C(n+1,3)", "", 1, n_max,
            [run](long n) mutable -> Rational {
                run += detail::binom_rat(n, 2);
                return run;
            },
            [](long n) { return detail::binom_rat(n + 1, 3); }));
    }
    {
        Rational cubes(0);
        Rational odds(0);
        report.push_back(detail::adjudicate(
            "sec3-m4-cube-identity",
            "sum_{k=1}^{n} (2k-1)^3 = C(2*sum_{k=1}^{n}(2k-1), 2)",
            "Equivalent to twice the engine's order-4 identity minus its order-2 "
            "identity for t = 1.",
            1, n_max,
            [cubes](long n) mutable -> Rational {
                const Rational odd(2 * n - 1);
                cubes += odd * odd * odd;
                return cubes;
            },
            [odds](long n) mutable -> Rational {
                odds += Rational(2 * n - 1);
                const Integer top = 2 * num(odds);
                return Rational(top * (top - 1), 2);
            }));
    }
    {
        Rational run3(0), run5(0), run7(0);
        report.push_back(detail::adjudicate(
            "sec4-example1-item1", "sum_{k=1}^{n} C(k,1)^3 = C(n+1,2)^2", "", 1, n_max,
            [run3](long n) mutable -> Rational {
                run3 += Rational(n) * n * n;
                return run3;
            },
            [](long n) {
                const Rational b = detail::binom_rat(n + 1, 2);
                return b * b;
            }));
        report.push_back(detail::adjudicate(
            "sec4-example1-item2",
            "(3/4) sum C(k,1)^5 + (1/4) sum C(k,1)^3 = C(n+1,2)^3", "", 1, n_max,
            [run3, run5](long n) mutable -> Rational {
                const Rational k(n);
                run3 += k * k * k;
                run5 += k * k * k * k * k;
                return Rational(3, 4) * run5 + Rational(1, 4) * run3;
            },
            [](long n) {
                const Rational b = detail::binom_rat(n + 1, 2);
                return b * b * b;
            }));
        report.push_back(detail::adjudicate(
            "sec4-example1-item3",
            "(1/2) sum C(k,1)^7 + (1/2) sum C(k,1)^5 = C(n+1,2)^4", "", 1, n_max,
            [run5, run7](long n) mutable -> Rational {
                const Rational k(n);
                run5 += k * k * k * k * k;
                run7 += k * k * k * k * k * k * k;
                return Rational(1, 2) * run7 + Rational(1, 2) * run5;
            },
            [](long n) {
                const Rational b = detail::binom_rat(n + 1, 2);
                return b * b * b * b;
            }));
    }
    {
        Rational run(0);
        report.push_back(detail::adjudicate(
            "sec4-harmonic-item2", "sum_{k=1}^{n} H_k/k = (1/2)H_n^2 + (1/2)H_n^(2)", "",
            1, n_max,
            [run, &cache](long n) mutable -> Rational {
                run += cache.harmonic(n) / n;
                return run;
            },
            [&cache](long n) {
                const Rational h = cache.harmonic(n);
                return Rational(1, 2) * h * h + Rational(1, 2) * cache.power_sum(2, n);
            }));
    }
    {
        Rational runa(0), runb(0);
        report.push_back(detail::adjudicate(
            "sec4-harmonic-item3",
            "sum H_k^2/k - sum H_k/k^2 = (1/3)H_n^3 - (1/3)H_n^(3)", "", 1, n_max,
            [runa, runb, &cache](long n) mutable -> Rational {
                const Rational h = cache.harmonic(n);
                runa += h * h / n;
                runb += h / (Rational(n) * n);
                return runa - runb;
            },
            [&cache](long n) {
                const Rational h = cache.harmonic(n);
                return Rational(1, 3) * h * h * h - Rational(1, 3) * cache.power_sum(3, n);
            }));
    }
    {
        Rational run(0);
        Rational fact_k(1), fact_2k1(1);
        report.push_back(detail::adjudicate(
            "sec4-example4-item1",
            "sum_{k=0}^{n} (4k+1) k!/(2k+1)! = 2 - n!/(2n+1)!", "", 0, n_max,
            [run, fact_k, fact_2k1](long n) mutable -> Rational {
                if (n > 0) {
                    fact_k *= n;
                    fact_2k1 *= Rational(2 * n) * Rational(2 * n + 1);
                }
                run += Rational(4 * n + 1) * fact_k / fact_2k1;
                return run;
            },
            [](long n) {
                return Rational(2) -
                       Rational(int_factorial(n)) / Rational(int_factorial(2 * n + 1));
            }));
    }
    {
        Rational run(0);
        report.push_back(detail::adjudicate(
            "sec1-zeta-finite-analogue",
            "sum_{k=1}^{n} zeta_k(2)/k^2 = (zeta_n(2)^2 + zeta_n(4))/2",
            "Finite form of the zeta display; the printed identity takes the limit.",
            1, 50,
            [run, &cache](long n) mutable -> Rational {
                run += cache.power_sum(2, n) / (Rational(n) * n);
                return run;
            },
            [&cache](long n) {
                const Rational z = cache.power_sum(2, n);
                return (z * z + cache.power_sum(4, n)) / 2;
            }));
    }
    {
        const Expr d = Expr::derangement();
        report.push_back(detail::adjudicate(
            "sec1-derangement-identity",
            "sum_{k=1}^{n} ( sum_{i<=k} D(i) + k*D(k) - D(k) ) = n * sum_{k=1}^{n} D(k)",
            "The one-based specialization of the L-summing equation.", 1, 60,
            [&d, &cache](long n) { return oracle_special_1d(d, n, 1, cache).side_a; },
            [&d, &cache](long n) { return oracle_special_1d(d, n, 1, cache).side_b; }));
    }

    return report;
}

} // namespace gksum
