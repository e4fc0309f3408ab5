#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "gksum/errors.hpp"

namespace gksum {

// All scalar arithmetic in the engine is exact.  Integer is an
// arbitrary-precision signed integer, Rational a reduced fraction with
// positive denominator; both canonical forms are maintained by the
// underlying library.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ZeroDenominatorError("rational with zero denominator");
    return Rational(num, den);
}

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Bit length of the larger of |numerator| and denominator; 0 for 0.
inline unsigned bit_length(const Integer& x) {
    if (x == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

inline unsigned bit_length(const Rational& r) {
    unsigned n = bit_length(num(r));
    unsigned d = bit_length(den(r));
    return n > d ? n : d;
}

inline Integer int_pow(const Integer& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline Rational rat_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw DomainError("0 raised to a negative power");
        return Rational(0);
    }
    const auto e = static_cast<unsigned>(exp < 0 ? -exp : exp);
    Integer n = int_pow(num(base), e);
    Integer d = int_pow(den(base), e);
    return exp < 0 ? make_rational(d, n) : make_rational(n, d);
}

inline Integer int_factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer");
    Integer acc = 1;
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// C(n, k) for integer n >= 0, with the usual convention that the value is 0
// when k < 0 or k > n.  Negative n is outside the engine's term model.
inline Integer int_binomial(long n, long k) {
    if (n < 0) throw DomainError("binomial with negative upper argument");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

// Serialized form: "num/den", with "/den" omitted for integers.
inline std::string rat_to_string(const Rational& r) {
    std::string s = num(r).str();
    if (!is_integer(r)) {
        s += "/";
        s += den(r).str();
    }
    return s;
}

// Accepts an optional sign, a decimal integer and an optional "/den" part.
inline Rational rat_from_string(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer n(text.substr(0, slash));
        Integer d(text.substr(slash + 1));
        return make_rational(n, d);
    } catch (const std::exception& e) {
        throw DomainError("malformed rational \"" + text + "\": " + e.what());
    }
}

} // namespace gksum
