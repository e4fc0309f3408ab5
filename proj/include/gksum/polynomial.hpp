#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/limits.hpp"
#include "gksum/rational.hpp"

namespace gksum {

// Dense univariate polynomial over the exact rationals.  Coefficients are
// stored lowest degree first; the leading coefficient is nonzero unless the
// polynomial is zero (empty coefficient vector).
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

    Polynomial(std::initializer_list<Rational> coeffs)
        : c_(coeffs.begin(), coeffs.end()) {
        normalize();
    }

    static Polynomial zero() { return Polynomial(); }

    static Polynomial constant(const Rational& v) {
        Polynomial p;
        if (v != 0) p.c_.push_back(v);
        return p;
    }

    // The formal variable itself.
    static Polynomial variable() { return Polynomial({Rational(0), Rational(1)}); }

    static Polynomial monomial(const Rational& coeff, int deg) {
        Polynomial p;
        if (coeff != 0) {
            p.c_.assign(static_cast<std::size_t>(deg) + 1, Rational(0));
            p.c_.back() = coeff;
        }
        p.check_limits();
        return p;
    }

    // Degree, with -1 standing in for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const Rational& coeff(int i) const {
        static const Rational kZero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(i)];
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational constant_term() const { return coeff(0); }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        Polynomial r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.normalize();
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        if (s == 0) return Polynomial();
        Polynomial r = p;
        for (auto& v : r.c_) v *= s;
        r.normalize();
        return r;
    }

    friend Polynomial operator*(const Polynomial& p, const Rational& s) { return s * p; }

    Polynomial pow(unsigned e) const {
        Polynomial acc = Polynomial::constant(Rational(1));
        Polynomial base = *this;
        while (e != 0) {
            if (e & 1u) acc = acc * base;
            base = (e >>= 1) != 0 ? base * base : base;
        }
        return acc;
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Rational eval(long x) const { return eval(Rational(x)); }

    // p(x + j), expanded in the standard basis.
    Polynomial shift(long j) const {
        if (j == 0 || is_zero()) return *this;
        const Rational rj(j);
        Polynomial acc;
        for (std::size_t i = c_.size(); i-- > 0;) {
            // acc <- acc * (x + j) + c_[i]
            Polynomial next;
            next.c_.assign(acc.c_.size() + 1, Rational(0));
            for (std::size_t t = 0; t < acc.c_.size(); ++t) {
                next.c_[t + 1] += acc.c_[t];
                next.c_[t] += acc.c_[t] * rj;
            }
            if (next.c_.empty()) next.c_.push_back(Rational(0));
            next.c_[0] += c_[i];
            next.normalize();
            acc = std::move(next);
        }
        return acc;
    }

    // Field division: returns {quotient, remainder} with deg r < deg divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw ZeroDenominatorError("polynomial division by zero");
        Polynomial q;
        Polynomial r = *this;
        const int dd = divisor.degree();
        const Rational lead = divisor.leading();
        if (r.degree() >= dd)
            q.c_.assign(static_cast<std::size_t>(r.degree() - dd) + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= dd) {
            const int k = r.degree() - dd;
            const Rational f = r.leading() / lead;
            q.c_[static_cast<std::size_t>(k)] = f;
            for (int i = 0; i <= dd; ++i)
                r.c_[static_cast<std::size_t>(i + k)] -= f * divisor.c_[static_cast<std::size_t>(i)];
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }

    // Division that is known to be exact; throws if a remainder appears.
    Polynomial exact_div(const Polynomial& divisor) const {
        auto [q, r] = divmod(divisor);
        if (!r.is_zero()) throw DomainError("polynomial division expected to be exact");
        return q;
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        const Rational inv = Rational(1) / leading();
        return inv * *this;
    }

    std::string to_string(const std::string& var = "n") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = c_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            const bool first = out.empty();
            const Rational a = c < 0 ? Rational(-c) : c;
            if (!first) out += c < 0 ? "-" : "+";
            else if (c < 0) out += "-";
            const bool unit = (a == 1) && i > 0;
            if (!unit) out += rat_to_string(a);
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        check_limits();
    }

    void check_limits() const {
        if (degree() > kMaxPolyDegree)
            throw ResourceLimitError("polynomial degree " + std::to_string(degree()) +
                                     " exceeds cap " + std::to_string(kMaxPolyDegree));
        for (const auto& v : c_)
            if (bit_length(v) > kMaxCoeffBits)
                throw ResourceLimitError("polynomial coefficient exceeds " +
                                         std::to_string(kMaxCoeffBits) + "-bit cap");
    }

    std::vector<Rational> c_;
};

namespace detail {

// Integer-coefficient scratch polynomials, lowest degree first, used by the
// fraction-free remainder sequences.
using IPoly = std::vector<Integer>;

inline void itrim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int ideg(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

inline IPoly imul_scalar(const IPoly& p, const Integer& s) {
    IPoly r = p;
    for (auto& v : r) v *= s;
    return r;
}

inline Integer icontent(const IPoly& p) {
    Integer g = 0;
    for (const auto& v : p) {
        g = boost::multiprecision::gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

inline void idiv_scalar(IPoly& p, const Integer& s) {
    for (auto& v : p) v /= s;
}

// Primitive part with positive leading coefficient.
inline IPoly iprimitive(IPoly p) {
    itrim(p);
    if (p.empty()) return p;
    Integer g = icontent(p);
    if (p.back() < 0) g = -g;
    idiv_scalar(p, g);
    return p;
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A  mod B.
inline IPoly iprem(IPoly a, const IPoly& b) {
    itrim(a);
    const int db = ideg(b);
    const Integer lead = b.back();
    long e = ideg(a) - db + 1;
    while (!a.empty() && ideg(a) >= db) {
        const Integer top = a.back();
        const int k = ideg(a) - db;
        for (auto& v : a) v *= lead;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + k)] -= top * b[static_cast<std::size_t>(i)];
        itrim(a);
        --e;
    }
    if (e > 0) {
        const Integer f = int_pow(lead, static_cast<unsigned>(e));
        for (auto& v : a) v *= f;
    }
    return a;
}

inline Integer ieval(const IPoly& p, const Integer& x) {
    Integer acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Split a rational polynomial as content * primitive-integer-part; the
// primitive part has positive leading coefficient and the content carries
// the sign.  Zero maps to (0, []).
inline std::pair<Rational, IPoly> rational_content_split(const Polynomial& p) {
    if (p.is_zero()) return {Rational(0), IPoly{}};
    Integer denlcm = 1;
    for (const auto& c : p.coeffs()) denlcm = boost::multiprecision::lcm(denlcm, den(c));
    IPoly ip;
    ip.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) ip.push_back(num(c) * (denlcm / den(c)));
    Integer g = icontent(ip);
    if (ip.back() < 0) g = -g;
    idiv_scalar(ip, g);
    return {make_rational(g, denlcm), ip};
}

inline Polynomial from_ipoly(const IPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& v : p) c.emplace_back(v);
    return Polynomial(std::move(c));
}

} // namespace detail

// Monic greatest common divisor, computed by a primitive polynomial
// remainder sequence on the integer forms.  gcd(p, 0) = monic(p) and
// gcd(0, 0) = 0.
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    detail::IPoly A = detail::rational_content_split(a).second;
    detail::IPoly B = detail::rational_content_split(b).second;
    if (detail::ideg(A) < detail::ideg(B)) std::swap(A, B);
    while (!B.empty()) {
        detail::IPoly R = detail::iprimitive(detail::iprem(A, B));
        A = std::move(B);
        B = std::move(R);
    }
    return detail::from_ipoly(A).monic();
}

inline Polynomial poly_shift(const Polynomial& p, long j) { return p.shift(j); }

inline Rational poly_eval(const Polynomial& p, const Rational& x) { return p.eval(x); }

// Resultant of two rational polynomials, via the fraction-free subresultant
// remainder sequence on their primitive integer parts.
inline Rational resultant(const Polynomial& pa, const Polynomial& pb) {
    using detail::ideg;
    using detail::IPoly;
    if (pa.is_zero() || pb.is_zero()) return Rational(0);
    auto [ca, A] = detail::rational_content_split(pa);
    auto [cb, B] = detail::rational_content_split(pb);

    // Res(c*A, d*B) = c^deg(B) * d^deg(A) * Res(A, B).
    Rational scale = rat_pow(ca, ideg(B)) * rat_pow(cb, ideg(A));

    int sign = 1;
    if (ideg(A) < ideg(B)) {
        if ((ideg(A) & 1) && (ideg(B) & 1)) sign = -sign;
        std::swap(A, B);
    }
    if (ideg(B) == 0) {
        // Res(A, const) = const^deg(A).
        return scale * Rational(int_pow(B[0], static_cast<unsigned>(ideg(A)))) *
               Rational(sign);
    }

    Integer g = 1, h = 1;
    while (true) {
        const int da = ideg(A), db = ideg(B);
        const int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        IPoly R = detail::iprem(A, B);
        if (R.empty()) return Rational(0);
        A = std::move(B);
        const Integer divisor = g * int_pow(h, static_cast<unsigned>(delta));
        detail::idiv_scalar(R, divisor);
        B = std::move(R);
        g = A.back();
        // h <- g^delta * h^(1-delta), an exact integer quotient.
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            Integer hn = int_pow(g, static_cast<unsigned>(delta));
            h = hn / int_pow(h, static_cast<unsigned>(delta - 1));
        }
        if (ideg(B) == 0) break;
    }
    const int da = ideg(A);
    Integer res = int_pow(B[0], static_cast<unsigned>(da));
    if (da > 1) res /= int_pow(h, static_cast<unsigned>(da - 1));
    return scale * Rational(res) * Rational(sign);
}

// All nonnegative integer roots of p, ascending.  Candidates come from the
// rational-root theorem on the primitive integer form; each one is verified
// by exact evaluation.
inline std::vector<long> nonneg_integer_roots(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("integer roots of the zero polynomial");
    std::vector<long> roots;
    if (p.is_constant()) return roots;

    detail::IPoly ip = detail::rational_content_split(p).second;
    std::size_t low = 0;
    while (low < ip.size() && ip[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        ip.erase(ip.begin(), ip.begin() + static_cast<std::ptrdiff_t>(low));
    }
    if (detail::ideg(ip) == 0) return roots;

    const Integer c0 = boost::multiprecision::abs(ip.front());
    const Integer lead = boost::multiprecision::abs(ip.back());

    // Cauchy bound: any root r satisfies |r| < 1 + max|c_i|/|c_lead|.
    Integer maxc = 0;
    for (const auto& v : ip) maxc = std::max(maxc, Integer(boost::multiprecision::abs(v)));
    const Integer bound = 1 + maxc / lead + 1;

    std::vector<Integer> candidates;
    if (detail::ideg(ip) == 1) {
        if (ip.front() % ip.back() == 0) candidates.push_back(-ip.front() / ip.back());
    } else {
        Integer d = 1;
        long steps = 0;
        while (d * d <= c0) {
            if (++steps > kMaxRootSearchSteps)
                throw ResourceLimitError("integer root search exceeded step cap");
            if (c0 % d == 0) {
                if (d <= bound) candidates.push_back(d);
                const Integer other = c0 / d;
                if (other <= bound) candidates.push_back(other);
            }
            ++d;
        }
    }
    for (const auto& r : candidates) {
        if (r < 0 || r > bound) continue;
        if (detail::ieval(ip, r) == 0) roots.push_back(static_cast<long>(r));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// The nonnegative integer shifts j at which q(n) and r(n+j) share a factor:
// exactly the nonnegative integer roots of Res_n(q(n), r(n+j)), a polynomial
// in j recovered here by evaluation and Newton interpolation.
inline std::vector<long> dispersion_candidates(const Polynomial& q, const Polynomial& r) {
    if (q.is_zero() || r.is_zero())
        throw DomainError("dispersion of a zero polynomial");
    if (q.is_constant() || r.is_constant()) return {};

    const int dq = q.degree(), dr = r.degree();
    const int points = dq * dr + 1;

    // Newton's divided differences on the nodes j = 0, 1, ..., dq*dr.
    std::vector<Rational> dd;
    dd.reserve(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) dd.push_back(resultant(q, r.shift(j)));
    for (int level = 1; level < points; ++level)
        for (int i = points - 1; i >= level; --i)
            dd[static_cast<std::size_t>(i)] =
                (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                Rational(level);

    // Interpolated Res_n(q(n), r(n+j)) as a polynomial in j, assembled in
    // Horner form over the Newton basis.
    Polynomial res = Polynomial::constant(dd[static_cast<std::size_t>(points - 1)]);
    for (int i = points - 2; i >= 0; --i) {
        res = res * (Polynomial::variable() - Polynomial::constant(Rational(i)));
        res = res + Polynomial::constant(dd[static_cast<std::size_t>(i)]);
    }

    if (res.is_zero()) return {};
    std::vector<long> out;
    for (long j : nonneg_integer_roots(res))
        if (!poly_gcd(q, r.shift(j)).is_constant()) out.push_back(j);
    return out;
}

// Unique interpolating polynomial through distinct rational nodes.
inline Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw DomainError("interpolation needs matching nonempty node lists");
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    Polynomial p = Polynomial::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        p = p * (Polynomial::variable() - Polynomial::constant(xs[i]));
        p = p + Polynomial::constant(dd[i]);
    }
    return p;
}

} // namespace gksum
