#pragma once

#include <cctype>
#include <string>

#include "gksum/expr.hpp"
#include "gksum/rational.hpp"

namespace gksum {

namespace detail {

// Grammar levels: 1 additive, 2 multiplicative, 3 unary/power, 4 atom.
inline int expr_level(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Add: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg:
        case ExprKind::Pow: return 3;
        default: return 4;
    }
}

inline std::string linear_to_string(const LinearForm& lf, const std::string& var) {
    if (lf.a == 0) return std::to_string(lf.b);
    std::string out;
    if (lf.a == -1) out += "-";
    else if (lf.a != 1) out += std::to_string(lf.a) + "*";
    out += var;
    if (lf.b > 0) out += "+" + std::to_string(lf.b);
    else if (lf.b < 0) out += std::to_string(lf.b);
    return out;
}

inline std::string print_rec(const Expr& e, int min_level, const std::string& var);

inline std::string print_node(const Expr& e, const std::string& var) {
    switch (e.kind()) {
        case ExprKind::Constant: {
            const Rational& v = e.value();
            if (v >= 0 && is_integer(v)) return num(v).str();
            // Negative or fractional literals are not grammar atoms; wrap
            // them so the output stays parseable in any position.
            return "(" + rat_to_string(v) + ")";
        }
        case ExprKind::Variable:
            return var;
        case ExprKind::Add: {
            const Expr& rhs = e.child(1);
            if (rhs.kind() == ExprKind::Neg)
                return print_rec(e.child(0), 1, var) + "-" + print_rec(rhs.child(0), 2, var);
            return print_rec(e.child(0), 1, var) + "+" + print_rec(rhs, 2, var);
        }
        case ExprKind::Mul:
            return print_rec(e.child(0), 2, var) + "*" + print_rec(e.child(1), 3, var);
        case ExprKind::Div:
            return print_rec(e.child(0), 2, var) + "/" + print_rec(e.child(1), 3, var);
        case ExprKind::Neg:
            return "-" + print_rec(e.child(0), 3, var);
        case ExprKind::Pow:
            return print_rec(e.child(0), 4, var) + "^" + std::to_string(e.exponent());
        case ExprKind::Factorial:
            return "fact(" + linear_to_string(e.lin1(), var) + ")";
        case ExprKind::Binomial:
            return "binom(" + linear_to_string(e.lin1(), var) + "," +
                   linear_to_string(e.lin2(), var) + ")";
        case ExprKind::Geometric:
            return "pow(" + rat_to_string(e.value()) + "," + var + ")";
        case ExprKind::Harmonic:
            return "H(" + var + ")";
        case ExprKind::GenHarmonic:
            return "H(" + var + ";" + std::to_string(e.param()) + ")";
        case ExprKind::Derangement:
            return "D(" + var + ")";
        case ExprKind::ZetaPartial:
            return "zeta(" + var + ";" + std::to_string(e.param()) + ")";
        case ExprKind::PrefixSum:
            return "S";
    }
    return "?";
}

inline std::string print_rec(const Expr& e, int min_level, const std::string& var) {
    std::string body = print_node(e, var);
    if (expr_level(e) < min_level) return "(" + body + ")";
    return body;
}

} // namespace detail

// Canonical printer; its output parses back through the same grammar.
inline std::string print_term(const Expr& e, const std::string& var = "k") {
    return detail::print_rec(e, 1, var);
}

namespace detail {

inline std::string latex_rational(const Rational& v) {
    if (is_integer(v)) return num(v).str();
    std::string sign = v < 0 ? "-" : "";
    const Rational a = v < 0 ? Rational(-v) : v;
    return sign + "\\frac{" + num(a).str() + "}{" + den(a).str() + "}";
}

inline std::string latex_linear(const LinearForm& lf, const std::string& var) {
    if (lf.a == 0) return std::to_string(lf.b);
    std::string out;
    if (lf.a == -1) out += "-";
    else if (lf.a != 1) out += std::to_string(lf.a);
    out += var;
    if (lf.b > 0) out += "+" + std::to_string(lf.b);
    else if (lf.b < 0) out += std::to_string(lf.b);
    return out;
}

inline std::string latex_rec(const Expr& e, int min_level, const std::string& var);

inline std::string latex_node(const Expr& e, const std::string& var) {
    switch (e.kind()) {
        case ExprKind::Constant:
            return latex_rational(e.value());
        case ExprKind::Variable:
            return var;
        case ExprKind::Add: {
            const Expr& rhs = e.child(1);
            if (rhs.kind() == ExprKind::Neg)
                return latex_rec(e.child(0), 1, var) + " - " + latex_rec(rhs.child(0), 2, var);
            return latex_rec(e.child(0), 1, var) + " + " + latex_rec(rhs, 2, var);
        }
        case ExprKind::Mul: {
            const std::string lhs = latex_rec(e.child(0), 2, var);
            const std::string rhs = latex_rec(e.child(1), 3, var);
            const bool digits_touch = !lhs.empty() && !rhs.empty() &&
                                      std::isdigit(static_cast<unsigned char>(lhs.back())) &&
                                      std::isdigit(static_cast<unsigned char>(rhs.front()));
            return lhs + (digits_touch ? " \\cdot " : " \\, ") + rhs;
        }
        case ExprKind::Div:
            return "\\frac{" + latex_rec(e.child(0), 1, var) + "}{" +
                   latex_rec(e.child(1), 1, var) + "}";
        case ExprKind::Neg:
            return "-" + latex_rec(e.child(0), 3, var);
        case ExprKind::Pow: {
            std::string base = latex_rec(e.child(0), 4, var);
            return base + "^{" + std::to_string(e.exponent()) + "}";
        }
        case ExprKind::Factorial: {
            const LinearForm& lf = e.lin1();
            if (lf.a == 1 && lf.b == 0) return var + "!";
            if (lf.a == 0) return std::to_string(lf.b) + "!";
            return "(" + latex_linear(lf, var) + ")!";
        }
        case ExprKind::Binomial:
            return "\\binom{" + latex_linear(e.lin1(), var) + "}{" +
                   latex_linear(e.lin2(), var) + "}";
        case ExprKind::Geometric: {
            const Rational& c = e.value();
            if (is_integer(c) && c > 0) return num(c).str() + "^{" + var + "}";
            return "\\left(" + latex_rational(c) + "\\right)^{" + var + "}";
        }
        case ExprKind::Harmonic:
            return "H_{" + var + "}";
        case ExprKind::GenHarmonic:
            return "H^{(" + std::to_string(e.param()) + ")}_{" + var + "}";
        case ExprKind::Derangement:
            return "D_{" + var + "}";
        case ExprKind::ZetaPartial:
            return "\\zeta_{" + var + "}(" + std::to_string(e.param()) + ")";
        case ExprKind::PrefixSum:
            return "s_{" + var + "}";
    }
    return "?";
}

inline std::string latex_rec(const Expr& e, int min_level, const std::string& var) {
    std::string body = latex_node(e, var);
    if (expr_level(e) < min_level) return "\\left(" + body + "\\right)";
    return body;
}

} // namespace detail

inline std::string latex_term(const Expr& e, const std::string& var = "k") {
    return detail::latex_rec(e, 1, var);
}

} // namespace gksum
