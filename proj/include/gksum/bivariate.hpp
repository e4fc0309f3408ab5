#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/rational.hpp"

namespace gksum {

// Minimal two-variable dialect for array entry rules a_{ij} = f(i, j): the
// term grammar's operators over variables i and j, with fact/binom taking
// arbitrary integer-valued subexpressions.
class BivariateExpr {
public:
    enum class Kind { Constant, VarI, VarJ, Add, Mul, Div, Neg, Pow, Fact, Binom };

    static BivariateExpr constant(Rational v) {
        BivariateExpr e(Kind::Constant);
        e.node_->value = std::move(v);
        return e;
    }
    static BivariateExpr var_i() { return BivariateExpr(Kind::VarI); }
    static BivariateExpr var_j() { return BivariateExpr(Kind::VarJ); }
    static BivariateExpr add(BivariateExpr a, BivariateExpr b) { return binary(Kind::Add, a, b); }
    static BivariateExpr mul(BivariateExpr a, BivariateExpr b) { return binary(Kind::Mul, a, b); }
    static BivariateExpr div(BivariateExpr a, BivariateExpr b) { return binary(Kind::Div, a, b); }
    static BivariateExpr neg(BivariateExpr a) {
        BivariateExpr e(Kind::Neg);
        e.node_->kids = {a};
        return e;
    }
    static BivariateExpr pow(BivariateExpr a, long exp) {
        BivariateExpr e(Kind::Pow);
        e.node_->kids = {a};
        e.node_->exponent = exp;
        return e;
    }
    static BivariateExpr fact(BivariateExpr a) {
        BivariateExpr e(Kind::Fact);
        e.node_->kids = {a};
        return e;
    }
    static BivariateExpr binom(BivariateExpr a, BivariateExpr b) {
        return binary(Kind::Binom, a, b);
    }

    Rational eval(long i, long j) const {
        const Node& n = *node_;
        switch (n.kind) {
            case Kind::Constant: return n.value;
            case Kind::VarI: return Rational(i);
            case Kind::VarJ: return Rational(j);
            case Kind::Add: return n.kids[0].eval(i, j) + n.kids[1].eval(i, j);
            case Kind::Mul: return n.kids[0].eval(i, j) * n.kids[1].eval(i, j);
            case Kind::Div: {
                const Rational d = n.kids[1].eval(i, j);
                if (d == 0) throw DomainError("division by zero in bivariate rule");
                return n.kids[0].eval(i, j) / d;
            }
            case Kind::Neg: return -n.kids[0].eval(i, j);
            case Kind::Pow: {
                const Rational b = n.kids[0].eval(i, j);
                if (b == 0 && n.exponent < 0)
                    throw DomainError("zero base with negative exponent in bivariate rule");
                return rat_pow(b, n.exponent);
            }
            case Kind::Fact: return Rational(int_factorial(integral(n.kids[0], i, j)));
            case Kind::Binom: {
                const long top = integral(n.kids[0], i, j);
                const long bottom = integral(n.kids[1], i, j);
                if (top < 0) throw DomainError("negative binomial upper argument");
                return Rational(int_binomial(top, bottom));
            }
        }
        throw DomainError("unknown bivariate node");
    }

private:
    struct Node {
        Kind kind;
        Rational value = Rational(0);
        long exponent = 0;
        std::vector<BivariateExpr> kids;
    };

    explicit BivariateExpr(Kind k) : node_(std::make_shared<Node>()) { node_->kind = k; }

    static BivariateExpr binary(Kind k, BivariateExpr a, BivariateExpr b) {
        BivariateExpr e(k);
        e.node_->kids = {a, b};
        return e;
    }

    static long integral(const BivariateExpr& e, long i, long j) {
        const Rational v = e.eval(i, j);
        if (!is_integer(v)) throw DomainError("argument is not an integer");
        return static_cast<long>(num(v));
    }

    std::shared_ptr<Node> node_;
};

namespace detail {

class BivariateParser {
public:
    explicit BivariateParser(std::string text) : text_(std::move(text)) {}

    BivariateExpr parse() {
        BivariateExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return e;
    }

private:
    BivariateExpr parse_expr() {
        BivariateExpr e = parse_mul();
        while (true) {
            skip_ws();
            if (consume('+')) e = BivariateExpr::add(e, parse_mul());
            else if (consume('-')) e = BivariateExpr::add(e, BivariateExpr::neg(parse_mul()));
            else return e;
        }
    }

    BivariateExpr parse_mul() {
        BivariateExpr e = parse_unary();
        while (true) {
            skip_ws();
            if (consume('*')) e = BivariateExpr::mul(e, parse_unary());
            else if (consume('/')) e = BivariateExpr::div(e, parse_unary());
            else return e;
        }
    }

    BivariateExpr parse_unary() {
        skip_ws();
        if (consume('-')) return BivariateExpr::neg(parse_unary());
        BivariateExpr e = parse_atom();
        skip_ws();
        if (consume('^')) {
            skip_ws();
            long sign = consume('-') ? -1 : 1;
            return BivariateExpr::pow(e, sign * parse_integer());
        }
        return e;
    }

    BivariateExpr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("term");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return BivariateExpr::constant(Rational(parse_integer()));
        if (consume('(')) {
            BivariateExpr e = parse_expr();
            expect(')');
            return e;
        }
        std::string word;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            word += text_[pos_++];
        if (word == "i") return BivariateExpr::var_i();
        if (word == "j") return BivariateExpr::var_j();
        if (word == "fact") {
            expect('(');
            BivariateExpr a = parse_expr();
            expect(')');
            return BivariateExpr::fact(a);
        }
        if (word == "binom") {
            expect('(');
            BivariateExpr a = parse_expr();
            expect(',');
            BivariateExpr b = parse_expr();
            expect(')');
            return BivariateExpr::binom(a, b);
        }
        fail("integer, 'i', 'j', '(', 'fact' or 'binom'");
    }

    long parse_integer() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("integer");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_++] - '0');
            if (v > (1L << 40)) fail("smaller integer");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c)) fail(std::string("'") + c + "'");
    }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(pos_, {expected},
                         "parse error at offset " + std::to_string(pos_) + ": expected " +
                             expected);
    }

    std::string text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline BivariateExpr parse_bivariate(const std::string& text) {
    return detail::BivariateParser(text).parse();
}

} // namespace gksum
