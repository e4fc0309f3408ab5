#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/expr.hpp"

namespace gksum {

// Recursive-descent parser for the term grammar:
//
//   expr   := mul (('+'|'-') mul)*
//   mul    := unary (('*'|'/') unary)*
//   unary  := '-' unary | atom ['^' integer]
//   atom   := integer | 'k' | '(' expr ')' | 'fact(' linear ')'
//           | 'binom(' linear ',' linear ')' | 'pow(' rational ',k)'
//           | 'H(k)' | 'H(k;' integer ')' | 'D(k)' | 'zeta(k;' integer ')'
//
// Whitespace is insignificant; implicit multiplication is not allowed.
class TermParser {
public:
    explicit TermParser(std::string text) : text_(std::move(text)) {}

    Expr parse() {
        skip_ws();
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"end of input", "'+'", "'-'", "'*'", "'/'"});
        return e;
    }

private:
    Expr parse_expr() {
        Expr e = parse_mul();
        while (true) {
            skip_ws();
            if (consume('+')) {
                e = Expr::add(e, parse_mul());
            } else if (consume('-')) {
                e = Expr::sub(e, parse_mul());
            } else {
                return e;
            }
        }
    }

    Expr parse_mul() {
        Expr e = parse_unary();
        while (true) {
            skip_ws();
            if (consume('*')) {
                e = Expr::mul(e, parse_unary());
            } else if (consume('/')) {
                e = Expr::div(e, parse_unary());
            } else {
                return e;
            }
        }
    }

    Expr parse_unary() {
        skip_ws();
        if (consume('-')) return Expr::neg(parse_unary());
        Expr e = parse_atom();
        skip_ws();
        if (consume('^')) {
            const long exp = parse_signed_integer("exponent");
            if (exp > kMaxExponent || exp < -kMaxExponent)
                fail({"exponent in [-1000, 1000]"});
            return Expr::pow(e, exp);
        }
        return e;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail({"term"});
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Expr::constant(Rational(parse_unsigned_big()));
        if (consume('(')) {
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        fail({"integer", "'k'", "'('", "function"});
    }

    Expr parse_word() {
        const std::size_t start = pos_;
        std::string word;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            word += text_[pos_++];
        if (word == "k") return Expr::variable();
        if (word == "fact") {
            expect('(');
            const std::size_t arg_at = pos_;
            LinearForm lf = parse_linear();
            if (lf.a < 0) fail_at(arg_at, {"factorial argument with nonnegative slope"});
            expect(')');
            return Expr::factorial(lf);
        }
        if (word == "binom") {
            expect('(');
            LinearForm top = parse_linear();
            expect(',');
            LinearForm bottom = parse_linear();
            expect(')');
            return Expr::binomial(top, bottom);
        }
        if (word == "pow") {
            expect('(');
            const std::size_t base_at = pos_;
            Rational base = parse_rational_literal();
            if (base == 0) fail_at(base_at, {"nonzero geometric base"});
            expect(',');
            expect_variable();
            expect(')');
            return Expr::geometric(base);
        }
        if (word == "H") {
            expect('(');
            expect_variable();
            skip_ws();
            if (consume(';')) {
                const std::size_t m_at = pos_;
                const long m = parse_signed_integer("order");
                if (m < 1) fail_at(m_at, {"order >= 1"});
                expect(')');
                return Expr::gen_harmonic(m);
            }
            expect(')');
            return Expr::harmonic();
        }
        if (word == "D") {
            expect('(');
            expect_variable();
            expect(')');
            return Expr::derangement();
        }
        if (word == "zeta") {
            expect('(');
            expect_variable();
            expect(';');
            const std::size_t s_at = pos_;
            const long s = parse_signed_integer("exponent");
            if (s < 1) fail_at(s_at, {"exponent >= 1"});
            expect(')');
            return Expr::zeta_partial(s);
        }
        fail_at(start, {"'k'", "'fact'", "'binom'", "'pow'", "'H'", "'D'", "'zeta'"});
    }

    // linear := first-term (('+'|'-') term)*   with  term := int ['*' 'k'] | 'k'
    LinearForm parse_linear() {
        LinearForm lf{0, 0};
        bool first = true;
        while (true) {
            skip_ws();
            long sign = 1;
            if (consume('+')) {
                sign = 1;
            } else if (consume('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == 'k' && !is_word_continuation(pos_ + 1)) {
                ++pos_;
                lf.a += sign;
            } else if (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                const long v = checked_long(parse_unsigned_big(), "linear coefficient");
                skip_ws();
                if (consume('*')) {
                    expect_variable();
                    lf.a += sign * v;
                } else {
                    lf.b += sign * v;
                }
            } else {
                fail({"integer", "'k'"});
            }
            first = false;
        }
        return lf;
    }

    Rational parse_rational_literal() {
        skip_ws();
        long sign = 1;
        if (consume('-')) sign = -1;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail({"integer"});
        Integer n = parse_unsigned_big();
        skip_ws();
        if (consume('/')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail({"integer"});
            const std::size_t den_at = pos_;
            Integer d = parse_unsigned_big();
            if (d == 0) fail_at(den_at, {"nonzero denominator"});
            return Rational(sign * n, d);
        }
        return Rational(sign * n);
    }

    long parse_signed_integer(const char* what) {
        skip_ws();
        long sign = 1;
        if (consume('-')) sign = -1;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail({std::string(what)});
        return sign * checked_long(parse_unsigned_big(), what);
    }

    Integer parse_unsigned_big() {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        return Integer(digits);
    }

    long checked_long(const Integer& v, const char* what) {
        if (v > Integer(1) << 40)
            fail({std::string(what) + " small enough to fit the engine"});
        return static_cast<long>(v);
    }

    bool is_word_continuation(std::size_t at) const {
        return at < text_.size() && std::isalnum(static_cast<unsigned char>(text_[at]));
    }

    void expect_variable() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'k' && !is_word_continuation(pos_ + 1)) {
            ++pos_;
            return;
        }
        fail({"'k'"});
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
        if (!consume(c)) fail({std::string("'") + c + "'"});
    }

    [[noreturn]] void fail(std::vector<std::string> expected) { fail_at(pos_, std::move(expected)); }

    [[noreturn]] void fail_at(std::size_t at, std::vector<std::string> expected) {
        std::string msg = "parse error at offset " + std::to_string(at) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        throw ParseError(at, std::move(expected), msg);
    }

    static constexpr long kMaxExponent = 1000;

    std::string text_;
    std::size_t pos_ = 0;
};

inline Expr parse_term(const std::string& text) { return TermParser(text).parse(); }

} // namespace gksum
