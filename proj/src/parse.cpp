#include "pluri/parse.hpp"

#include "pluri/errors.hpp"

#include <cctype>
#include <string>

namespace pluri {
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    RealExpr parse()
    {
        RealExpr e = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw DomainError("parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    RealExpr expr()
    {
        RealExpr e = term();
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    RealExpr term()
    {
        RealExpr e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                e = e / unary();
            } else {
                return e;
            }
        }
    }

    RealExpr unary()
    {
        if (accept('-')) {
            return -unary();
        }
        return primary();
    }

    Rational radicand(const RealExpr& e)
    {
        if (!e.is_rational()) {
            fail("radicand must be rational, got " + e.to_string());
        }
        if (sgn(e.rational()) < 0) {
            fail("negative radicand " + e.to_string());
        }
        return e.rational();
    }

    RealExpr radical(unsigned long k, const RealExpr& x)
    {
        const Rational q = radicand(x);
        return q == 0 ? RealExpr(0) : root(k, q);
    }

    RealExpr primary()
    {
        skip();
        if (accept('(')) {
            RealExpr e = expr();
            expect(')');
            return e;
        }
        if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '.')) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '.')) {
                ++pos_;
            }
            return RealExpr(parse_rational(s_.substr(start, pos_ - start)));
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
        const std::string name(s_.substr(start, pos_ - start));
        if (name.empty()) {
            fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
        }
        expect('(');
        RealExpr out;
        if (name == "sqrt") {
            out = radical(2, expr());
        } else if (name == "root") {
            const RealExpr k = expr();
            if (!k.is_rational() || k.rational().get_den() != 1 || k.rational() < 1) {
                fail("root degree must be a positive integer");
            }
            expect(',');
            out = radical(k.rational().get_num().get_ui(), expr());
        } else if (name == "floor") {
            out = floor(expr());
        } else if (name == "frac") {
            out = frac(expr());
        } else {
            pos_ = start;
            fail("unknown function '" + name + "'");
        }
        expect(')');
        return out;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

RealExpr parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

} // namespace pluri
