#include "pluri/real_expr.hpp"

#include "pluri/errors.hpp"

#include <numeric>
#include <utility>

namespace pluri {

struct RealExpr::Node {
    Kind kind;
    Rational value;    // leaf value, or the base of a power
    Rational exponent; // power only
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
};

namespace {

std::shared_ptr<const RealExpr::Node> leaf(const Rational& q)
{
    return std::make_shared<const RealExpr::Node>(
        RealExpr::Node{RealExpr::Kind::rational, q, Rational(0), nullptr, nullptr});
}

const std::shared_ptr<const RealExpr::Node>& zero_leaf()
{
    static const auto z = leaf(Rational(0));
    return z;
}

// Largest k such that both numerator and denominator are perfect k-th powers.
unsigned long common_power_degree(const Rational& q)
{
    const auto degree = [](const Integer& z) -> unsigned long { return z == 1 ? 0 : perfect_power_degree(z); };
    return std::gcd(degree(q.get_num()), degree(q.get_den()));
}

} // namespace

RealExpr::RealExpr() : node_(zero_leaf()) {}
RealExpr::RealExpr(long value) : node_(leaf(Rational(value))) {}
RealExpr::RealExpr(int value) : node_(leaf(Rational(value))) {}
RealExpr::RealExpr(const Rational& value) : node_(leaf(value)) {}
RealExpr::RealExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RealExpr RealExpr::power(const Rational& base, const Rational& exponent)
{
    if (sgn(base) <= 0) {
        throw DomainError("power base must be a positive rational, got " + pluri::to_string(base));
    }
    if (exponent == 0 || base == 1) {
        return RealExpr(Rational(1));
    }
    Rational b = base;
    Rational e = exponent;
    if (const auto k = common_power_degree(b); k > 1) {
        b = make_rational(*exact_root(b.get_num(), k), *exact_root(b.get_den(), k));
        e *= Rational(static_cast<long>(k));
        e.canonicalize();
    }
    if (e.get_den() == 1) {
        return RealExpr(pluri::pow(b, to_long(e.get_num())));
    }
    return RealExpr(std::make_shared<const Node>(Node{Kind::power, b, e, nullptr, nullptr}));
}

RealExpr RealExpr::floor(const RealExpr& e)
{
    if (e.is_rational()) {
        return RealExpr(Rational(floor_of(e.rational())));
    }
    return RealExpr(std::make_shared<const Node>(Node{Kind::floor, Rational(0), Rational(0), e.node_, nullptr}));
}

RealExpr RealExpr::frac(const RealExpr& e)
{
    if (e.is_rational()) {
        return RealExpr(e.rational() - Rational(floor_of(e.rational())));
    }
    return RealExpr(std::make_shared<const Node>(Node{Kind::frac, Rational(0), Rational(0), e.node_, nullptr}));
}

RealExpr::Kind RealExpr::kind() const noexcept { return node_->kind; }

const Rational& RealExpr::rational() const
{
    if (kind() != Kind::rational) {
        throw std::logic_error("RealExpr::rational on a non-rational node");
    }
    return node_->value;
}

const Rational& RealExpr::base() const
{
    if (kind() != Kind::power) {
        throw std::logic_error("RealExpr::base on a non-power node");
    }
    return node_->value;
}

const Rational& RealExpr::exponent() const
{
    if (kind() != Kind::power) {
        throw std::logic_error("RealExpr::exponent on a non-power node");
    }
    return node_->exponent;
}

RealExpr RealExpr::lhs() const
{
    if (!node_->left || kind() == Kind::floor || kind() == Kind::frac) {
        throw std::logic_error("RealExpr::lhs on a node without operands");
    }
    return RealExpr(node_->left);
}

RealExpr RealExpr::rhs() const
{
    if (!node_->right) {
        throw std::logic_error("RealExpr::rhs on a node without operands");
    }
    return RealExpr(node_->right);
}

RealExpr RealExpr::child() const
{
    if (kind() != Kind::floor && kind() != Kind::frac) {
        throw std::logic_error("RealExpr::child on a node that is not floor/frac");
    }
    return RealExpr(node_->left);
}

RealExpr RealExpr::binary(Kind kind, const RealExpr& a, const RealExpr& b)
{
    if (a.is_rational() && b.is_rational()) {
        const Rational& x = a.rational();
        const Rational& y = b.rational();
        switch (kind) {
        case Kind::add:
            return RealExpr(Rational(x + y));
        case Kind::sub:
            return RealExpr(Rational(x - y));
        case Kind::mul:
            return RealExpr(Rational(x * y));
        case Kind::div:
            if (y == 0) {
                throw DivisionByZero("division by the rational zero");
            }
            return RealExpr(Rational(x / y));
        default:
            break;
        }
    }
    const auto is = [](const RealExpr& e, long v) { return e.is_rational() && e.rational() == v; };
    switch (kind) {
    case Kind::add:
        if (is(a, 0)) {
            return b;
        }
        if (is(b, 0)) {
            return a;
        }
        break;
    case Kind::sub:
        if (is(b, 0)) {
            return a;
        }
        break;
    case Kind::mul:
        if (is(a, 1)) {
            return b;
        }
        if (is(b, 1)) {
            return a;
        }
        break;
    case Kind::div:
        if (is(b, 0)) {
            throw DivisionByZero("division by the rational zero");
        }
        if (is(b, 1)) {
            return a;
        }
        break;
    default:
        break;
    }
    return RealExpr(std::make_shared<const Node>(Node{kind, Rational(0), Rational(0), a.node_, b.node_}));
}

RealExpr operator+(const RealExpr& a, const RealExpr& b) { return RealExpr::binary(RealExpr::Kind::add, a, b); }
RealExpr operator-(const RealExpr& a, const RealExpr& b) { return RealExpr::binary(RealExpr::Kind::sub, a, b); }
RealExpr operator*(const RealExpr& a, const RealExpr& b) { return RealExpr::binary(RealExpr::Kind::mul, a, b); }
RealExpr operator/(const RealExpr& a, const RealExpr& b) { return RealExpr::binary(RealExpr::Kind::div, a, b); }
RealExpr operator-(const RealExpr& a) { return RealExpr(0) - a; }

bool identical(const RealExpr& a, const RealExpr& b)
{
    using Node = RealExpr::Node;
    const auto same = [](const auto& self, const Node* x, const Node* y) -> bool {
        if (x == y) {
            return true;
        }
        if (x == nullptr || y == nullptr || x->kind != y->kind) {
            return false;
        }
        switch (x->kind) {
        case RealExpr::Kind::rational:
            return x->value == y->value;
        case RealExpr::Kind::power:
            return x->value == y->value && x->exponent == y->exponent;
        default:
            return self(self, x->left.get(), y->left.get()) && self(self, x->right.get(), y->right.get());
        }
    };
    return same(same, a.node_.get(), b.node_.get());
}

namespace {

// Binding strength used for parenthesisation: 1 additive, 2 multiplicative,
// 3 atomic.
int strength(const RealExpr& e)
{
    switch (e.kind()) {
    case RealExpr::Kind::rational:
        if (sgn(e.rational()) < 0) {
            return 1;
        }
        return e.rational().get_den() == 1 ? 3 : 2;
    case RealExpr::Kind::power:
        return sgn(e.exponent()) < 0 ? 2 : 3;
    case RealExpr::Kind::add:
    case RealExpr::Kind::sub:
        return 1;
    case RealExpr::Kind::mul:
    case RealExpr::Kind::div:
        return 2;
    case RealExpr::Kind::floor:
    case RealExpr::Kind::frac:
        return 3;
    }
    return 3;
}

std::string wrap(const RealExpr& e, bool parens)
{
    return parens ? "(" + e.to_string() + ")" : e.to_string();
}

std::string render_power(const Rational& base, const Rational& exponent)
{
    const Integer q = exponent.get_den();
    Integer p = exponent.get_num();
    const bool inverse = p < 0;
    if (inverse) {
        p = -p;
    }
    const Rational radicand = pluri::pow(base, to_long(p));
    std::string s = q == 2 ? "sqrt(" + to_string(radicand) + ")"
                           : "root(" + q.get_str() + ", " + to_string(radicand) + ")";
    return inverse ? "1/" + s : s;
}

} // namespace

std::string RealExpr::to_string() const
{
    switch (kind()) {
    case Kind::rational:
        return pluri::to_string(node_->value);
    case Kind::power:
        return render_power(node_->value, node_->exponent);
    case Kind::floor:
        return "floor(" + child().to_string() + ")";
    case Kind::frac:
        return "frac(" + child().to_string() + ")";
    case Kind::add:
    case Kind::sub: {
        const char* op = kind() == Kind::add ? " + " : " - ";
        return wrap(lhs(), strength(lhs()) < 1) + op + wrap(rhs(), strength(rhs()) <= 1);
    }
    case Kind::mul:
    case Kind::div: {
        const char* op = kind() == Kind::mul ? "*" : "/";
        return wrap(lhs(), strength(lhs()) < 2) + op + wrap(rhs(), strength(rhs()) <= 2);
    }
    }
    return {};
}

RealExpr sqrt(const Rational& x) { return RealExpr::power(x, Rational(1, 2)); }

RealExpr root(unsigned long k, const Rational& x)
{
    if (k == 0) {
        throw DomainError("root of degree zero");
    }
    return RealExpr::power(x, make_rational(Integer(1), Integer(k)));
}

} // namespace pluri
