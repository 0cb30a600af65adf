#pragma once

#include "pluri/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace pluri {

// Immutable expression over the rationals closed under + - * /, rational
// powers of positive rationals, floor and fractional part. Copies share
// structure; nodes are never mutated after construction.
//
// Construction folds exact rational subtrees, so an expression without Power
// nodes is always a single rational leaf. Power nodes are normalised so the
// base is not a perfect power; a power with a rational value therefore never
// survives as a Power node.
class RealExpr {
public:
    enum class Kind : std::uint8_t { rational, power, add, sub, mul, div, floor, frac };

    RealExpr();
    RealExpr(long value); // NOLINT(google-explicit-constructor)
    RealExpr(int value);  // NOLINT(google-explicit-constructor)
    RealExpr(const Rational& value); // NOLINT(google-explicit-constructor)

    // base^exponent. Throws DomainError unless base > 0.
    static RealExpr power(const Rational& base, const Rational& exponent);
    static RealExpr floor(const RealExpr& e);
    static RealExpr frac(const RealExpr& e);

    Kind kind() const noexcept;
    bool is_rational() const noexcept { return kind() == Kind::rational; }

    // Valid only for the matching kind.
    const Rational& rational() const;
    const Rational& base() const;
    const Rational& exponent() const;
    RealExpr lhs() const;
    RealExpr rhs() const;
    RealExpr child() const;

    // Renders in the grammar accepted by parse_expression.
    std::string to_string() const;

    // Structural identity (same tree shape and leaves).
    friend bool identical(const RealExpr& a, const RealExpr& b);

    friend RealExpr operator+(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator-(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator*(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator/(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator-(const RealExpr& a);

    RealExpr& operator+=(const RealExpr& o) { return *this = *this + o; }
    RealExpr& operator-=(const RealExpr& o) { return *this = *this - o; }
    RealExpr& operator*=(const RealExpr& o) { return *this = *this * o; }
    RealExpr& operator/=(const RealExpr& o) { return *this = *this / o; }

    struct Node;

private:
    explicit RealExpr(std::shared_ptr<const Node> node);
    static RealExpr binary(Kind kind, const RealExpr& a, const RealExpr& b);

    std::shared_ptr<const Node> node_;
};

RealExpr sqrt(const Rational& x);
RealExpr root(unsigned long k, const Rational& x);
inline RealExpr floor(const RealExpr& e) { return RealExpr::floor(e); }
inline RealExpr frac(const RealExpr& e) { return RealExpr::frac(e); }

// Normal form: a sum of monomials (rational coefficient times prime-power
// radicals times opaque floor/frac/reciprocal atoms). Equal normal forms imply
// equal values; the converse holds for expressions built from +, -, * and
// division by monomials. canonicalize(canonicalize(e)) is identical to
// canonicalize(e).
RealExpr canonicalize(const RealExpr& e);

} // namespace pluri
