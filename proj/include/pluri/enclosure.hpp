#pragma once

#include "pluri/real_expr.hpp"

namespace pluri {

// Certified interval [lo, hi] containing an exact value.
struct Enclosure {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

enum class Order { LT, EQ, GT };

// Working precision doubles from start_bits until cap_bits.
struct Precision {
    unsigned start_bits = 64;
    unsigned cap_bits = 4096;
};

// Interval at a single working precision; nullopt when a denominator
// interval contains zero at that precision.
std::optional<Enclosure> enclose_at(const RealExpr& e, unsigned bits);

// Enclosure of width <= width_target. Throws DivisionByZero if a denominator
// canonicalises to zero, PrecisionExhausted at the cap.
Enclosure enclose(const RealExpr& e, const Rational& width_target, const Precision& prec = {});

// LT/GT certified by enclosure; EQ only when a - b canonicalises to zero.
Order compare(const RealExpr& a, const RealExpr& b, const Precision& prec = {});
int sign(const RealExpr& e, const Precision& prec = {});

Integer floor_of(const RealExpr& e, const Precision& prec = {});
Integer ceil_of(const RealExpr& e, const Precision& prec = {});

// e - floor_of(e), in [0, 1).
RealExpr frac_of(const RealExpr& e, const Precision& prec = {});

const char* to_string(Order o);

} // namespace pluri
