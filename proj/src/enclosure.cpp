#include "pluri/enclosure.hpp"

#include "pluri/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

namespace pluri {
namespace {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    Mpfr(Mpfr&& o) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct Interval {
    Mpfr lo;
    Mpfr hi;
    explicit Interval(mpfr_prec_t bits) : lo(bits), hi(bits) {}
};

// Thrown internally when a denominator interval contains zero.
struct Unbounded {
    RealExpr denominator;
};

class Evaluator {
public:
    explicit Evaluator(mpfr_prec_t bits) : bits_(bits) {}

    Interval eval(const RealExpr& e)
    {
        using K = RealExpr::Kind;
        Interval r(bits_);
        switch (e.kind()) {
        case K::rational:
            mpfr_set_q(r.lo.get(), e.rational().get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(r.hi.get(), e.rational().get_mpq_t(), MPFR_RNDU);
            return r;
        case K::power:
            return power(e.base(), e.exponent());
        case K::add: {
            auto a = eval(e.lhs());
            auto b = eval(e.rhs());
            mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
            mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
            return r;
        }
        case K::sub: {
            auto a = eval(e.lhs());
            auto b = eval(e.rhs());
            mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
            mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
            return r;
        }
        case K::mul: {
            auto a = eval(e.lhs());
            auto b = eval(e.rhs());
            corners(r, a, b, mpfr_mul);
            return r;
        }
        case K::div: {
            auto a = eval(e.lhs());
            auto b = eval(e.rhs());
            if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) {
                throw Unbounded{e.rhs()};
            }
            corners(r, a, b, mpfr_div);
            return r;
        }
        case K::floor: {
            auto a = eval(e.child());
            mpfr_rint_floor(r.lo.get(), a.lo.get(), MPFR_RNDD);
            mpfr_rint_floor(r.hi.get(), a.hi.get(), MPFR_RNDU);
            return r;
        }
        case K::frac: {
            std::optional<Interval> a;
            try {
                a.emplace(eval(e.child()));
            } catch (const Unbounded&) {
                unit_interval(r);
                return r;
            }
            Mpfr flo(bits_);
            Mpfr fhi(bits_);
            const int inexact_lo = mpfr_rint_floor(flo.get(), a->lo.get(), MPFR_RNDD);
            const int inexact_hi = mpfr_rint_floor(fhi.get(), a->hi.get(), MPFR_RNDD);
            // |ternary| == 2 flags an integer part not representable at this precision.
            if (std::abs(inexact_lo) == 2 || std::abs(inexact_hi) == 2 || mpfr_number_p(flo.get()) == 0
                || mpfr_equal_p(flo.get(), fhi.get()) == 0) {
                unit_interval(r);
                return r;
            }
            mpfr_sub(r.lo.get(), a->lo.get(), flo.get(), MPFR_RNDD);
            mpfr_sub(r.hi.get(), a->hi.get(), flo.get(), MPFR_RNDU);
            if (mpfr_sgn(r.lo.get()) < 0) {
                mpfr_set_ui(r.lo.get(), 0, MPFR_RNDD);
            }
            if (mpfr_cmp_ui(r.hi.get(), 1) > 0) {
                mpfr_set_ui(r.hi.get(), 1, MPFR_RNDU);
            }
            return r;
        }
        }
        return r;
    }

private:
    Interval power(const Rational& base, const Rational& exponent)
    {
        Interval r(bits_);
        const Integer& p = exponent.get_num();
        const unsigned long q = exponent.get_den().get_ui();
        const Rational t = pluri::pow(base, to_long(abs(p)));
        const bool inverse = sgn(p) < 0;
        // For a negative exponent evaluate the reciprocal with swapped rounding.
        const mpfr_rnd_t down = inverse ? MPFR_RNDU : MPFR_RNDD;
        const mpfr_rnd_t up = inverse ? MPFR_RNDD : MPFR_RNDU;
        Mpfr a(bits_);
        Mpfr b(bits_);
        mpfr_set_q(a.get(), t.get_mpq_t(), down);
        mpfr_rootn_ui(a.get(), a.get(), q, down);
        mpfr_set_q(b.get(), t.get_mpq_t(), up);
        mpfr_rootn_ui(b.get(), b.get(), q, up);
        if (inverse) {
            mpfr_ui_div(r.lo.get(), 1, b.get(), MPFR_RNDD);
            mpfr_ui_div(r.hi.get(), 1, a.get(), MPFR_RNDU);
        } else {
            mpfr_swap(r.lo.get(), a.get());
            mpfr_swap(r.hi.get(), b.get());
        }
        return r;
    }

    template <class Op>
    void corners(Interval& r, const Interval& a, const Interval& b, Op op)
    {
        const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> pairs{{
            {a.lo.get(), b.lo.get()},
            {a.lo.get(), b.hi.get()},
            {a.hi.get(), b.lo.get()},
            {a.hi.get(), b.hi.get()},
        }};
        Mpfr t(bits_);
        mpfr_set_inf(r.lo.get(), 1);
        mpfr_set_inf(r.hi.get(), -1);
        for (const auto& [x, y] : pairs) {
            op(t.get(), x, y, MPFR_RNDD);
            mpfr_min(r.lo.get(), r.lo.get(), t.get(), MPFR_RNDD);
            op(t.get(), x, y, MPFR_RNDU);
            mpfr_max(r.hi.get(), r.hi.get(), t.get(), MPFR_RNDU);
        }
    }

    static void unit_interval(Interval& r)
    {
        mpfr_set_ui(r.lo.get(), 0, MPFR_RNDD);
        mpfr_set_ui(r.hi.get(), 1, MPFR_RNDU);
    }

    mpfr_prec_t bits_;
};

Rational to_rational(mpfr_srcptr x)
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

struct Attempt {
    std::optional<Enclosure> enclosure;
    std::optional<RealExpr> zero_candidate;
};

Attempt attempt(const RealExpr& e, unsigned bits)
{
    try {
        Evaluator ev(static_cast<mpfr_prec_t>(bits));
        auto iv = ev.eval(e);
        if (mpfr_number_p(iv.lo.get()) == 0 || mpfr_number_p(iv.hi.get()) == 0) {
            return {};
        }
        return {Enclosure{to_rational(iv.lo.get()), to_rational(iv.hi.get())}, std::nullopt};
    } catch (const Unbounded& u) {
        return {std::nullopt, u.denominator};
    }
}

// Refinement loop shared by every certified query. `decide` returns true once
// the enclosure settles the question; `exact` is consulted once, the first
// time the enclosure fails to, and may settle it from the canonical form.
template <class Decide, class Exact>
void refine(const RealExpr& e, const Precision& prec, const char* what, Decide decide, Exact exact)
{
    bool canonical_checked = false;
    std::optional<RealExpr> checked_denominator;
    for (unsigned bits = std::max(prec.start_bits, 2U);; bits = std::min(bits * 2, prec.cap_bits)) {
        auto a = attempt(e, bits);
        if (a.enclosure && decide(*a.enclosure)) {
            return;
        }
        if (a.zero_candidate
            && (!checked_denominator || !identical(*checked_denominator, *a.zero_candidate))) {
            checked_denominator = a.zero_candidate;
            const RealExpr c = canonicalize(*a.zero_candidate);
            if (c.is_rational() && c.rational() == 0) {
                throw DivisionByZero("denominator " + a.zero_candidate->to_string() + " is zero");
            }
        }
        if (a.enclosure && !canonical_checked) {
            canonical_checked = true;
            const RealExpr c = canonicalize(e);
            if (c.is_rational() && exact(c.rational())) {
                return;
            }
        }
        if (bits >= prec.cap_bits) {
            throw PrecisionExhausted(std::string(what) + " of " + e.to_string(), prec.cap_bits);
        }
    }
}

// e = coefficient * (product of radical factors), collected through * and
// division by rationals.
bool split_monomial(const RealExpr& e, Rational& coeff, std::vector<RealExpr>& factors)
{
    using K = RealExpr::Kind;
    switch (e.kind()) {
    case K::rational:
        coeff *= e.rational();
        return true;
    case K::power:
        factors.push_back(e);
        return true;
    case K::mul:
        return split_monomial(e.lhs(), coeff, factors) && split_monomial(e.rhs(), coeff, factors);
    case K::div:
        if (!e.rhs().is_rational()) {
            return false;
        }
        coeff /= e.rhs().rational();
        return split_monomial(e.lhs(), coeff, factors);
    default:
        return false;
    }
}

// Both sides rational multiples of the same positive radical product.
std::optional<Order> compare_monomials(const RealExpr& a, const RealExpr& b)
{
    Rational ca(1);
    Rational cb(1);
    std::vector<RealExpr> fa;
    std::vector<RealExpr> fb;
    if (!split_monomial(a, ca, fa) || !split_monomial(b, cb, fb) || fa.size() != fb.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (!identical(fa[i], fb[i])) {
            return std::nullopt;
        }
    }
    const int c = cmp(ca, cb);
    return c < 0 ? Order::LT : (c > 0 ? Order::GT : Order::EQ);
}

} // namespace

std::optional<Enclosure> enclose_at(const RealExpr& e, unsigned bits)
{
    if (e.is_rational()) {
        return Enclosure{e.rational(), e.rational()};
    }
    return attempt(e, bits).enclosure;
}

Enclosure enclose(const RealExpr& e, const Rational& width_target, const Precision& prec)
{
    if (sgn(width_target) <= 0) {
        throw DomainError("enclosure width target must be positive");
    }
    if (e.is_rational()) {
        return {e.rational(), e.rational()};
    }
    Enclosure out;
    refine(
        e, prec, "enclosure",
        [&](const Enclosure& en) {
            out = en;
            return en.width() <= width_target;
        },
        [&](const Rational& q) {
            out = {q, q};
            return true;
        });
    return out;
}

int sign(const RealExpr& e, const Precision& prec)
{
    if (e.is_rational()) {
        return sgn(e.rational());
    }
    int s = 0;
    refine(
        e, prec, "sign",
        [&](const Enclosure& en) {
            if (sgn(en.lo) > 0) {
                s = 1;
                return true;
            }
            if (sgn(en.hi) < 0) {
                s = -1;
                return true;
            }
            return false;
        },
        [&](const Rational& q) {
            s = sgn(q);
            return true;
        });
    return s;
}

Order compare(const RealExpr& a, const RealExpr& b, const Precision& prec)
{
    if (a.is_rational() && b.is_rational()) {
        const int c = cmp(a.rational(), b.rational());
        return c < 0 ? Order::LT : (c > 0 ? Order::GT : Order::EQ);
    }
    if (const auto o = compare_monomials(a, b)) {
        return *o;
    }
    const int s = sign(a - b, prec);
    return s < 0 ? Order::LT : (s > 0 ? Order::GT : Order::EQ);
}

Integer floor_of(const RealExpr& e, const Precision& prec)
{
    if (e.is_rational()) {
        return floor_of(e.rational());
    }
    Integer k;
    refine(
        e, prec, "floor",
        [&](const Enclosure& en) {
            k = floor_of(en.lo);
            return k == floor_of(en.hi);
        },
        [&](const Rational& q) {
            k = floor_of(q);
            return true;
        });
    return k;
}

Integer ceil_of(const RealExpr& e, const Precision& prec)
{
    return -floor_of(-e, prec);
}

RealExpr frac_of(const RealExpr& e, const Precision& prec)
{
    return e - RealExpr(Rational(floor_of(e, prec)));
}

const char* to_string(Order o)
{
    switch (o) {
    case Order::LT:
        return "LT";
    case Order::EQ:
        return "EQ";
    case Order::GT:
        return "GT";
    }
    return "?";
}

} // namespace pluri
