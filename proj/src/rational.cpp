#include "pluri/rational.hpp"

#include "pluri/errors.hpp"

#include <limits>

namespace pluri {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den)
{
    return make_rational(Integer(num), Integer(den));
}

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational pow(const Rational& q, long e)
{
    const unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
    if (e < 0) {
        if (num == 0) {
            throw DivisionByZero("negative power of zero");
        }
        return make_rational(den, num);
    }
    return make_rational(num, den);
}

std::optional<Integer> exact_root(const Integer& x, unsigned long k)
{
    if (x < 0 || k == 0) {
        return std::nullopt;
    }
    Integer r;
    if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) != 0) {
        return r;
    }
    return std::nullopt;
}

unsigned long perfect_power_degree(const Integer& x)
{
    if (x <= 1) {
        return 1;
    }
    for (auto k = static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2)); k >= 2; --k) {
        if (exact_root(x, k)) {
            return k;
        }
    }
    return 1;
}

long to_long(const Integer& z)
{
    if (!z.fits_slong_p()) {
        throw DomainError("integer " + z.get_str() + " does not fit in a machine word");
    }
    return z.get_si();
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_decimal(const Rational& q, int digits, Rounding mode)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const Rational scaled = q * scale;
    Integer n;
    switch (mode) {
    case Rounding::down:
        n = floor_of(scaled);
        break;
    case Rounding::up:
        n = ceil_of(scaled);
        break;
    case Rounding::nearest:
        n = floor_of(scaled + Rational(1, 2));
        break;
    }
    const bool negative = n < 0;
    if (negative) {
        n = -n;
    }
    std::string s = n.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw DomainError("empty rational literal");
    }
    try {
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            const auto frac_len = s.size() - dot - 1;
            Integer den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            return make_rational(Integer(digits), den);
        }
        Rational q(s);
        if (q.get_den() == 0) {
            throw DivisionByZero("rational literal with zero denominator: " + s);
        }
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal: " + s);
    }
}

} // namespace pluri
