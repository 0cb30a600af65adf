// Canonical normal form for RealExpr.
//
// A normal form is a sum of terms  c * prod p^e * prod atom^k  where c is a
// non-zero rational, p runs over pairwise distinct radical bases (primes, or a
// large cofactor that trial division could not split) with exponents in
// (0, 1), and atoms are floor/frac of a canonical child that could not be
// resolved numerically, or the reciprocal of a multi-term normal form.

#include "pluri/enclosure.hpp"
#include "pluri/errors.hpp"
#include "pluri/real_expr.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <iterator>
#include <utility>
#include <vector>

namespace pluri {
namespace {

struct Poly;

struct Atom {
    enum class Kind { floor, frac, inv } kind;
    RealExpr expr;                    // floor/frac: the full atom; inv: the denominator P
    std::shared_ptr<const Poly> poly; // inv only
};

struct Term {
    Rational coeff{1};
    std::map<Integer, Rational> radicals;
    std::map<std::string, std::pair<Atom, long>> atoms;

    std::string key() const
    {
        std::string k;
        for (const auto& [base, e] : radicals) {
            k += base.get_str() + "^" + to_string(e) + ";";
        }
        k += "|";
        for (const auto& [name, atom] : atoms) {
            k += name + "^" + std::to_string(atom.second) + ";";
        }
        return k;
    }
};

struct Poly {
    std::map<std::string, Term> terms;

    bool is_rational() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first == "|"); }
    Rational rational() const { return terms.empty() ? Rational(0) : terms.begin()->second.coeff; }
};

Poly constant(const Rational& q)
{
    Poly p;
    if (q != 0) {
        p.terms.emplace("|", Term{q, {}, {}});
    }
    return p;
}

void accumulate(Poly& p, Term t)
{
    if (t.coeff == 0) {
        return;
    }
    auto key = t.key();
    auto it = p.terms.find(key);
    if (it == p.terms.end()) {
        p.terms.emplace(std::move(key), std::move(t));
        return;
    }
    it->second.coeff += t.coeff;
    if (it->second.coeff == 0) {
        p.terms.erase(it);
    }
}

// Multiplies t by base^e and folds the integer part of the new exponent into
// the coefficient.
void multiply_radical(Term& t, const Integer& base, const Rational& e)
{
    Rational total = e;
    if (auto it = t.radicals.find(base); it != t.radicals.end()) {
        total += it->second;
        t.radicals.erase(it);
    }
    const Integer whole = floor_of(total);
    if (whole != 0) {
        t.coeff *= pow(Rational(base), to_long(whole));
        total -= Rational(whole);
    }
    if (total != 0) {
        t.radicals.emplace(base, total);
    }
}

Term multiply(const Term& a, const Term& b)
{
    Term t = a;
    t.coeff *= b.coeff;
    for (const auto& [base, e] : b.radicals) {
        multiply_radical(t, base, e);
    }
    for (const auto& [name, atom] : b.atoms) {
        auto it = t.atoms.find(name);
        if (it == t.atoms.end()) {
            t.atoms.emplace(name, atom);
        } else if ((it->second.second += atom.second) == 0) {
            t.atoms.erase(it);
        }
    }
    return t;
}

Poly add(const Poly& a, const Poly& b)
{
    Poly r = a;
    for (const auto& [key, t] : b.terms) {
        accumulate(r, t);
    }
    return r;
}

Poly scale(const Poly& a, const Rational& c)
{
    if (c == 0) {
        return {};
    }
    Poly r = a;
    for (auto& [key, t] : r.terms) {
        t.coeff *= c;
    }
    return r;
}

Poly multiply(const Poly& a, const Poly& b)
{
    Poly r;
    for (const auto& [ka, ta] : a.terms) {
        for (const auto& [kb, tb] : b.terms) {
            accumulate(r, multiply(ta, tb));
        }
    }
    return r;
}

Poly power(const Poly& p, long k)
{
    Poly r = constant(Rational(1));
    for (long i = 0; i < k; ++i) {
        r = multiply(r, p);
    }
    return r;
}

// Prime factorisation by trial division below 2^16; a remaining cofactor is
// kept whole, reduced to its primitive root.
std::vector<std::pair<Integer, unsigned long>> factor(Integer n)
{
    std::vector<std::pair<Integer, unsigned long>> out;
    for (unsigned long d = 2; d < 65536 && Integer(d) * d <= n; d += (d == 2 ? 1 : 2)) {
        unsigned long k = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            ++k;
        }
        if (k > 0) {
            out.emplace_back(Integer(d), k);
        }
    }
    if (n > 1) {
        const unsigned long k = perfect_power_degree(n);
        out.emplace_back(k > 1 ? *exact_root(n, k) : n, k);
    }
    return out;
}

Poly from_power(const Rational& base, const Rational& exponent)
{
    Term t;
    for (const auto& [p, k] : factor(base.get_num())) {
        multiply_radical(t, p, exponent * Rational(static_cast<long>(k)));
    }
    for (const auto& [p, k] : factor(base.get_den())) {
        multiply_radical(t, p, -exponent * Rational(static_cast<long>(k)));
    }
    Poly r;
    accumulate(r, std::move(t));
    return r;
}

RealExpr materialize(const Poly& p);

Poly inverse(const Term& t)
{
    Term inv;
    inv.coeff = 1 / t.coeff;
    for (const auto& [base, e] : t.radicals) {
        multiply_radical(inv, base, -e);
    }
    std::vector<std::pair<const Poly*, long>> expand;
    for (const auto& [name, atom] : t.atoms) {
        if (atom.first.kind == Atom::Kind::inv) {
            expand.emplace_back(atom.first.poly.get(), atom.second);
        } else {
            inv.atoms.emplace(name, std::make_pair(atom.first, -atom.second));
        }
    }
    Poly r;
    accumulate(r, std::move(inv));
    for (const auto& [poly, k] : expand) {
        r = multiply(r, power(*poly, k));
    }
    return r;
}

// a / d when a is a rational multiple of d.
std::optional<Rational> proportional(const Poly& a, const Poly& d)
{
    if (a.terms.size() != d.terms.size()) {
        return std::nullopt;
    }
    std::optional<Rational> ratio;
    for (auto ia = a.terms.begin(), id = d.terms.begin(); ia != a.terms.end(); ++ia, ++id) {
        if (ia->first != id->first) {
            return std::nullopt;
        }
        const Rational r = ia->second.coeff / id->second.coeff;
        if (ratio && *ratio != r) {
            return std::nullopt;
        }
        ratio = r;
    }
    return ratio;
}

// 1/(t1 + t2) for atom-free terms. With rho = t2/t1 and rho^N rational,
// (1 + rho) * sum_{k<N} (-rho)^k = 1 - (-rho)^N.
std::optional<Poly> rationalize_binomial(const Term& t1, const Term& t2)
{
    if (!t1.atoms.empty() || !t2.atoms.empty()) {
        return std::nullopt;
    }
    const Poly inv_t1 = inverse(t1);
    const Term rho = multiply(t2, inv_t1.terms.begin()->second);
    Integer n(1);
    for (const auto& [base, e] : rho.radicals) {
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), e.get_den().get_mpz_t());
    }
    if (n > 64) {
        return std::nullopt;
    }
    Term neg_rho = rho;
    neg_rho.coeff = -neg_rho.coeff;
    Poly step;
    accumulate(step, neg_rho);
    Poly sum;
    Poly term_k = constant(Rational(1));
    for (unsigned long k = 0; k < n.get_ui(); ++k) {
        sum = add(sum, term_k);
        term_k = multiply(term_k, step);
    }
    const Poly denom = add(constant(Rational(1)), scale(term_k, Rational(-1)));
    if (!denom.is_rational() || denom.rational() == 0) {
        return std::nullopt;
    }
    return scale(multiply(inv_t1, sum), 1 / denom.rational());
}

Poly divide(const Poly& a, const Poly& d)
{
    if (d.terms.empty()) {
        throw DivisionByZero("denominator is identically zero");
    }
    if (d.terms.size() == 1) {
        return multiply(a, inverse(d.terms.begin()->second));
    }
    if (a.terms.empty()) {
        return {};
    }
    if (auto r = proportional(a, d)) {
        return constant(*r);
    }
    if (d.terms.size() == 2) {
        if (auto inv = rationalize_binomial(d.terms.begin()->second, std::next(d.terms.begin())->second)) {
            return multiply(a, *inv);
        }
    }
    const Rational lead = d.terms.begin()->second.coeff;
    auto normalized = std::make_shared<const Poly>(scale(d, 1 / lead));
    Atom atom{Atom::Kind::inv, materialize(*normalized), normalized};
    Term t;
    t.coeff = 1 / lead;
    auto name = "inv(" + atom.expr.to_string() + ")";
    t.atoms.emplace(std::move(name), std::make_pair(std::move(atom), 1L));
    Poly r;
    accumulate(r, std::move(t));
    return multiply(a, r);
}

Poly atom_poly(Atom::Kind kind, RealExpr expr)
{
    Term t;
    auto name = expr.to_string();
    t.atoms.emplace(std::move(name), std::make_pair(Atom{kind, std::move(expr), nullptr}, 1L));
    Poly r;
    accumulate(r, std::move(t));
    return r;
}

Poly normalize(const RealExpr& e)
{
    using K = RealExpr::Kind;
    switch (e.kind()) {
    case K::rational:
        return constant(e.rational());
    case K::power:
        return from_power(e.base(), e.exponent());
    case K::add:
        return add(normalize(e.lhs()), normalize(e.rhs()));
    case K::sub:
        return add(normalize(e.lhs()), scale(normalize(e.rhs()), Rational(-1)));
    case K::mul:
        return multiply(normalize(e.lhs()), normalize(e.rhs()));
    case K::div:
        return divide(normalize(e.lhs()), normalize(e.rhs()));
    case K::floor:
    case K::frac: {
        const Poly child = normalize(e.child());
        if (child.is_rational()) {
            const Rational q = child.rational();
            const Rational f(floor_of(q));
            return constant(e.kind() == K::floor ? f : q - f);
        }
        const RealExpr c = materialize(child);
        try {
            const Rational f(floor_of(c, Precision{}));
            return e.kind() == K::floor ? constant(f) : add(child, constant(-f));
        } catch (const PrecisionExhausted&) {
            // Unresolved: keep the bracket as an opaque atom.
        }
        return e.kind() == K::floor ? atom_poly(Atom::Kind::floor, RealExpr::floor(c))
                                    : atom_poly(Atom::Kind::frac, RealExpr::frac(c));
    }
    }
    return {};
}

RealExpr materialize(const Term& t, bool keep_sign)
{
    std::map<Integer, Integer> groups;
    for (const auto& [base, e] : t.radicals) {
        auto [it, fresh] = groups.try_emplace(e.get_den(), Integer(1));
        Integer factor;
        mpz_pow_ui(factor.get_mpz_t(), base.get_mpz_t(), e.get_num().get_ui());
        it->second *= factor;
    }
    RealExpr out(keep_sign ? t.coeff : Rational(abs(t.coeff)));
    for (const auto& [q, n] : groups) {
        out *= RealExpr::power(Rational(n), make_rational(Integer(1), q));
    }
    for (const auto& [name, atom] : t.atoms) {
        const auto& [a, k] = atom;
        const bool divide = (a.kind == Atom::Kind::inv) != (k < 0);
        for (long i = 0; i < (k < 0 ? -k : k); ++i) {
            out = divide ? out / a.expr : out * a.expr;
        }
    }
    return out;
}

RealExpr materialize(const Poly& p)
{
    if (p.terms.empty()) {
        return RealExpr(0);
    }
    auto it = p.terms.begin();
    RealExpr out = materialize(it->second, true);
    for (++it; it != p.terms.end(); ++it) {
        const RealExpr term = materialize(it->second, false);
        out = sgn(it->second.coeff) < 0 ? out - term : out + term;
    }
    return out;
}

} // namespace

RealExpr canonicalize(const RealExpr& e)
{
    if (e.is_rational()) {
        return e;
    }
    return materialize(normalize(e));
}

} // namespace pluri
