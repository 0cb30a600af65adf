#include "pluri/threefold.hpp"

#include "pluri/errors.hpp"

#include <algorithm>

namespace pluri {
namespace {

RealExpr num(long a, long b = 1) { return RealExpr(make_rational(a, b)); }
RealExpr num(const Integer& a) { return RealExpr(Rational(a)); }

NamedBound strict(std::string id, RealExpr v) { return {std::move(id), Bound{std::move(v), true}}; }
NamedBound weak(std::string id, RealExpr v) { return {std::move(id), Bound{std::move(v), false}}; }

// Adds "lhs > rhs" to c and reports whether it holds; both sides rational.
bool require(ConditionSet& c, std::string id, const Rational& lhs, const Rational& rhs)
{
    c.admissibility.push_back({std::move(id), RealExpr(lhs), RealExpr(rhs)});
    return lhs > rhs;
}

} // namespace

const char* to_string(BirKind k)
{
    switch (k) {
    case BirKind::general:
        return "bir";
    case BirKind::map4:
        return "map4";
    case BirKind::map3:
        return "map3";
    case BirKind::map2:
        return "map2";
    }
    return "?";
}

BirKind parse_bir_kind(const std::string& s)
{
    for (BirKind k : {BirKind::general, BirKind::map4, BirKind::map3, BirKind::map2}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    if (s == "general") {
        return BirKind::general;
    }
    throw DomainError("unknown birationality kind '" + s + "'");
}

long effective_l(const BirQuery& q)
{
    switch (q.kind) {
    case BirKind::general:
        return q.l;
    case BirKind::map4:
        return 4;
    case BirKind::map3:
        return 3;
    case BirKind::map2:
        return 2;
    }
    return q.l;
}

void validate(const NvQuery& q)
{
    if (q.g < 2) {
        throw DomainError("genus bound g must be >= 2, got " + std::to_string(q.g));
    }
    if (q.n < 1) {
        throw DomainError("n must be >= 1, got " + std::to_string(q.n));
    }
}

void validate(const BirQuery& q)
{
    if (q.g < 2) {
        throw DomainError("genus bound g must be >= 2, got " + std::to_string(q.g));
    }
    switch (q.kind) {
    case BirKind::general:
        if (q.l < 5) {
            throw DomainError("general birationality needs l >= 5, got l=" + std::to_string(q.l));
        }
        break;
    case BirKind::map3:
        if (q.g < 3) {
            throw DomainError("the 3rd-map threshold needs g >= 3, got g=" + std::to_string(q.g));
        }
        break;
    case BirKind::map2:
        if (q.g < 4) {
            throw DomainError("the 2nd-map threshold needs g >= 4, got g=" + std::to_string(q.g));
        }
        break;
    case BirKind::map4:
        break;
    }
}

RealExpr cbrt2() { return root(3, Rational(2)); }

// --- non-vanishing ----------------------------------------------------------

ConditionSet nv_conditions(const NvQuery& q, long m)
{
    validate(q);
    const long g = q.g;
    const Rational b = make_rational(2 * g - 3, 2 * g - 1);
    ConditionSet c;
    const Rational m1(m + 1);
    const bool b1 = require(c, "(b1)", m1, Rational(4));
    const bool b2 = require(c, "(b2)", m1, 4 / (b * b));
    if (!b1 || !b2) {
        return c;
    }
    const RealExpr beta = sqrt(m1);
    c.bounds = {
        weak("(a-1)", num(3)),
        strict("(a0)", num(6 * g - 3, 2 * g - 3)),
        strict("(a1)", (3 * beta + 6) / (beta - 2)),
        strict("(a2)", (3 * beta + 6) / (RealExpr(b) * beta - 2)),
        weak("(a2bis)", num(6)),
        strict("(a3)", num(12 * g - 6, 2 * g - 3)),
        weak("(a4)", num(12 * (q.n + 1) * m - 3)),
        weak("(a5)", num(3, q.n)),
    };
    return c;
}

BranchFamily nv_family(const NvQuery& q)
{
    validate(q);
    BranchFamily f;
    f.generator = [q](long m) { return nv_conditions(q, m); };
    f.m_floor = 0;
    f.monotone_id = "(a4)";
    return f;
}

ThresholdReport nv_threshold(const NvQuery& q, const Precision& prec)
{
    return minimize_over_m(nv_family(q), prec);
}

long nv_heuristic_m(const NvQuery& q, const Precision& prec)
{
    validate(q);
    const Rational b = make_rational(2 * q.g - 3, 2 * q.g - 1);
    const Rational r = 1 + b * (b + 1) / (4 * Rational(q.n + 1));
    // beta'^2 = (1 + sqrt(r))^2 / b^2
    const RealExpr s = sqrt(r);
    const RealExpr beta_sq = (RealExpr(Rational(1 + r)) + 2 * s) / RealExpr(Rational(b * b));
    return to_long(floor_of(beta_sq, prec));
}

ConditionSet trican_conditions(long g, long m)
{
    validate(NvQuery{g, 1});
    const Rational bp = make_rational(4 * g - 5, 2 * g - 1);
    ConditionSet c;
    const Rational m1(m + 1);
    const bool b1 = require(c, "(b1)'", m1, Rational(1));
    const bool b2 = require(c, "(b2)'", m1, 4 / (bp * bp));
    if (!b1 || !b2) {
        return c;
    }
    const RealExpr beta = sqrt(m1);
    c.bounds = {
        weak("(a-1)'", num(3, 2)),
        strict("(a0)'", num(3 * (2 * g - 1), 4 * g - 5)),
        strict("(a1)'", 3 * (beta + 2) / (2 * beta - 2)),
        strict("(a2)'", 3 * (beta + 2) / (RealExpr(bp) * beta - 2)),
        weak("(a2bis)'", num(3)),
        strict("(a3)'", num(6 * (2 * g - 1), 4 * g - 5)),
        weak("(a4)'", num(36 * m - 3)),
        weak("(a5)'", num(3, 2)),
    };
    return c;
}

BranchFamily trican_family(long g)
{
    validate(NvQuery{g, 1});
    BranchFamily f;
    f.generator = [g](long m) { return trican_conditions(g, m); };
    f.m_floor = 0;
    f.monotone_id = "(a4)'";
    return f;
}

ThresholdReport trican_threshold(long g, const Precision& prec)
{
    return minimize_over_m(trican_family(g), prec);
}

// --- birationality -----------------------------------------------------------

Integer bir_denominator(long l, long g)
{
    return Integer(g) * (l - 1) - (l + 1);
}

Rational bir_beta_prime_sq(long l, long g)
{
    const Integer d = bir_denominator(l, g);
    if (d <= 0) {
        throw DomainError("g(l-1) - (l+1) must be positive for l=" + std::to_string(l) + ", g=" + std::to_string(g));
    }
    return make_rational(Integer(32) * g * g, d * d);
}

Integer f_coefficient(long l, long g)
{
    const Integer k = floor_of(bir_beta_prime_sq(l, g));
    return 3 * (4 * Integer(l) * k - 1);
}

RealExpr f_value(long l, long g)
{
    return num(f_coefficient(l, g)) * cbrt2();
}

Integer general_coefficient(const BirQuery& q)
{
    validate(q);
    const long l = effective_l(q);
    const Integer k = floor_of(bir_beta_prime_sq(l, q.g));
    switch (q.kind) {
    case BirKind::map3:
        return 6 * (12 * k - 1);
    case BirKind::map2:
        return 6 * (8 * k - 1);
    default:
        return 3 * (4 * Integer(l) * k - 1);
    }
}

ConditionSet bir_conditions(const BirQuery& q, long m, std::optional<Integer> trican)
{
    validate(q);
    if (m < 1) {
        throw DomainError("birationality branches start at m=1");
    }
    const long l = effective_l(q);
    const long g = q.g;
    const Integer d = bir_denominator(l, g);
    ConditionSet c;
    if (!require(c, "(birbeta1)", Rational(m + 1), bir_beta_prime_sq(l, g))) {
        return c;
    }
    const RealExpr c2 = cbrt2();
    const RealExpr s2 = sqrt(Rational(2));
    const RealExpr beta = sqrt(Rational(m + 1));
    const RealExpr dd = num(d);
    c.bounds = {
        strict("(biralpha1)", 3 * c2 * g * (beta + 2 * s2) / (beta * dd - 4 * s2 * g)),
        strict("(biralpha3)", 9 * c2 * g / dd),
        weak("(biralpha4)", 3 * c2 * num(4 * l * m - 1)),
        strict("(biralpha5)", 3 * c2 / num(l - 1)),
    };
    if (q.kind == BirKind::map3) {
        c.bounds.push_back(weak("(biralpha6)", 6 * c2 * num(12 * m - 1)));
        c.bounds.push_back(strict("(biralpha7)", 3 * c2));
    } else {
        c.bounds.push_back(weak("(biralpha6)", 6 * c2 * num(8 * m - 1)));
        c.bounds.push_back(strict("(biralpha7)", 6 * c2));
    }
    if (q.kind == BirKind::general && l % 2 == 1) {
        const Integer t = trican ? *trican : trican_threshold(g).lattice_value;
        c.bounds.push_back(weak("(biralpha8)", num(t)));
    }
    return c;
}

ConditionSet bir_limit_conditions(const BirQuery& q)
{
    validate(q);
    const long l = effective_l(q);
    const long g = q.g;
    const Integer d = bir_denominator(l, g);
    ConditionSet c;
    if (!require(c, "(beta'<1)", Rational(d * d), Rational(Integer(32) * g * g))) {
        return c;
    }
    const RealExpr s2 = sqrt(Rational(2));
    c.bounds = {strict("(biralpha1)", 3 * cbrt2() * g * (1 + 2 * s2) / (num(d) - 4 * s2 * g))};
    return c;
}

BranchFamily bir_family(const BirQuery& q, const Precision& prec, std::optional<Integer> trican)
{
    validate(q);
    bir_beta_prime_sq(effective_l(q), q.g); // domain check
    if (q.kind == BirKind::general && q.l % 2 == 1 && !trican) {
        trican = trican_threshold(q.g, prec).lattice_value;
    }
    BranchFamily f;
    f.generator = [q, trican](long m) { return bir_conditions(q, m, trican); };
    f.m_floor = 1;
    // The faster-growing of the two bounds linear in m.
    f.monotone_id = q.kind == BirKind::map3 || q.kind == BirKind::map2 ? "(biralpha6)" : "(biralpha4)";
    f.extra_branches.emplace_back("beta->1-", bir_limit_conditions(q));
    f.unit = cbrt2();
    return f;
}

ThresholdReport bir_threshold(const BirQuery& q, const Precision& prec)
{
    return minimize_over_m(bir_family(q, prec), prec);
}

AllLReport all_l_threshold(long g, const Precision& prec, long l_max, long tail_from)
{
    validate(BirQuery{g, 5, BirKind::general});
    if (l_max < tail_from || tail_from < 5) {
        throw DomainError("all_l_threshold needs 5 <= tail_from <= l_max");
    }
    const Integer trican = trican_threshold(g, prec).lattice_value;
    AllLReport out;
    std::optional<Integer> best;
    for (long l = 5; l <= l_max; ++l) {
        ThresholdReport r = minimize_over_m(bir_family(BirQuery{g, l, BirKind::general}, prec, trican), prec);
        out.per_l.emplace_back(l, r.lattice_value);
        if (!best || r.lattice_value > *best) {
            best = r.lattice_value;
            out.l_star = l;
            out.report = std::move(r);
        }
    }
    for (std::size_t i = 1; i < out.per_l.size(); ++i) {
        if (out.per_l[i].first > tail_from && out.per_l[i].second > out.per_l[i - 1].second) {
            out.tail_monotone = false;
            throw TailNotMonotone("lattice value increases from l=" + std::to_string(out.per_l[i - 1].first)
                                  + " to l=" + std::to_string(out.per_l[i].first) + " at g=" + std::to_string(g));
        }
    }
    return out;
}

// --- tables --------------------------------------------------------------------

std::vector<TableRow> nv_table(Range g, Range n, const Precision& prec)
{
    std::vector<TableRow> rows;
    for (long gi = g.lo; gi <= g.hi; ++gi) {
        for (long ni = n.lo; ni <= n.hi; ++ni) {
            TableRow row;
            row.table = "T1";
            row.g = gi;
            row.key = ni;
            row.report = nv_threshold(NvQuery{gi, ni}, prec);
            if (row.report.attained_by == "(a4)" && row.report.m_star) {
                row.closed_form = 12 * *row.report.m_star;
            }
            row.row_kind = row.closed_form ? "closed" : "special";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<TableRow> bir_table(Range l, Range g, const Precision& prec)
{
    std::vector<TableRow> rows;
    for (long li = std::max(l.lo, 5L); li <= l.hi; ++li) {
        for (long gi = std::max(g.lo, 2L); gi <= g.hi; ++gi) {
            const BirQuery q{gi, li, BirKind::general};
            TableRow row;
            row.table = "T2";
            row.g = gi;
            row.key = li;
            row.report = bir_threshold(q, prec);
            // A tie with the beta->1- branch is reported as a limit row.
            const ConditionSet limit = bir_limit_conditions(q);
            if (!row.report.m_star
                || (!limit.bounds.empty() && branch_lattice(limit, cbrt2(), prec) == row.report.lattice_value)) {
                row.row_kind = "limit";
            } else {
                row.row_kind = row.report.lattice_value == f_coefficient(li, gi) ? "f" : "special";
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<TableRow> map_table(BirKind kind, Range g, const Precision& prec)
{
    if (kind == BirKind::general) {
        throw DomainError("map_table expects map4, map3 or map2");
    }
    const long g_min = kind == BirKind::map2 ? 4 : (kind == BirKind::map3 ? 3 : 2);
    const char* id = kind == BirKind::map4 ? "T3" : (kind == BirKind::map3 ? "T4" : "T5");
    std::vector<TableRow> rows;
    for (long gi = std::max(g.lo, g_min); gi <= g.hi; ++gi) {
        const BirQuery q{gi, 0, kind};
        TableRow row;
        row.table = id;
        row.g = gi;
        row.key = effective_l(q);
        row.report = bir_threshold(q, prec);
        row.row_kind = row.report.lattice_value == general_coefficient(q) ? "general" : "special";
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace pluri
