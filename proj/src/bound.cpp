#include "pluri/bound.hpp"

#include "pluri/errors.hpp"

#include <algorithm>

namespace pluri {

std::string Bound::to_string() const
{
    return std::string(strict ? "alpha > " : "alpha >= ") + value.to_string();
}

bool satisfies(const RealExpr& alpha, const Bound& b, const Precision& prec)
{
    const Order o = compare(alpha, b.value, prec);
    return o == Order::GT || (o == Order::EQ && !b.strict);
}

void ConditionSet::validate() const
{
    if (bounds.empty()) {
        throw DomainError("condition set without bounds");
    }
}

bool admissible(const ConditionSet& c, const Precision& prec)
{
    return std::all_of(c.admissibility.begin(), c.admissibility.end(),
                       [&](const Admissibility& a) { return compare(a.lhs, a.rhs, prec) == Order::GT; });
}

namespace {

// Index of the bound attaining combine_max.
std::size_t argmax(const std::vector<const Bound*>& bounds, const Precision& prec)
{
    if (bounds.empty()) {
        throw DomainError("combine_max of an empty list");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        const Order o = compare(bounds[i]->value, bounds[best]->value, prec);
        if (o == Order::GT || (o == Order::EQ && bounds[i]->strict && !bounds[best]->strict)) {
            best = i;
        }
    }
    return best;
}

} // namespace

Bound combine_max(const std::vector<Bound>& bounds, const Precision& prec)
{
    std::vector<const Bound*> ptrs;
    ptrs.reserve(bounds.size());
    for (const auto& b : bounds) {
        ptrs.push_back(&b);
    }
    return bounds[argmax(ptrs, prec)];
}

Integer min_lattice(const Bound& b, const RealExpr& unit, const Precision& prec)
{
    if (sign(unit, prec) <= 0) {
        throw DomainError("lattice unit must be positive");
    }
    const RealExpr x = b.value / unit;
    if (x.is_rational()) {
        const Integer k = floor_of(x.rational());
        return Rational(k) == x.rational() && !b.strict ? k : Integer(k + 1);
    }
    // Fast path: one enclosure strictly inside (k, k+1).
    if (auto en = enclose_at(x, prec.start_bits)) {
        const Integer k = floor_of(en->lo);
        if (k == floor_of(en->hi) && en->lo > k) {
            return k + 1;
        }
    }
    const Integer k = floor_of(x, prec);
    const Order o = compare(RealExpr(Rational(k)) * unit, b.value, prec);
    return o == Order::EQ && !b.strict ? k : Integer(k + 1);
}

Integer approached_lattice(const Bound& b, const RealExpr& unit, const Precision& prec)
{
    if (sign(unit, prec) <= 0) {
        throw DomainError("lattice unit must be positive");
    }
    return ceil_of(b.value / unit, prec);
}

Integer branch_lattice(const ConditionSet& c, const RealExpr& unit, const Precision& prec)
{
    c.validate();
    Integer best = min_lattice(c.bounds.front().bound, unit, prec);
    for (std::size_t i = 1; i < c.bounds.size(); ++i) {
        best = std::max(best, min_lattice(c.bounds[i].bound, unit, prec));
    }
    return best;
}

ThresholdReport report_branch(const ConditionSet& c, const RealExpr& unit, const Precision& prec)
{
    c.validate();
    ThresholdReport r;
    r.unit = unit;
    std::vector<const Bound*> ptrs;
    for (const auto& nb : c.bounds) {
        r.trace.push_back({nb.id, nb.bound, min_lattice(nb.bound, unit, prec)});
        ptrs.push_back(&nb.bound);
    }
    const std::size_t best = argmax(ptrs, prec);
    r.infimum = c.bounds[best].bound;
    r.attained_by = c.bounds[best].id;
    r.lattice_value = r.trace[best].lattice;
    r.approached_value = approached_lattice(r.infimum, unit, prec);
    return r;
}

std::optional<long> find_m_min(const BranchFamily& f, const Precision& prec)
{
    const auto ok = [&](long m) { return admissible(f.generator(m), prec); };
    if (ok(f.m_floor)) {
        return f.m_floor;
    }
    // Exponential search for an admissible m, then bisection on (lo, hi].
    long lo = f.m_floor;
    long step = 1;
    long hi = f.m_floor + step;
    while (!ok(hi)) {
        if (hi - f.m_floor > f.scan_ceiling) {
            return std::nullopt;
        }
        lo = hi;
        step *= 2;
        hi = f.m_floor + step;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

namespace {

Integer monotone_lattice(const ConditionSet& c, const std::string& id, const RealExpr& unit, const Precision& prec)
{
    for (const auto& nb : c.bounds) {
        if (nb.id == id) {
            return min_lattice(nb.bound, unit, prec);
        }
    }
    throw DomainError("branch family has no bound with id " + id);
}

} // namespace

ThresholdReport minimize_over_m(const BranchFamily& f, const Precision& prec)
{
    const std::optional<long> m_min = find_m_min(f, prec);
    std::optional<long> best_m;
    Integer best;
    if (m_min) {
        for (long m = *m_min;; ++m) {
            if (m - *m_min > f.scan_ceiling) {
                throw DomainError("branch scan reached m_min + " + std::to_string(f.scan_ceiling)
                                  + " without the stop rule firing");
            }
            const ConditionSet c = f.generator(m);
            if (best_m && monotone_lattice(c, f.monotone_id, f.unit, prec) > best) {
                break;
            }
            const Integer v = branch_lattice(c, f.unit, prec);
            if (!best_m || v < best) {
                best = v;
                best_m = m;
            }
        }
    }
    std::optional<std::size_t> best_extra;
    for (std::size_t i = 0; i < f.extra_branches.size(); ++i) {
        const auto& c = f.extra_branches[i].second;
        if (!admissible(c, prec)) {
            continue;
        }
        const Integer v = branch_lattice(c, f.unit, prec);
        if ((!best_m && !best_extra) || v < best) {
            best = v;
            best_extra = i;
        }
    }
    ThresholdReport r;
    if (best_extra) {
        r = report_branch(f.extra_branches[*best_extra].second, f.unit, prec);
        r.branch = f.extra_branches[*best_extra].first;
    } else if (best_m) {
        r = report_branch(f.generator(*best_m), f.unit, prec);
        r.m_star = best_m;
        r.branch = "m=" + std::to_string(*best_m);
    } else {
        throw NoAdmissibleBranch("no admissible branch");
    }
    r.m_min = m_min;
    return r;
}

ConditionSet select_bound(const ConditionSet& c, const std::string& id)
{
    ConditionSet out;
    out.admissibility = c.admissibility;
    if (c.bounds.empty()) {
        return out;
    }
    for (const auto& nb : c.bounds) {
        if (nb.id == id) {
            out.bounds.push_back(nb);
            return out;
        }
    }
    throw DomainError("no condition " + id);
}

std::string to_string(const GridPoint& p)
{
    std::string s;
    for (const auto& [k, v] : p) {
        s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
    }
    return s;
}

ImplicationResult implies(const std::function<ConditionSet(const GridPoint&)>& a,
                          const std::function<ConditionSet(const GridPoint&)>& b,
                          const std::vector<GridPoint>& grid, const Precision& prec)
{
    ImplicationResult r;
    for (const auto& p : grid) {
        const ConditionSet ca = a(p);
        const ConditionSet cb = b(p);
        if (!admissible(ca, prec) || !admissible(cb, prec)) {
            continue;
        }
        ca.validate();
        cb.validate();
        std::vector<Bound> ba;
        std::vector<Bound> bb;
        for (const auto& nb : ca.bounds) {
            ba.push_back(nb.bound);
        }
        for (const auto& nb : cb.bounds) {
            bb.push_back(nb.bound);
        }
        const Bound x = combine_max(ba, prec);
        const Bound y = combine_max(bb, prec);
        const Order o = compare(x.value, y.value, prec);
        ++r.points_checked;
        if (o == Order::LT || (o == Order::EQ && y.strict && !x.strict)) {
            r.holds = false;
            r.counterexample = p;
            return r;
        }
    }
    return r;
}

} // namespace pluri
