#pragma once

#include "pluri/enclosure.hpp"
#include "pluri/real_expr.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pluri {

// "alpha > value" when strict, "alpha >= value" otherwise.
struct Bound {
    RealExpr value;
    bool strict = false;

    std::string to_string() const;
};

bool satisfies(const RealExpr& alpha, const Bound& b, const Precision& prec = {});

struct NamedBound {
    std::string id;
    Bound bound;
};

// Predicate "lhs > rhs" on the branch parameter.
struct Admissibility {
    std::string id;
    RealExpr lhs;
    RealExpr rhs;
};

struct ConditionSet {
    std::vector<NamedBound> bounds;
    std::vector<Admissibility> admissibility;

    // Throws DomainError when bounds is empty.
    void validate() const;
};

bool admissible(const ConditionSet& c, const Precision& prec = {});

// Same admissibility, only the bound with this id (none if c has no bounds,
// i.e. an inadmissible branch). Throws DomainError for an unknown id.
ConditionSet select_bound(const ConditionSet& c, const std::string& id);

// Intersection of half-lines: the largest value, strict on ties.
Bound combine_max(const std::vector<Bound>& bounds, const Precision& prec = {});

// Least integer c with c * unit satisfying b.
Integer min_lattice(const Bound& b, const RealExpr& unit, const Precision& prec = {});

// Least integer c such that alpha > c * unit implies b, i.e. ceil(value/unit).
// This is the reading of a threshold printed as "alpha > c".
Integer approached_lattice(const Bound& b, const RealExpr& unit, const Precision& prec = {});

struct BranchFamily {
    std::function<ConditionSet(long m)> generator;
    long m_floor = 0;
    // Id of the bound that increases with m; drives the stop rule.
    std::string monotone_id;
    // Branches outside the m-scan, each tagged (e.g. "beta->1-").
    std::vector<std::pair<std::string, ConditionSet>> extra_branches;
    RealExpr unit = RealExpr(1);
    long scan_ceiling = 10000;
};

struct TraceEntry {
    std::string id;
    Bound bound;
    Integer lattice;
};

struct ThresholdReport {
    std::optional<long> m_star; // empty when an extra branch wins
    std::string branch;         // "m=36" or the extra branch tag
    Bound infimum;
    Integer lattice_value;
    Integer approached_value;
    RealExpr unit = RealExpr(1);
    std::vector<TraceEntry> trace;
    std::string attained_by;
    std::optional<long> m_min;
};

// Lattice value of one branch: max over its bounds.
Integer branch_lattice(const ConditionSet& c, const RealExpr& unit, const Precision& prec = {});

ThresholdReport report_branch(const ConditionSet& c, const RealExpr& unit, const Precision& prec = {});

// Least admissible m >= f.m_floor, using upward closure of admissibility.
std::optional<long> find_m_min(const BranchFamily& f, const Precision& prec = {});

ThresholdReport minimize_over_m(const BranchFamily& f, const Precision& prec = {});

using GridPoint = std::map<std::string, long>;

struct ImplicationResult {
    bool holds = true;
    std::size_t points_checked = 0;
    std::optional<GridPoint> counterexample;
};

std::string to_string(const GridPoint& p);

// a implies b when, at every grid point where both sets are admissible,
// combine_max(a) is at least as restrictive as combine_max(b).
ImplicationResult implies(const std::function<ConditionSet(const GridPoint&)>& a,
                          const std::function<ConditionSet(const GridPoint&)>& b,
                          const std::vector<GridPoint>& grid, const Precision& prec = {});

} // namespace pluri
