#pragma once

#include "pluri/bound.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pluri {

// Non-vanishing query: h^0((n+1)K) >= n on a threefold that is not
// g-countably dense.
struct NvQuery {
    long g = 2;
    long n = 1;
};

enum class BirKind { general, map4, map3, map2 };

struct BirQuery {
    long g = 2;
    long l = 5;
    BirKind kind = BirKind::general;
};

const char* to_string(BirKind k);
BirKind parse_bir_kind(const std::string& s);
// The pluricanonical index implied by the kind (4, 3, 2), or q.l for general.
long effective_l(const BirQuery& q);
void validate(const NvQuery& q);
void validate(const BirQuery& q);

// Lattice unit of the birationality tables.
RealExpr cbrt2();

// --- non-vanishing ----------------------------------------------------------

// Bounds are only present when m is admissible.
ConditionSet nv_conditions(const NvQuery& q, long m);
BranchFamily nv_family(const NvQuery& q);
ThresholdReport nv_threshold(const NvQuery& q, const Precision& prec = {});

// [beta'^2] for the textbook beta' choice, the non-optimised branch.
long nv_heuristic_m(const NvQuery& q, const Precision& prec = {});

// Right-hand side 2 variant for h^0(3K) > 0.
ConditionSet trican_conditions(long g, long m);
BranchFamily trican_family(long g);
ThresholdReport trican_threshold(long g, const Precision& prec = {});

// --- birationality -----------------------------------------------------------

// g(l-1) - (l+1).
Integer bir_denominator(long l, long g);
// beta'^2 = 32 g^2 / D^2.
Rational bir_beta_prime_sq(long l, long g);

// 3 cbrt2 (4l [32g^2/D^2] - 1). DomainError unless D > 0.
RealExpr f_value(long l, long g);
// Integer coefficient of cbrt2 in f_value.
Integer f_coefficient(long l, long g);
// Coefficient of cbrt2 in the closed form printed for kinds off the special
// rows: f for general/map4, and the map3/map2 variants.
Integer general_coefficient(const BirQuery& q);

// m >= 1 branch. `trican` supplies the (biralpha8) value for odd general l.
ConditionSet bir_conditions(const BirQuery& q, long m, std::optional<Integer> trican = std::nullopt);
// beta -> 1^- branch; admissible only when beta' < 1.
ConditionSet bir_limit_conditions(const BirQuery& q);
BranchFamily bir_family(const BirQuery& q, const Precision& prec = {}, std::optional<Integer> trican = std::nullopt);
ThresholdReport bir_threshold(const BirQuery& q, const Precision& prec = {});

struct AllLReport {
    ThresholdReport report; // at l_star
    long l_star = 5;
    std::vector<std::pair<long, Integer>> per_l;
    bool tail_monotone = true;
};

// Max over general l in [5, l_max]; throws TailNotMonotone if the lattice
// values are not non-increasing over [tail_from, l_max].
AllLReport all_l_threshold(long g, const Precision& prec = {}, long l_max = 200, long tail_from = 150);

// --- tables --------------------------------------------------------------------

struct TableRow {
    std::string table; // "T1".."T5"
    long g = 0;
    long key = 0;      // n for T1, l otherwise
    ThresholdReport report;
    std::optional<long> closed_form; // c with value c(n+1) - 3 (T1 only)
    std::string row_kind;            // T1: closed/special; T2: f/special/limit; T3-5: general/special
};

struct Range {
    long lo = 0;
    long hi = 0;
};

std::vector<TableRow> nv_table(Range g, Range n, const Precision& prec = {});
// T2 over (l, g); rows only where the query is valid.
std::vector<TableRow> bir_table(Range l, Range g, const Precision& prec = {});
// T3/T4/T5 for map4/map3/map2.
std::vector<TableRow> map_table(BirKind kind, Range g, const Precision& prec = {});

} // namespace pluri
