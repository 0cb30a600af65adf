#pragma once

#include "pluri/bound.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pluri {

// Strict lower bounds v_1, v_2, ... on volumes of i-dimensional subvarieties
// through very general points, stored at their limit values.
struct VolumeProfile {
    long d = 3;
    std::vector<Rational> v;
};

// mu_i = i / v_i^(1/i), r_i = 2^(1/i) mu_i.
struct MuProfile {
    std::vector<RealExpr> mu;
    std::vector<RealExpr> r;
};

// (2g-2, 1, 1/2660) truncated to d-1 entries (d-2 for d = 5).
VolumeProfile default_profile(long d, long g);
MuProfile mu_profile(const VolumeProfile& p);

// prod_{i<=k} (mu_i + 1) and prod_{i<=k} (1 + r_i).
RealExpr mu_product(const MuProfile& mu, std::size_t k);
RealExpr r_product(const MuProfile& mu, std::size_t k);

// M = [(d/alpha + 1) * Pi] with Pi = prod_{i<d} (mu_i + 1). The bracket is
// read at alpha^+ (vol > alpha^d is strict), so an exact integer value drops
// by one. nullopt alpha means the alpha -> infinity limit, floor(Pi).
Integer nv_multiplier(long d, const std::optional<RealExpr>& alpha, const MuProfile& mu, const Precision& prec = {});

struct AlphaThreshold {
    Bound bound;          // strict
    RealExpr base;        // Pi for non-vanishing, s-bar for birationality
    Integer floor_base;
    Enclosure enclosure;  // of bound.value
    Integer min_integer;  // least integer satisfying bound
};

// alpha > d Pi / (1 - {Pi}). DegenerateFraction when Pi is an integer.
AlphaThreshold nv_alpha_threshold(long d, const MuProfile& mu, const Precision& prec = {});

// s-bar = 2 prod(1 + r_i) - 2, t-bar = 2^(1/d) d prod(1 + r_i).
std::pair<RealExpr, RealExpr> bir_s_t(long d, const MuProfile& mu);

// [s-bar + t-bar/alpha] + 2, bracket read at alpha^+ as in nv_multiplier.
Integer bir_l_min(long d, const std::optional<RealExpr>& alpha, const MuProfile& mu, const Precision& prec = {});

// alpha > t-bar / (1 - {s-bar}).
AlphaThreshold bir_alpha_threshold(long d, const MuProfile& mu, const Precision& prec = {});

// Fibration dichotomies; mu needs at least d-2 entries. Throw DomainError
// naming the failed precondition.
Bound dichotomy_nv(long d, long l, const MuProfile& mu, const RealExpr& beta_bar, const Precision& prec = {});
Bound dichotomy_bir(long d, long l, const MuProfile& mu, const RealExpr& beta_bar, const Precision& prec = {});

} // namespace pluri
