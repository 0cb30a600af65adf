#include "pluri/higherdim.hpp"

#include "pluri/errors.hpp"

namespace pluri {
namespace {

void need(const MuProfile& mu, long d, std::size_t k, const char* what)
{
    if (d < 3) {
        throw DomainError("dimension must be >= 3, got " + std::to_string(d));
    }
    if (mu.mu.size() < k) {
        throw UnsupportedDimension(std::string(what) + " in dimension " + std::to_string(d) + " needs "
                                   + std::to_string(k) + " volume bounds, profile has "
                                   + std::to_string(mu.mu.size()));
    }
}

void require_positive(const RealExpr& e, const std::string& what, const Precision& prec)
{
    if (sign(e, prec) <= 0) {
        throw DomainError("precondition failed: " + what);
    }
}

// [x] read from the left: ceil(x) - 1.
Integer left_floor(const RealExpr& x, const Precision& prec)
{
    return ceil_of(x, prec) - 1;
}

const Rational& window()
{
    static const Rational w(1, 1000000000);
    return w;
}

AlphaThreshold make_threshold(RealExpr numerator, RealExpr base, const char* what, const Precision& prec)
{
    const Integer k = floor_of(base, prec);
    const RealExpr fractional = canonicalize(base - RealExpr(Rational(k)));
    if (fractional.is_rational() && fractional.rational() == 0) {
        throw DegenerateFraction(std::string(what) + " is the integer " + k.get_str()
                                 + "; the floor cannot be protected");
    }
    AlphaThreshold t;
    t.bound = Bound{numerator / (1 - (base - RealExpr(Rational(k)))), true};
    t.base = std::move(base);
    t.floor_base = k;
    t.enclosure = enclose(t.bound.value, window(), prec);
    t.min_integer = min_lattice(t.bound, RealExpr(1), prec);
    return t;
}

} // namespace

VolumeProfile default_profile(long d, long g)
{
    if (d < 3) {
        throw DomainError("dimension must be >= 3, got " + std::to_string(d));
    }
    if (d > 5) {
        throw UnsupportedDimension("no published volume bound v_" + std::to_string(d - 2)
                                   + "; supply a profile for d=" + std::to_string(d));
    }
    if (g < 2) {
        throw DomainError("genus bound g must be >= 2, got " + std::to_string(g));
    }
    const std::vector<Rational> all{Rational(2 * g - 2), Rational(1), make_rational(1, 2660)};
    const std::size_t len = d == 5 ? 3 : static_cast<std::size_t>(d - 1);
    return VolumeProfile{d, std::vector<Rational>(all.begin(), all.begin() + static_cast<long>(len))};
}

MuProfile mu_profile(const VolumeProfile& p)
{
    MuProfile out;
    for (std::size_t i = 1; i <= p.v.size(); ++i) {
        const Rational& v = p.v[i - 1];
        if (sgn(v) <= 0) {
            throw DomainError("volume bound v_" + std::to_string(i) + " must be positive");
        }
        const Rational inv_i = make_rational(-1, static_cast<long>(i));
        RealExpr mu = RealExpr(static_cast<long>(i)) * RealExpr::power(v, inv_i);
        out.r.push_back(root(i, Rational(2)) * mu);
        out.mu.push_back(std::move(mu));
    }
    return out;
}

RealExpr mu_product(const MuProfile& mu, std::size_t k)
{
    RealExpr p(1);
    for (std::size_t i = 0; i < k; ++i) {
        p *= mu.mu.at(i) + 1;
    }
    return p;
}

RealExpr r_product(const MuProfile& mu, std::size_t k)
{
    RealExpr p(1);
    for (std::size_t i = 0; i < k; ++i) {
        p *= 1 + mu.r.at(i);
    }
    return p;
}

Integer nv_multiplier(long d, const std::optional<RealExpr>& alpha, const MuProfile& mu, const Precision& prec)
{
    need(mu, d, static_cast<std::size_t>(d - 1), "the non-vanishing multiplier");
    const RealExpr pi = mu_product(mu, static_cast<std::size_t>(d - 1));
    if (!alpha) {
        return floor_of(pi, prec);
    }
    require_positive(*alpha, "alpha > 0", prec);
    return left_floor((RealExpr(d) / *alpha + 1) * pi, prec);
}

AlphaThreshold nv_alpha_threshold(long d, const MuProfile& mu, const Precision& prec)
{
    need(mu, d, static_cast<std::size_t>(d - 1), "the non-vanishing threshold");
    RealExpr pi = mu_product(mu, static_cast<std::size_t>(d - 1));
    return make_threshold(RealExpr(d) * pi, pi, "the product of (mu_i + 1)", prec);
}

std::pair<RealExpr, RealExpr> bir_s_t(long d, const MuProfile& mu)
{
    need(mu, d, static_cast<std::size_t>(d - 1), "the birationality constants");
    const RealExpr p = r_product(mu, static_cast<std::size_t>(d - 1));
    return {2 * p - 2, root(static_cast<unsigned long>(d), Rational(2)) * RealExpr(d) * p};
}

Integer bir_l_min(long d, const std::optional<RealExpr>& alpha, const MuProfile& mu, const Precision& prec)
{
    const auto [s, t] = bir_s_t(d, mu);
    if (!alpha) {
        return floor_of(s, prec) + 2;
    }
    require_positive(*alpha, "alpha > 0", prec);
    return left_floor(s + t / *alpha, prec) + 2;
}

AlphaThreshold bir_alpha_threshold(long d, const MuProfile& mu, const Precision& prec)
{
    auto [s, t] = bir_s_t(d, mu);
    return make_threshold(t, s, "s-bar", prec);
}

Bound dichotomy_nv(long d, long l, const MuProfile& mu, const RealExpr& beta_bar, const Precision& prec)
{
    need(mu, d, static_cast<std::size_t>(d - 2), "the non-vanishing dichotomy");
    const RealExpr r = mu_product(mu, static_cast<std::size_t>(d - 2));
    const RealExpr lr = RealExpr(l) - r;
    require_positive(lr, "l > R", prec);
    const RealExpr beta1 = RealExpr(d - 1) * r / lr;
    require_positive(beta_bar - beta1, "beta_bar > beta_1 = " + beta1.to_string(), prec);
    const RealExpr beta2 = RealExpr(d - 1) * (RealExpr(l) + r) / lr;
    const RealExpr tilde = compare(beta_bar, beta2, prec) == Order::GT ? beta2 : beta_bar;
    const RealExpr gamma = 1 + RealExpr(d - 1) / tilde;
    const RealExpr den = RealExpr(l) - gamma * r;
    require_positive(den, "l - (1 + (d-1)/beta_tilde) R > 0", prec);
    return Bound{RealExpr(d) * gamma * r / den, true};
}

Bound dichotomy_bir(long d, long l, const MuProfile& mu, const RealExpr& beta_bar, const Precision& prec)
{
    need(mu, d, static_cast<std::size_t>(d - 2), "the birationality dichotomy");
    const RealExpr p = r_product(mu, static_cast<std::size_t>(d - 2));
    const RealExpr c = root(static_cast<unsigned long>(d - 1), Rational(2));
    const RealExpr gap = RealExpr(l + 1) - 2 * p;
    require_positive(gap, "l > 2P - 1", prec);
    const RealExpr beta1 = 2 * c * RealExpr(d - 1) * p / gap;
    require_positive(beta_bar - beta1, "beta_bar > beta_1 = " + beta1.to_string(), prec);
    const RealExpr beta2 = c * RealExpr(d - 1) * (RealExpr(l + 1) + 4 * p) / (2 * gap);
    const RealExpr tilde = compare(beta_bar, beta2, prec) == Order::GT ? beta2 : beta_bar;
    const RealExpr gamma = 1 + c * RealExpr(d - 1) / tilde;
    const RealExpr den = RealExpr(l + 1) - 2 * gamma * p;
    require_positive(den, "l + 1 - 2 (1 + 2^(1/(d-1)) (d-1)/beta_tilde) P > 0", prec);
    return Bound{RealExpr(d) * root(static_cast<unsigned long>(d), Rational(2)) * gamma * p / den, true};
}

} // namespace pluri
