#include "twotier/economy.hpp"

#include <algorithm>
#include <cmath>

namespace twotier {

namespace {

void require(bool cond, const char* what)
{
    if (!cond) {
        throw InvalidParams(what);
    }
}

}  // namespace

void validate(const EconomyParams& p)
{
    require(std::isfinite(p.z1) && p.z1 > 0.0, "z1 must be positive");
    require(std::isfinite(p.z2) && p.z2 > 0.0, "z2 must be positive");
    require(p.theta2 >= 0.0, "theta2 must be non-negative");
    require(p.theta1 > p.theta2, "theta1 must exceed theta2");
    require(p.gamma1 >= 0.0 && p.Gamma1 > p.gamma1, "need Gamma1 > gamma1 >= 0");
    require(p.gamma2 >= 0.0 && p.Gamma2 > p.gamma2, "need Gamma2 > gamma2 >= 0");
    require(std::isfinite(p.w) && p.w > 0.0, "mean wage must be positive");
    require(p.N > 0, "household count must be positive");
}

bool productivity_ordered(const EconomyParams& p) { return p.z1 > p.z2; }

Prices prices(const EconomyParams& p) { return {p.w / p.z1, p.w / p.z2}; }

XiFractions xi_fractions(const EconomyParams& p) { return {p.Gamma1 / p.z1, p.Gamma2 / p.z2}; }

Thresholds viability_thresholds(const EconomyParams& p)
{
    Thresholds t;
    const double xi1 = p.Gamma1 / p.z1;
    if (xi1 < 1.0) {
        t.z2_star = p.gamma2 / (1.0 - xi1);
    }
    if (p.z2 > p.gamma2) {
        t.z1_star = p.z2 * p.Gamma1 / (p.z2 - p.gamma2);
    }
    return t;
}

Demand household_demand(double budget, const Prices& pr, const EconomyParams& p)
{
    Demand d;
    if (budget <= 0.0) {
        return d;
    }

    const double max_c1 = budget / pr.p1;
    if (max_c1 >= p.gamma1 - kBoundaryTol) {
        d.bundle.c1 = std::clamp(max_c1, p.gamma1, p.Gamma1);
    }
    const double residual = std::max(0.0, budget - d.bundle.c1 * pr.p1);

    const double max_c2 = residual / pr.p2;
    if (max_c2 > 0.0 && max_c2 >= p.gamma2 - kBoundaryTol) {
        d.bundle.c2 = std::clamp(max_c2, p.gamma2, p.Gamma2);
    }
    d.unspent = std::max(0.0, budget - d.bundle.c1 * pr.p1 - d.bundle.c2 * pr.p2);
    return d;
}

double utility_saturating(const Bundle& c, const EconomyParams& p)
{
    return p.theta1 * std::min(c.c1, p.Gamma1) + p.theta2 * std::min(c.c2, p.Gamma2);
}

WageStructure WageStructure::from_wages(double r_low, double r_high)
{
    if (!(r_low <= 1.0 && r_high >= 1.0 && r_high > r_low && r_low >= 0.0)) {
        throw InvalidParams("two-tier wages must satisfy 0 <= r_low <= 1 <= r_high, r_low < r_high");
    }
    WageStructure ws;
    ws.r_low = r_low;
    ws.r_high = r_high;
    ws.f_high = (1.0 - r_low) / (r_high - r_low);
    ws.f_low = 1.0 - ws.f_high;
    return ws;
}

double gini_two_tier(const WageStructure& ws)
{
    if (!(ws.r_high > ws.r_low)) {
        return 0.0;
    }
    return (1.0 - ws.r_low) * (ws.r_high - 1.0) / (ws.r_high - ws.r_low);
}

std::string regime_name(RegimeLabel r)
{
    switch (r) {
    case RegimeLabel::Primitive: return "Primitive";
    case RegimeLabel::A: return "A";
    case RegimeLabel::B: return "B";
    case RegimeLabel::C: return "C";
    }
    return "?";
}

std::string phase_letter(RegimeLabel r)
{
    return r == RegimeLabel::Primitive ? "A" : regime_name(r);
}

}  // namespace twotier
