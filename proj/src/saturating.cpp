#include "twotier/saturating.hpp"

#include <algorithm>

namespace twotier {

RegimeLabel classify_regime(const EconomyParams& p)
{
    validate(p);
    if (p.z1 <= p.Gamma1 + kBoundaryTol) {
        return RegimeLabel::Primitive;
    }
    const Thresholds t = viability_thresholds(p);
    if (p.z1 >= t.z1_star - kBoundaryTol) {
        return RegimeLabel::C;
    }
    // Good 2 carries no utility: inequality buys nothing, hours are cut instead.
    if (p.theta2 == 0.0) {
        return RegimeLabel::A;
    }
    return RegimeLabel::B;
}

Equilibrium solve_primitive(const EconomyParams& p)
{
    validate(p);
    if (p.z1 > p.Gamma1 + kBoundaryTol) {
        throw OutOfRegime("primitive economy requires z1 <= Gamma1");
    }
    Equilibrium eq;
    eq.regime = RegimeLabel::Primitive;
    eq.n1 = 1.0;
    eq.n2 = 0.0;
    eq.employment = 1.0;
    eq.c_low = eq.c_high = Bundle{std::min(p.z1, p.Gamma1), 0.0};
    eq.utility_per_capita = p.theta1 * std::min(p.z1, p.Gamma1);
    return eq;
}

Equilibrium solve_equal_wage(const EconomyParams& p)
{
    validate(p);
    if (p.z1 <= p.Gamma1 + kBoundaryTol) {
        throw OutOfRegime("equal-wage solution requires z1 > Gamma1");
    }
    const auto [xi1, xi2] = xi_fractions(p);
    const Thresholds t = viability_thresholds(p);

    Equilibrium eq;
    if (p.z1 >= t.z1_star - kBoundaryTol) {
        eq.regime = RegimeLabel::C;
        const double c2 = std::max((1.0 - xi1) * p.z2, p.gamma2);
        eq.n1 = xi1;
        if (c2 > p.Gamma2) {
            eq.oversupplied = true;
            eq.part_time = true;
            eq.n2 = xi2;
        } else {
            eq.n2 = 1.0 - xi1;
        }
        eq.employment = eq.n1 + eq.n2;
        eq.c_low = eq.c_high = Bundle{p.Gamma1, std::min(c2, p.Gamma2)};
        eq.utility_per_capita = p.theta1 * p.Gamma1 + p.theta2 * std::min(c2, p.Gamma2);
        return eq;
    }

    eq.regime = p.theta2 == 0.0 ? RegimeLabel::A : RegimeLabel::B;
    eq.part_time = true;
    eq.n1 = xi1;
    eq.n2 = 0.0;
    eq.employment = xi1;
    eq.c_low = eq.c_high = Bundle{p.Gamma1, 0.0};
    eq.utility_per_capita = p.theta1 * p.Gamma1;
    return eq;
}

SaturatingSolution solve_optimal_two_tier(const EconomyParams& p)
{
    validate(p);
    const Thresholds t = viability_thresholds(p);
    if (p.z1 <= p.Gamma1 + kBoundaryTol || p.z1 >= t.z1_star - kBoundaryTol) {
        throw OutOfRegime("two-tier optimum requires Gamma1 < z1 < z1_star");
    }
    const auto [xi1, xi2] = xi_fractions(p);

    WageStructure ws;
    ws.r_low = xi1;
    ws.r_high = xi1 + p.gamma2 / p.z2;
    if (ws.r_high > xi1 + xi2 + kBoundaryTol) {
        throw ConstraintViolated("high earners would saturate good 2");
    }
    ws.f_high = (1.0 - ws.r_low) / (ws.r_high - ws.r_low);
    ws.f_low = 1.0 - ws.f_high;

    SaturatingSolution sol;
    sol.regime = RegimeLabel::B;
    sol.equal_wage_eq = solve_equal_wage(p);
    sol.g_un = 1.0 - xi1;

    Equilibrium& opt = sol.optimal_eq;
    opt.regime = RegimeLabel::B;
    opt.n1 = ws.f_low * ws.r_low + ws.f_high * xi1;
    opt.n2 = ws.f_high * (ws.r_high - xi1);
    opt.employment = opt.n1 + opt.n2;
    opt.c_low = Bundle{p.Gamma1, 0.0};
    opt.c_high = Bundle{p.Gamma1, p.gamma2};
    opt.utility_per_capita = p.theta1 * p.Gamma1 + (1.0 - xi1) * p.z2 * p.theta2;
    opt.gini = gini_two_tier(ws);

    sol.g_min = opt.gini;
    sol.wage_structure = ws;
    return sol;
}

SaturatingSolution solve(const EconomyParams& p)
{
    const RegimeLabel regime = classify_regime(p);
    if (regime == RegimeLabel::B) {
        return solve_optimal_two_tier(p);
    }

    SaturatingSolution sol;
    sol.regime = regime;
    switch (regime) {
    case RegimeLabel::Primitive:
        sol.equal_wage_eq = solve_primitive(p);
        break;
    case RegimeLabel::A:
        sol.equal_wage_eq = solve_equal_wage(p);
        sol.g_un = 1.0 - xi_fractions(p).xi1;
        break;
    default:
        sol.equal_wage_eq = solve_equal_wage(p);
        break;
    }
    sol.optimal_eq = sol.equal_wage_eq;
    sol.g_min = 0.0;
    return sol;
}

}  // namespace twotier
