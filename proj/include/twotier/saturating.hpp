#pragma once

#include "twotier/economy.hpp"

#include <optional>

namespace twotier {

struct SaturatingSolution {
    RegimeLabel regime = RegimeLabel::Primitive;
    Equilibrium equal_wage_eq;
    Equilibrium optimal_eq;
    std::optional<WageStructure> wage_structure;  // regime B only
    double g_min = 0.0;
    std::optional<double> g_un;  // unemployment baseline, regimes A and B
};

RegimeLabel classify_regime(const EconomyParams& p);

// Every household produces good 1 and consumes all of it. Requires z1 <= Gamma1.
Equilibrium solve_primitive(const EconomyParams& p);

/// Uniform-wage outcome for z1 > Gamma1.
///
/// Above z1_star everyone saturates good 1 and buys good 2 with the rest.
/// Below it good 2 is unaffordable and hours are cut to phi = xi1; the
/// utility is stuck at theta1 * Gamma1. When good 2 would also saturate,
/// c2 is capped at Gamma2 and the economy works xi1 + xi2 < 1 hours
/// (flagged oversupplied).
Equilibrium solve_equal_wage(const EconomyParams& p);

/// Welfare-maximizing, Gini-minimizing two-tier structure in regime B:
/// low earners get exactly enough to saturate good 1 (r_low = xi1), high
/// earners exactly enough to add one quantum of good 2
/// (r_high = xi1 + gamma2 / z2). Throws OutOfRegime outside
/// Gamma1 < z1 < z1_star.
SaturatingSolution solve_optimal_two_tier(const EconomyParams& p);

SaturatingSolution solve(const EconomyParams& p);

}  // namespace twotier
