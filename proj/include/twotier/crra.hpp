#pragma once

#include "twotier/economy.hpp"

#include <optional>
#include <string>
#include <utility>

namespace twotier {

class InvalidSigma : public ModelError {
public:
    using ModelError::ModelError;
};

/// Non-saturating variant: U = sum_i theta_i c_i^(1-sigma) / (1-sigma) with
/// sigma fixed at 1/2, and a consumption quantum on good 2 only.
/// Utilities are reported per 2N, i.e. sum_i theta_i sqrt(c_i) per household.
struct CrraParams {
    double z1 = 1.0;
    double z2 = 0.5;
    double theta1 = 1.0;
    double theta2 = 1.0;
    double gamma2 = 0.2;
    double sigma = 0.5;
};

void validate(const CrraParams& p);

struct Shares {
    double psi1 = 1.0;
    double psi2 = 0.0;
};

// psi_i = z_i theta_i^2 / (z1 theta1^2 + z2 theta2^2)
Shares psi_shares(const CrraParams& p);

double beta(const CrraParams& p);

enum class CrraStatus {
    UniformViable,         // z2 psi2 >= gamma2: good 2 affordable at equal wages
    Beneficial,
    LowWageAboveMean,      // optimal low wage r_low* > 1
    HighWageNotAboveMean,  // r_high* <= 1
    NotDominant,           // first-order optimum does not beat equal wages
};

std::string status_name(CrraStatus s);

struct CrraSolution {
    double psi1 = 1.0;
    double psi2 = 0.0;
    double beta = 1.0;
    double r_high_star = 1.0;
    std::optional<double> r_low_star;  // candidate root, present when good 2 is not viable uniformly
    double f_high = 0.0;
    double gini = 0.0;
    bool beneficial = false;
    CrraStatus status = CrraStatus::UniformViable;
    double u_uniform = 0.0;
    double u_optimal = 0.0;
    double n1 = 1.0;
    double n2 = 0.0;

    WageStructure wage_structure() const;
};

/// Total utility per 2N of a two-tier economy where low earners spend their
/// whole wage on good 1 and high earners buy the interior bundle.
double crra_two_tier_utility(const CrraParams& p, double r_low, double r_high);

/// Uniform-wage outcome first; otherwise the high wage sits at the quantum
/// bound r_high* = gamma2 / (z2 psi2) and the low wage solves the
/// first-order condition r_l^2 + (2 - 4 beta^2) r_h r_l + r_h^2 = 0,
/// smaller root r_l = r_h (2 beta^2 - 1 - sqrt((2 beta^2 - 1)^2 - 1)).
CrraSolution solve_crra(const CrraParams& p);

struct ThresholdSearch {
    int z2_points = 400;            // log grid on [z2_min_fraction * z1, z1)
    double z2_min_fraction = 1e-3;
    int gamma2_scan_points = 200;   // log bracket scan before bisection
    double gamma2_scan_min = 1e-8;
    double gamma2_scan_max = 10.0;
    double rel_tol = 1e-4;
};

/// Smallest gamma2 for which some z2 on the grid makes inequality
/// beneficial. nullopt when none exists in the scanned range.
std::optional<double> gamma2_star(double theta2, double z1, double theta1,
                                  const ThresholdSearch& search = {});

struct WindowSearch {
    int z2_points = 4000;
    double z2_min_fraction = 1e-4;
    double tol = 1e-6;
};

/// Endpoints (z2_dagger, z2_star) of the widest z2 interval in (0, z1)
/// where solve_crra reports beneficial; the other fields of `p` are fixed.
std::optional<std::pair<double, double>> z2_window(const CrraParams& p,
                                                   const WindowSearch& search = {});

}  // namespace twotier
