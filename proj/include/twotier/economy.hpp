#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace twotier {

// Absolute tolerance used for every threshold comparison. Points on a
// boundary belong to the better-off region.
inline constexpr double kBoundaryTol = 1e-12;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public ModelError {
public:
    using ModelError::ModelError;
};

class OutOfRegime : public ModelError {
public:
    using ModelError::ModelError;
};

class ConstraintViolated : public ModelError {
public:
    using ModelError::ModelError;
};

/// Full parameter point of the two-good economy.
///
/// Defaults are the reference point of the saturating model (z2 = 0.7):
/// good 1 is the essential, high-productivity good, good 2 the
/// non-essential one that comes in indivisible quanta.
struct EconomyParams {
    double z1 = 2.0;
    double z2 = 0.7;
    double theta1 = 1.0;
    double theta2 = 0.1;
    double Gamma1 = 1.0;
    double Gamma2 = 10.0;
    double gamma1 = 0.0;
    double gamma2 = 0.5;
    double w = 1.0;
    int N = 1000;
};

// Throws InvalidParams on a hard violation.
void validate(const EconomyParams& p);

// z1 > z2 is the economically meaningful ordering; outside it we warn only.
bool productivity_ordered(const EconomyParams& p);

struct Prices {
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Zero-profit prices p_i = w / z_i.
Prices prices(const EconomyParams& p);

struct XiFractions {
    double xi1 = 0.0;
    double xi2 = 0.0;
};

/// Labor fraction needed to saturate society's demand for each good,
/// Gamma_i / z_i. Not clamped.
XiFractions xi_fractions(const EconomyParams& p);

struct Thresholds {
    double z1_star = kInfinity;  // +inf when z2 <= gamma2
    double z2_star = kInfinity;  // +inf when xi1 >= 1
};

Thresholds viability_thresholds(const EconomyParams& p);

struct Bundle {
    double c1 = 0.0;
    double c2 = 0.0;
};

struct Demand {
    Bundle bundle;
    double unspent = 0.0;
};

/// Lexicographic fill: good 1 up to its cap, then good 2 if the residual
/// buys at least one quantum. Leftover money is wasted.
Demand household_demand(double budget, const Prices& prices, const EconomyParams& p);

double utility_saturating(const Bundle& c, const EconomyParams& p);

/// Two-point wage distribution with unit mean.
struct WageStructure {
    double r_low = 1.0;
    double r_high = 1.0;
    double f_low = 1.0;
    double f_high = 0.0;

    static WageStructure uniform() { return {}; }

    /// Builds the structure from the two wages; the fractions follow from the
    /// unit-mean constraint. Requires r_low <= 1 <= r_high, r_low < r_high.
    static WageStructure from_wages(double r_low, double r_high);

    double mean() const { return f_low * r_low + f_high * r_high; }
};

/// Population Gini of the two-point distribution,
/// (1 - r_low)(r_high - 1) / (r_high - r_low). Zero when degenerate.
double gini_two_tier(const WageStructure& ws);

enum class RegimeLabel { Primitive, A, B, C };

// "Primitive", "A", "B", "C".
std::string regime_name(RegimeLabel r);

// Phase-diagram letter; the primitive economy is drawn as region A.
std::string phase_letter(RegimeLabel r);

struct Equilibrium {
    double n1 = 0.0;
    double n2 = 0.0;
    double employment = 0.0;  // headcount, or hours-equivalent when part_time
    Bundle c_low;
    Bundle c_high;
    double utility_per_capita = 0.0;
    double gini = 0.0;
    RegimeLabel regime = RegimeLabel::Primitive;
    bool part_time = false;
    bool oversupplied = false;
};

}  // namespace twotier
