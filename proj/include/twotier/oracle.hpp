#pragma once

#include "twotier/crra.hpp"
#include "twotier/economy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace twotier {

// Brute-force verifier: identical households within each tier, every
// two-tier configuration on a grid, market clearing by construction.

class EmptyFeasibleSet : public ModelError {
public:
    using ModelError::ModelError;
};

enum class UtilityKind { Saturating, Crra };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    double step = 0.005;

    int points() const;
    double at(int i) const { return min + step * i; }
};

struct OracleConfig {
    int n_households = 1000;
    GridSpec r_high_grid{1.0, 4.0, 0.005};
    GridSpec f_high_grid{0.0, 1.0, 0.005};
    UtilityKind utility_kind = UtilityKind::Saturating;
    double tie_tolerance = 1e-9;
};

struct ConfigEvaluation {
    double utility_per_capita = 0.0;
    double employment = 0.0;
    bool feasible = false;
    bool overpaid = false;  // some tier saturates every good and leaves money unspent
    Bundle c_low;
    Bundle c_high;
};

struct OracleResult {
    double best_utility_per_capita = 0.0;
    double best_gini = 0.0;
    WageStructure best_config;
    double employment = 0.0;
    std::int64_t feasible_count = 0;
    double population_gini = 0.0;  // best_config realised on n_households households
};

// Per 2N for the CRRA model, per N for the saturating one. Only the
// z/theta/gamma2 fields of `economy` are read in CRRA mode.
ConfigEvaluation evaluate_config(const EconomyParams& economy, const WageStructure& ws,
                                 UtilityKind kind);

OracleResult search(const EconomyParams& economy, const OracleConfig& config);

// The saturating optimum is a ray: every r_high above the minimum reaches
// the same utility on the r_low = xi1 ridge, which grid points only
// approximate. One f_high step moves utility by about step * theta2 * gamma2,
// so ties within that band are indistinguishable at grid resolution and
// should be settled by Gini. Returns config.tie_tolerance for CRRA.
double resolution_tie_tolerance(const EconomyParams& economy, const OracleConfig& config);

// Wages of n households drawn from the structure; round(f_high * n) earn r_high.
std::vector<double> discretize(const WageStructure& ws, int n);

/// Gini from first principles: mean absolute difference over all ordered
/// pairs divided by twice the mean, evaluated via the sorted-rank identity.
double population_gini(std::span<const double> wages);

// CRRA parameters mapped onto the economy record used by the oracle.
EconomyParams as_economy(const CrraParams& p);

}  // namespace twotier
