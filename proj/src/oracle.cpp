#include "twotier/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

namespace twotier {

namespace {

constexpr double kFeasibilitySlack = 1e-9;

struct TierDemand {
    Bundle bundle;
    double unspent = 0.0;
    double utility = 0.0;
};

TierDemand saturating_tier(const EconomyParams& e, const Prices& pr, double r)
{
    const Demand d = household_demand(r * e.w, pr, e);
    TierDemand t;
    t.bundle = d.bundle;
    t.unspent = d.unspent;
    t.utility = utility_saturating(d.bundle, e);
    return t;
}

// sqrt-utility demand from the Lagrangian: c_i proportional to (theta_i / p_i)^2.
// Below the good-2 quantum the whole budget goes to good 1.
TierDemand crra_tier(const EconomyParams& e, const Prices& pr, double r)
{
    const double budget = r * e.w;
    const double k1 = e.theta1 * e.theta1 / pr.p1;
    const double k2 = e.theta2 * e.theta2 / pr.p2;
    TierDemand t;
    const double c2 = budget * (k2 / pr.p2) / (k1 + k2);
    if (c2 > 0.0 && c2 >= e.gamma2 - kBoundaryTol) {
        t.bundle = {budget * (k1 / pr.p1) / (k1 + k2), c2};
    } else {
        t.bundle = {budget / pr.p1, 0.0};
    }
    t.utility = e.theta1 * std::sqrt(t.bundle.c1) + e.theta2 * std::sqrt(t.bundle.c2);
    return t;
}

struct Candidate {
    WageStructure ws;
    ConfigEvaluation eval;
    double gini = 0.0;
};

}  // namespace

int GridSpec::points() const
{
    if (!(step > 0.0) || max < min) {
        return 0;
    }
    return static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
}

EconomyParams as_economy(const CrraParams& p)
{
    EconomyParams e;
    e.z1 = p.z1;
    e.z2 = p.z2;
    e.theta1 = p.theta1;
    e.theta2 = p.theta2;
    e.gamma1 = 0.0;
    e.gamma2 = p.gamma2;
    e.Gamma1 = kInfinity;
    e.Gamma2 = kInfinity;
    return e;
}

ConfigEvaluation evaluate_config(const EconomyParams& e, const WageStructure& ws, UtilityKind kind)
{
    const Prices pr = prices(e);
    auto tier = [&](double r) {
        return kind == UtilityKind::Saturating ? saturating_tier(e, pr, r) : crra_tier(e, pr, r);
    };
    const TierDemand low = tier(ws.r_low);
    const TierDemand high = tier(ws.r_high);

    ConfigEvaluation out;
    out.c_low = low.bundle;
    out.c_high = high.bundle;
    const double d1 = ws.f_low * low.bundle.c1 + ws.f_high * high.bundle.c1;
    const double d2 = ws.f_low * low.bundle.c2 + ws.f_high * high.bundle.c2;
    out.employment = d1 / e.z1 + d2 / e.z2;
    out.utility_per_capita = ws.f_low * low.utility + ws.f_high * high.utility;
    out.feasible = out.employment <= 1.0 + kFeasibilitySlack;

    if (kind == UtilityKind::Saturating) {
        auto saturated = [&](const TierDemand& t, double f) {
            return f > 0.0 && t.unspent > kBoundaryTol && t.bundle.c1 >= e.Gamma1 &&
                   t.bundle.c2 >= e.Gamma2;
        };
        out.overpaid = saturated(low, ws.f_low) || saturated(high, ws.f_high);
    }
    return out;
}

std::vector<double> discretize(const WageStructure& ws, int n)
{
    const auto n_high = static_cast<int>(std::lround(ws.f_high * n));
    std::vector<double> wages(static_cast<std::size_t>(n), ws.r_low);
    std::fill(wages.end() - n_high, wages.end(), ws.r_high);
    return wages;
}

double population_gini(std::span<const double> wages)
{
    std::vector<double> x(wages.begin(), wages.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double total = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += x[i];
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
    }
    if (total <= 0.0) {
        return 0.0;
    }
    return weighted / (n * total);
}

OracleResult search(const EconomyParams& e, const OracleConfig& config)
{
    const int nr = config.r_high_grid.points();
    const int nf = config.f_high_grid.points();
    if (nr <= 0 || nf <= 0) {
        throw InvalidParams("oracle grids must be non-empty");
    }

    std::vector<Candidate> feasible;
    auto consider = [&](const WageStructure& ws) {
        const ConfigEvaluation ev = evaluate_config(e, ws, config.utility_kind);
        if (ev.feasible) {
            feasible.push_back({ws, ev, gini_two_tier(ws)});
        }
    };

    const bool uniform_in_grid =
        config.f_high_grid.min <= 0.0 ||
        (config.r_high_grid.min <= 1.0 && config.r_high_grid.max >= 1.0);
    if (uniform_in_grid) {
        consider(WageStructure::uniform());
    }

    for (int i = 0; i < nr; ++i) {
        const double r_high = config.r_high_grid.at(i);
        for (int j = 0; j < nf; ++j) {
            const double f_high = config.f_high_grid.at(j);
            if (f_high <= 0.0 || f_high >= 1.0) {
                continue;
            }
            const double r_low = (1.0 - f_high * r_high) / (1.0 - f_high);
            if (r_low < 0.0 || r_low >= r_high) {
                continue;
            }
            consider(WageStructure{r_low, r_high, 1.0 - f_high, f_high});
        }
    }

    if (feasible.empty()) {
        throw EmptyFeasibleSet("no feasible wage configuration on the grid");
    }

    double best_u = -kInfinity;
    for (const Candidate& c : feasible) {
        best_u = std::max(best_u, c.eval.utility_per_capita);
    }

    const Candidate* best = nullptr;
    auto key = [](const Candidate& c) { return std::make_tuple(c.gini, c.ws.r_high, c.ws.f_high); };
    for (const Candidate& c : feasible) {
        if (c.eval.utility_per_capita < best_u - config.tie_tolerance) {
            continue;
        }
        if (best == nullptr || key(c) < key(*best)) {
            best = &c;
        }
    }

    OracleResult r;
    r.best_utility_per_capita = best->eval.utility_per_capita;
    r.best_gini = best->gini;
    r.best_config = best->ws;
    r.employment = best->eval.employment;
    r.feasible_count = static_cast<std::int64_t>(feasible.size());
    r.population_gini = population_gini(discretize(best->ws, config.n_households));
    return r;
}

double resolution_tie_tolerance(const EconomyParams& e, const OracleConfig& config)
{
    if (config.utility_kind == UtilityKind::Crra) {
        return config.tie_tolerance;
    }
    return std::max(config.tie_tolerance, config.f_high_grid.step * e.theta2 * e.gamma2);
}

}  // namespace twotier
