#include "twotier/crra.hpp"

#include <cmath>
#include <vector>

namespace twotier {

void validate(const CrraParams& p)
{
    if (p.sigma != 0.5) {
        throw InvalidSigma("only sigma = 1/2 is supported");
    }
    if (!(std::isfinite(p.z1) && p.z1 > 0.0 && std::isfinite(p.z2) && p.z2 > 0.0)) {
        throw InvalidParams("productivities must be positive");
    }
    if (!(p.theta1 > 0.0 && p.theta2 >= 0.0)) {
        throw InvalidParams("need theta1 > 0 and theta2 >= 0");
    }
    if (!(p.gamma2 >= 0.0)) {
        throw InvalidParams("gamma2 must be non-negative");
    }
}

Shares psi_shares(const CrraParams& p)
{
    const double a = p.z1 * p.theta1 * p.theta1;
    const double b = p.z2 * p.theta2 * p.theta2;
    return {a / (a + b), b / (a + b)};
}

double beta(const CrraParams& p)
{
    const Shares s = psi_shares(p);
    return std::sqrt(s.psi1) + p.theta2 * std::sqrt(p.z2 * s.psi2) / (p.theta1 * std::sqrt(p.z1));
}

std::string status_name(CrraStatus s)
{
    switch (s) {
    case CrraStatus::UniformViable: return "uniform_viable";
    case CrraStatus::Beneficial: return "beneficial";
    case CrraStatus::LowWageAboveMean: return "low_wage_above_mean";
    case CrraStatus::HighWageNotAboveMean: return "high_wage_not_above_mean";
    case CrraStatus::NotDominant: return "not_dominant";
    }
    return "?";
}

WageStructure CrraSolution::wage_structure() const
{
    if (!beneficial) {
        return WageStructure::uniform();
    }
    return WageStructure::from_wages(*r_low_star, r_high_star);
}

double crra_two_tier_utility(const CrraParams& p, double r_low, double r_high)
{
    const Shares s = psi_shares(p);
    const double f_high = (1.0 - r_low) / (r_high - r_low);
    const double f_low = 1.0 - f_high;
    const double low = p.theta1 * std::sqrt(p.z1 * r_low);
    const double high = p.theta1 * std::sqrt(p.z1 * s.psi1 * r_high) +
                        p.theta2 * std::sqrt(p.z2 * s.psi2 * r_high);
    return f_low * low + f_high * high;
}

CrraSolution solve_crra(const CrraParams& p)
{
    validate(p);
    CrraSolution sol;
    const Shares s = psi_shares(p);
    sol.psi1 = s.psi1;
    sol.psi2 = s.psi2;
    sol.beta = beta(p);

    const double c2_uniform = p.z2 * s.psi2;
    if (c2_uniform >= p.gamma2 - kBoundaryTol && c2_uniform > 0.0) {
        sol.status = CrraStatus::UniformViable;
        sol.u_uniform = p.theta1 * std::sqrt(p.z1 * s.psi1) + p.theta2 * std::sqrt(c2_uniform);
        sol.u_optimal = sol.u_uniform;
        sol.r_high_star = c2_uniform > 0.0 ? p.gamma2 / c2_uniform : 1.0;
        sol.n1 = s.psi1;
        sol.n2 = s.psi2;
        return sol;
    }

    // Good 2 is stalled at equal wages: everyone eats good 1 only.
    sol.u_uniform = p.theta1 * std::sqrt(p.z1);
    sol.u_optimal = sol.u_uniform;
    sol.n1 = 1.0;
    sol.n2 = 0.0;
    if (c2_uniform <= 0.0) {
        sol.r_high_star = kInfinity;
        sol.status = CrraStatus::LowWageAboveMean;
        return sol;
    }

    const double r_high = p.gamma2 / c2_uniform;
    const double a = 2.0 * sol.beta * sol.beta - 1.0;
    const double r_low = r_high * (a - std::sqrt(std::max(0.0, a * a - 1.0)));
    sol.r_high_star = r_high;
    sol.r_low_star = r_low;

    if (r_high <= 1.0) {
        sol.status = CrraStatus::HighWageNotAboveMean;
        return sol;
    }
    if (r_low > 1.0) {
        sol.status = CrraStatus::LowWageAboveMean;
        return sol;
    }
    const double u = crra_two_tier_utility(p, r_low, r_high);
    if (!(u > sol.u_uniform)) {
        sol.status = CrraStatus::NotDominant;
        return sol;
    }

    const WageStructure ws = WageStructure::from_wages(r_low, r_high);
    sol.status = CrraStatus::Beneficial;
    sol.beneficial = true;
    sol.u_optimal = u;
    sol.f_high = ws.f_high;
    sol.gini = gini_two_tier(ws);
    sol.n1 = ws.f_low * r_low + s.psi1 * ws.f_high * r_high;
    sol.n2 = s.psi2 * ws.f_high * r_high;
    return sol;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int points, bool include_hi)
{
    std::vector<double> g(static_cast<std::size_t>(points));
    const int denom = include_hi ? points - 1 : points;
    const double step = std::log(hi / lo) / denom;
    for (int i = 0; i < points; ++i) {
        g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    }
    return g;
}

bool beneficial_at(CrraParams p, double z2, double gamma2)
{
    p.z2 = z2;
    p.gamma2 = gamma2;
    return solve_crra(p).beneficial;
}

}  // namespace

std::optional<double> gamma2_star(double theta2, double z1, double theta1, const ThresholdSearch& search)
{
    CrraParams base;
    base.z1 = z1;
    base.theta1 = theta1;
    base.theta2 = theta2;
    const auto z2_grid = log_grid(search.z2_min_fraction * z1, z1, search.z2_points, false);

    auto any_beneficial = [&](double gamma2) {
        for (double z2 : z2_grid) {
            if (beneficial_at(base, z2, gamma2)) {
                return true;
            }
        }
        return false;
    };

    const auto gamma_grid =
        log_grid(search.gamma2_scan_min, search.gamma2_scan_max, search.gamma2_scan_points, true);
    std::size_t first = gamma_grid.size();
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        if (any_beneficial(gamma_grid[i])) {
            first = i;
            break;
        }
    }
    if (first == gamma_grid.size()) {
        return std::nullopt;
    }
    if (first == 0) {
        return gamma_grid.front();
    }

    double lo = gamma_grid[first - 1];
    double hi = gamma_grid[first];
    while ((hi - lo) > search.rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (any_beneficial(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::optional<std::pair<double, double>> z2_window(const CrraParams& p, const WindowSearch& search)
{
    validate(p);
    const auto grid = log_grid(search.z2_min_fraction * p.z1, p.z1, search.z2_points, false);

    // Widest contiguous run of beneficial grid points.
    std::size_t best_begin = 0, best_len = 0;
    for (std::size_t i = 0; i < grid.size();) {
        if (!beneficial_at(p, grid[i], p.gamma2)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < grid.size() && beneficial_at(p, grid[j], p.gamma2)) {
            ++j;
        }
        if (j - i > best_len) {
            best_begin = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len == 0) {
        return std::nullopt;
    }

    auto edge = [&](double inside, double outside) {
        while (std::abs(outside - inside) > search.tol) {
            const double mid = 0.5 * (inside + outside);
            if (beneficial_at(p, mid, p.gamma2)) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        return inside;
    };

    const std::size_t last = best_begin + best_len - 1;
    const double lower = best_begin == 0 ? grid.front() : edge(grid[best_begin], grid[best_begin - 1]);
    const double upper = last + 1 == grid.size() ? grid.back() : edge(grid[last], grid[last + 1]);
    return std::make_pair(lower, upper);
}

}  // namespace twotier
