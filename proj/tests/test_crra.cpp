#include "reference.hpp"

#include "twotier/crra.hpp"
#include "twotier/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace twotier;
using doctest::Approx;

namespace {

CrraParams point(double z1, double theta1, double z2, double theta2, double gamma2)
{
    CrraParams p;
    p.z1 = z1;
    p.theta1 = theta1;
    p.z2 = z2;
    p.theta2 = theta2;
    p.gamma2 = gamma2;
    return p;
}

}  // namespace

TEST_CASE("budget shares")
{
    auto s = psi_shares(point(1, 1, 0.5, 1, 0.2));
    CHECK(s.psi1 == Approx(2.0 / 3.0));
    CHECK(s.psi2 == Approx(1.0 / 3.0));

    s = psi_shares(point(1, 1, 0.5, 0, 0.2));
    CHECK(s.psi1 == 1.0);
    CHECK(s.psi2 == 0.0);

    s = psi_shares(point(0.7, 1.3, 0.7, 1.3, 0.2));
    CHECK(s.psi1 == 0.5);
    CHECK(s.psi2 == 0.5);
}

TEST_CASE("beta")
{
    CHECK(beta(point(1, 1, 0.5, 1, 0.2)) == Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(beta(point(1, 1, 0.5, 0, 0.2)) == 1.0);
    CHECK(beta(point(1, 1, 1e-12, 1, 0.2)) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("share normalization and the beta identity")
{
    auto g = testing::rng(41);
    for (int i = 0; i < 5000; ++i) {
        const auto p = point(testing::uniform(g, 0.1, 5), testing::uniform(g, 0.1, 3),
                             testing::uniform(g, 0.01, 5), testing::uniform(g, 0.0, 3), 0.2);
        const auto s = psi_shares(p);
        CHECK(s.psi1 + s.psi2 == Approx(1.0).epsilon(1e-15));
        const double b = beta(p);
        CHECK(std::abs(b * b - 1.0 - p.z2 * p.theta2 * p.theta2 / (p.z1 * p.theta1 * p.theta1)) < 1e-12);
    }
}

TEST_CASE("two-tier optimum, reference point")
{
    // Reference values from an independent bounded scalar maximisation of
    // total utility over r_low at r_high = gamma2 / (z2 psi2) = 1.2.
    const auto s = solve_crra(point(1, 1, 0.5, 1, 0.2));
    CHECK(s.beneficial);
    CHECK(s.status == CrraStatus::Beneficial);
    CHECK(s.r_high_star == Approx(1.2).epsilon(1e-14));
    CHECK(*s.r_low_star == Approx(0.3215390).epsilon(1e-6));
    CHECK(*s.r_low_star == Approx(1.2 * (2.0 - std::sqrt(3.0))).epsilon(1e-14));
    CHECK(s.f_high == Approx(0.7723291).epsilon(1e-6));
    CHECK(s.gini == Approx(0.1544658).epsilon(1e-6));
    CHECK(s.u_uniform == 1.0);
    CHECK(s.u_optimal == Approx(1.1652876651880941).epsilon(1e-10));
    CHECK(s.n1 + s.n2 == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the low-wage root zeroes the first-order condition")
{
    // The alternative root 2b^2 - 1 - sqrt((2b^2 - 1)^2 - r_h^2) leaves a
    // large residual; the homogeneous root is stationary.
    const auto p = point(1, 1, 0.5, 1, 0.2);
    const auto s = solve_crra(p);
    const double rh = s.r_high_star;
    auto u_of_low = [&](double rl) { return crra_two_tier_utility(p, rl, rh); };
    CHECK(std::abs(testing::central_difference(u_of_low, *s.r_low_star, 1e-6)) < 1e-4);

    const double a = 2.0 * s.beta * s.beta - 1.0;
    const double printed_root = a - std::sqrt(a * a - rh * rh);
    CHECK(printed_root == Approx(0.4));
    CHECK(std::abs(testing::central_difference(u_of_low, printed_root, 1e-6)) > 1e-2);
    CHECK(u_of_low(printed_root) < s.u_optimal);
}

TEST_CASE("uniform wages when good 2 is viable or worthless")
{
    auto s = solve_crra(point(1, 1, 0.5, 1, 0.1));
    CHECK_FALSE(s.beneficial);
    CHECK(s.status == CrraStatus::UniformViable);
    CHECK(s.gini == 0.0);
    CHECK(s.f_high == 0.0);
    CHECK(s.n1 == Approx(2.0 / 3.0));
    CHECK(s.u_optimal == Approx(std::sqrt(1.5)));  // beta * theta1 * sqrt(z1)

    s = solve_crra(point(1, 1, 0.5, 0, 0.2));
    CHECK_FALSE(s.beneficial);
    CHECK(s.gini == 0.0);
    CHECK(s.u_optimal == 1.0);
    CHECK(s.u_uniform == 1.0);

    s = solve_crra(point(4, 1, 0.5, 0, 3.0));
    CHECK(s.u_optimal == 2.0);
}

TEST_CASE("invalid CRRA parameters")
{
    auto p = point(1, 1, 0.5, 1, 0.2);
    p.sigma = 0.3;
    CHECK_THROWS_AS(solve_crra(p), InvalidSigma);
    p = point(1, 0, 0.5, 1, 0.2);
    CHECK_THROWS_AS(solve_crra(p), InvalidParams);
    p = point(1, 1, -0.5, 1, 0.2);
    CHECK_THROWS_AS(solve_crra(p), InvalidParams);
}

TEST_CASE("CRRA invariants on a random grid")
{
    auto g = testing::rng(43);
    int beneficial = 0;
    for (int i = 0; i < 4000; ++i) {
        const auto p = point(testing::uniform(g, 0.3, 3), testing::uniform(g, 0.3, 2),
                             testing::uniform(g, 0.01, 3), testing::uniform(g, 0.0, 2),
                             testing::uniform(g, 0.0, 1.0));
        const auto s = solve_crra(p);
        CHECK(s.psi1 + s.psi2 == Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(s.n1 + s.n2 - 1.0) < 1e-12);
        CHECK(s.u_optimal >= s.u_uniform);
        if (!s.beneficial) {
            CHECK(s.gini == 0.0);
            continue;
        }
        ++beneficial;
        CHECK(*s.r_low_star <= 1.0);
        CHECK(s.r_high_star > 1.0);
        CHECK(s.gini > 0.0);
        CHECK(s.u_optimal > s.u_uniform);

        auto u_low = [&](double rl) { return crra_two_tier_utility(p, rl, s.r_high_star); };
        auto u_high = [&](double rh) { return crra_two_tier_utility(p, *s.r_low_star, rh); };
        CHECK(std::abs(testing::central_difference(u_low, *s.r_low_star, 1e-6)) < 1e-4);
        CHECK(testing::central_difference(u_high, s.r_high_star, 1e-6) <= 1e-9);
    }
    CHECK(beneficial > 50);
}

TEST_CASE("closed form is never beaten by the grid oracle")
{
    const double step = 0.01;
    for (double z2 : {0.35, 0.45, 0.5, 0.55}) {
        const auto p = point(1, 1, z2, 1, 0.2);
        const auto s = solve_crra(p);
        OracleConfig cfg;
        cfg.utility_kind = UtilityKind::Crra;
        cfg.r_high_grid = {1.0, 3.0, step};
        cfg.f_high_grid = {0.0, 1.0, step};
        const auto r = search(as_economy(p), cfg);
        CAPTURE(z2);
        CHECK(r.best_utility_per_capita <= s.u_optimal + 1e-12);
        CHECK(s.u_optimal - r.best_utility_per_capita <= 2 * step);
        if (s.beneficial) {
            CHECK(r.best_utility_per_capita > s.u_uniform);
        }
    }
}

TEST_CASE("gamma2 threshold search")
{
    ThresholdSearch fast;
    fast.z2_points = 100;
    fast.gamma2_scan_points = 60;

    CHECK_FALSE(gamma2_star(0.0, 1.0, 1.0, fast).has_value());

    const auto g1 = gamma2_star(1.0, 1.0, 1.0, fast);
    REQUIRE(g1.has_value());
    // The threshold sits at the good-2 viability edge of the smallest grid z2.
    const double z2_min = 1e-3;
    const double edge = z2_min * z2_min / (1.0 + z2_min);
    CHECK(*g1 == Approx(edge).epsilon(1e-3));

    const auto g2 = gamma2_star(2.0, 1.0, 1.0, fast);
    REQUIRE(g2.has_value());
    CHECK(*g2 == Approx(4.0 * edge / (1.0 + 3.0 * z2_min / (1.0 + z2_min))).epsilon(1e-3));
}

TEST_CASE("beneficial z2 window")
{
    auto win = z2_window(point(1, 1, 0.5, 1, 0.2));
    REQUIRE(win.has_value());
    CHECK(win->first < 0.5);
    CHECK(win->second > 0.5);
    // edges by independent bisection on the beneficial indicator
    CHECK(win->first == Approx(0.3018599).epsilon(1e-5));
    CHECK(win->second == Approx(0.5582576).epsilon(1e-5));

    CHECK_FALSE(z2_window(point(1, 1, 0.5, 1, 1e-9)).has_value());

    // The upper edge is where good 2 becomes viable at equal wages:
    // z2 psi2 = gamma2, i.e. z2^2 / (1 + z2) = gamma2 at unit z1, thetas.
    double previous_low = 0.0;
    for (double gamma2 : {0.2, 0.3, 0.4}) {
        const auto w = z2_window(point(1, 1, 0.5, 1, gamma2));
        REQUIRE(w.has_value());
        CHECK(w->second == Approx((gamma2 + std::sqrt(gamma2 * gamma2 + 4.0 * gamma2)) / 2.0).epsilon(1e-5));
        CHECK(w->first > previous_low);
        previous_low = w->first;
    }
    CHECK_FALSE(z2_window(point(1, 1, 0.5, 1, 50.0)).has_value());
}
