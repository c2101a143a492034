#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "kpzlab/errors.hpp"
#include "kpzlab/rate_function.hpp"
#include "kpzlab/variational.hpp"

using namespace kpz;

namespace {

double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    while (b - a > 1e-12) {
        if (f(c) < f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

}  // namespace

TEST(DriftObjective, Examples) {
    EXPECT_EQ(drift_objective(0.0, {-1.0, 2.0, 1.0}), 0.0);
    EXPECT_EQ(drift_objective(0.0, {-1.0, 2.0, 3.0}), 0.0);
    EXPECT_NEAR(drift_objective(0.0, {-1.0, 2.0, 0.0}), 2.0 / (3.0 * M_PI), 1e-16);
    // X <= 0 leaves only the Girsanov term.
    EXPECT_EQ(drift_objective(5.0, {-1.0, 2.0, 0.0}), 12.5);
}

TEST(OptimalDrift, VanishesOutsideDeviationRegion) {
    EXPECT_EQ(optimal_drift({-1.0, 2.0, 1.0}), 0.0);
    EXPECT_EQ(optimal_drift({-1.0, 2.0, 7.0}), 0.0);
    for (double nu : {0.0, 0.5, 3.0}) EXPECT_EQ(optimal_drift({0.0, 1.0, nu}), 0.0);
}

TEST(OptimalDrift, MatchesGoldenSection) {
    const DriftProblem p{-1.0, 2.0, 0.0};
    const double v = golden_min([&](double x) { return drift_objective(x, p); }, 0.0, 10.0);
    EXPECT_NEAR(optimal_drift(p), v, 1e-8);
}

TEST(OptimalDrift, StationaryAndMinimal) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ub(0.3, 6.0), uz(-10.0, -0.05), uf(0.0, 1.0), uv(-5.0, 10.0);
    for (int k = 0; k < 100; ++k) {
        const double z = uz(rng);
        const DriftProblem p{z, ub(rng), -z * uf(rng) * 0.999};
        const double v = optimal_drift(p);
        const double h = 1e-6;
        const double d = (drift_objective(v + h, p) - drift_objective(v - h, p)) / (2 * h);
        EXPECT_LE(std::abs(d), 1e-6);
        const double f = drift_objective(v, p);
        for (int m = 0; m < 10; ++m) EXPECT_LE(f, drift_objective(uv(rng), p) + 1e-15);
    }
    const DriftProblem p{-2.0, 1.0, 0.3};
    const double f = drift_objective(optimal_drift(p), p);
    for (int m = 0; m < 1000; ++m) EXPECT_LE(f, drift_objective(uv(rng), p) + 1e-15);
}

TEST(WeylCount, Examples) {
    EXPECT_EQ(weyl_count(1.0, 1.0, 2.0), 0.0);
    EXPECT_EQ(weyl_count(0.5, 1.0, 2.0), 0.0);
    EXPECT_NEAR(weyl_count(1.0, 0.0, M_PI), 1.0, 1e-15);
}

TEST(WeylCount, WithinOneOfExactDirichletCount) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ul(-5.0, 400.0), us(-5.0, 5.0), ux(0.1, 10.0);
    for (int k = 0; k < 100; ++k) {
        const double lambda = ul(rng), shift = us(rng), xi = ux(rng);
        int exact = 0;
        while (std::pow(M_PI * (exact + 1) / xi, 2) + shift <= lambda) ++exact;
        EXPECT_LE(std::abs(weyl_count(lambda, shift, xi) - exact), 1.0);
    }
}

TEST(WeylCount, MonotoneAndContinuous) {
    double prev = weyl_count(-1.0, 0.5, 2.0);
    for (double l = -1.0; l <= 10.0; l += 1e-3) {
        const double v = weyl_count(l, 0.5, 2.0);
        EXPECT_GE(v, prev);
        EXPECT_LE(v - prev, 0.05);
        prev = v;
    }
}

TEST(DiscretizationParams, Invariants) {
    const auto p = DiscretizationParams::for_deviation(100.0, 0.25, -1.5);
    EXPECT_NEAR(p.xi() / std::pow(100.0, 0.25), 1.0, 1e-12);
    EXPECT_EQ(p.n(), static_cast<std::size_t>(std::ceil(1.5 * std::pow(100.0, 2.0 / 3.0 - 0.25))));
    EXPECT_THROW(DiscretizationParams::for_deviation(10.0, -1.0 / 3.0, -1.0), DomainError);
    EXPECT_THROW(DiscretizationParams::for_deviation(10.0, 2.0 / 3.0, -1.0), DomainError);
    EXPECT_NO_THROW(DiscretizationParams::for_deviation(10.0, 0.66, -1.0));
}

TEST(LinearStatisticDrifted, Examples) {
    const auto p = DiscretizationParams::with_levels(100.0, 0.0, 5);
    EXPECT_NEAR(linear_statistic_drifted(-1.0, 2.0, 0.0, 0, p), -(2.0 * std::pow(100.0, 4.0 / 3.0) / (3.0 * M_PI)),
                1e-10);
    EXPECT_EQ(linear_statistic_drifted(-1.0, 2.0, 10.0, 0, p), 0.0);
}

TEST(LinearStatisticDrifted, EqualsIntegratedWeylCount) {
    using boost::math::quadrature::gauss_kronrod;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ut(1.0, 50.0), ua(-0.3, 0.6), uz(-3.0, -0.1), ub(0.5, 4.0),
        uv(0.0, 0.5);
    for (int k = 0; k < 50; ++k) {
        const double t = ut(rng), a = ua(rng), z = uz(rng), beta = ub(rng), v = uv(rng);
        const auto p = DiscretizationParams::for_deviation(t, a, z);
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, p.n())(rng);
        const double t23 = std::pow(t, 2.0 / 3.0);
        const double shift = 2.0 / std::sqrt(beta) * t23 * v + static_cast<double>(j) * p.xi();
        const double top = -z * t23;
        double integral = 0.0;
        if (top > shift) {
            integral = gauss_kronrod<double, 61>::integrate(
                [&](double l) { return weyl_count(l, shift, p.xi()); }, shift, top, 15, 1e-14);
        }
        const double ref = -std::cbrt(t) * integral;
        const double got = linear_statistic_drifted(z, beta, v, j, p);
        EXPECT_NEAR(got, ref, 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST(VariationalValue, ZeroDeviation) { EXPECT_EQ(variational_value(0.0, 2.0), 0.0); }

TEST(VariationalValue, ReproducesRateFunction) {
    EXPECT_NEAR(variational_value(-1.0, 2.0) / phi_minus(-1.0), 1.0, 1e-6);
    for (double beta : {0.5, 1.0, 4.0}) {
        EXPECT_NEAR(variational_value(-2.0, beta) / phi_minus_scaled(beta, -2.0), 1.0, 1e-6) << beta;
    }
}

TEST(VariationalValue, ClosedFormIdentityOnGrid) {
    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
        for (double z : {-0.25, -1.0, -2.0, -5.0, -10.0}) {
            const double ref = phi_minus_scaled(beta, z);
            EXPECT_LE(std::abs(variational_value(z, beta) - ref) / ref, 1e-6) << beta << " " << z;
        }
    }
}

TEST(RiemannSum, NoLevels) {
    EXPECT_EQ(riemann_sum_value(-1.0, 2.0, DiscretizationParams::with_levels(10.0, 0.0, 0)), 0.0);
}

TEST(RiemannSum, ContinuumLimit) {
    const auto p = DiscretizationParams::for_deviation(1e6, 0.0, -1.0);
    EXPECT_NEAR(riemann_sum_value(-1.0, 2.0, p), variational_value(-1.0, 2.0), 1e-3);
}

TEST(RiemannSum, FirstOrderInLevelSpacing) {
    // The left sum of a decreasing integrand overshoots by ~½Δν·f(0), with
    // Δν = t^{a-2/3}: each decade in t shrinks the gap by 10^{-2/3}.
    const double ref = variational_value(-1.0, 2.0);
    std::vector<double> gaps;
    for (double t : {1e3, 1e4, 1e5}) {
        const auto p = DiscretizationParams::for_deviation(t, 0.0, -1.0);
        gaps.push_back(riemann_sum_value(-1.0, 2.0, p) - ref);
        const double predicted = 0.5 * p.level_spacing() * drift_objective(optimal_drift({-1.0, 2.0, 0.0}), {-1.0, 2.0, 0.0});
        EXPECT_NEAR(gaps.back() / predicted, 1.0, 0.1) << t;
    }
    for (std::size_t k = 1; k < gaps.size(); ++k) {
        EXPECT_GT(gaps[k - 1], 0.0);
        EXPECT_NEAR(gaps[k] / gaps[k - 1], std::pow(10.0, -2.0 / 3.0), 0.03);
    }
}
