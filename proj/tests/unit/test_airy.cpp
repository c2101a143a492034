#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "kpzlab/airy.hpp"
#include "kpzlab/errors.hpp"

using namespace kpz;

TEST(AiryAi, ValueAtOrigin) {
    const double ref = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    EXPECT_NEAR(airy_ai(0.0).value, ref, 1e-15);
    EXPECT_NEAR(airy_ai(0.0).value, 0.3550280538878172, 1e-15);
}

TEST(AiryAi, FirstZero) {
    const double a1 = boost::math::airy_ai_zero<double>(1);
    EXPECT_NEAR(a1, -2.3381074104597670, 1e-12);
    EXPECT_LE(std::abs(airy_ai(a1).value), 1e-10);
}

TEST(AiryAi, MatchesBoostOnGrid) {
    double worst = 0.0;
    for (double x = -20.0; x <= 20.0; x += 0.037) {
        worst = std::max(worst, std::abs(airy_ai(x).value - boost::math::airy_ai(x)));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(AiryAi, DerivativeMatchesBoost) {
    double worst = 0.0;
    for (double x = -15.0; x <= 15.0; x += 0.041) {
        worst = std::max(worst, std::abs(airy_ai_prime(x) - boost::math::airy_ai_prime(x)));
    }
    EXPECT_LE(worst, 1e-11);
}

TEST(AiryAi, DecaysMonotonicallyOnPositiveIntegers) {
    double prev = airy_ai(0.0).value;
    for (int x = 1; x <= 10; ++x) {
        const double v = airy_ai(x).value;
        EXPECT_LT(v, prev);
        EXPECT_GT(v, 0.0);
        prev = v;
    }
}

TEST(AiryAi, PositiveAndDecreasingOnHalfLine) {
    double prev = airy_ai(0.0).value;
    EXPECT_LE(prev, kAiryC1);
    for (double x = 0.05; x <= 30.0; x += 0.05) {
        const double v = airy_ai(x).value;
        EXPECT_GT(v, 0.0) << x;
        EXPECT_LT(v, prev) << x;
        prev = v;
    }
}

TEST(AiryAi, SatisfiesAiryEquation) {
    const double h = 1e-4;
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        const double d2 = (airy_ai(x + h).value - 2.0 * airy_ai(x).value + airy_ai(x - h).value) / (h * h);
        EXPECT_NEAR(d2, x * airy_ai(x).value, 1e-6) << x;
    }
}

TEST(AiryAi, BranchesOverlapAtSwitch) {
    for (double x : {-kAirySeriesLimit, kAirySeriesLimit}) {
        EXPECT_LE(std::abs(detail::airy_ai_series(x) - detail::airy_ai_asymptotic(x)), 1e-12) << x;
        EXPECT_LE(std::abs(detail::airy_ai_prime_series(x) - detail::airy_ai_prime_asymptotic(x)), 1e-11) << x;
    }
}

TEST(AiryAi, ScaledFieldBeyondUnderflow) {
    for (double x : {1.0, 8.5, 25.0, 60.0, 200.0}) {
        const AiryEval e = airy_ai(x);
        const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
        // Leading asymptotics: scaled ~ 1/(2√π x^{1/4}).
        const double lead = 1.0 / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
        EXPECT_NEAR(e.scaled / lead, 1.0, 0.1) << x;
        // exp(-ζ) amplifies the rounding of ζ by a factor ζ.
        const double tol = 4.0 * (1.0 + zeta) * std::numeric_limits<double>::epsilon();
        if (zeta < 700.0) EXPECT_NEAR(e.value, e.scaled * std::exp(-zeta), tol * e.scaled * std::exp(-zeta));
    }
    EXPECT_EQ(airy_ai(-3.0).scaled, airy_ai(-3.0).value);
}

TEST(AiryAi, RejectsNonFinite) {
    EXPECT_THROW(airy_ai(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(airy_ai(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(AiryAiBatch, EmptyAndSingleton) {
    EXPECT_TRUE(airy_ai_batch({}).empty());
    const double zero = 0.0;
    const auto one = airy_ai_batch(std::span<const double>(&zero, 1));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].value, airy_ai(0.0).value);
}

TEST(AiryAiBatch, ElementwiseEqual) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::vector<double> xs(500);
    for (auto& x : xs) x = u(rng);
    const auto b = airy_ai_batch(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(b[i].value, airy_ai(xs[i]).value);
        EXPECT_EQ(b[i].scaled, airy_ai(xs[i]).scaled);
    }
}

TEST(AiryKernel, MatchesHalfLineIntegral) {
    using boost::math::quadrature::gauss_kronrod;
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {-2.0, 1.0}, {1.5, 1.5 + 1e-9}, {-4.0, -3.0}}) {
        const double ref = gauss_kronrod<double, 61>::integrate(
            [&](double r) { return boost::math::airy_ai(x + r) * boost::math::airy_ai(y + r); }, 0.0, 40.0, 15, 1e-14);
        EXPECT_NEAR(airy_kernel(x, y), ref, 1e-11) << x << "," << y;
        EXPECT_EQ(airy_kernel(x, y), airy_kernel(y, x));
    }
}
