#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "kpzlab/errors.hpp"
#include "kpzlab/rate_function.hpp"

using namespace kpz;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Term-by-term evaluation in 50 digits.
double phi_oracle(double z_in) {
    const Big z = z_in;
    const Big pi = boost::math::constants::pi<Big>();
    const Big p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2;
    const Big v = Big(4) / (15 * p6) * pow(1 - p2 * z, Big(5) / 2) - Big(4) / (15 * p6) + Big(2) / (3 * p4) * z -
                  z * z / (2 * p2);
    return static_cast<double>(v);
}

}  // namespace

TEST(PhiMinus, ZeroAtOrigin) { EXPECT_EQ(phi_minus(0.0), 0.0); }

TEST(PhiMinus, MatchesExtendedPrecisionAtMinusOne) {
    EXPECT_NEAR(phi_minus(-1.0) / phi_oracle(-1.0), 1.0, 1e-14);
}

TEST(PhiMinus, MatchesExtendedPrecisionAcrossScales) {
    for (double z : {-1e-8, -1e-5, -1e-3, -0.0101, -0.0102, -0.05, -0.3, -2.0, -17.0, -1e3, -1e6}) {
        EXPECT_NEAR(phi_minus(z) / phi_oracle(z), 1.0, 1e-13) << z;
    }
}

TEST(PhiMinus, CubicBehaviourNearOrigin) {
    EXPECT_NEAR(12.0 * phi_minus(-1e-3) / 1e-9, 1.0, 0.01);
    // At |z| = 1e-2 the next Taylor term already costs 1.2%: the ratio is
    // 1 - (π²/8)|z| + O(z²).
    const double r2 = 12.0 * phi_minus(-1e-2) / 1e-6;
    EXPECT_NEAR(r2, 12.0 * phi_oracle(-1e-2) / 1e-6, 1e-12);
    EXPECT_NEAR(r2, 1.0 - M_PI * M_PI / 8.0 * 1e-2, 5e-4);
}

TEST(PhiMinus, RejectsPositiveAndNonFinite) {
    EXPECT_THROW(phi_minus(1e-12), DomainError);
    EXPECT_THROW(phi_minus(std::nan("")), DomainError);
    EXPECT_THROW(phi_minus(-INFINITY), DomainError);
}

TEST(PhiMinus, NonNegativeAndStrictlyDecreasing) {
    double prev = phi_minus(-10.0);
    for (int k = 9999; k >= 0; --k) {
        const double z = -1e-3 * k;
        const double v = phi_minus(z);
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, prev) << z;
        prev = v;
    }
}

TEST(PhiMinus, TailAsymptotics) {
    const double c = 4.0 / (15.0 * M_PI);
    const double e3 = std::abs(phi_minus(-1e3) * std::pow(1e3, -2.5) / c - 1.0);
    EXPECT_LE(e3, 0.05);
    // Subleading term is -z²/(2π²), so the ratio approaches 1 like
    // 1 - (15/8π)|z|^{-1/2}: still 5.7% short at |z| = 100.
    const double e2 = std::abs(phi_minus(-1e2) * std::pow(1e2, -2.5) / c - 1.0);
    EXPECT_NEAR(e2, std::abs(phi_oracle(-1e2) * std::pow(1e2, -2.5) / c - 1.0), 1e-12);
    EXPECT_LT(e3, e2);
    EXPECT_LE(std::abs(phi_minus(-1e6) * std::pow(1e6, -2.5) / c - 1.0), 0.01);
}

TEST(PhiMinus, SmoothAcrossSeriesSwitch) {
    // Second differences stay continuous through the switch at π²|z| = 0.1.
    const double zs = -kRateSeriesSwitch / (M_PI * M_PI);
    const double h = 1e-4;
    double prev = NAN;
    for (double z = zs - 50 * h; z <= zs + 50 * h; z += h) {
        const double d2 = (phi_minus(z - h) - 2.0 * phi_minus(z) + phi_minus(z + h)) / (h * h);
        const double ref = (phi_oracle(z - h) - 2.0 * phi_oracle(z) + phi_oracle(z + h)) / (h * h);
        EXPECT_NEAR(d2, ref, 1e-7) << z;
        if (!std::isnan(prev)) EXPECT_NEAR(d2, prev, 5e-3);
        prev = d2;
    }
}

TEST(PhiMinusScaled, Examples) {
    EXPECT_EQ(phi_minus_scaled(2.0, -1.0), phi_minus(-1.0));
    EXPECT_EQ(phi_minus_scaled(1.0, 0.0), 0.0);
    EXPECT_NEAR(phi_minus_scaled(4.0, -1.0), phi_minus(-4.0) / 32.0, 1e-16);
}

TEST(PhiMinusScaled, RejectsBadBeta) {
    EXPECT_THROW(phi_minus_scaled(0.0, -1.0), DomainError);
    EXPECT_THROW(phi_minus_scaled(-1.0, -1.0), DomainError);
    EXPECT_THROW(phi_minus_scaled(2.0, 0.5), DomainError);
}
