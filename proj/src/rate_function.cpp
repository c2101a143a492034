#include "kpzlab/rate_function.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpzlab/errors.hpp"

namespace kpz {
namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// (4/(15π⁶)) Σ_{k>=3} C(5/2, k) u^k with u = -π²z; converges for u < 1.
double phi_series(long double u) {
    long double binom = 1.0L;  // C(5/2, k)
    long double power = 1.0L;
    long double sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
        binom *= (2.5L - (k - 1)) / k;
        power *= u;
        if (k < 3) continue;
        const long double term = binom * power;
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum)) break;
    }
    const long double pi6 = kPi * kPi * kPi * kPi * kPi * kPi;
    return static_cast<double>(4.0L / (15.0L * pi6) * sum);
}

}  // namespace

double phi_minus(double z) {
    if (!std::isfinite(z) || z > 0.0) {
        throw DomainError("phi_minus: requires finite z <= 0, got " + std::to_string(z));
    }
    const long double pi2 = kPi * kPi;
    const long double u = -pi2 * z;
    if (u < kRateSeriesSwitch) return phi_series(u);

    const long double zl = z;
    const long double pi4 = pi2 * pi2;
    const long double pi6 = pi4 * pi2;
    const long double c = 4.0L / (15.0L * pi6);
    const long double root = std::sqrt(1.0L + u);
    const long double p52 = (1.0L + u) * (1.0L + u) * root;
    return static_cast<double>(c * p52 - c + 2.0L / (3.0L * pi4) * zl - zl * zl / (2.0L * pi2));
}

double phi_minus_scaled(double beta, double z) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw DomainError("phi_minus_scaled: beta must be positive, got " + std::to_string(beta));
    }
    const double half = beta / 2.0;
    return std::pow(1.0 / half, 5) * phi_minus(half * half * z);
}

}  // namespace kpz
