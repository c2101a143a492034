#include "kpzlab/variational.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpzlab/errors.hpp"

namespace kpz {
namespace {

using std::numbers::pi;

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

void check_z_beta(double z, double beta, const char* who) {
    if (!std::isfinite(z) || z > 0.0) throw DomainError(std::string(who) + ": requires z <= 0");
    if (!std::isfinite(beta) || beta <= 0.0) throw DomainError(std::string(who) + ": requires beta > 0");
}

double integrand(double z, double beta, double nu) {
    const DriftProblem p{z, beta, nu};
    return drift_objective(optimal_drift(p), p);
}

}  // namespace

void DriftProblem::validate() const {
    check_z_beta(z, beta, "DriftProblem");
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("DriftProblem: requires nu >= 0");
}

DiscretizationParams::DiscretizationParams(double t, double a, std::size_t n) : t_(t), a_(a), xi_(0.0), n_(n) {
    if (!std::isfinite(t) || t <= 0.0) throw DomainError("DiscretizationParams: t must be positive");
    if (!(a > -1.0 / 3.0 && a < 2.0 / 3.0)) {
        throw DomainError("DiscretizationParams: a must lie in the open interval (-1/3, 2/3), got " + std::to_string(a));
    }
    xi_ = std::pow(t, a);
}

DiscretizationParams DiscretizationParams::for_deviation(double t, double a, double z) {
    if (!std::isfinite(z) || z > 0.0) throw DomainError("DiscretizationParams: requires z <= 0");
    DiscretizationParams p(t, a, 0);
    const double levels = -z * std::pow(t, 2.0 / 3.0 - a);
    // Shave rounding noise so that an exact integer does not gain a level.
    p.n_ = static_cast<std::size_t>(std::ceil(levels * (1.0 - 1e-12)));
    return p;
}

DiscretizationParams DiscretizationParams::with_levels(double t, double a, std::size_t n) {
    return DiscretizationParams(t, a, n);
}

double DiscretizationParams::level_spacing() const { return std::pow(t_, a_ - 2.0 / 3.0); }

double drift_objective(double v, const DriftProblem& p) {
    const double x = positive_part(-p.z - 2.0 / std::sqrt(p.beta) * v - p.nu);
    return 0.5 * v * v + 2.0 / (3.0 * pi) * x * std::sqrt(x);
}

double optimal_drift(const DriftProblem& p) {
    p.validate();
    const double c = positive_part(-p.z - p.nu);
    const double k = p.beta * pi / 2.0;
    return 4.0 / (pi * pi * std::pow(p.beta, 1.5)) * (-1.0 + std::sqrt(1.0 + k * k * c));
}

double optimal_drift_at_level(double z, double beta, std::size_t j, const DiscretizationParams& params) {
    return optimal_drift({z, beta, static_cast<double>(j) * params.level_spacing()});
}

double weyl_count(double lambda, double shift, double xi) {
    if (!(xi > 0.0)) throw DomainError("weyl_count: xi must be positive");
    return xi / pi * std::sqrt(positive_part(lambda - shift));
}

double linear_statistic_drifted(double z, double beta, double v, std::size_t j, const DiscretizationParams& params) {
    check_z_beta(z, beta, "linear_statistic_drifted");
    const double t = params.t();
    const double x = positive_part(-z - 2.0 / std::sqrt(beta) * v - static_cast<double>(j) * params.level_spacing());
    return -2.0 * std::pow(t, params.a() + 4.0 / 3.0) / (3.0 * pi) * x * std::sqrt(x);
}

double variational_value(double z, double beta, const AdaptiveOptions& options) {
    check_z_beta(z, beta, "variational_value");
    if (z == 0.0) return 0.0;
    return integrate_adaptive([&](double nu) { return integrand(z, beta, nu); }, 0.0, -z, options);
}

double riemann_sum_value(double z, double beta, const DiscretizationParams& params) {
    check_z_beta(z, beta, "riemann_sum_value");
    const double dnu = params.level_spacing();
    double sum = 0.0;
    for (std::size_t j = 0; j < params.n(); ++j) sum += integrand(z, beta, static_cast<double>(j) * dnu);
    return dnu * sum;
}

}  // namespace kpz
