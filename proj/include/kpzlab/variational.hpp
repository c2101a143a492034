#pragma once

#include <cstddef>

#include "kpzlab/quadrature.hpp"

namespace kpz {

/// One level of the constant-drift deviation problem.  `nu` is the
/// continuum level variable (the limit of j·t^{a-2/3}).
struct DriftProblem {
    double z = -1.0;
    double beta = 2.0;
    double nu = 0.0;

    /// Throws DomainError unless z <= 0, beta > 0, nu >= 0.
    void validate() const;
};

/// Mesoscale decomposition: interval length xi = t^a and n levels.
class DiscretizationParams {
public:
    /// Levels covering the nonzero-drift region: n = ceil(-z t^{2/3-a}).
    static DiscretizationParams for_deviation(double t, double a, double z);
    /// Explicit level count.
    static DiscretizationParams with_levels(double t, double a, std::size_t n);

    double t() const { return t_; }
    double a() const { return a_; }
    double xi() const { return xi_; }
    std::size_t n() const { return n_; }
    /// Spacing of the continuum variable between levels, t^{a-2/3}.
    double level_spacing() const;

private:
    DiscretizationParams(double t, double a, std::size_t n);
    double t_;
    double a_;
    double xi_;
    std::size_t n_;
};

/// ½v² + (2/3π)·((-z - (2/√β)v - ν)₊)^{3/2}: Girsanov cost plus the Weyl
/// estimate of the level's linear statistic, both per unit t^{a+4/3}.
double drift_objective(double v, const DriftProblem& p);

/// Closed-form minimiser 4π⁻²β^{-3/2}(-1 + √(1 + (βπ/2)²(-z-ν)₊)).
double optimal_drift(const DriftProblem& p);

/// v_{j,*} for level j of a discretisation.
double optimal_drift_at_level(double z, double beta, std::size_t j, const DiscretizationParams& params);

/// Continuum eigenvalue count (xi/π)·√((λ - shift)₊) of -d²/dy² + shift
/// with Dirichlet conditions on an interval of length xi.
double weyl_count(double lambda, double shift, double xi);

/// Weyl-law value of the level-j linear statistic under a drift v:
/// -(2 t^{a+4/3}/3π)·((-z - (2/√β)v - j t^{a-2/3})₊)^{3/2}.
double linear_statistic_drifted(double z, double beta, double v, std::size_t j, const DiscretizationParams& params);

/// ∫₀^{-z} [½v_*(ν)² + (2/3π)X_*(ν)₊^{3/2}] dν with X_* = -z - (2/√β)v_* - ν.
/// Equals (2/β)^5 Φ₋((β/2)² z).
double variational_value(double z, double beta, const AdaptiveOptions& options = {});

/// Left Riemann sum of the same integrand at ν_j = j t^{a-2/3}, j < n,
/// weighted by the level spacing.
double riemann_sum_value(double z, double beta, const DiscretizationParams& params);

}  // namespace kpz
