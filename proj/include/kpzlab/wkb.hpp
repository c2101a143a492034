#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kpzlab/random.hpp"
#include "kpzlab/spectrum.hpp"

namespace kpz {

/// f sampled at y_i = i·Ξ/grid_n, i = 0..grid_n.
struct PotentialProfile {
    double xi = 1.0;
    std::vector<double> samples;
    std::size_t grid_n = 0;

    double step() const { return xi / static_cast<double>(grid_n); }
    /// ConfigError unless xi > 0, grid_n >= 16, samples.size() == grid_n + 1.
    void validate() const;

    static PotentialProfile linear(double xi, std::size_t grid_n, double slope, double offset = 0.0);
};

/// Piecewise-linear f through 2..16 knots (both ends plus uniform interior
/// positions) with values uniform in [-5, 5].  f need not be periodic.
PotentialProfile random_piecewise_linear_profile(Rng& rng, double xi, std::size_t grid_n);

/// min over N of Σ_{i<=N}(a_i + r), which equals -Σ(r + a_i)₋.
/// ContractError if `a` is not ascending.
double min_partial_sum(std::span<const double> a, double r);

/// Sum of the n smallest eigenvalues.  ContractError if the matrix is not
/// symmetric to 1e-12 (relative to its largest entry) or n > dim.
double ky_fan_sum(const Eigen::MatrixXd& matrix, std::size_t n);

/// Periodic finite-difference matrices of H = -d² + f' (cell i carries
/// (f_{i+1} - f_i)/h) and of H̃ = -d² + (f(Ξ) - f(0))/Ξ.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> periodic_hill_matrices(const PotentialProfile& profile);

/// Full spectra of H and H̃, ascending.
std::pair<SpectrumSample, SpectrumSample> periodic_hill_pair(const PotentialProfile& profile);

struct WkbComparison {
    double lhs = 0.0;  // -Σ(r + λ_i)₋ for H
    double rhs = 0.0;  // the same for H̃
    bool holds = true; // lhs <= rhs + 1e-8·(1 + |lhs|)
};

WkbComparison wkb_compare(const PotentialProfile& profile, double r);

/// (Σ_{i<n} λ_i, Σ_{i<n} λ̃_i).  ContractError if n exceeds the dimension.
std::pair<double, double> eigensum_compare(const PotentialProfile& profile, std::size_t n);

struct WkbReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    /// max over trials of lhs - rhs; nonpositive when the inequality holds.
    double max_gap = 0.0;
};

/// Random profiles on [0, 1] with r uniform in [-20, 20].  Trial k uses
/// derive_seed(seed, k).
WkbReport wkb_trials(std::size_t trials, std::size_t grid_n, std::uint64_t seed);

}  // namespace kpz
