#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kpzlab/jacobi.hpp"
#include "kpzlab/monte_carlo.hpp"
#include "kpzlab/random.hpp"
#include "kpzlab/spectrum.hpp"
#include "kpzlab/variational.hpp"

namespace kpz {

/// A_β = -d²/dx² + x + (2/√β)B' truncated to [0, domain_l], Dirichlet at
/// both ends.
struct SaoConfig {
    double beta = 2.0;
    double domain_l = 40.0;
    std::size_t grid_n = 1u << 14;
    double lambda_cap = 20.0;
    std::uint64_t seed = 0;

    double step() const { return domain_l / static_cast<double>(grid_n); }
    /// ConfigError unless beta, domain_l > 0, grid_n >= 16, cap finite.
    void validate() const;
    void validate(const NoisePath& path) const;
    /// domain_l >= 2·lambda_cap (or cap <= 0).  Eigenfunctions below the cap
    /// have decayed well before the far boundary when this holds.
    bool boundary_safe() const;
};

/// Brownian path for sample `stream`: seed derive_seed(config.seed, stream).
NoisePath sao_path(const SaoConfig& config, std::uint64_t stream);

/// Interior nodes x_i = i·h, i = 1..grid_n-1; node potential
/// x_i + (2/√β)(ΔB_{i-1} + ΔB_i)/(2h).
JacobiMatrix sao_matrix(const SaoConfig& config, const NoisePath& path);
SpectrumSample sao_spectrum(const SaoConfig& config, const NoisePath& path);

/// Cell potential for the Riccati flow: cell midpoint plus (2/√β)ΔB_c/h.
std::vector<double> sao_cell_potential(const SaoConfig& config, const NoisePath& path);

std::size_t riccati_count_sao(double lambda, const SaoConfig& config, const NoisePath& path);

/// Explosions of the SAO flow inside each window ((k-1)Ξ, kΞ], k = 1, 2, ...
/// Ξ must be a whole number of cells.
std::vector<std::size_t> sao_window_counts(double lambda, const SaoConfig& config, const NoisePath& path, double xi);

/// Per-level drifts for importance sampling.  Level j is [jΞ, (j+1)Ξ); on it
/// W carries drift θ_j = t^{2/3}·v_j per unit length, which shifts the
/// operator potential by (2/√β)θ_j.  Levels past the list are undrifted.
struct DriftedPathSpec {
    std::uint64_t base_seed = 0;
    std::vector<double> drift_per_level;
    double t = 1.0;
    double xi = 1.0;

    void validate() const;
    double theta(std::size_t level) const;
};

/// A path together with log(dP/dQ) on it, P the undrifted and Q the drifted
/// Wiener measure.  E_Q[exp(log_weight)·F] = E_P[F].
struct WeightedPath {
    NoisePath path;
    double log_weight = 0.0;
};

/// -θ·ΣΔW + ½θ²·(cells·step): the exact log density of the undrifted law
/// against drift θ, evaluated on increments drawn under the drift.
double girsanov_log_weight(const NoisePath& path, double theta);

/// One Hill level on [0, Ξ] with drift θ_level, grid_n cells, seeded by
/// derive_seed(base_seed, level).
WeightedPath sample_drifted_path(const DriftedPathSpec& spec, std::size_t level, std::size_t grid_n);

/// Whole SAO domain; cell c takes the drift of the level containing its
/// midpoint.  Seeded by derive_seed(base_seed, stream).
WeightedPath sample_drifted_sao_path(const DriftedPathSpec& spec, const SaoConfig& config, std::uint64_t stream);

struct SandwichResult {
    McEstimate lower;
    McEstimate middle;
    McEstimate upper;
    /// E[exp(stat)] for Hill levels 0..n-1 (lower product) and 1..n (upper).
    std::vector<McEstimate> lower_levels;
    std::vector<McEstimate> upper_levels;
    /// E[exp(stat)] for the SAO shifted by nΞ.
    McEstimate shifted_sao;
};

/// Monte-Carlo estimates of the three members of the localisation bound
///   Π_{j<n} E_j · e^{-n} · E[SAO + nΞ]  <=  E[SAO]  <=  Π_{1<=j<=n} E_j
/// where E_j is the expectation for the Hill level j (Dirichlet, interval
/// params.xi(), level_grid_n cells).  Every factor runs on its own seed
/// stream under sao.seed; n = params.n().
SandwichResult sandwich_check(double z, double t, double beta, const DiscretizationParams& params,
                              std::size_t n_samples, const SaoConfig& sao, std::size_t level_grid_n);

/// Estimate of (1/t²)·log E[exp(linear_statistic)] over SAO spectra.
/// With importance sampling the paths carry the drifts v_{j,*} of the
/// decomposition for (t, a, z) and are reweighted by the Girsanov weight.
/// Without it, UnderflowError when every exp(statistic) underflows.
/// The mean and standard error refer to the scaled log.
McEstimate ldp_estimate(double z, double t, const SaoConfig& config, std::size_t n_samples, bool use_importance,
                        double a = 0.0);

/// The same estimate before scaling by 1/t², with diagnostics.
LogMcEstimate ldp_log_expectation(double z, double t, const SaoConfig& config, std::size_t n_samples,
                                  bool use_importance, double a = 0.0);

}  // namespace kpz
