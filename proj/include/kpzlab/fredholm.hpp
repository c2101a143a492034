#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kpzlab/monte_carlo.hpp"
#include "kpzlab/quadrature.hpp"
#include "kpzlab/stochastic_airy.hpp"

namespace kpz {

/// K_{s,t}(x, y) = ∫ σ(r) Ai(x+r) Ai(y+r) dr with the Fermi factor
/// σ(r) = 1/(1 + s⁻¹e^{-t^{1/3} r}).
struct KernelParams {
    double s = 1.0;
    double t = 1.0;

    /// DomainError unless s, t are finite and positive.
    void validate() const;
    double fermi(double r) const;
    /// r where σ = ½: -ln(s)/t^{1/3}.
    double fermi_point() const;
};

/// Gauss–Legendre panels for the r-integral on
/// [min(-40, -40 - ln s)/t^{1/3}, 40].  σ < e^{-40} at the lower cut and
/// Ai(x+r)² < 1e-100 at the upper one.  Panels are graded towards the Fermi
/// point when t^{1/3} is large.
QuadratureGrid kernel_inner_grid(const KernelParams& params, double panel_width = 0.5,
                                 std::size_t nodes_per_panel = 20);

double kernel_eval(double x, double y, const KernelParams& params, const QuadratureGrid& inner);

/// √w_i K(x_i, x_j) √w_j on the outer nodes.
Eigen::MatrixXd nystrom_matrix(const KernelParams& params, const QuadratureGrid& outer, const QuadratureGrid& inner);

struct DeterminantValue {
    double det = 1.0;
    double log_det = 0.0;  // log|det|; the only usable field when det underflows
};

/// det(I - M) for the Nyström matrix M, by LU with partial pivoting.
DeterminantValue nystrom_det(const KernelParams& params, const QuadratureGrid& outer, const QuadratureGrid& inner);

struct FredholmOptions {
    std::size_t nodes = 40;
    std::size_t refined_nodes = 60;
    double x_max = 16.0;
    double gate_tol = 1e-8;
};

struct FredholmResult {
    double det = 1.0;
    double log_det = 0.0;
    /// Value at refined_nodes and its distance to det.
    double refined_det = 1.0;
    double refinement_change = 0.0;
    std::size_t nodes = 0;
};

/// det(I - K_{s,t}) on L²[0, x_max] with Gauss–Legendre Nyström.  The value
/// at options.nodes is compared with options.refined_nodes (and a finer
/// inner grid); a change above gate_tol throws ResolutionError.
FredholmResult fredholm_det(const KernelParams& params, const FredholmOptions& options = {});

/// λ above which 1/(1 + s e^{-t^{1/3}λ}) is within 1e-15 of 1:
/// (15 ln 10 + ln s)/t^{1/3}.
double laplace_truncation_point(const KernelParams& params);

/// E[Π_i 1/(1 + s e^{-t^{1/3} λ_i})] over SAO spectra, one estimate per
/// parameter pair, all from the same samples.  config.beta must be 2
/// (ConfigError); config.lambda_cap below a truncation point raises
/// IncompletenessError.
std::vector<McEstimate> laplace_transform_mc(std::span<const KernelParams> params, const SaoConfig& config,
                                             std::size_t n_samples);
McEstimate laplace_transform_mc(const KernelParams& params, const SaoConfig& config, std::size_t n_samples);

/// F(x) = exp(-eˣ).
double proxy_f(double x);
/// ψ_{t,z}(a) = log(1 + e^{-t(z+a)}), without overflow for large |t(z+a)|.
double proxy_psi(double a, double t, double z);

}  // namespace kpz
