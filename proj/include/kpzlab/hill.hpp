#pragma once

#include <cstddef>
#include <vector>

#include "kpzlab/jacobi.hpp"
#include "kpzlab/random.hpp"
#include "kpzlab/spectrum.hpp"

namespace kpz {

enum class Boundary { Dirichlet, Periodic };

/// H_j = -d²/dy² + jΞ + (2/√β)W' on [0, Ξ].
struct HillConfig {
    std::size_t j = 0;
    double xi = 1.0;
    double beta = 2.0;
    Boundary boundary = Boundary::Dirichlet;
    std::size_t grid_n = 1024;
    double lambda_cap = 0.0;

    double step() const { return xi / static_cast<double>(grid_n); }
    /// grid_n >= 16, xi > 0, beta > 0, lambda_cap finite.  ConfigError otherwise.
    void validate() const;
    /// Additionally checks the path against the grid.
    void validate(const NoisePath& path) const;
};

/// Finite-difference matrix.  Dirichlet: interior nodes y_i = i·h,
/// i = 1..grid_n-1.  Periodic: nodes i = 0..grid_n-1 on a ring.  Node i
/// carries the white-noise average (ΔW_{i-1} + ΔW_i)/(2h) of its two
/// adjacent cells (cyclically for the ring).
JacobiMatrix hill_matrix(const HillConfig& config, const NoisePath& path);

/// Eigenvalues <= lambda_cap.
SpectrumSample hill_spectrum(const HillConfig& config, const NoisePath& path);

/// jΞ + (2/√β)ΔW_c/h per cell: the potential seen by the Riccati flow.
std::vector<double> hill_cell_potential(const HillConfig& config, const NoisePath& path);

/// Explosions of the Riccati flow of H_j on (0, Ξ].  Dirichlet only.
std::size_t riccati_count_hill(double lambda, const HillConfig& config, const NoisePath& path);

}  // namespace kpz
