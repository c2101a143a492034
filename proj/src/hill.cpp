#include "kpzlab/hill.hpp"

#include <cmath>
#include <string>

#include "kpzlab/errors.hpp"
#include "kpzlab/riccati.hpp"

namespace kpz {

void HillConfig::validate() const {
    if (grid_n < 16) throw ConfigError("HillConfig: grid_n must be at least 16");
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ConfigError("HillConfig: xi must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("HillConfig: beta must be positive");
    if (!std::isfinite(lambda_cap)) throw ConfigError("HillConfig: lambda_cap must be finite");
}

void HillConfig::validate(const NoisePath& path) const {
    validate();
    if (path.cells() != grid_n) {
        throw ConfigError("HillConfig: path has " + std::to_string(path.cells()) + " cells, grid_n is " +
                          std::to_string(grid_n));
    }
    if (std::abs(path.step * static_cast<double>(grid_n) - xi) > 1e-12 * std::max(1.0, xi)) {
        throw ConfigError("HillConfig: path step times grid_n differs from xi");
    }
}

JacobiMatrix hill_matrix(const HillConfig& config, const NoisePath& path) {
    config.validate(path);
    const std::size_t n = config.grid_n;
    const double h = config.step();
    const double ih2 = 1.0 / (h * h);
    const double shift = static_cast<double>(config.j) * config.xi;
    const double amp = 2.0 / std::sqrt(config.beta);
    const auto& dw = path.increments;
    if (config.boundary == Boundary::Dirichlet) {
        std::vector<double> diag(n - 1), off(n - 2, -ih2);
        for (std::size_t i = 1; i < n; ++i) {
            diag[i - 1] = 2.0 * ih2 + shift + amp * (dw[i - 1] + dw[i]) / (2.0 * h);
        }
        return JacobiMatrix(std::move(diag), std::move(off));
    }
    std::vector<double> diag(n), off(n - 1, -ih2);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = dw[(i + n - 1) % n];
        diag[i] = 2.0 * ih2 + shift + amp * (left + dw[i]) / (2.0 * h);
    }
    return JacobiMatrix::periodic(std::move(diag), std::move(off), -ih2);
}

SpectrumSample hill_spectrum(const HillConfig& config, const NoisePath& path) {
    const JacobiMatrix m = hill_matrix(config, path);
    SpectrumSample s;
    s.cap = config.lambda_cap;
    s.eigenvalues = m.eigenvalues_at_most(config.lambda_cap);
    s.complete_below_cap = true;
    return s;
}

std::vector<double> hill_cell_potential(const HillConfig& config, const NoisePath& path) {
    config.validate(path);
    const double h = config.step();
    const double shift = static_cast<double>(config.j) * config.xi;
    const double amp = 2.0 / std::sqrt(config.beta);
    std::vector<double> v(config.grid_n);
    for (std::size_t c = 0; c < config.grid_n; ++c) v[c] = shift + amp * path.increments[c] / h;
    return v;
}

std::size_t riccati_count_hill(double lambda, const HillConfig& config, const NoisePath& path) {
    if (config.boundary != Boundary::Dirichlet) {
        throw ConfigError("riccati_count_hill: the Riccati flow counts Dirichlet eigenvalues only");
    }
    const auto v = hill_cell_potential(config, path);
    return count_explosions(v, config.step(), lambda);
}

}  // namespace kpz
