#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kpz {

/// Nodes and positive weights of a composite rule on [r_cut_low, r_cut_high].
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double r_cut_low = 0.0;
    double r_cut_high = 0.0;

    std::size_t size() const { return nodes.size(); }

    /// Throws ContractError unless nodes are strictly increasing, weights
    /// positive and both lists have equal length.
    void validate() const;

    double integrate(const std::function<double(double)>& f) const;
};

/// n-point Gauss–Legendre rule on [a, b].
QuadratureGrid gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Gauss–Legendre on each panel between consecutive breakpoints.
QuadratureGrid gauss_legendre_panels(std::span<const double> breakpoints, std::size_t nodes_per_panel);

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
};

/// Adaptive Gauss–Legendre: a panel is accepted when its 10-point value and
/// the sum over its two halves agree to the requested tolerance.  Throws
/// ResolutionError when max_depth is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& options = {});

}  // namespace kpz
