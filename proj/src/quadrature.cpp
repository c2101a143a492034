#include "kpzlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpzlab/errors.hpp"

namespace kpz {

void QuadratureGrid::validate() const {
    if (nodes.size() != weights.size()) throw ContractError("quadrature grid: nodes/weights length mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(weights[i] > 0.0)) throw ContractError("quadrature grid: non-positive weight");
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw ContractError("quadrature grid: nodes not increasing");
    }
}

double QuadratureGrid::integrate(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
}

QuadratureGrid gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw DomainError("gauss_legendre: need at least one node");
    std::vector<double> x(n), w(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    QuadratureGrid g;
    g.nodes.resize(n);
    g.weights.resize(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < n; ++i) {
        g.nodes[i] = mid + half * x[i];
        g.weights[i] = half * w[i];
    }
    g.r_cut_low = a;
    g.r_cut_high = b;
    return g;
}

QuadratureGrid gauss_legendre_panels(std::span<const double> breakpoints, std::size_t nodes_per_panel) {
    if (breakpoints.size() < 2) throw DomainError("gauss_legendre_panels: need at least two breakpoints");
    const QuadratureGrid ref = gauss_legendre(nodes_per_panel);
    QuadratureGrid g;
    g.r_cut_low = breakpoints.front();
    g.r_cut_high = breakpoints.back();
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p], b = breakpoints[p + 1];
        if (!(b > a)) throw ContractError("gauss_legendre_panels: breakpoints must increase");
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            g.nodes.push_back(mid + half * ref.nodes[i]);
            g.weights.push_back(half * ref.weights[i]);
        }
    }
    return g;
}

namespace {

const QuadratureGrid& reference_rule() {
    static const QuadratureGrid rule = gauss_legendre(10);
    return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const auto& r = reference_rule();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * s;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole, double abs_tol,
              const AdaptiveOptions& opt, int depth) {
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m), right = panel(f, m, b);
    const double both = left + right;
    if (std::abs(both - whole) <= std::max(abs_tol, opt.rel_tol * std::abs(both))) return both;
    if (depth >= opt.max_depth) {
        throw ResolutionError("integrate_adaptive: no convergence on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
    return refine(f, a, m, left, 0.5 * abs_tol, opt, depth + 1) + refine(f, m, b, right, 0.5 * abs_tol, opt, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, const AdaptiveOptions& options) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_adaptive(f, b, a, options);
    return refine(f, a, b, panel(f, a, b), options.abs_tol, options, 0);
}

}  // namespace kpz
