#include "kpzlab/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpzlab/airy.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/parallel.hpp"

namespace kpz {

namespace {

constexpr double kRUpper = 40.0;
constexpr double kRLowerScaled = 40.0;

Eigen::MatrixXd airy_matrix(const QuadratureGrid& outer, const QuadratureGrid& inner) {
    Eigen::MatrixXd a(outer.size(), inner.size());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        for (std::size_t r = 0; r < inner.size(); ++r) a(i, r) = airy_ai(outer.nodes[i] + inner.nodes[r]).value;
    }
    return a;
}

}  // namespace

void KernelParams::validate() const {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("KernelParams: s must be positive");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("KernelParams: t must be positive");
}

double KernelParams::fermi(double r) const {
    const double u = -std::cbrt(t) * r - std::log(s);
    return 1.0 / (1.0 + std::exp(u));
}

double KernelParams::fermi_point() const { return -std::log(s) / std::cbrt(t); }

QuadratureGrid kernel_inner_grid(const KernelParams& params, double panel_width, std::size_t nodes_per_panel) {
    params.validate();
    if (!(panel_width > 0.0) || nodes_per_panel == 0) throw ConfigError("kernel_inner_grid: bad panel layout");
    const double tau = std::cbrt(params.t);
    const double r0 = params.fermi_point();
    const double lo = std::min(-kRLowerScaled / tau, r0 - kRLowerScaled / tau);
    const double hi = kRUpper;
    if (!(lo < hi)) throw ConfigError("kernel_inner_grid: empty r range");

    // Breakpoints: graded around r0 (widths 2^m/τ up to panel_width), then uniform.
    std::vector<double> cuts;
    auto push = [&](double x) {
        if (x > lo && x < hi) cuts.push_back(x);
    };
    push(r0);
    double reach = 0.0;
    for (double d = 0.5 / tau; d < panel_width; d *= 2.0) {
        push(r0 - d);
        push(r0 + d);
        reach = d;
    }
    const double start = std::max(reach, 0.0);
    for (double x = r0 - start - panel_width; x > lo; x -= panel_width) push(x);
    for (double x = r0 + start + panel_width; x < hi; x += panel_width) push(x);
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    QuadratureGrid g = gauss_legendre_panels(cuts, nodes_per_panel);
    g.r_cut_low = lo;
    g.r_cut_high = hi;
    return g;
}

double kernel_eval(double x, double y, const KernelParams& params, const QuadratureGrid& inner) {
    double sum = 0.0;
    for (std::size_t r = 0; r < inner.size(); ++r) {
        const double rr = inner.nodes[r];
        // Summand is symmetric in (x, y) term by term.
        const double ax = airy_ai(x + rr).value;
        const double ay = airy_ai(y + rr).value;
        sum += inner.weights[r] * params.fermi(rr) * (ax * ay);
    }
    return sum;
}

Eigen::MatrixXd nystrom_matrix(const KernelParams& params, const QuadratureGrid& outer, const QuadratureGrid& inner) {
    params.validate();
    const Eigen::MatrixXd a = airy_matrix(outer, inner);
    Eigen::VectorXd sw(inner.size());
    for (std::size_t r = 0; r < inner.size(); ++r) sw(static_cast<Eigen::Index>(r)) = inner.weights[r] * params.fermi(inner.nodes[r]);
    Eigen::VectorXd root_w(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) root_w(static_cast<Eigen::Index>(i)) = std::sqrt(outer.weights[i]);
    const Eigen::MatrixXd b = root_w.asDiagonal() * a;
    Eigen::MatrixXd m = b * sw.asDiagonal() * b.transpose();
    return 0.5 * (m + m.transpose());
}

DeterminantValue nystrom_det(const KernelParams& params, const QuadratureGrid& outer, const QuadratureGrid& inner) {
    const Eigen::MatrixXd m = nystrom_matrix(params, outer, inner);
    const Eigen::MatrixXd im = Eigen::MatrixXd::Identity(m.rows(), m.cols()) - m;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(im);
    const Eigen::MatrixXd& u = lu.matrixLU();
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) log_abs += std::log(std::abs(u(i, i)));
    DeterminantValue v;
    v.det = lu.determinant();
    v.log_det = log_abs;
    return v;
}

FredholmResult fredholm_det(const KernelParams& params, const FredholmOptions& options) {
    params.validate();
    if (options.nodes < 40) throw ConfigError("fredholm_det: at least 40 nodes are needed");
    if (options.refined_nodes <= options.nodes) throw ConfigError("fredholm_det: refined_nodes must exceed nodes");
    if (!(options.x_max > 0.0)) throw ConfigError("fredholm_det: x_max must be positive");
    const QuadratureGrid inner = kernel_inner_grid(params);
    const QuadratureGrid inner_fine = kernel_inner_grid(params, 0.25, 24);
    const DeterminantValue base = nystrom_det(params, gauss_legendre(options.nodes, 0.0, options.x_max), inner);
    const DeterminantValue fine =
        nystrom_det(params, gauss_legendre(options.refined_nodes, 0.0, options.x_max), inner_fine);
    FredholmResult r;
    r.det = base.det;
    r.log_det = base.log_det;
    r.refined_det = fine.det;
    r.refinement_change = std::abs(fine.det - base.det);
    r.nodes = options.nodes;
    if (!(r.refinement_change <= options.gate_tol)) {
        throw ResolutionError("fredholm_det: refinement changed the determinant by " +
                              std::to_string(r.refinement_change));
    }
    return r;
}

double laplace_truncation_point(const KernelParams& params) {
    params.validate();
    return (15.0 * std::log(10.0) + std::log(params.s)) / std::cbrt(params.t);
}

std::vector<McEstimate> laplace_transform_mc(std::span<const KernelParams> params, const SaoConfig& config,
                                             std::size_t n_samples) {
    if (config.beta != 2.0) throw ConfigError("laplace_transform_mc: the Airy point process identity needs beta = 2");
    config.validate();
    if (n_samples < 2) throw ConfigError("laplace_transform_mc: need at least two samples");
    for (const auto& p : params) {
        const double cut = laplace_truncation_point(p);
        if (config.lambda_cap < cut) {
            throw IncompletenessError("laplace_transform_mc: lambda_cap " + std::to_string(config.lambda_cap) +
                                      " below truncation point " + std::to_string(cut));
        }
    }
    const std::size_t k = params.size();
    std::vector<double> values(n_samples * k);
    parallel_for(n_samples, [&](std::size_t i) {
        const SpectrumSample s = sao_spectrum(config, sao_path(config, i));
        for (std::size_t p = 0; p < k; ++p) {
            const double tau = std::cbrt(params[p].t);
            const double cut = laplace_truncation_point(params[p]);
            double log_prod = 0.0;
            for (double lambda : s.eigenvalues) {
                if (lambda > cut) break;
                log_prod -= std::log1p(params[p].s * std::exp(-tau * lambda));
            }
            values[p * n_samples + i] = std::exp(log_prod);
        }
    });
    std::vector<McEstimate> out;
    for (std::size_t p = 0; p < k; ++p) {
        out.push_back(estimate_mean(std::span<const double>(values.data() + p * n_samples, n_samples), config.seed));
    }
    return out;
}

McEstimate laplace_transform_mc(const KernelParams& params, const SaoConfig& config, std::size_t n_samples) {
    return laplace_transform_mc(std::span<const KernelParams>(&params, 1), config, n_samples).front();
}

double proxy_f(double x) {
    if (!std::isfinite(x)) throw DomainError("proxy_f: non-finite input");
    return std::exp(-std::exp(x));
}

double proxy_psi(double a, double t, double z) {
    if (!std::isfinite(a) || !std::isfinite(t) || !std::isfinite(z)) throw DomainError("proxy_psi: non-finite input");
    const double u = t * (z + a);
    return u > 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u));
}

}  // namespace kpz
