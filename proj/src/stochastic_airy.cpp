#include "kpzlab/stochastic_airy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpzlab/errors.hpp"
#include "kpzlab/hill.hpp"
#include "kpzlab/parallel.hpp"
#include "kpzlab/riccati.hpp"

namespace kpz {

void SaoConfig::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("SaoConfig: beta must be positive");
    if (!(domain_l > 0.0) || !std::isfinite(domain_l)) throw ConfigError("SaoConfig: domain_l must be positive");
    if (grid_n < 16) throw ConfigError("SaoConfig: grid_n must be at least 16");
    if (!std::isfinite(lambda_cap)) throw ConfigError("SaoConfig: lambda_cap must be finite");
}

void SaoConfig::validate(const NoisePath& path) const {
    validate();
    if (path.cells() != grid_n) {
        throw ConfigError("SaoConfig: path has " + std::to_string(path.cells()) + " cells, grid_n is " +
                          std::to_string(grid_n));
    }
    if (std::abs(path.length() - domain_l) > 1e-12 * std::max(1.0, domain_l)) {
        throw ConfigError("SaoConfig: path does not cover [0, domain_l]");
    }
}

bool SaoConfig::boundary_safe() const { return lambda_cap <= 0.0 || domain_l >= 2.0 * lambda_cap; }

NoisePath sao_path(const SaoConfig& config, std::uint64_t stream) {
    config.validate();
    return NoisePath::brownian(config.grid_n, config.step(), derive_seed(config.seed, stream));
}

JacobiMatrix sao_matrix(const SaoConfig& config, const NoisePath& path) {
    config.validate(path);
    const std::size_t n = config.grid_n;
    const double h = config.step();
    const double ih2 = 1.0 / (h * h);
    const double amp = 2.0 / std::sqrt(config.beta);
    const auto& db = path.increments;
    std::vector<double> diag(n - 1), off(n - 2, -ih2);
    for (std::size_t i = 1; i < n; ++i) {
        diag[i - 1] = 2.0 * ih2 + static_cast<double>(i) * h + amp * (db[i - 1] + db[i]) / (2.0 * h);
    }
    return JacobiMatrix(std::move(diag), std::move(off));
}

SpectrumSample sao_spectrum(const SaoConfig& config, const NoisePath& path) {
    const JacobiMatrix m = sao_matrix(config, path);
    SpectrumSample s;
    s.cap = config.lambda_cap;
    s.eigenvalues = m.eigenvalues_at_most(config.lambda_cap);
    s.complete_below_cap = true;
    return s;
}

std::vector<double> sao_cell_potential(const SaoConfig& config, const NoisePath& path) {
    config.validate(path);
    const double h = config.step();
    const double amp = 2.0 / std::sqrt(config.beta);
    std::vector<double> v(config.grid_n);
    for (std::size_t c = 0; c < config.grid_n; ++c) {
        v[c] = (static_cast<double>(c) + 0.5) * h + amp * path.increments[c] / h;
    }
    return v;
}

std::size_t riccati_count_sao(double lambda, const SaoConfig& config, const NoisePath& path) {
    const auto v = sao_cell_potential(config, path);
    return count_explosions(v, config.step(), lambda);
}

std::vector<std::size_t> sao_window_counts(double lambda, const SaoConfig& config, const NoisePath& path, double xi) {
    const double cells = xi / config.step();
    const double rounded = std::round(cells);
    if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * rounded) {
        throw ConfigError("sao_window_counts: window length must be a whole number of cells");
    }
    const auto v = sao_cell_potential(config, path);
    return explosions_per_window(v, config.step(), lambda, static_cast<std::size_t>(rounded));
}

void DriftedPathSpec::validate() const {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("DriftedPathSpec: t must be positive");
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ConfigError("DriftedPathSpec: xi must be positive");
    for (double v : drift_per_level) {
        if (!std::isfinite(v)) throw DomainError("DriftedPathSpec: drift must be finite");
    }
}

double DriftedPathSpec::theta(std::size_t level) const {
    if (level >= drift_per_level.size()) return 0.0;
    return std::pow(t, 2.0 / 3.0) * drift_per_level[level];
}

double girsanov_log_weight(const NoisePath& path, double theta) {
    if (theta == 0.0) return 0.0;
    return -theta * path.total() + 0.5 * theta * theta * path.length();
}

WeightedPath sample_drifted_path(const DriftedPathSpec& spec, std::size_t level, std::size_t grid_n) {
    spec.validate();
    if (grid_n == 0) throw ConfigError("sample_drifted_path: grid_n must be positive");
    const double h = spec.xi / static_cast<double>(grid_n);
    WeightedPath out{NoisePath::brownian(grid_n, h, derive_seed(spec.base_seed, level)), 0.0};
    const double theta = spec.theta(level);
    if (theta != 0.0) {
        for (auto& dw : out.path.increments) dw += theta * h;
        out.log_weight = girsanov_log_weight(out.path, theta);
    }
    return out;
}

WeightedPath sample_drifted_sao_path(const DriftedPathSpec& spec, const SaoConfig& config, std::uint64_t stream) {
    spec.validate();
    WeightedPath out{sao_path(config, stream), 0.0};
    const double h = config.step();
    double log_w = 0.0;
    for (std::size_t c = 0; c < config.grid_n; ++c) {
        const double mid = (static_cast<double>(c) + 0.5) * h;
        const double theta = spec.theta(static_cast<std::size_t>(mid / spec.xi));
        if (theta == 0.0) continue;
        double& dw = out.path.increments[c];
        dw += theta * h;
        log_w += -theta * dw + 0.5 * theta * theta * h;
    }
    out.log_weight = log_w;
    return out;
}

namespace {

McEstimate hill_level_expectation(double z, double t, double beta, std::size_t j, double xi, std::size_t grid_n,
                                  std::size_t n_samples, std::uint64_t seed) {
    HillConfig cfg;
    cfg.j = j;
    cfg.xi = xi;
    cfg.beta = beta;
    cfg.boundary = Boundary::Dirichlet;
    cfg.grid_n = grid_n;
    cfg.lambda_cap = deviation_threshold(z, t);
    std::vector<double> values(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        const NoisePath path = NoisePath::brownian(grid_n, cfg.step(), derive_seed(seed, i));
        values[i] = std::exp(linear_statistic(hill_spectrum(cfg, path), z, t));
    });
    return estimate_mean(values, seed);
}

McEstimate sao_expectation(double z, double t, double shift, const SaoConfig& base, std::size_t n_samples,
                           std::uint64_t seed) {
    SaoConfig cfg = base;
    cfg.seed = seed;
    cfg.lambda_cap = deviation_threshold(z, t) - shift;
    std::vector<double> values(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        const SpectrumSample s = sao_spectrum(cfg, sao_path(cfg, i));
        values[i] = std::exp(linear_statistic_shifted(s, shift, z, t));
    });
    return estimate_mean(values, seed);
}

}  // namespace

SandwichResult sandwich_check(double z, double t, double beta, const DiscretizationParams& params,
                              std::size_t n_samples, const SaoConfig& sao, std::size_t level_grid_n) {
    if (z > 0.0 || !std::isfinite(z)) throw DomainError("sandwich_check: z must be <= 0");
    if (!(t > 0.0)) throw DomainError("sandwich_check: t must be positive");
    if (n_samples < 2) throw ConfigError("sandwich_check: need at least two samples");
    SaoConfig base = sao;
    base.beta = beta;
    base.validate();
    const std::size_t n = params.n();
    const double xi = params.xi();
    const std::uint64_t root = derive_seed(sao.seed, stream_tag("sandwich"));
    const std::uint64_t lower_root = derive_seed(root, stream_tag("lower"));
    const std::uint64_t upper_root = derive_seed(root, stream_tag("upper"));

    SandwichResult r;
    for (std::size_t j = 0; j < n; ++j) {
        r.lower_levels.push_back(
            hill_level_expectation(z, t, beta, j, xi, level_grid_n, n_samples, derive_seed(lower_root, j)));
    }
    for (std::size_t j = 1; j <= n; ++j) {
        r.upper_levels.push_back(
            hill_level_expectation(z, t, beta, j, xi, level_grid_n, n_samples, derive_seed(upper_root, j)));
    }
    r.shifted_sao = sao_expectation(z, t, static_cast<double>(n) * xi, base, n_samples,
                                    derive_seed(root, stream_tag("shifted")));
    r.middle = sao_expectation(z, t, 0.0, base, n_samples, derive_seed(root, stream_tag("middle")));

    std::vector<McEstimate> low = r.lower_levels;
    low.push_back(r.shifted_sao);
    r.lower = product(low);
    const double en = std::exp(-static_cast<double>(n));
    r.lower.mean *= en;
    r.lower.std_error *= en;
    r.lower.seed = root;
    r.upper = product(r.upper_levels);
    r.upper.seed = root;
    return r;
}

LogMcEstimate ldp_log_expectation(double z, double t, const SaoConfig& config, std::size_t n_samples,
                                  bool use_importance, double a) {
    if (z > 0.0 || !std::isfinite(z)) throw DomainError("ldp_estimate: z must be <= 0");
    if (!(t >= 1.0) || !std::isfinite(t)) throw DomainError("ldp_estimate: t must be >= 1");
    if (n_samples < 2) throw ConfigError("ldp_estimate: need at least two samples");
    config.validate();
    SaoConfig cfg = config;
    cfg.lambda_cap = std::max(config.lambda_cap, deviation_threshold(z, t));
    const std::uint64_t seed = derive_seed(config.seed, stream_tag(use_importance ? "ldp.is" : "ldp.plain"));
    cfg.seed = seed;

    DriftedPathSpec spec;
    spec.base_seed = seed;
    spec.t = t;
    if (use_importance && z < 0.0) {
        const auto params = DiscretizationParams::for_deviation(t, a, z);
        spec.xi = params.xi();
        for (std::size_t j = 0; j < params.n(); ++j) {
            spec.drift_per_level.push_back(optimal_drift_at_level(z, cfg.beta, j, params));
        }
    }

    std::vector<double> logs(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        if (use_importance) {
            const WeightedPath wp = sample_drifted_sao_path(spec, cfg, i);
            logs[i] = linear_statistic(sao_spectrum(cfg, wp.path), z, t) + wp.log_weight;
        } else {
            logs[i] = linear_statistic(sao_spectrum(cfg, sao_path(cfg, i)), z, t);
        }
    });

    if (!use_importance) {
        // Plain estimator averages exp(statistic) directly.
        const double smallest = std::log(std::numeric_limits<double>::denorm_min());
        if (std::all_of(logs.begin(), logs.end(), [&](double l) { return l < smallest; })) {
            throw UnderflowError("ldp_estimate: exp(statistic) underflows on every sample; enable importance sampling");
        }
    }
    return estimate_log_mean(logs, seed);
}

McEstimate ldp_estimate(double z, double t, const SaoConfig& config, std::size_t n_samples, bool use_importance,
                        double a) {
    const LogMcEstimate l = ldp_log_expectation(z, t, config, n_samples, use_importance, a);
    McEstimate e;
    const double t2 = t * t;
    e.mean = l.log_mean / t2;
    e.std_error = l.log_std_error / t2;
    e.samples = l.samples;
    e.seed = l.seed;
    return e;
}

}  // namespace kpz
