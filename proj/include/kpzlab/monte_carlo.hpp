#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace kpz {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Sample mean and standard error of the mean.
McEstimate estimate_mean(std::span<const double> values, std::uint64_t seed);

/// Mean of exp(log_values) and its standard error, kept in log form so that
/// values far below the double range still produce an estimate.
struct LogMcEstimate {
    double log_mean = 0.0;
    /// Standard error of log_mean (delta method: stderr/mean).
    double log_std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    /// Samples whose weight is not negligible against the largest one
    /// (exp(l - max) > 1e-300).
    std::size_t effective = 0;
};

/// Log-sum-exp estimate.  log_values may contain -inf (zero samples); if
/// every entry is -inf, log_mean is -inf.
LogMcEstimate estimate_log_mean(std::span<const double> log_values, std::uint64_t seed);

/// Product of independent estimates; the standard error adds relative
/// variances (delta method).  Seed and sample count are taken from the first.
McEstimate product(std::span<const McEstimate> factors);

/// Sum of independent log-estimates (the log of the product).
LogMcEstimate log_product(std::span<const LogMcEstimate> factors);

/// |a - b| / sqrt(se_a² + se_b²); 0 when both errors vanish and a == b.
double sigma_distance(double a, double se_a, double b, double se_b);

}  // namespace kpz
