#include "kpzlab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>


namespace kpz {

McEstimate estimate_mean(std::span<const double> values, std::uint64_t seed) {
    McEstimate e;
    e.samples = values.size();
    e.seed = seed;
    if (values.empty()) return e;
    // Two-pass for the variance; the means here sit near 1 with small spread.
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        const double var = ss / static_cast<double>(values.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return e;
}

LogMcEstimate estimate_log_mean(std::span<const double> log_values, std::uint64_t seed) {
    LogMcEstimate e;
    e.samples = log_values.size();
    e.seed = seed;
    const double ninf = -std::numeric_limits<double>::infinity();
    if (log_values.empty()) {
        e.log_mean = ninf;
        return e;
    }
    double m = ninf;
    for (double l : log_values) m = std::max(m, l);
    if (m == ninf) {
        e.log_mean = ninf;
        return e;
    }
    const double n = static_cast<double>(log_values.size());
    double sum = 0.0;
    for (double l : log_values) {
        const double w = std::exp(l - m);
        sum += w;
        if (w > 1e-300) ++e.effective;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double l : log_values) {
        const double d = std::exp(l - m) - mean;
        ss += d * d;
    }
    const double se = log_values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    e.log_mean = m + std::log(mean);
    e.log_std_error = se / mean;
    return e;
}

McEstimate product(std::span<const McEstimate> factors) {
    McEstimate p;
    if (factors.empty()) {
        p.mean = 1.0;
        return p;
    }
    p.samples = factors.front().samples;
    p.seed = factors.front().seed;
    double mean = 1.0;
    double rel_var = 0.0;
    bool any_zero = false;
    for (const auto& f : factors) {
        mean *= f.mean;
        if (f.mean == 0.0) {
            any_zero = true;
        } else {
            rel_var += (f.std_error / f.mean) * (f.std_error / f.mean);
        }
    }
    p.mean = mean;
    if (any_zero) {
        // Delta method degenerates; bound by the product of the others times the zero factor's error.
        double bound = 1.0;
        for (const auto& f : factors) bound *= (f.mean == 0.0 ? f.std_error : std::abs(f.mean));
        p.std_error = bound;
    } else {
        p.std_error = std::abs(mean) * std::sqrt(rel_var);
    }
    return p;
}

LogMcEstimate log_product(std::span<const LogMcEstimate> factors) {
    LogMcEstimate p;
    if (factors.empty()) return p;
    p.samples = factors.front().samples;
    p.seed = factors.front().seed;
    p.effective = factors.front().effective;
    double var = 0.0;
    for (const auto& f : factors) {
        p.log_mean += f.log_mean;
        var += f.log_std_error * f.log_std_error;
        p.effective = std::min(p.effective, f.effective);
    }
    p.log_std_error = std::sqrt(var);
    return p;
}

double sigma_distance(double a, double se_a, double b, double se_b) {
    const double se = std::sqrt(se_a * se_a + se_b * se_b);
    const double d = std::abs(a - b);
    if (se == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return d / se;
}

}  // namespace kpz
