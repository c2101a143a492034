#include "kpzlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpzlab/errors.hpp"

namespace kpz {

std::size_t SpectrumSample::count_at_most(double lambda) const {
    return static_cast<std::size_t>(std::upper_bound(eigenvalues.begin(), eigenvalues.end(), lambda) -
                                    eigenvalues.begin());
}

std::vector<double> SpectrumSample::deduplicated(double rel_tol) const {
    std::vector<double> out;
    for (double v : eigenvalues) {
        if (!out.empty() && std::abs(v - out.back()) <= rel_tol * std::max(1.0, std::abs(v))) continue;
        out.push_back(v);
    }
    return out;
}

double deviation_threshold(double z, double t) {
    const double t13 = std::cbrt(t);
    return -z * t13 * t13;
}

double linear_statistic_shifted(const SpectrumSample& spectrum, double shift, double z, double t) {
    const double t13 = std::cbrt(t);
    const double threshold = deviation_threshold(z, t);
    if (!spectrum.complete_below_cap || spectrum.cap + shift < threshold - 1e-12 * std::max(1.0, std::abs(threshold))) {
        throw IncompletenessError("linear_statistic: spectrum cap " + std::to_string(spectrum.cap + shift) +
                                  " below threshold -z t^{2/3} = " + std::to_string(threshold));
    }
    double sum = 0.0;
    for (double lambda : spectrum.eigenvalues) {
        const double x = (lambda + shift) * t13 + z * t;
        if (x >= 0.0) break;
        sum += x;
    }
    return sum;
}

double linear_statistic(const SpectrumSample& spectrum, double z, double t) {
    return linear_statistic_shifted(spectrum, 0.0, z, t);
}

double negative_part_sum(const std::vector<double>& values, double r) {
    double sum = 0.0;
    for (double a : values) {
        if (r + a < 0.0) sum += r + a;
    }
    return sum;
}

}  // namespace kpz
