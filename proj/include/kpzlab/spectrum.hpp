#pragma once

#include <cstddef>
#include <vector>

namespace kpz {

/// Finite piece of a spectrum: every eigenvalue <= cap, ascending, repeated
/// by multiplicity.
struct SpectrumSample {
    std::vector<double> eigenvalues;
    double cap = 0.0;
    bool complete_below_cap = true;

    /// N(λ) = #{eigenvalues <= λ}.  Valid for λ <= cap.
    std::size_t count_at_most(double lambda) const;
    /// Eigenvalue list with entries closer than `rel_tol` (relative) merged.
    std::vector<double> deduplicated(double rel_tol = 1e-12) const;
};

/// -z·t^{2/3}: eigenvalues above it do not enter the linear statistic.
double deviation_threshold(double z, double t);

/// -Σ_i (λ_i t^{1/3} + z t)₋, the exponent of the lower-tail functional.
/// Only eigenvalues below -z t^{2/3} contribute; throws IncompletenessError
/// when the sample's cap stops short of that threshold.
double linear_statistic(const SpectrumSample& spectrum, double z, double t);

/// Same, with every eigenvalue shifted by `shift` first.
double linear_statistic_shifted(const SpectrumSample& spectrum, double shift, double z, double t);

/// -Σ_i (r + a_i)₋.
double negative_part_sum(const std::vector<double>& values, double r);

}  // namespace kpz
