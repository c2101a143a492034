#include "kpzlab/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpzlab/errors.hpp"
#include "kpzlab/jacobi.hpp"
#include "kpzlab/parallel.hpp"

namespace kpz {

void PotentialProfile::validate() const {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ConfigError("PotentialProfile: xi must be positive");
    if (grid_n < 16) throw ConfigError("PotentialProfile: grid_n must be at least 16");
    if (samples.size() != grid_n + 1) throw ConfigError("PotentialProfile: need grid_n + 1 samples");
}

PotentialProfile PotentialProfile::linear(double xi, std::size_t grid_n, double slope, double offset) {
    PotentialProfile p;
    p.xi = xi;
    p.grid_n = grid_n;
    p.samples.resize(grid_n + 1);
    for (std::size_t i = 0; i <= grid_n; ++i) p.samples[i] = offset + slope * (xi * static_cast<double>(i) / grid_n);
    return p;
}

PotentialProfile random_piecewise_linear_profile(Rng& rng, double xi, std::size_t grid_n) {
    std::uniform_int_distribution<int> count(2, 16);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::uniform_real_distribution<double> where(0.0, xi);
    const int k = count(rng);
    std::vector<double> xs{0.0, xi};
    for (int i = 2; i < k; ++i) xs.push_back(where(rng));
    std::sort(xs.begin(), xs.end());
    std::vector<double> vs(xs.size());
    for (auto& v : vs) v = value(rng);

    PotentialProfile p;
    p.xi = xi;
    p.grid_n = grid_n;
    p.samples.resize(grid_n + 1);
    std::size_t seg = 0;
    for (std::size_t i = 0; i <= grid_n; ++i) {
        const double y = xi * static_cast<double>(i) / static_cast<double>(grid_n);
        while (seg + 2 < xs.size() && y > xs[seg + 1]) ++seg;
        const double w = xs[seg + 1] - xs[seg];
        const double u = w > 0.0 ? std::clamp((y - xs[seg]) / w, 0.0, 1.0) : 0.0;
        p.samples[i] = vs[seg] + u * (vs[seg + 1] - vs[seg]);
    }
    return p;
}

double min_partial_sum(std::span<const double> a, double r) {
    if (!std::is_sorted(a.begin(), a.end())) throw ContractError("min_partial_sum: input must be ascending");
    double best = 0.0;
    double run = 0.0;
    for (double x : a) {
        run += x + r;
        best = std::min(best, run);
    }
    return best;
}

double ky_fan_sum(const Eigen::MatrixXd& matrix, std::size_t n) {
    if (matrix.rows() != matrix.cols()) throw ContractError("ky_fan_sum: matrix must be square");
    if (n > static_cast<std::size_t>(matrix.rows())) throw ContractError("ky_fan_sum: n exceeds dimension");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ContractError("ky_fan_sum: matrix is not symmetric");
    }
    if (n == 0) return 0.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().head(static_cast<Eigen::Index>(n)).sum();
}

namespace {

// Diagonal potentials of H and H̃.
std::pair<std::vector<double>, double> potentials(const PotentialProfile& profile) {
    profile.validate();
    const std::size_t n = profile.grid_n;
    const double h = profile.step();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (profile.samples[i + 1] - profile.samples[i]) / h;
    const double mean = (profile.samples[n] - profile.samples[0]) / profile.xi;
    return {v, mean};
}

JacobiMatrix ring(const std::vector<double>& potential, double h) {
    const double ih2 = 1.0 / (h * h);
    std::vector<double> diag(potential.size());
    for (std::size_t i = 0; i < potential.size(); ++i) diag[i] = 2.0 * ih2 + potential[i];
    return JacobiMatrix::periodic(std::move(diag), std::vector<double>(potential.size() - 1, -ih2), -ih2);
}

SpectrumSample full_spectrum(const JacobiMatrix& m) {
    SpectrumSample s;
    s.eigenvalues = m.all_eigenvalues();
    s.cap = m.gershgorin_upper();
    s.complete_below_cap = true;
    return s;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> periodic_hill_matrices(const PotentialProfile& profile) {
    const auto [v, mean] = potentials(profile);
    const std::size_t n = profile.grid_n;
    const double ih2 = 1.0 / (profile.step() * profile.step());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>((i + 1) % n);
        lap(ii, ii) = 2.0 * ih2;
        lap(ii, jj) = -ih2;
        lap(jj, ii) = -ih2;
    }
    Eigen::MatrixXd h = lap, ht = lap;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        h(ii, ii) += v[i];
        ht(ii, ii) += mean;
    }
    return {h, ht};
}

std::pair<SpectrumSample, SpectrumSample> periodic_hill_pair(const PotentialProfile& profile) {
    const auto [v, mean] = potentials(profile);
    const double h = profile.step();
    return {full_spectrum(ring(v, h)), full_spectrum(ring(std::vector<double>(v.size(), mean), h))};
}

WkbComparison wkb_compare(const PotentialProfile& profile, double r) {
    const auto [hs, hts] = periodic_hill_pair(profile);
    WkbComparison c;
    c.lhs = negative_part_sum(hs.eigenvalues, r);
    c.rhs = negative_part_sum(hts.eigenvalues, r);
    c.holds = c.lhs <= c.rhs + 1e-8 * (1.0 + std::abs(c.lhs));
    return c;
}

std::pair<double, double> eigensum_compare(const PotentialProfile& profile, std::size_t n) {
    if (n > profile.grid_n) throw ContractError("eigensum_compare: n exceeds the spectrum size");
    const auto [hs, hts] = periodic_hill_pair(profile);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a += hs.eigenvalues[i];
        b += hts.eigenvalues[i];
    }
    return {a, b};
}

WkbReport wkb_trials(std::size_t trials, std::size_t grid_n, std::uint64_t seed) {
    std::vector<WkbComparison> results(trials);
    parallel_for(trials, [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        const PotentialProfile p = random_piecewise_linear_profile(rng, 1.0, grid_n);
        const double r = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
        results[k] = wkb_compare(p, r);
    });
    WkbReport rep;
    rep.trials = trials;
    rep.max_gap = trials == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (const auto& c : results) {
        if (!c.holds) ++rep.violations;
        rep.max_gap = std::max(rep.max_gap, c.lhs - c.rhs);
    }
    return rep;
}

}  // namespace kpz
