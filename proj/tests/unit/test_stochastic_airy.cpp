#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <boost/math/special_functions/airy.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kpzlab/errors.hpp"
#include "kpzlab/hill.hpp"
#include "kpzlab/monte_carlo.hpp"
#include "kpzlab/quadrature.hpp"
#include "kpzlab/riccati.hpp"
#include "kpzlab/stochastic_airy.hpp"

using namespace kpz;

namespace {

SaoConfig sao(double beta, double l, std::size_t n, double cap, std::uint64_t seed = 1) {
    SaoConfig c;
    c.beta = beta;
    c.domain_l = l;
    c.grid_n = n;
    c.lambda_cap = cap;
    c.seed = seed;
    return c;
}

double airy_dirichlet_eigenvalue(int k) { return -boost::math::airy_ai_zero<double>(k); }

// GUE Tracy-Widom distribution F(s) = det(I - K_Ai) on (s, ∞) by Nyström
// with Boost's Airy functions.
double tw_cdf(double s) {
    const QuadratureGrid g = gauss_legendre(50, s, s + 16.0);
    const auto n = static_cast<Eigen::Index>(g.size());
    std::vector<double> ai(g.size()), aip(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        ai[i] = boost::math::airy_ai(g.nodes[i]);
        aip[i] = boost::math::airy_ai_prime(g.nodes[i]);
    }
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
            const double x = g.nodes[a], y = g.nodes[b];
            const double k = a == b ? aip[a] * aip[a] - x * ai[a] * ai[a]
                                    : (ai[a] * aip[b] - aip[a] * ai[b]) / (x - y);
            m(i, j) = (i == j ? 1.0 : 0.0) - std::sqrt(g.weights[a] * g.weights[b]) * k;
        }
    }
    return m.determinant();
}

double tw_mean() {
    // E[X] = ∫_0^∞ (1 - F) - ∫_{-∞}^0 F, both tails negligible beyond [-10, 8].
    const QuadratureGrid neg = gauss_legendre(60, -10.0, 0.0);
    const QuadratureGrid pos = gauss_legendre(60, 0.0, 8.0);
    return pos.integrate([](double s) { return 1.0 - tw_cdf(s); }) - neg.integrate(tw_cdf);
}

}  // namespace

TEST(TracyWidomOracle, KnownMean) { EXPECT_NEAR(tw_mean(), -1.7710868074, 1e-6); }

TEST(SaoSpectrum, NoiselessMatchesAiryZeros) {
    const auto c = sao(2.0, 40.0, 1u << 15, 12.0);
    const auto s = sao_spectrum(c, NoisePath::zero(c.grid_n, c.step()));
    ASSERT_GE(s.eigenvalues.size(), 5u);
    EXPECT_NEAR(s.eigenvalues[0], 2.33811, 1e-3);
    EXPECT_NEAR(s.eigenvalues[1], 4.08795, 1e-3);
    for (int k = 1; k <= 5; ++k) EXPECT_NEAR(s.eigenvalues[k - 1], airy_dirichlet_eigenvalue(k), 1e-3) << k;
}

TEST(SaoSpectrum, VanishingNoiseLimit) {
    const auto c = sao(1e8, 40.0, 1u << 15, 12.0);
    const auto noiseless = sao_spectrum(c, NoisePath::zero(c.grid_n, c.step()));
    const auto noisy = sao_spectrum(c, sao_path(c, 0));
    ASSERT_EQ(noiseless.eigenvalues.size(), noisy.eigenvalues.size());
    for (std::size_t i = 0; i < noisy.eigenvalues.size(); ++i) {
        EXPECT_NEAR(noisy.eigenvalues[i], noiseless.eigenvalues[i], 1e-3);
    }
}

TEST(SaoSpectrum, RejectsShortPath) {
    const auto c = sao(2.0, 10.0, 1024, 5.0);
    EXPECT_THROW(sao_spectrum(c, NoisePath::zero(512, c.step())), ConfigError);
}

TEST(SaoSpectrum, GroundStateMeanMatchesTracyWidom) {
    // λ₁ = -a₁ with a₁ Tracy-Widom GUE distributed, so E[λ₁] = -E[TW].
    const double ref = -tw_mean();
    const auto c = sao(2.0, 20.0, 1u << 13, 20.0, 2024);
    const std::size_t samples = 2000;
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        sum += sao_matrix(c, sao_path(c, i)).eigenvalues_by_index(0, 1, 1e-10).front();
    }
    EXPECT_NEAR(sum / samples, ref, 0.3);
}

TEST(SaoSpectrum, DoublingDomainLeavesLowSpectrum) {
    const auto wide = sao(2.0, 40.0, 8192, 10.0, 9);
    const auto narrow = sao(2.0, 20.0, 4096, 10.0, 9);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const NoisePath p = sao_path(wide, s);
        const auto a = sao_spectrum(wide, p);
        const auto b = sao_spectrum(narrow, p.slice(0, 4096));
        ASSERT_EQ(a.eigenvalues.size(), b.eigenvalues.size());
        for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-6);
    }
}

TEST(RiccatiCountSao, Examples) {
    const auto c = sao(2.0, 40.0, 1u << 14, 0.0);
    const auto p = NoisePath::zero(c.grid_n, c.step());
    EXPECT_EQ(riccati_count_sao(-10.0, c, p), 0u);
    for (int m = 0; m < 6; ++m) {
        const double lo = m == 0 ? 0.0 : airy_dirichlet_eigenvalue(m);
        const double lambda = 0.5 * (lo + airy_dirichlet_eigenvalue(m + 1));
        EXPECT_EQ(riccati_count_sao(lambda, c, p), static_cast<std::size_t>(m));
    }
}

TEST(RiccatiCountSao, AgreesWithMatrixAndIsMonotone) {
    const auto c = sao(2.0, 40.0, 1u << 14, 0.0, 41);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ul(-2.0, 20.0);
    int within = 0;
    for (std::uint64_t draw = 0; draw < 200; ++draw) {
        const auto p = sao_path(c, draw);
        const double lambda = ul(rng);
        const std::size_t matrix = sao_matrix(c, p).count_at_most(lambda);
        const std::size_t flow = riccati_count_sao(lambda, c, p);
        within += (flow + 1 >= matrix && matrix + 1 >= flow);
        if (draw < 5) {
            std::size_t prev = 0;
            for (int k = 0; k < 20; ++k) {
                const std::size_t cnt = riccati_count_sao(-4.0 + 1.5 * k, c, p);
                EXPECT_GE(cnt, prev);
                prev = cnt;
            }
        }
    }
    EXPECT_GE(within, 190);
}

TEST(RiccatiCountSao, HillLevelsBracketWindowCounts) {
    // Window k = ((k-1)Ξ, kΞ] carries potential in [(k-1)Ξ, kΞ], so on the
    // shared path N_k(λ) <= window_k(λ) <= N_{k-1}(λ) + 1.
    const double xi = 2.0;
    const std::size_t cells_per_level = 512;
    const std::size_t levels = 5;
    const auto c = sao(2.0, xi * levels, cells_per_level * levels, 0.0, 55);
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> ul(0.0, 40.0);
    for (std::uint64_t draw = 0; draw < 100; ++draw) {
        const auto p = sao_path(c, draw);
        const double lambda = ul(rng);
        const auto windows = sao_window_counts(lambda, c, p, xi);
        ASSERT_EQ(windows.size(), levels);
        for (std::size_t k = 1; k <= levels; ++k) {
            const NoisePath w = p.slice((k - 1) * cells_per_level, cells_per_level);
            HillConfig h;
            h.xi = xi;
            h.beta = 2.0;
            h.grid_n = cells_per_level;
            h.j = k;
            const std::size_t upper_level = riccati_count_hill(lambda, h, w);
            h.j = k - 1;
            const std::size_t lower_level = riccati_count_hill(lambda, h, w);
            EXPECT_LE(upper_level, windows[k - 1]) << draw << " " << k;
            EXPECT_LE(windows[k - 1], lower_level + 1) << draw << " " << k;
        }
    }
}

TEST(DriftedPath, ZeroDriftHasNoWeight) {
    DriftedPathSpec spec;
    spec.base_seed = 3;
    spec.xi = 1.0;
    spec.drift_per_level = {0.0};
    const auto wp = sample_drifted_path(spec, 0, 64);
    EXPECT_EQ(wp.log_weight, 0.0);
    EXPECT_EQ(wp.path.increments, NoisePath::brownian(64, 1.0 / 64, derive_seed(3, 0)).increments);
}

TEST(DriftedPath, WeightIsUnbiased) {
    DriftedPathSpec spec;
    spec.base_seed = 8;
    spec.xi = 1.0;
    spec.t = 2.0;
    spec.drift_per_level = {0.7};
    const std::size_t samples = 100000;
    std::vector<double> w(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        spec.base_seed = derive_seed(8, i);
        w[i] = std::exp(sample_drifted_path(spec, 0, 16).log_weight);
    }
    const auto e = estimate_mean(w, 8);
    EXPECT_LE(std::abs(e.mean - 1.0), 3.0 * e.std_error);
}

TEST(DriftedPath, PenaltyAtMeanPath) {
    const double t = 16.0, v = 0.3, xi = 1.0;  // a = 0
    DriftedPathSpec spec;
    spec.t = t;
    spec.xi = xi;
    spec.drift_per_level = {v};
    const double theta = spec.theta(0);
    NoisePath mean_path = NoisePath::zero(256, xi / 256);
    for (auto& dw : mean_path.increments) dw = theta * mean_path.step;
    const double penalty = -girsanov_log_weight(mean_path, theta);
    const double ref = 0.5 * std::pow(t, 4.0 / 3.0) * v * v;
    EXPECT_NEAR(penalty / ref, 1.0, 0.1);
}

TEST(Sandwich, EmptyStatisticsGiveTrivialBounds) {
    const auto params = DiscretizationParams::with_levels(1.0, 0.0, 2);
    const auto c = sao(1e8, 12.0, 2048, 0.0, 5);
    const auto r = sandwich_check(-0.1, 1.0, 1e8, params, 50, c, 256);
    EXPECT_DOUBLE_EQ(r.middle.mean, 1.0);
    EXPECT_DOUBLE_EQ(r.upper.mean, 1.0);
    EXPECT_DOUBLE_EQ(r.lower.mean, std::exp(-2.0));
}

TEST(Sandwich, OrderedWithinErrors) {
    const auto params = DiscretizationParams::with_levels(1.0, 0.0, 2);
    const auto c = sao(2.0, 12.0, 6144, 0.0, 20240521);
    const auto r = sandwich_check(-1.0, 1.0, 2.0, params, 10000, c, 512);
    EXPECT_LE(r.lower.mean, r.middle.mean + 3.0 * std::hypot(r.lower.std_error, r.middle.std_error));
    EXPECT_LE(r.middle.mean, r.upper.mean + 3.0 * std::hypot(r.middle.std_error, r.upper.std_error));
}

TEST(Sandwich, ProductOfEstimatesMatchesEstimateOfProduct) {
    const double z = -1.0, t = 1.0;
    const auto params = DiscretizationParams::with_levels(t, 0.0, 2);
    const auto c = sao(2.0, 12.0, 2048, 0.0, 13);
    const std::size_t samples = 4000;
    const auto r = sandwich_check(z, t, 2.0, params, samples, c, 256);
    std::vector<McEstimate> levels = r.upper_levels;
    EXPECT_NEAR(product(levels).mean, r.upper.mean, 1e-15);
    // Joint estimate: every sample draws all levels on fresh, independent seeds.
    std::vector<double> joint(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        double prod = 1.0;
        for (std::size_t j = 1; j <= params.n(); ++j) {
            HillConfig h;
            h.j = j;
            h.xi = params.xi();
            h.beta = 2.0;
            h.grid_n = 256;
            h.lambda_cap = deviation_threshold(z, t);
            const auto p = NoisePath::brownian(256, h.step(), derive_seed(derive_seed(999, j), i));
            prod *= std::exp(linear_statistic(hill_spectrum(h, p), z, t));
        }
        joint[i] = prod;
    }
    const auto e = estimate_mean(joint, 999);
    EXPECT_LE(std::abs(e.mean - r.upper.mean), 3.0 * std::hypot(e.std_error, r.upper.std_error));
}

TEST(LdpEstimate, VanishingDeviation) {
    // At z = 0 only the negative SAO eigenvalues contribute, an O(t^{1/3})
    // exponent, so the scaled log decays like t^{-5/3} rather than vanishing
    // at finite t.
    std::vector<double> magnitude;
    for (double t : {1.0, 4.0, 8.0}) {
        const auto c = sao(2.0, std::max(12.0, 2.0 * std::cbrt(t * t) + 6.0), 2048, 0.0, 3);
        const auto near = ldp_estimate(-1e-9, t, c, 400, false);
        const auto at = ldp_estimate(0.0, t, c, 400, false);
        EXPECT_NEAR(near.mean, at.mean, 1e-8);
        EXPECT_LE(near.mean, 0.0);
        magnitude.push_back(-near.mean);
    }
    EXPECT_LT(magnitude[1], magnitude[0]);
    EXPECT_LT(magnitude[2], magnitude[1]);
    EXPECT_LT(magnitude[2], 1e-3);
}

TEST(LdpEstimate, PlainAndImportanceAgreeAtUnitTime) {
    const auto c = sao(2.0, 12.0, 2048, 0.0, 77);
    const auto plain = ldp_estimate(-1.0, 1.0, c, 4000, false);
    const auto is = ldp_estimate(-1.0, 1.0, c, 4000, true);
    EXPECT_LE(std::abs(plain.mean - is.mean), 3.0 * std::hypot(plain.std_error, is.std_error));
}

TEST(LdpEstimate, PlainUnderflowsDeepInTheTail) {
    const auto c = sao(2.0, 19.0, 2048, 0.0, 3);
    EXPECT_THROW(ldp_estimate(-10.0, 16.0, c, 20, false), UnderflowError);
    EXPECT_NO_THROW(ldp_estimate(-10.0, 16.0, c, 20, true));
}

TEST(LdpEstimate, RejectsBadArguments) {
    const auto c = sao(2.0, 12.0, 2048, 0.0, 3);
    EXPECT_THROW(ldp_estimate(1.0, 1.0, c, 10, false), DomainError);
    EXPECT_THROW(ldp_estimate(-1.0, 0.5, c, 10, false), DomainError);
}
