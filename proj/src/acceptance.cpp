#include "kpzlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "kpzlab/fredholm.hpp"
#include "kpzlab/hill.hpp"
#include "kpzlab/monte_carlo.hpp"
#include "kpzlab/rate_function.hpp"
#include "kpzlab/spectrum.hpp"
#include "kpzlab/stochastic_airy.hpp"
#include "kpzlab/variational.hpp"
#include "kpzlab/wkb.hpp"

namespace kpz {

namespace {

using nlohmann::json;
constexpr double kPi = 3.14159265358979323846;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

struct Outcome {
    bool ok = false;
    json measured = json::object();
    std::string detail;
};

Outcome variational_identity(std::uint64_t) {
    Outcome o;
    double worst = 0.0;
    json points = json::array();
    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
        for (double z : {-0.25, -1.0, -2.0, -5.0, -10.0}) {
            const double v = variational_value(z, beta);
            const double ref = phi_minus_scaled(beta, z);
            const double rel = std::abs(v - ref) / ref;
            worst = std::max(worst, rel);
            points.push_back({{"beta", beta}, {"z", z}, {"rel_err", rel}});
        }
    }
    o.measured = {{"max_rel_err", worst}, {"points", points}};
    o.ok = worst <= 1e-6;
    o.detail = "max rel err " + sci(worst) + " (limit 1e-6)";
    return o;
}

Outcome rate_asymptotics(std::uint64_t) {
    Outcome o;
    const double small = phi_minus(-1e-3) / 1e-9;
    const double large = phi_minus(-1e3) * std::pow(1e3, -2.5);
    const double large_ref = 4.0 / (15.0 * kPi);
    const bool small_ok = small >= 0.99 / 12.0 && small <= 1.01 / 12.0;
    const double large_rel = std::abs(large - large_ref) / large_ref;
    o.measured = {{"cubic_ratio_times_12", 12.0 * small}, {"tail_rel_err", large_rel}};
    o.ok = small_ok && large_rel <= 0.05;
    o.detail = "12*phi/|z|^3 = " + sci(12.0 * small) + ", tail rel err " + sci(large_rel);
    return o;
}

Outcome fredholm_identity(std::uint64_t seed) {
    Outcome o;
    const std::vector<KernelParams> params{{1.0, 1.0}, {0.5, 1.0}, {2.0, 0.5}};
    SaoConfig cfg;
    cfg.beta = 2.0;
    cfg.domain_l = 40.0;
    cfg.grid_n = 1u << 14;
    // Truncation at (s, t) = (2, 0.5) needs the spectrum up to 44.4.
    cfg.lambda_cap = 45.0;
    cfg.seed = derive_seed(seed, stream_tag("fredholm"));
    const auto mc = laplace_transform_mc(params, cfg, 2000);
    o.ok = true;
    json rows = json::array();
    std::ostringstream d;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const FredholmResult det = fredholm_det(params[i]);
        const double sig = sigma_distance(det.det, 0.0, mc[i].mean, mc[i].std_error);
        o.ok = o.ok && sig <= 3.0;
        rows.push_back({{"s", params[i].s},
                        {"t", params[i].t},
                        {"det", det.det},
                        {"mc_mean", mc[i].mean},
                        {"mc_stderr", mc[i].std_error},
                        {"sigma_distance", sig}});
        d << "(" << params[i].s << "," << params[i].t << "): " << sig << " sigma; ";
    }
    o.measured = {{"points", rows}, {"samples", 2000}};
    o.detail = d.str();
    return o;
}

Outcome riccati_agreement(std::uint64_t seed) {
    Outcome o;
    const std::size_t draws = 200;
    const std::uint64_t root = derive_seed(seed, stream_tag("riccati"));

    SaoConfig sao;
    sao.beta = 2.0;
    sao.domain_l = 40.0;
    sao.grid_n = 1u << 14;
    sao.lambda_cap = 40.0;
    sao.seed = derive_seed(root, stream_tag("sao"));
    std::size_t sao_ok = 0;
    Rng rng(derive_seed(root, stream_tag("lambda")));
    for (std::size_t k = 0; k < draws; ++k) {
        const double lambda = std::uniform_real_distribution<double>(-2.0, 20.0)(rng);
        const NoisePath path = sao_path(sao, k);
        const auto m = static_cast<long>(sao_matrix(sao, path).count_at_most(lambda));
        const auto r = static_cast<long>(riccati_count_sao(lambda, sao, path));
        sao_ok += std::abs(m - r) <= 1;
    }

    std::size_t hill_ok = 0;
    const std::uint64_t hill_root = derive_seed(root, stream_tag("hill"));
    for (std::size_t k = 0; k < draws; ++k) {
        HillConfig h;
        h.j = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 4)(rng));
        h.xi = 2.0;
        h.beta = 2.0;
        h.grid_n = 1u << 14;
        h.lambda_cap = 100.0;
        const double base = static_cast<double>(h.j) * h.xi;
        const double lambda = std::uniform_real_distribution<double>(base - 5.0, base + 60.0)(rng);
        const NoisePath path = NoisePath::brownian(h.grid_n, h.step(), derive_seed(hill_root, k));
        const auto m = static_cast<long>(hill_matrix(h, path).count_at_most(lambda));
        const auto r = static_cast<long>(riccati_count_hill(lambda, h, path));
        hill_ok += std::abs(m - r) <= 1;
    }
    const double fs = static_cast<double>(sao_ok) / draws;
    const double fh = static_cast<double>(hill_ok) / draws;
    o.measured = {{"sao_fraction", fs}, {"hill_fraction", fh}, {"draws", draws}};
    o.ok = fs >= 0.95 && fh >= 0.95;
    o.detail = "within +-1: sao " + sci(fs) + ", hill " + sci(fh);
    return o;
}

Outcome wkb_inequality(std::uint64_t seed) {
    Outcome o;
    const WkbReport r = wkb_trials(200, 512, derive_seed(seed, stream_tag("wkb")));
    o.measured = {{"trials", r.trials}, {"violations", r.violations}, {"max_gap", r.max_gap}};
    o.ok = r.violations == 0;
    o.detail = std::to_string(r.violations) + " violations in " + std::to_string(r.trials) + " trials";
    return o;
}

Outcome sandwich(std::uint64_t seed) {
    Outcome o;
    const auto params = DiscretizationParams::with_levels(1.0, 0.0, 2);
    SaoConfig sao;
    sao.beta = 2.0;
    sao.domain_l = 12.0;
    sao.grid_n = 12 * 512;
    sao.seed = derive_seed(seed, stream_tag("sandwich"));
    const SandwichResult r = sandwich_check(-1.0, 1.0, 2.0, params, 10000, sao, 512);
    const double lo_gap = r.lower.mean - r.middle.mean;
    const double lo_tol = 3.0 * std::hypot(r.lower.std_error, r.middle.std_error);
    const double up_gap = r.middle.mean - r.upper.mean;
    const double up_tol = 3.0 * std::hypot(r.middle.std_error, r.upper.std_error);
    auto est = [](const McEstimate& e) { return json{{"mean", e.mean}, {"stderr", e.std_error}}; };
    o.measured = {{"lower", est(r.lower)}, {"middle", est(r.middle)}, {"upper", est(r.upper)}, {"samples", 10000}};
    o.ok = lo_gap <= lo_tol && up_gap <= up_tol;
    std::ostringstream d;
    d << "lower " << r.lower.mean << " middle " << r.middle.mean << " upper " << r.upper.mean;
    o.detail = d.str();
    return o;
}

Outcome ldp_trend(std::uint64_t seed) {
    Outcome o;
    const double z = -1.0;
    const double target = -phi_minus(z);
    json rows = json::array();
    std::vector<double> means;
    bool finite = true;
    for (double t : {4.0, 8.0, 16.0}) {
        SaoConfig cfg;
        cfg.beta = 2.0;
        cfg.domain_l = std::max(12.0, 2.0 * std::pow(t, 2.0 / 3.0) + 6.0);
        cfg.grid_n = 2048;
        cfg.lambda_cap = 0.0;
        cfg.seed = derive_seed(seed, stream_tag("ldp"));
        const McEstimate e = ldp_estimate(z, t, cfg, 20000, true);
        finite = finite && std::isfinite(e.mean) && std::isfinite(e.std_error);
        means.push_back(e.mean);
        rows.push_back({{"t", t}, {"mean", e.mean}, {"stderr", e.std_error}});
    }
    const bool decreasing = means[0] > means[1] && means[1] > means[2];
    const double rel = std::abs(means[2] - target) / std::abs(target);
    o.measured = {{"points", rows}, {"target", target}, {"t16_rel_err", rel}, {"decreasing", decreasing}};
    o.ok = finite && decreasing && rel <= 0.35;
    std::ostringstream d;
    d << "estimates " << means[0] << ", " << means[1] << ", " << means[2] << "; decreasing=" << (decreasing ? "yes" : "no")
      << "; t=16 rel err " << rel;
    o.detail = d.str();
    return o;
}

// -t^{1/3}∫_{(-∞, T]} N(λ)dλ by the trapezoid rule on a grid that contains
// every jump of N, where the rule is exact.
double integrated_count(const std::vector<double>& eig, double threshold, double t) {
    std::vector<double> cuts;
    for (double e : eig) {
        if (e < threshold) cuts.push_back(e);
    }
    cuts.push_back(threshold);
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double n_left = static_cast<double>(k + 1);  // N just right of cuts[k]
        const double n_right = static_cast<double>(k + 1);  // N just left of cuts[k+1]
        integral += 0.5 * (n_left + n_right) * (cuts[k + 1] - cuts[k]);
    }
    return -std::cbrt(t) * integral;
}

Outcome dual_representation(std::uint64_t seed) {
    Outcome o;
    Rng rng(derive_seed(seed, stream_tag("dual")));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double t = std::uniform_real_distribution<double>(1.0, 10.0)(rng);
        const double z = std::uniform_real_distribution<double>(-2.0, -0.1)(rng);
        const double threshold = deviation_threshold(z, t);
        const int count = std::uniform_int_distribution<int>(1, 40)(rng);
        SpectrumSample s;
        for (int i = 0; i < count; ++i) {
            s.eigenvalues.push_back(std::uniform_real_distribution<double>(-5.0, threshold + 2.0)(rng));
        }
        std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
        s.cap = threshold + 2.0;
        const double direct = linear_statistic(s, z, t);
        const double dual = integrated_count(s.eigenvalues, threshold, t);
        const double rel = std::abs(direct - dual) / std::max(std::abs(direct), 1e-300);
        if (direct != 0.0 || dual != 0.0) worst = std::max(worst, rel);
    }
    o.measured = {{"max_rel_err", worst}, {"spectra", 100}};
    o.ok = worst <= 1e-6;
    o.detail = "max rel err " + sci(worst);
    return o;
}

Outcome proxy_bounds(std::uint64_t seed) {
    Outcome o;
    Rng rng(derive_seed(seed, stream_tag("proxy")));
    std::size_t bad = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1000; ++k) {
        const double a = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        const double t = std::uniform_real_distribution<double>(0.01, 20.0)(rng);
        const double z = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        const double u = t * (z + a);
        const double psi = proxy_psi(a, t, z);
        const double gap = std::abs(psi - std::max(-u, 0.0));
        // The subtraction itself is exact only to a few ulps of psi.
        const double bound = std::exp(-std::abs(u)) + 4.0 * std::numeric_limits<double>::epsilon() * psi;
        worst_excess = std::max(worst_excess, gap - std::exp(-std::abs(u)));
        bad += gap > bound;
    }
    bool monotone = true;
    double prev = proxy_f(-40.0);
    for (double x = -39.9; x <= 5.0 + 1e-9; x += 0.1) {
        const double f = proxy_f(x);
        monotone = monotone && f <= prev;
        prev = f;
    }
    const bool limits = std::abs(proxy_f(-40.0) - 1.0) <= 1e-15 && proxy_f(5.0) <= std::exp(-std::exp(5.0));
    o.measured = {{"violations", bad}, {"max_excess", worst_excess}, {"f_monotone", monotone}, {"f_limits", limits}};
    o.ok = bad == 0 && monotone && limits;
    o.detail = std::to_string(bad) + " bound violations; F monotone=" + (monotone ? "yes" : "no") +
               ", limits=" + (limits ? "yes" : "no");
    return o;
}

struct Spec {
    const char* name;
    bool mc;
    double limit_s;
    Outcome (*run)(std::uint64_t);
};

const Spec kSpecs[kCriterionCount] = {
    {"variational identity", false, 5.0, variational_identity},
    {"rate function asymptotics", false, 1.0, rate_asymptotics},
    {"fredholm determinant vs airy point process", true, 600.0, fredholm_identity},
    {"riccati and matrix counts agree", false, 300.0, riccati_agreement},
    {"wkb inequality", false, 120.0, wkb_inequality},
    {"localization sandwich", true, 600.0, sandwich},
    {"ldp trend with importance sampling", true, 1800.0, ldp_trend},
    {"linear statistic dual representation", false, 10.0, dual_representation},
    {"proxy function bounds", false, 1.0, proxy_bounds},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("run_criterion: no criterion " + std::to_string(id));
    const Spec& s = kSpecs[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = s.name;
    r.monte_carlo = s.mc;
    r.runtime_limit_s = s.limit_s;
    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome o = s.run(derive_seed(seed, static_cast<std::uint64_t>(id)));
        r.passed = o.ok;
        r.measured = std::move(o.measured);
        r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.runtime_limit_s) {
        r.passed = false;
        r.detail += " [over runtime limit]";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
            continue;
        }
        if (options.skip_mc && kSpecs[id - 1].mc) continue;
        out.push_back(run_criterion(id, options.seed));
    }
    return out;
}

json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed) {
    json crit = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        crit.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"monte_carlo", r.monte_carlo},
                        {"runtime_limit_s", r.runtime_limit_s},
                        {"measured", r.measured},
                        {"detail", r.detail}});
    }
    return {{"criteria", crit}, {"all_passed", all}, {"seed", seed}};
}

std::string summary_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + " (" + buf + "s) " +
           r.detail;
}

}  // namespace kpz
