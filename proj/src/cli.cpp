#include "kpzlab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kpzlab/acceptance.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/fredholm.hpp"
#include "kpzlab/hill.hpp"
#include "kpzlab/random.hpp"
#include "kpzlab/rate_function.hpp"
#include "kpzlab/stochastic_airy.hpp"
#include "kpzlab/variational.hpp"
#include "kpzlab/wkb.hpp"

namespace kpz {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::ostringstream o;
        auto line = [&o](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) o << (i ? "," : "") << cells[i];
            o << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return o.str();
    }
};

std::string spectrum_csv(const SpectrumSample& s) {
    Csv c{{"index", "eigenvalue"}, {}};
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) c.rows.push_back({std::to_string(i + 1), num(s.eigenvalues[i])});
    return c.str();
}

json estimate_json(const McEstimate& e) {
    return {{"mean", e.mean}, {"stderr", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

Boundary parse_boundary(const std::string& b) {
    if (b == "dirichlet") return Boundary::Dirichlet;
    if (b == "periodic") return Boundary::Periodic;
    throw ConfigError("unknown boundary '" + b + "' (dirichlet|periodic)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"kpzlab: lower-tail KPZ spectral laboratory"};
    app.require_subcommand(1);

    std::uint64_t seed = AcceptanceOptions{}.seed;
    std::string format;
    std::string out_path;
    app.add_option("--seed", seed, "Root seed")->capture_default_str();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write the report to this file");

    // rate-fn
    auto* rate = app.add_subcommand("rate-fn", "Rate function on a z grid (CSV: z, phi, phi_scaled)");
    double z_min = -2.0, z_max = 0.0, rate_beta = 2.0;
    std::size_t steps = 5;
    rate->add_option("--z-min", z_min)->capture_default_str();
    rate->add_option("--z-max", z_max)->capture_default_str();
    rate->add_option("--steps", steps)->capture_default_str();
    rate->add_option("--beta", rate_beta)->capture_default_str();

    // variational
    auto* var = app.add_subcommand("variational", "Variational value against the scaled rate function");
    double var_z = -1.0, var_beta = 2.0, var_a = 0.0;
    std::optional<double> var_t;
    var->add_option("--z", var_z)->capture_default_str();
    var->add_option("--beta", var_beta)->capture_default_str();
    var->add_option("--t", var_t, "Also report the level Riemann sum at this t");
    var->add_option("--a", var_a)->capture_default_str();

    // hill
    auto* hill = app.add_subcommand("hill", "Hill operator spectrum (CSV) or Riccati count (JSON)");
    HillConfig hc;
    hc.lambda_cap = 50.0;
    std::string boundary = "dirichlet";
    std::optional<double> hill_lambda;
    hill->add_option("--j", hc.j)->capture_default_str();
    hill->add_option("--xi", hc.xi)->capture_default_str();
    hill->add_option("--beta", hc.beta)->capture_default_str();
    hill->add_option("--boundary", boundary)->check(CLI::IsMember({"dirichlet", "periodic"}))->capture_default_str();
    hill->add_option("--grid-n", hc.grid_n)->capture_default_str();
    hill->add_option("--cap", hc.lambda_cap)->capture_default_str();
    hill->add_option("--lambda", hill_lambda, "Count eigenvalues <= lambda instead of listing them");

    // sao
    auto* sao = app.add_subcommand("sao", "Stochastic Airy operator");
    sao->require_subcommand(1);
    SaoConfig sc;
    sc.domain_l = 20.0;
    sc.grid_n = 8192;
    double sao_z = -1.0, sao_t = 1.0, sao_a = 0.0, sao_lambda = 0.0;
    std::size_t samples = 1000, level_grid_n = 512;
    std::optional<std::size_t> n_levels;
    bool importance = false;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--beta", sc.beta)->capture_default_str();
        c->add_option("--grid-n", sc.grid_n)->capture_default_str();
        c->add_option("--domain-l", sc.domain_l)->capture_default_str();
    };
    auto* sao_spec = sao->add_subcommand("spectrum", "Eigenvalues <= cap of one sample");
    add_common(sao_spec);
    sao_spec->add_option("--cap", sc.lambda_cap)->capture_default_str();
    auto* sao_count = sao->add_subcommand("count", "Riccati and matrix counts at lambda");
    add_common(sao_count);
    sao_count->add_option("--lambda", sao_lambda)->required();
    auto* sao_sand = sao->add_subcommand("sandwich", "Localization bounds by Monte Carlo");
    add_common(sao_sand);
    sao_sand->add_option("--z", sao_z)->capture_default_str();
    sao_sand->add_option("--t", sao_t)->capture_default_str();
    sao_sand->add_option("--a", sao_a)->capture_default_str();
    sao_sand->add_option("--samples", samples)->capture_default_str();
    sao_sand->add_option("--levels", n_levels, "Number of levels (default ceil(-z t^{2/3-a}))");
    sao_sand->add_option("--level-grid-n", level_grid_n)->capture_default_str();
    auto* sao_ldp = sao->add_subcommand("ldp", "(1/t^2) log E[exp(linear statistic)]");
    add_common(sao_ldp);
    sao_ldp->add_option("--z", sao_z)->capture_default_str();
    sao_ldp->add_option("--t", sao_t)->capture_default_str();
    sao_ldp->add_option("--a", sao_a)->capture_default_str();
    sao_ldp->add_option("--samples", samples)->capture_default_str();
    sao_ldp->add_flag("--importance", importance, "Sample drifted paths and reweight");

    // fredholm
    auto* fred = app.add_subcommand("fredholm", "det(I - K_{s,t}) by Nystrom quadrature");
    KernelParams kp;
    FredholmOptions fo;
    fred->add_option("--s", kp.s)->capture_default_str();
    fred->add_option("--t", kp.t)->capture_default_str();
    fred->add_option("--grid-n", fo.nodes)->capture_default_str();
    fred->add_option("--xmax", fo.x_max)->capture_default_str();
    auto* fred_cmp = fred->add_subcommand("compare", "Determinant against the SAO Monte-Carlo estimate");
    SaoConfig fc;
    fc.domain_l = 40.0;
    fc.grid_n = 1u << 14;
    fc.lambda_cap = 45.0;
    std::size_t fred_samples = 2000;
    fred_cmp->add_option("--s", kp.s)->capture_default_str();
    fred_cmp->add_option("--t", kp.t)->capture_default_str();
    fred_cmp->add_option("--samples", fred_samples)->capture_default_str();
    fred_cmp->add_option("--sao-grid-n", fc.grid_n)->capture_default_str();
    fred_cmp->add_option("--domain-l", fc.domain_l)->capture_default_str();
    fred_cmp->add_option("--cap", fc.lambda_cap)->capture_default_str();

    // wkb
    auto* wkb = app.add_subcommand("wkb", "Randomized check of the periodic WKB inequality");
    std::size_t trials = 200, wkb_grid = 512;
    wkb->add_option("--trials", trials)->capture_default_str();
    wkb->add_option("--grid-n", wkb_grid)->capture_default_str();

    // report
    auto* rep = app.add_subcommand("report", "Run the acceptance criteria");
    std::vector<std::string> skip;
    std::vector<int> only;
    rep->add_option("--skip", skip, "Skip a class of criteria (mc)")->check(CLI::IsMember({"mc"}));
    rep->add_option("--only", only, "Criterion ids to run (comma separated)")->delimiter(',')->check(CLI::Range(1, static_cast<int>(kCriterionCount)));

    // Seed options also accepted after the subcommand name.
    for (CLI::App* c : {rate, var, hill, sao_spec, sao_count, sao_sand, sao_ldp, fred, fred_cmp, wkb, rep}) {
        c->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    json j;
    std::string text;
    bool use_csv = false;
    int code = kExitOk;
    auto header = [&](const std::string& command) {
        j = json::object();
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["seed"] = seed;
    };

    try {
        if (rate->parsed()) {
            if (steps < 1) throw ConfigError("rate-fn: steps must be positive");
            Csv c{{"z", "phi", "phi_scaled"}, {}};
            header("rate-fn");
            json rows = json::array();
            for (std::size_t k = 0; k < steps; ++k) {
                const double z = steps == 1 ? z_max
                                            : z_min + (z_max - z_min) * static_cast<double>(k) / static_cast<double>(steps - 1);
                const double p = phi_minus(z);
                const double ps = phi_minus_scaled(rate_beta, z);
                c.rows.push_back({num(z), num(p), num(ps)});
                rows.push_back({{"z", z}, {"phi", p}, {"phi_scaled", ps}});
            }
            j["beta"] = rate_beta;
            j["rows"] = rows;
            use_csv = format != "json";
            text = c.str();
        } else if (var->parsed()) {
            header("variational");
            const double v = variational_value(var_z, var_beta);
            const double ref = phi_minus_scaled(var_beta, var_z);
            j["z"] = var_z;
            j["beta"] = var_beta;
            j["variational_value"] = v;
            j["phi_scaled"] = ref;
            j["rel_err"] = ref == 0.0 ? std::abs(v) : std::abs(v - ref) / ref;
            if (var_t) {
                const auto params = DiscretizationParams::for_deviation(*var_t, var_a, var_z);
                j["t"] = *var_t;
                j["a"] = var_a;
                j["levels"] = params.n();
                j["riemann_sum"] = riemann_sum_value(var_z, var_beta, params);
            }
        } else if (hill->parsed()) {
            hc.boundary = parse_boundary(boundary);
            hc.validate();
            const NoisePath path = NoisePath::brownian(hc.grid_n, hc.step(), derive_seed(seed, stream_tag("hill")));
            header("hill");
            j["j"] = hc.j;
            j["xi"] = hc.xi;
            j["beta"] = hc.beta;
            j["boundary"] = boundary;
            j["grid_n"] = hc.grid_n;
            if (hill_lambda) {
                j["lambda"] = *hill_lambda;
                j["riccati_count"] = riccati_count_hill(*hill_lambda, hc, path);
                j["matrix_count"] = hill_matrix(hc, path).count_at_most(*hill_lambda);
            } else {
                const SpectrumSample s = hill_spectrum(hc, path);
                j["cap"] = s.cap;
                j["eigenvalues"] = s.eigenvalues;
                use_csv = format != "json";
                text = spectrum_csv(s);
            }
        } else if (sao->parsed()) {
            sc.seed = derive_seed(seed, stream_tag("sao"));
            j = json::object();
            auto common = [&](const std::string& cmd) {
                header("sao " + cmd);
                j["beta"] = sc.beta;
                j["grid_n"] = sc.grid_n;
                j["domain_l"] = sc.domain_l;
            };
            if (sao_spec->parsed()) {
                common("spectrum");
                const SpectrumSample s = sao_spectrum(sc, sao_path(sc, 0));
                j["cap"] = s.cap;
                j["eigenvalues"] = s.eigenvalues;
                j["boundary_safe"] = sc.boundary_safe();
                use_csv = format != "json";
                text = spectrum_csv(s);
            } else if (sao_count->parsed()) {
                common("count");
                const NoisePath path = sao_path(sc, 0);
                j["lambda"] = sao_lambda;
                j["riccati_count"] = riccati_count_sao(sao_lambda, sc, path);
                j["matrix_count"] = sao_matrix(sc, path).count_at_most(sao_lambda);
            } else if (sao_sand->parsed()) {
                common("sandwich");
                const auto params = n_levels ? DiscretizationParams::with_levels(sao_t, sao_a, *n_levels)
                                             : DiscretizationParams::for_deviation(sao_t, sao_a, sao_z);
                const SandwichResult r = sandwich_check(sao_z, sao_t, sc.beta, params, samples, sc, level_grid_n);
                j["z"] = sao_z;
                j["t"] = sao_t;
                j["a"] = sao_a;
                j["levels"] = params.n();
                j["lower"] = estimate_json(r.lower);
                j["middle"] = estimate_json(r.middle);
                j["upper"] = estimate_json(r.upper);
                const double tol_lo = 3.0 * std::hypot(r.lower.std_error, r.middle.std_error);
                const double tol_up = 3.0 * std::hypot(r.middle.std_error, r.upper.std_error);
                j["ordered"] = r.lower.mean <= r.middle.mean + tol_lo && r.middle.mean <= r.upper.mean + tol_up;
            } else if (sao_ldp->parsed()) {
                common("ldp");
                const McEstimate e = ldp_estimate(sao_z, sao_t, sc, samples, importance, sao_a);
                j["z"] = sao_z;
                j["t"] = sao_t;
                j["a"] = sao_a;
                j["importance"] = importance;
                j["estimate"] = estimate_json(e);
                j["target"] = -phi_minus_scaled(sc.beta, sao_z);
            }
        } else if (fred->parsed()) {
            if (fred_cmp->parsed()) {
                header("fredholm compare");
                fc.beta = 2.0;
                fc.seed = derive_seed(seed, stream_tag("fredholm"));
                const FredholmResult d = fredholm_det(kp);
                const McEstimate mc = laplace_transform_mc(kp, fc, fred_samples);
                j["s"] = kp.s;
                j["t"] = kp.t;
                j["det"] = d.det;
                j["mc_mean"] = mc.mean;
                j["mc_stderr"] = mc.std_error;
                j["samples"] = mc.samples;
                j["sigma_distance"] = sigma_distance(d.det, 0.0, mc.mean, mc.std_error);
            } else {
                header("fredholm");
                if (fo.refined_nodes <= fo.nodes) fo.refined_nodes = fo.nodes + fo.nodes / 2;
                const FredholmResult d = fredholm_det(kp, fo);
                j["s"] = kp.s;
                j["t"] = kp.t;
                j["nodes"] = d.nodes;
                j["x_max"] = fo.x_max;
                j["det"] = d.det;
                j["log_det"] = d.log_det;
                j["refinement_change"] = d.refinement_change;
            }
        } else if (wkb->parsed()) {
            header("wkb");
            const WkbReport r = wkb_trials(trials, wkb_grid, derive_seed(seed, stream_tag("wkb")));
            j["trials"] = r.trials;
            j["violations"] = r.violations;
            j["max_gap"] = r.max_gap;
            j["grid_n"] = wkb_grid;
        } else if (rep->parsed()) {
            AcceptanceOptions opt;
            opt.seed = seed;
            opt.skip_mc = !skip.empty();
            opt.only = only;
            const auto results = run_acceptance(opt);
            for (const auto& r : results) err << summary_line(r) << '\n';
            header("report");
            const json body = acceptance_report(results, seed);
            for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
            if (!body["all_passed"].get<bool>()) code = kExitCriteriaFailed;
        }
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ContractError& e) {
        err << "contract error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ResolutionError& e) {
        err << "resolution error: " << e.what() << '\n';
        return kExitResolution;
    } catch (const IncompletenessError& e) {
        err << "incompleteness error: " << e.what() << '\n';
        return kExitResolution;
    } catch (const UnderflowError& e) {
        err << "underflow error: " << e.what() << '\n';
        return kExitResolution;
    }

    if (format == "csv" && !use_csv && text.empty()) {
        err << "csv output is not available for this command; writing json\n";
    }
    const std::string payload = use_csv ? text : j.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "cannot open " << out_path << '\n';
            return kExitDomain;
        }
        f << payload;
    } else {
        out << payload;
    }
    return code;
}

}  // namespace kpz
