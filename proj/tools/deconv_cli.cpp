// Command-line front end: wires scenarios, estimators and analysis into
// reproducible runs emitting CSV/JSON artifacts plus a manifest.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "deconv/analysis.hpp"
#include "deconv/density.hpp"
#include "deconv/io.hpp"
#include "deconv/min_contrast.hpp"
#include "deconv/regression.hpp"
#include "deconv/simulation.hpp"
#include "deconv/threading.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace deconv;

namespace {

constexpr const char* kVersion = "deconv 0.1.0";

void deep_merge(json& base, const json& overlay) {
    if (!overlay.is_object() || !base.is_object()) {
        base = overlay;
        return;
    }
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
            deep_merge(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
}

json default_config() {
    return json{
        {"seed", 1},
        {"out", "."},
        {"threads", 0},  // 0: DECONV_THREADS env, else hardware
        {"preset", ""},
        {"dataset", ""},
        {"estimator", "deconv-kde"},
        {"kernel", "sinc"},
        {"h", "oracle"},
        {"scenario",
         {{"truth", "gaussian:mean=0,sd=1"},
          {"error", "laplace:varratio=0.1"},
          {"n", 100},
          {"model", "density"},
          {"g", ""},
          {"v_noise", 0.0}}},
        {"grid", {{"lo", nullptr}, {"hi", nullptr}, {"points", 512}}},
        {"quad", {{"nodes", kDefaultQuadNodes}}},
        {"pce", {{"k0", 255}, {"probe_extra", 50}}},
        {"rates",
         {{"sizes", json::array()},
          {"replicates", 40},
          {"bootstrap", 200},
          {"estimator", "deconv-kde"}}},
        {"phiu", {{"t_lo", 0.0}, {"t_hi", 3.0}, {"points", 61}, {"n", 5000}, {"m", 2}}},
    };
}

struct RunContext {
    json cfg;
    std::string command;
    std::vector<std::string> artifacts;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    fs::path out_dir() const { return fs::path(cfg.at("out").get<std::string>()); }

    std::string emit(const std::string& name) {
        const fs::path p = out_dir() / name;
        artifacts.push_back(p.string());
        return p.string();
    }

    // the manifest is written last: a run is complete iff it exists
    void write_manifest() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json m{{"command", command},
               {"config", cfg},
               {"seed", cfg.at("seed").get<std::uint64_t>()},
               {"artifacts", artifacts},
               {"version", kVersion},
               {"duration_seconds", secs}};
        io::write_json_file(m, (out_dir() / "manifest.json").string());
    }
};

Scenario scenario_from(const json& cfg) {
    Scenario scn;
    const std::string preset = cfg.at("preset").get<std::string>();
    const json& s = cfg.at("scenario");
    if (!preset.empty()) {
        scn = preset_scenario(preset);
    } else {
        scn.truth = TrueDensity::parse(s.at("truth").get<std::string>());
        scn.error = parse_error_model(s.at("error").get<std::string>(), scn.truth.variance());
        const std::string model = s.at("model").get<std::string>();
        if (model == "density") scn.model = ModelKind::Density;
        else if (model == "regression") scn.model = ModelKind::Regression;
        else if (model == "berkson") scn.model = ModelKind::Berkson;
        else throw ConfigInvalid("unknown model '" + model + "'");
        const std::string g = s.at("g").get<std::string>();
        if (!g.empty()) scn.g = parse_regression_fn(g);
        scn.v_noise = s.at("v_noise").get<double>();
    }
    if (s.contains("n") && !s.at("n").is_null()) scn.n = s.at("n").get<std::size_t>();
    scn.seed = cfg.at("seed").get<std::uint64_t>();
    return scn;
}

struct ResolvedInput {
    ContaminatedSample sample;
    std::optional<Scenario> scenario;  // absent when data came from a file
};

ResolvedInput resolve_input(const json& cfg) {
    const std::string dataset = cfg.at("dataset").get<std::string>();
    if (!dataset.empty()) return {io::read_sample_csv(dataset), std::nullopt};
    Scenario scn = scenario_from(cfg);
    return {generate(scn), scn};
}

double resolve_bandwidth(const json& cfg, const ResolvedInput& input, EstimatorKind kind,
                         const KernelSpec& kernel, const ErrorModel& error, json& resolved) {
    const json& h = cfg.at("h");
    if (h.is_number()) {
        resolved["h_resolved"] = h.get<double>();
        return h.get<double>();
    }
    const std::string text = h.get<std::string>();
    if (text != "oracle")
        throw ConfigInvalid("config key 'h' must be a number or \"oracle\", got '" + text + "'");
    if (!input.scenario)
        throw ConfigInvalid("h=oracle needs a simulated scenario (the truth must be known)");
    const auto& truth = input.scenario->truth;
    const auto [lo, hi] = truth.support_hint();
    const std::vector<double> eval_grid = linspace(lo, hi, 301);
    const std::vector<double> h_grid = default_h_grid(input.sample);
    const OracleSearch best =
        oracle_bandwidth(input.sample, truth, kind, kernel, error, h_grid, eval_grid,
                         cfg.at("quad").at("nodes").get<int>());
    resolved["h_resolved"] = best.h;
    resolved["oracle_ise"] = best.ise;
    resolved["oracle_interior"] = best.interior;
    return best.h;
}

std::vector<double> resolve_grid(const json& cfg, const ContaminatedSample& sample, double h) {
    const json& g = cfg.at("grid");
    const std::size_t points = g.at("points").get<std::size_t>();
    if (!g.at("lo").is_null() && !g.at("hi").is_null())
        return linspace(g.at("lo").get<double>(), g.at("hi").get<double>(), points);
    return default_grid(sample.w, h, points);
}

ErrorModel error_from(const json& cfg, const ResolvedInput& input) {
    if (input.scenario) return input.scenario->error;
    const std::string text = cfg.at("scenario").at("error").get<std::string>();
    // dataset runs have no scenario truth; varratio cannot be resolved then
    return parse_error_model(text, std::nullopt);
}

int cmd_estimate(RunContext& ctx) {
    json& cfg = ctx.cfg;
    ResolvedInput input = resolve_input(cfg);
    const std::string estimator = cfg.at("estimator").get<std::string>();
    const KernelSpec kernel = parse_kernel_spec(cfg.at("kernel").get<std::string>());
    const int n_quad = cfg.at("quad").at("nodes").get<int>();
    const ErrorModel error = estimator.rfind("deconv", 0) == 0 ? error_from(cfg, input)
                                                               : make_degenerate_error();
    const EstimatorKind kind =
        estimator == "kde" ? EstimatorKind::Kde : EstimatorKind::DeconvKde;
    const double h = resolve_bandwidth(cfg, input, kind, kernel, error, cfg);
    const std::vector<double> grid = resolve_grid(cfg, input.sample, h);

    CurveEstimate est;
    if (estimator == "kde") {
        est = kde(input.sample.w, kernel, h, grid, n_quad);
    } else if (estimator == "deconv-kde") {
        const DeconvKernelPlan plan(kernel, error, h, 0, n_quad);
        est = deconv_kde(input.sample, plan, grid);
    } else if (estimator == "local-constant" || estimator == "local-linear") {
        if (!input.sample.has_responses())
            throw ConfigInvalid("estimator '" + estimator + "' needs responses y");
        RegressionConfig rc{estimator == "local-linear" ? 1 : 0, kernel, h, 1e-10, n_quad};
        est = local_polynomial(input.sample.w, input.sample.y, rc, grid);
    } else if (estimator == "deconv-local-constant" || estimator == "deconv-local-linear") {
        RegressionConfig rc{estimator == "deconv-local-linear" ? 1 : 0, kernel, h, 1e-10, n_quad};
        est = deconv_local_polynomial(input.sample, rc, error, grid);
    } else {
        throw ConfigInvalid("unknown estimator '" + estimator + "'");
    }
    est.meta.seed = cfg.at("seed").get<std::uint64_t>();

    io::write_curve_csv(est, ctx.emit("curve.csv"));
    io::write_curve_sidecar(est, ctx.emit("curve.meta.json"));
    ctx.write_manifest();
    return 0;
}

int cmd_compare_pce(RunContext& ctx) {
    json& cfg = ctx.cfg;
    ResolvedInput input = resolve_input(cfg);
    const KernelSpec kernel = make_sinc_kernel();  // forced for the comparison
    cfg["kernel"] = "sinc";
    const ErrorModel error = error_from(cfg, input);
    const int n_quad = cfg.at("quad").at("nodes").get<int>();
    const double h =
        resolve_bandwidth(cfg, input, EstimatorKind::DeconvKde, kernel, error, cfg);
    const PceConfig pce_cfg = PceConfig::from_bandwidth(h, cfg.at("pce").at("k0").get<int>());

    // shared grid: display points plus every k/ell probe inside the window
    std::vector<double> grid = resolve_grid(cfg, input.sample, h);
    const double lo = grid.front(), hi = grid.back();
    for (int k = -pce_cfg.k0; k <= pce_cfg.k0; ++k) {
        const double x = static_cast<double>(k) * pce_cfg.h();
        if (x > lo && x < hi) grid.push_back(x);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
               grid.end());

    const DeconvKernelPlan plan(kernel, error, h, 0, n_quad);
    CurveEstimate fdecon = deconv_kde(input.sample, plan, grid);
    fdecon.meta.seed = cfg.at("seed").get<std::uint64_t>();
    PceEstimate pce = pce_estimate(input.sample, error, pce_cfg, grid, n_quad);
    pce.curve.meta.seed = fdecon.meta.seed;

    const int extra = cfg.at("pce").at("probe_extra").get<int>();
    std::vector<int> probes;
    for (int k = -(pce_cfg.k0 + extra); k <= pce_cfg.k0 + extra; ++k) probes.push_back(k);
    const TheoremReport rep = verify_theorem(input.sample, error, pce_cfg, probes, n_quad);

    io::write_curve_csv(fdecon, ctx.emit("fdecon.csv"));
    io::write_curve_csv(pce.curve, ctx.emit("pce.csv"));
    {
        const std::string path = ctx.emit("coefficients.csv");
        std::ofstream out(path, std::ios::binary);
        out << "k,a_hat\n";
        for (int k = -pce_cfg.k0; k <= pce_cfg.k0; ++k)
            out << k << ',' << io::format_g17(pce.coefficient(k)) << '\n';
    }
    json rj{{"pass", rep.pass},
            {"max_inside_diff", rep.max_inside_diff},
            {"max_outside_abs", rep.max_outside_abs},
            {"n_inside", rep.n_inside},
            {"n_outside", rep.n_outside},
            {"tolerance", rep.tolerance},
            {"h", h},
            {"ell", pce_cfg.ell},
            {"k0", pce_cfg.k0},
            {"warnings", pce.warnings}};
    io::write_json_file(rj, ctx.emit("theorem.json"));
    ctx.write_manifest();
    std::cout << (rep.pass ? "PASS" : "FAIL")
              << " max_inside=" << rep.max_inside_diff
              << " max_outside=" << rep.max_outside_abs << "\n";
    return rep.pass ? 0 : 3;
}

int cmd_rates(RunContext& ctx) {
    json& cfg = ctx.cfg;
    const json& rc = cfg.at("rates");
    RateExperiment exp;
    exp.sizes = rc.at("sizes").get<std::vector<std::size_t>>();
    if (exp.sizes.size() < 3) throw ConfigInvalid("rates: need at least 3 sizes (key rates.sizes)");
    exp.replicates = rc.at("replicates").get<int>();
    if (exp.replicates < 1) throw ConfigInvalid("rates: replicates must be >= 1 (key rates.replicates)");
    const Scenario scn = scenario_from(cfg);
    exp.truth = scn.truth;
    exp.error = scn.error;
    exp.kernel = parse_kernel_spec(cfg.at("kernel").get<std::string>());
    exp.kind = rc.at("estimator").get<std::string>() == "kde" ? EstimatorKind::Kde
                                                              : EstimatorKind::DeconvKde;
    exp.seed = cfg.at("seed").get<std::uint64_t>();
    exp.n_quad = cfg.at("quad").at("nodes").get<int>();
    exp.threads = resolve_threads(cfg.at("threads").get<int>());

    const RateResult result = run_rate_experiment(exp);
    const auto [ci_lo, ci_hi] =
        bootstrap_slope_ci(result, exp.sizes, rc.at("bootstrap").get<int>(), exp.seed);

    io::write_rate_csv(result, ctx.emit("rates.csv"));
    json sj{{"slope", result.slope},
            {"intercept", result.intercept},
            {"ci95", {ci_lo, ci_hi}},
            {"bootstrap_resamples", rc.at("bootstrap").get<int>()},
            {"sizes", exp.sizes},
            {"replicates", exp.replicates},
            {"kernel", exp.kernel.name()},
            {"error", exp.error.name()}};
    io::write_json_file(sj, ctx.emit("slope.json"));
    ctx.write_manifest();
    std::cout << "slope " << result.slope << " ci95 [" << ci_lo << ", " << ci_hi << "]\n";
    return 0;
}

int cmd_phiu(RunContext& ctx) {
    json& cfg = ctx.cfg;
    const json& pc = cfg.at("phiu");
    ReplicatedSample data;
    const std::string dataset = cfg.at("dataset").get<std::string>();
    if (!dataset.empty()) {
        data = io::read_replicated_csv(dataset);
    } else {
        // simulate m replicated measurements W^(j) = X + U^(j)
        const Scenario scn = scenario_from(cfg);
        const std::size_t n = pc.at("n").get<std::size_t>();
        const std::size_t m = pc.at("m").get<std::size_t>();
        CounterRng rng_x(CounterRng::derive_key({scn.seed, 0x58}));
        CounterRng rng_u(CounterRng::derive_key({scn.seed, 0x55}));
        data.rows.resize(n);
        for (auto& row : data.rows) {
            const double x = scn.truth.sample(rng_x);
            row.resize(m);
            for (auto& wj : row) wj = x + scn.error.sample_one(rng_u);
        }
    }
    data.arity();  // throws InsufficientReplicates (exit 2) when m < 2

    const std::vector<double> t_grid = linspace(pc.at("t_lo").get<double>(),
                                                pc.at("t_hi").get<double>(),
                                                pc.at("points").get<std::size_t>());
    const std::vector<double> values = estimate_abs_phi_U(data, t_grid);

    io::write_phiu_csv(t_grid, values, ctx.emit("phiu.csv"));
    ctx.write_manifest();
    return 0;
}

int cmd_simulate(RunContext& ctx) {
    const Scenario scn = scenario_from(ctx.cfg);
    const ContaminatedSample sample = generate(scn);
    io::write_sample_csv(sample, ctx.emit("sample.csv"));
    ctx.write_manifest();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel deconvolution toolkit"};
    app.set_help_flag("--help", "print help");  // keep --h free for the bandwidth
    app.require_subcommand(1);

    std::string config_path, out_dir, preset, dataset, estimator, kernel, error_text, truth_text,
        h_text, sizes_text, model_text, g_text;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = -1, n = -1, replicates = -1, k0 = -1, quad_nodes = -1, points = -1;
    double v_noise = -1.0;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_given = true; });
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads (0: DECONV_THREADS env or hardware)");
    app.add_option("--preset", preset, "named scenario preset (fig31, fig31-n1000)");

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->fallthrough();  // global flags may follow the subcommand
        sub->add_option("--dataset", dataset, "input CSV instead of simulation");
        sub->add_option("--kernel", kernel, "sinc | fp:r=<even>,s=<int>");
        sub->add_option("--error", error_text, "laplace:b= | laplace:varratio= | gaussian:sd= | none");
        sub->add_option("--truth", truth_text, "gaussian:mean=,sd= | uniform:a=,b= | mixture:...");
        sub->add_option("--n", n, "sample size");
        sub->add_option("--quad-nodes", quad_nodes, "spectral quadrature nodes (odd)");
    };

    CLI::App* est = app.add_subcommand("estimate", "run one estimator, write a curve");
    add_common(est);
    est->add_option("--estimator", estimator,
                    "kde | deconv-kde | local-constant | local-linear | "
                    "deconv-local-constant | deconv-local-linear");
    est->add_option("--h", h_text, "bandwidth value or 'oracle'");
    est->add_option("--model", model_text, "density | regression | berkson");
    est->add_option("--g", g_text, "regression mean function");
    est->add_option("--v-noise", v_noise, "response noise sd");

    CLI::App* cmp = app.add_subcommand("compare-pce",
                                       "minimum-contrast vs sinc deconvolution, theorem report");
    add_common(cmp);
    cmp->add_option("--h", h_text, "bandwidth value or 'oracle'");
    cmp->add_option("--k0", k0, "coefficient cutoff (default 255)");

    CLI::App* rat = app.add_subcommand("rates", "Monte Carlo convergence-rate study");
    add_common(rat);
    rat->add_option("--sizes", sizes_text, "comma-separated sample sizes (>= 3)");
    rat->add_option("--replicates", replicates, "Monte Carlo replicates per size");

    CLI::App* phu = app.add_subcommand("phiu", "replicate-based |phi_U| estimate");
    add_common(phu);
    phu->add_option("--points", points, "t grid size");

    CLI::App* sim = app.add_subcommand("simulate", "draw a sample, write CSV");
    add_common(sim);
    sim->add_option("--model", model_text, "density | regression | berkson");
    sim->add_option("--g", g_text, "regression mean function");
    sim->add_option("--v-noise", v_noise, "response noise sd");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        json cfg = default_config();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
            json file_cfg = json::parse(in);
            deep_merge(cfg, file_cfg);
        }
        if (seed_given) cfg["seed"] = seed;
        if (!out_dir.empty()) cfg["out"] = out_dir;
        if (threads >= 0) cfg["threads"] = threads;
        if (!preset.empty()) cfg["preset"] = preset;
        if (!dataset.empty()) cfg["dataset"] = dataset;
        if (!estimator.empty()) cfg["estimator"] = estimator;
        if (!kernel.empty()) cfg["kernel"] = kernel;
        if (!error_text.empty()) cfg["scenario"]["error"] = error_text;
        if (!truth_text.empty()) cfg["scenario"]["truth"] = truth_text;
        if (!model_text.empty()) cfg["scenario"]["model"] = model_text;
        if (!g_text.empty()) cfg["scenario"]["g"] = g_text;
        if (v_noise >= 0.0) cfg["scenario"]["v_noise"] = v_noise;
        if (n >= 0) cfg["scenario"]["n"] = n;
        if (!h_text.empty()) {
            try {
                std::size_t used = 0;
                const double hv = std::stod(h_text, &used);
                if (used == h_text.size()) cfg["h"] = hv;
                else cfg["h"] = h_text;
            } catch (...) {
                cfg["h"] = h_text;
            }
        }
        if (k0 >= 0) cfg["pce"]["k0"] = k0;
        if (quad_nodes >= 0) cfg["quad"]["nodes"] = quad_nodes;
        if (points >= 0) cfg["phiu"]["points"] = points;
        if (replicates >= 0) cfg["rates"]["replicates"] = replicates;
        if (!sizes_text.empty()) {
            std::vector<std::size_t> sizes;
            std::stringstream ss(sizes_text);
            std::string item;
            while (std::getline(ss, item, ',')) sizes.push_back(std::stoull(item));
            cfg["rates"]["sizes"] = sizes;
        }

        fs::create_directories(cfg.at("out").get<std::string>());

        RunContext ctx;
        ctx.cfg = std::move(cfg);
        if (est->parsed()) {
            ctx.command = "estimate";
            return cmd_estimate(ctx);
        }
        if (cmp->parsed()) {
            ctx.command = "compare-pce";
            return cmd_compare_pce(ctx);
        }
        if (rat->parsed()) {
            ctx.command = "rates";
            return cmd_rates(ctx);
        }
        if (phu->parsed()) {
            ctx.command = "phiu";
            return cmd_phiu(ctx);
        }
        if (sim->parsed()) {
            ctx.command = "simulate";
            return cmd_simulate(ctx);
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
