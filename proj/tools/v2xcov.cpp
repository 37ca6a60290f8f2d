// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: single coverage evaluation, parameter sweeps with
// CSV/SVG output, and the analytic-vs-Monte-Carlo agreement grid.

#include "v2xcov/analytic.hpp"
#include "v2xcov/harness.hpp"
#include "v2xcov/montecarlo.hpp"
#include "v2xcov/units.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace v2xcov;

namespace {

struct Common
{
    std::string config_path;
    std::string preset_name = "table2";
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--config", c.config_path, "key: value config file (overrides the preset)");
    app->add_option("--preset", c.preset_name, "table2 | fig4 | fig5")->capture_default_str();
    app->add_option("--seed", c.seed, "master RNG seed (overrides the config)");
}

RunConfig resolve(const Common& c)
{
    RunConfig run = preset(c.preset_name);
    if (!c.config_path.empty())
        run = load_config(c.config_path, run);
    if (c.seed)
        run.scenario.rng_seed = *c.seed;
    return run;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Urban V2X downlink coverage: analytic evaluation and Monte Carlo oracle"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    Common cov_opts;
    std::string model = "pcp", road_case = "both";
    std::optional<std::string> frequency;
    std::optional<double> threshold_db, r0;
    std::uint64_t cov_trials = 0;
    auto* cov = app.add_subcommand("coverage", "evaluate p_cov / p_out for one configuration");
    add_common(cov, cov_opts);
    cov->add_option("--model", model, "pcp | ppp")->capture_default_str();
    cov->add_option("--case", road_case, "los | nlos | both")->capture_default_str();
    cov->add_option("--frequency", frequency, "mmwave | sub6");
    cov->add_option("--threshold-db", threshold_db, "SINR threshold T in dB");
    cov->add_option("--r0", r0, "serving distance in units of 100 m");
    cov->add_option("--mc-trials", cov_trials, "also run this many Monte Carlo trials");

    Common sweep_opts;
    std::optional<std::uint64_t> sweep_trials;
    std::string out_csv, out_svg;
    unsigned workers = 0;
    auto* sweep = app.add_subcommand("sweep", "sweep r0, T or c_bar and emit CSV/SVG curves");
    add_common(sweep, sweep_opts);
    sweep->add_option("--mc-trials", sweep_trials, "Monte Carlo trials per point (0: analytic only)");
    sweep->add_option("--out-csv", out_csv, "CSV output path (default: stdout)");
    sweep->add_option("--out-svg", out_svg, "SVG plot output path");
    sweep->add_option("--workers", workers, "worker threads (0: hardware concurrency)");

    Common val_opts;
    std::uint64_t val_trials = 100000;
    auto* validate = app.add_subcommand("validate", "analytic vs Monte Carlo agreement grid");
    add_common(validate, val_opts);
    validate->add_option("--trials", val_trials, "Monte Carlo trials per cell")->capture_default_str();

    Common show_opts;
    auto* show = app.add_subcommand("config", "print the resolved configuration");
    add_common(show, show_opts);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*cov)
        {
            RunConfig run = resolve(cov_opts);
            ScenarioConfig& c = run.scenario;
            if (frequency)
                c.carrier = parse_carrier(*frequency);
            if (threshold_db)
                c.threshold = db_to_linear(*threshold_db);
            if (r0)
                c.serving_distance = *r0;
            const VehicleModel m = parse_vehicle_model(model);
            const RoadCase rc = parse_road_case(road_case);
            const CoverageResult res = coverage(c, m, rc);
            std::printf("s            %.10g\n", res.s);
            std::printf("noise        %.10f\n", res.noise_factor);
            std::printf("los_factor   %.10f\n", res.los_factor);
            std::printf("nlos_factor  %.10f\n", res.nlos_factor);
            std::printf("p_cov        %.10f\n", res.p_cov);
            std::printf("p_out        %.10f\n", res.p_out);
            std::printf("quad_error   %.3g\n", res.error);
            if (cov_trials > 0)
            {
                const CoverageEstimate est = estimate_coverage(c, m, rc, cov_trials, c.rng_seed);
                const Interval w = est.wilson99();
                std::printf("mc_p_cov     %.10f  (trials %llu, ci99 +/- %.3g, wilson99 [%.6f, %.6f])\n",
                            est.p_hat, static_cast<unsigned long long>(est.trials),
                            est.ci99_half_width, w.lower, w.upper);
            }
        }
        else if (*sweep)
        {
            RunConfig run = resolve(sweep_opts);
            if (sweep_trials)
                run.sweep.mc_trials = *sweep_trials;
            const CoverageCurve curve = run_sweep(run.scenario, run.sweep, {}, workers);
            if (out_csv.empty())
                std::cout << to_csv(curve);
            else
                emit_csv(curve, out_csv);
            if (!out_svg.empty())
                emit_svg(curve, out_svg);
        }
        else if (*validate)
        {
            RunConfig run = resolve(val_opts);
            const ValidationReport report = validate_grid(run.scenario, val_trials, run.scenario.rng_seed);
            std::printf("%-5s %-4s %-7s %6s  %-12s %-12s %-27s %s\n", "case", "model", "freq", "T_dB",
                        "analytic", "mc", "wilson99", "agree");
            for (const auto& cell : report.cells)
            {
                const Interval w = cell.mc.wilson99();
                std::printf("%-5s %-4s %-7s %6.1f  %.8f   %.8f   [%.6f, %.6f]  %s\n",
                            std::string(to_string(cell.road_case)).c_str(),
                            std::string(to_string(cell.model)).c_str(),
                            std::string(to_string(cell.carrier)).c_str(), cell.threshold_db,
                            cell.analytic.p_cov, cell.mc.p_hat, w.lower, w.upper,
                            cell.agrees ? "yes" : "NO");
            }
            std::printf("%zu/%zu cells agree (required %zu)\n", report.agreeing(), report.cells.size(),
                        report.required);
            return report.passed() ? 0 : 1;
        }
        else if (*show)
        {
            const RunConfig run = resolve(show_opts);
            std::cout << describe(run.scenario) << describe(run.sweep);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
