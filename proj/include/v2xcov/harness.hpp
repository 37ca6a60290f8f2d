// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/analytic.hpp"
#include "v2xcov/config.hpp"
#include "v2xcov/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace v2xcov {

enum class SweepVariable
{
    ServingDistance, // "r0", units of 100 m
    ThresholdDb,     // "T", dB
    ClusterSize      // "c_bar"
};

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view s);

// One curve of a sweep, optionally pinning parameters the sweep does not vary.
struct SeriesSpec
{
    VehicleModel model = VehicleModel::PCP;
    Carrier carrier = Carrier::MmWave;
    RoadCase road_case = RoadCase::Both;
    std::optional<double> mean_cluster_size;
    std::optional<double> serving_distance;
    std::optional<double> threshold_db;

    // e.g. "pcp-mmwave-both" or "ppp-sub6-los-cbar2"
    std::string id() const;
};

struct SweepSpec
{
    SweepVariable variable = SweepVariable::ServingDistance;
    std::vector<double> values;
    std::vector<SeriesSpec> series;
    std::uint64_t mc_trials = 0; // 0: analytic only

    // values nonempty and strictly increasing.
    void validate() const;
};

struct RunConfig
{
    ScenarioConfig scenario;
    SweepSpec sweep;
};

// Reference defaults with the default r0 sweep and the 2x2 model/frequency series.
RunConfig default_run_config();

// Named presets: "table2", "fig4", "fig5".
RunConfig preset(std::string_view name);

/**
 * Applies `key: value` lines (or `key = value`; `#` starts a comment) on top
 * of `base`. Unknown or repeated keys and invariant violations throw
 * ParameterError with the line number.
 */
RunConfig parse_config(std::string_view text, RunConfig base = default_run_config());

RunConfig load_config(const std::filesystem::path& path, RunConfig base = default_run_config());

// Resolved scenario as reloadable `key: value` text (dBm, dB, degrees).
std::string describe(const ScenarioConfig& config);

// Sweep part of a config as reloadable `key: value` text.
std::string describe(const SweepSpec& sweep);

// Applies a series' pinned parameters and the sweep variable at `value`.
ScenarioConfig resolve_point(const ScenarioConfig& base, SweepVariable variable, double value,
                             const SeriesSpec& series);

struct CurvePoint
{
    double value;
    std::size_t series;
    double p_out_analytic;
    double analytic_error;
    std::optional<double> p_out_mc;
    std::optional<double> ci99;
};

struct CoverageCurve
{
    SweepVariable variable = SweepVariable::ServingDistance;
    std::vector<SeriesSpec> series;
    std::vector<double> values;
    std::vector<CurvePoint> points; // series-major, then sweep value
    ScenarioConfig config;
    std::uint64_t seed = 0;
    std::string version;
};

std::string_view version();

/**
 * Evaluates every (series, value) pair. Monte Carlo point k draws from
 * stream_seed(config.rng_seed, k), so output is identical for any worker
 * count. Failures name the offending point.
 */
CoverageCurve run_sweep(const ScenarioConfig& config, const SweepSpec& sweep,
                        const QuadratureSpec& quad = {}, unsigned workers = 0);

std::string to_csv(const CoverageCurve& curve);
void emit_csv(const CoverageCurve& curve, const std::filesystem::path& path);

struct CsvRow
{
    std::string sweep_var;
    double value;
    std::string series_id;
    double p_out_analytic;
    std::optional<double> p_out_mc;
    std::optional<double> ci99;
};

std::vector<CsvRow> parse_csv(std::string_view text);

std::string to_svg(const CoverageCurve& curve);
void emit_svg(const CoverageCurve& curve, const std::filesystem::path& path);

struct ValidationCell
{
    RoadCase road_case;
    VehicleModel model;
    Carrier carrier;
    double threshold_db;
    CoverageResult analytic;
    CoverageEstimate mc;
    bool agrees;
};

struct ValidationReport
{
    std::vector<ValidationCell> cells;
    std::size_t required;

    std::size_t agreeing() const;
    bool passed() const { return agreeing() >= required; }
};

// Oracle-agreement grid: road case x model x frequency x T in {-10, 0, 10} dB.
// A cell agrees when the analytic p_cov lies in the 99% Wilson interval.
ValidationReport validate_grid(const ScenarioConfig& base, std::uint64_t trials,
                               std::uint64_t seed, const QuadratureSpec& quad = {});

} // namespace v2xcov
