// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/harness.hpp"

#include "v2xcov/errors.hpp"
#include "v2xcov/geometry.hpp"
#include "v2xcov/units.hpp"

#include <algorithm>
#include <charconv>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#ifndef V2XCOV_VERSION
#define V2XCOV_VERSION "0.0.0"
#endif

namespace v2xcov {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

double parse_double(std::string_view s, std::string_view what)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParameterError("expected a number for " + std::string(what) + ", got '" +
                             std::string(s) + "'");
    return v;
}

std::uint64_t parse_count(std::string_view s, std::string_view what)
{
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty())
        return v;
    // Accept integral values written in float notation, e.g. 1e5.
    const double d = parse_double(s, what);
    if (!(d >= 0) || d != std::floor(d) || d > 1e18)
        throw ParameterError("expected a nonnegative integer for " + std::string(what));
    return static_cast<std::uint64_t>(d);
}

// Shortest text that reads back to the same double.
std::string fmt(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_short(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> parse_values(std::string_view s, std::string_view what)
{
    // Comma and/or whitespace separated.
    std::string text(s);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok)
        out.push_back(parse_double(tok, what));
    return out;
}

// "start stop step", inclusive of stop up to rounding.
std::vector<double> parse_range(std::string_view s)
{
    std::vector<double> nums;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok)
        nums.push_back(parse_double(tok, "sweep_range"));
    if (nums.size() != 3 || !(nums[2] > 0) || !(nums[1] >= nums[0]))
        throw ParameterError("sweep_range expects 'start stop step' with step > 0, stop >= start");
    const auto n = static_cast<long>(std::floor((nums[1] - nums[0]) / nums[2] + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < n; ++i)
    {
        // Round to 12 significant digits so 0.1 + 2 * 0.1 prints as 0.3.
        const double v = nums[0] + static_cast<double>(i) * nums[2];
        out.push_back(std::stod(fmt_short(std::round(v * 1e12) / 1e12)));
    }
    return out;
}

SeriesSpec parse_series_item(std::string_view item)
{
    const auto parts = split(item, '/');
    if (parts.size() < 3)
        throw ParameterError("series item '" + std::string(item) +
                             "' must look like model/frequency/case[/key=value...]");
    SeriesSpec s;
    s.model = parse_vehicle_model(parts[0]);
    s.carrier = parse_carrier(parts[1]);
    s.road_case = parse_road_case(parts[2]);
    for (std::size_t i = 3; i < parts.size(); ++i)
    {
        const auto eq = parts[i].find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("series override '" + std::string(parts[i]) + "' needs key=value");
        const auto key = trim(parts[i].substr(0, eq));
        const double v = parse_double(parts[i].substr(eq + 1), key);
        if (key == "c_bar")
            s.mean_cluster_size = v;
        else if (key == "r0")
            s.serving_distance = v;
        else if (key == "threshold_db")
            s.threshold_db = v;
        else
            throw ParameterError("unknown series override '" + std::string(key) +
                                 "' (c_bar|r0|threshold_db)");
    }
    return s;
}

std::vector<SeriesSpec> parse_series(std::string_view s)
{
    std::vector<SeriesSpec> out;
    for (auto item : split(s, ';'))
        if (!item.empty())
            out.push_back(parse_series_item(item));
    return out;
}

std::string series_text(const std::vector<SeriesSpec>& series)
{
    std::string out;
    for (const auto& s : series)
    {
        if (!out.empty())
            out += "; ";
        out += std::string(to_string(s.model)) + "/" + std::string(to_string(s.carrier)) + "/" +
               std::string(to_string(s.road_case));
        if (s.mean_cluster_size)
            out += "/c_bar=" + fmt_short(*s.mean_cluster_size);
        if (s.serving_distance)
            out += "/r0=" + fmt_short(*s.serving_distance);
        if (s.threshold_db)
            out += "/threshold_db=" + fmt_short(*s.threshold_db);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"grid_half_range",
         [](RunConfig& c, std::string_view v) { c.scenario.grid_half_range = parse_double(v, "grid_half_range"); }},
        {"cluster_half_range",
         [](RunConfig& c, std::string_view v) { c.scenario.cluster_half_range = parse_double(v, "cluster_half_range"); }},
        {"parent_density",
         [](RunConfig& c, std::string_view v) { c.scenario.parent_density = parse_double(v, "parent_density"); }},
        {"vehicle_density",
         [](RunConfig& c, std::string_view v) {
             if (trim(v) == "matched")
                 c.scenario.vehicle_density.reset();
             else
                 c.scenario.vehicle_density = parse_double(v, "vehicle_density");
         }},
        {"mean_cluster_size",
         [](RunConfig& c, std::string_view v) { c.scenario.mean_cluster_size = parse_double(v, "mean_cluster_size"); }},
        {"cluster_stddev",
         [](RunConfig& c, std::string_view v) { c.scenario.cluster_stddev = parse_double(v, "cluster_stddev"); }},
        {"pathloss_exponent",
         [](RunConfig& c, std::string_view v) { c.scenario.pathloss_exponent = parse_double(v, "pathloss_exponent"); }},
        {"tx_power_dbm",
         [](RunConfig& c, std::string_view v) { c.scenario.tx_power = dbm_to_mw(parse_double(v, "tx_power_dbm")); }},
        {"interference_prob",
         [](RunConfig& c, std::string_view v) { c.scenario.interference_prob = parse_double(v, "interference_prob"); }},
        {"noise_power_dbm",
         [](RunConfig& c, std::string_view v) { c.scenario.noise_power = dbm_to_mw(parse_double(v, "noise_power_dbm")); }},
        {"n_los",
         [](RunConfig& c, std::string_view v) { c.scenario.n_los = static_cast<int>(parse_count(v, "n_los")); }},
        {"nlos_road_mode",
         [](RunConfig& c, std::string_view v) { c.scenario.nlos_road_mode = parse_nlos_road_mode(trim(v)); }},
        {"nlos_road_count",
         [](RunConfig& c, std::string_view v) { c.scenario.nlos_road_count = parse_double(v, "nlos_road_count"); }},
        {"serving_distance",
         [](RunConfig& c, std::string_view v) { c.scenario.serving_distance = parse_double(v, "serving_distance"); }},
        {"threshold_db",
         [](RunConfig& c, std::string_view v) { c.scenario.threshold = db_to_linear(parse_double(v, "threshold_db")); }},
        {"frequency",
         [](RunConfig& c, std::string_view v) { c.scenario.carrier = parse_carrier(trim(v)); }},
        {"penetration_loss_mmwave_db",
         [](RunConfig& c, std::string_view v) {
             c.scenario.penetration_loss_mmwave = db_to_linear(parse_double(v, "penetration_loss_mmwave_db"));
         }},
        {"penetration_loss_sub6_db",
         [](RunConfig& c, std::string_view v) {
             c.scenario.penetration_loss_sub6 = db_to_linear(parse_double(v, "penetration_loss_sub6_db"));
         }},
        {"antenna_boresight_deg",
         [](RunConfig& c, std::string_view v) {
             c.scenario.antenna_boresight = deg_to_rad(parse_double(v, "antenna_boresight_deg"));
         }},
        {"antenna_stddev_deg",
         [](RunConfig& c, std::string_view v) {
             c.scenario.antenna_stddev = deg_to_rad(parse_double(v, "antenna_stddev_deg"));
         }},
        {"thinning", [](RunConfig& c, std::string_view v) { c.scenario.thinning = parse_thinning(trim(v)); }},
        {"exclusion_radius",
         [](RunConfig& c, std::string_view v) { c.scenario.exclusion_radius = parse_double(v, "exclusion_radius"); }},
        {"seed", [](RunConfig& c, std::string_view v) { c.scenario.rng_seed = parse_count(v, "seed"); }},
        {"sweep_variable",
         [](RunConfig& c, std::string_view v) { c.sweep.variable = parse_sweep_variable(trim(v)); }},
        {"sweep_values", [](RunConfig& c, std::string_view v) { c.sweep.values = parse_values(v, "sweep_values"); }},
        {"sweep_range", [](RunConfig& c, std::string_view v) { c.sweep.values = parse_range(v); }},
        {"series", [](RunConfig& c, std::string_view v) { c.sweep.series = parse_series(v); }},
        {"mc_trials", [](RunConfig& c, std::string_view v) { c.sweep.mc_trials = parse_count(v, "mc_trials"); }},
    };
    return table;
}

std::vector<SeriesSpec> model_frequency_series(RoadCase road_case)
{
    std::vector<SeriesSpec> out;
    for (auto m : {VehicleModel::PCP, VehicleModel::PPP})
        for (auto c : {Carrier::MmWave, Carrier::Sub6})
            out.push_back({m, c, road_case, std::nullopt, std::nullopt, std::nullopt});
    return out;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char ch : s)
    {
        switch (ch)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

std::string with_context(const std::string& msg, const CoverageCurve& curve, double value,
                         const SeriesSpec& series)
{
    return "sweep point " + std::string(to_string(curve.variable)) + "=" + fmt_short(value) +
           ", series " + series.id() + ": " + msg;
}

} // namespace

std::string_view to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::ServingDistance:
        return "r0";
    case SweepVariable::ThresholdDb:
        return "T";
    case SweepVariable::ClusterSize:
        return "c_bar";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view s)
{
    if (s == "r0")
        return SweepVariable::ServingDistance;
    if (s == "T")
        return SweepVariable::ThresholdDb;
    if (s == "c_bar")
        return SweepVariable::ClusterSize;
    throw ParameterError("unknown sweep variable '" + std::string(s) + "' (r0|T|c_bar)");
}

std::string SeriesSpec::id() const
{
    std::string out = std::string(to_string(model)) + "-" + std::string(to_string(carrier)) + "-" +
                      std::string(to_string(road_case));
    if (mean_cluster_size)
        out += "-cbar" + fmt_short(*mean_cluster_size);
    if (serving_distance)
        out += "-r0_" + fmt_short(*serving_distance);
    if (threshold_db)
        out += "-T" + fmt_short(*threshold_db) + "dB";
    return out;
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw ParameterError("invariant violated: sweep values nonempty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw ParameterError("invariant violated: sweep values strictly increasing");
}

RunConfig default_run_config()
{
    RunConfig c;
    c.sweep.variable = SweepVariable::ServingDistance;
    c.sweep.values = parse_range("0.1 2.0 0.1");
    c.sweep.series = model_frequency_series(RoadCase::Both);
    return c;
}

RunConfig preset(std::string_view name)
{
    RunConfig c = default_run_config();
    if (name == "table2")
        return c;
    if (name == "fig4")
    {
        c.scenario.cluster_stddev = 0.8;
        c.scenario.threshold = db_to_linear(-10.0);
        c.sweep.series.clear();
        for (auto road : {RoadCase::OnlyLoS, RoadCase::OnlyNLoS, RoadCase::Both})
            for (double cbar : {2.0, 5.0, 10.0})
                for (auto s : model_frequency_series(road))
                {
                    s.mean_cluster_size = cbar;
                    c.sweep.series.push_back(s);
                }
        return c;
    }
    if (name == "fig5")
    {
        c.scenario.cluster_stddev = 0.8;
        c.scenario.mean_cluster_size = 5.0;
        c.sweep.variable = SweepVariable::ThresholdDb;
        c.sweep.values = parse_range("-20 20 2");
        c.sweep.series.clear();
        for (double r0 : {0.5, 1.0, 1.5})
            for (auto s : model_frequency_series(RoadCase::Both))
            {
                s.serving_distance = r0;
                c.sweep.series.push_back(s);
            }
        return c;
    }
    throw ParameterError("unknown preset '" + std::string(name) + "' (table2|fig4|fig5)");
}

RunConfig parse_config(std::string_view text, RunConfig base)
{
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n'))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;
        auto sep = line.find(':');
        if (const auto eq = line.find('='); eq < sep)
            sep = eq;
        if (sep == std::string_view::npos)
            throw ParameterError("line " + std::to_string(line_no) + ": expected 'key: value'");
        const auto key = trim(line.substr(0, sep));
        const auto value = trim(line.substr(sep + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ParameterError("line " + std::to_string(line_no) + ": unknown key '" +
                                 std::string(key) + "'");
        if (!seen.insert(std::string(key)).second)
            throw ParameterError("line " + std::to_string(line_no) + ": duplicate key '" +
                                 std::string(key) + "'");
        try
        {
            it->second(base, value);
        }
        catch (const ParameterError& e)
        {
            throw ParameterError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    base.scenario.validate();
    base.sweep.validate();
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try
    {
        return parse_config(text.str(), std::move(base));
    }
    catch (const ParameterError& e)
    {
        throw ParameterError(path.string() + ": " + e.what());
    }
}

std::string describe(const ScenarioConfig& c)
{
    std::ostringstream out;
    out << "grid_half_range: " << fmt(c.grid_half_range) << "\n"
        << "cluster_half_range: " << fmt(c.cluster_half_range) << "\n"
        << "parent_density: " << fmt(c.parent_density) << "\n"
        << "vehicle_density: " << (c.vehicle_density ? fmt(*c.vehicle_density) : "matched") << "\n"
        << "mean_cluster_size: " << fmt(c.mean_cluster_size) << "\n"
        << "cluster_stddev: " << fmt(c.cluster_stddev) << "\n"
        << "pathloss_exponent: " << fmt(c.pathloss_exponent) << "\n"
        << "tx_power_dbm: " << fmt(mw_to_dbm(c.tx_power)) << "\n"
        << "interference_prob: " << fmt(c.interference_prob) << "\n"
        << "noise_power_dbm: " << fmt(mw_to_dbm(c.noise_power)) << "\n"
        << "n_los: " << c.n_los << "\n"
        << "nlos_road_mode: " << to_string(c.nlos_road_mode) << "\n"
        << "nlos_road_count: " << fmt(c.nlos_road_count) << "\n"
        << "serving_distance: " << fmt(c.serving_distance) << "\n"
        << "threshold_db: " << fmt(linear_to_db(c.threshold)) << "\n"
        << "frequency: " << to_string(c.carrier) << "\n"
        << "penetration_loss_mmwave_db: " << fmt(linear_to_db(c.penetration_loss_mmwave)) << "\n"
        << "penetration_loss_sub6_db: " << fmt(linear_to_db(c.penetration_loss_sub6)) << "\n"
        << "antenna_boresight_deg: " << fmt(rad_to_deg(c.antenna_boresight)) << "\n"
        << "antenna_stddev_deg: " << fmt(rad_to_deg(c.antenna_stddev)) << "\n"
        << "thinning: " << to_string(c.thinning) << "\n"
        << "exclusion_radius: " << fmt(c.exclusion_radius) << "\n"
        << "seed: " << c.rng_seed << "\n";
    return out.str();
}

std::string describe(const SweepSpec& sweep)
{
    std::string out = "sweep_variable: " + std::string(to_string(sweep.variable)) + "\nsweep_values: ";
    for (std::size_t i = 0; i < sweep.values.size(); ++i)
        out += (i ? ", " : "") + fmt_short(sweep.values[i]);
    out += "\nseries: " + series_text(sweep.series) + "\nmc_trials: " + std::to_string(sweep.mc_trials) + "\n";
    return out;
}

ScenarioConfig resolve_point(const ScenarioConfig& base, SweepVariable variable, double value,
                             const SeriesSpec& series)
{
    ScenarioConfig c = base;
    c.carrier = series.carrier;
    if (series.mean_cluster_size)
        c.mean_cluster_size = *series.mean_cluster_size;
    if (series.serving_distance)
        c.serving_distance = *series.serving_distance;
    if (series.threshold_db)
        c.threshold = db_to_linear(*series.threshold_db);
    switch (variable)
    {
    case SweepVariable::ServingDistance:
        c.serving_distance = value;
        break;
    case SweepVariable::ThresholdDb:
        c.threshold = db_to_linear(value);
        break;
    case SweepVariable::ClusterSize:
        c.mean_cluster_size = value;
        break;
    }
    return c;
}

std::string_view version() { return V2XCOV_VERSION; }

CoverageCurve run_sweep(const ScenarioConfig& config, const SweepSpec& sweep,
                        const QuadratureSpec& quad, unsigned workers)
{
    config.validate();
    sweep.validate();
    quad.validate();

    CoverageCurve curve;
    curve.variable = sweep.variable;
    curve.series = sweep.series;
    curve.values = sweep.values;
    curve.config = config;
    curve.seed = config.rng_seed;
    curve.version = std::string(version());

    const std::size_t n = sweep.series.size() * sweep.values.size();
    curve.points.resize(n);
    std::vector<std::exception_ptr> failures(n);

    auto evaluate = [&](std::size_t k) {
        const std::size_t si = k / sweep.values.size();
        const double value = sweep.values[k % sweep.values.size()];
        const SeriesSpec& series = sweep.series[si];
        CurvePoint& pt = curve.points[k];
        pt.value = value;
        pt.series = si;
        try
        {
            const ScenarioConfig c = resolve_point(config, sweep.variable, value, series);
            const CoverageResult res = coverage(c, series.model, series.road_case, quad);
            pt.p_out_analytic = res.p_out;
            pt.analytic_error = res.error;
            if (sweep.mc_trials > 0)
            {
                const CoverageEstimate est =
                    estimate_coverage(c, series.model, series.road_case, sweep.mc_trials,
                                      stream_seed(config.rng_seed, k), 1);
                pt.p_out_mc = 1.0 - est.p_hat;
                pt.ci99 = est.ci99_half_width;
            }
        }
        catch (const ParameterError& e)
        {
            failures[k] = std::make_exception_ptr(
                ParameterError(with_context(e.what(), curve, value, series)));
        }
        catch (const NumericError& e)
        {
            failures[k] = std::make_exception_ptr(
                NumericError(with_context(e.what(), curve, value, series)));
        }
        catch (const std::exception& e)
        {
            failures[k] = std::make_exception_ptr(
                std::runtime_error(with_context(e.what(), curve, value, series)));
        }
    };

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1)
    {
        for (std::size_t k = 0; k < n; ++k)
            evaluate(k);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next.fetch_add(1)) < n;)
                    evaluate(k);
            });
        for (auto& t : pool)
            t.join();
    }
    for (auto& f : failures)
        if (f)
            std::rethrow_exception(f);
    return curve;
}

std::string to_csv(const CoverageCurve& curve)
{
    std::string out = "sweep_var,value,series_id,p_out_analytic,p_out_mc,ci99\n";
    const std::string var(to_string(curve.variable));
    for (const CurvePoint& p : curve.points)
    {
        out += var + "," + fmt(p.value) + "," + curve.series[p.series].id() + "," +
               fmt(p.p_out_analytic) + "," + (p.p_out_mc ? fmt(*p.p_out_mc) : "") + "," +
               (p.ci99 ? fmt(*p.ci99) : "") + "\n";
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace

void emit_csv(const CoverageCurve& curve, const std::filesystem::path& path)
{
    write_file(path, to_csv(curve));
}

std::vector<CsvRow> parse_csv(std::string_view text)
{
    std::vector<CsvRow> rows;
    bool header = true;
    for (auto line : split(text, '\n'))
    {
        if (line.empty())
            continue;
        if (header)
        {
            if (line != "sweep_var,value,series_id,p_out_analytic,p_out_mc,ci99")
                throw ParameterError("unexpected CSV header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 6)
            throw ParameterError("CSV row needs 6 fields: '" + std::string(line) + "'");
        CsvRow row{std::string(f[0]), parse_double(f[1], "value"), std::string(f[2]),
                   parse_double(f[3], "p_out_analytic"), std::nullopt, std::nullopt};
        if (!f[4].empty())
            row.p_out_mc = parse_double(f[4], "p_out_mc");
        if (!f[5].empty())
            row.ci99 = parse_double(f[5], "ci99");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string to_svg(const CoverageCurve& curve)
{
    constexpr double width = 900, height = 560;
    constexpr double left = 70, right = 260, top = 30, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                              "#bcbd22", "#17becf", "#393b79", "#637939"};
    constexpr std::size_t n_colors = sizeof palette / sizeof palette[0];

    double x_min = 0, x_max = 1;
    if (!curve.values.empty())
    {
        x_min = curve.values.front();
        x_max = curve.values.back();
    }
    if (x_max == x_min)
    {
        x_min -= 0.5;
        x_max += 0.5;
    }
    // Log axis floor: one decade below the smallest positive outage, >= 1e-6.
    double smallest = 1.0;
    for (const auto& p : curve.points)
    {
        if (p.p_out_analytic > 0)
            smallest = std::min(smallest, p.p_out_analytic);
        if (p.p_out_mc && *p.p_out_mc > 0)
            smallest = std::min(smallest, *p.p_out_mc);
    }
    const int decade_lo = std::max(-6, static_cast<int>(std::floor(std::log10(smallest))) - 1);
    const double y_lo = std::pow(10.0, decade_lo);

    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double p) {
        const double v = std::clamp(p, y_lo, 1.0);
        return top + (0.0 - std::log10(v)) / (0.0 - decade_lo) * plot_h;
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<metadata>\nv2xcov " << xml_escape(curve.version) << "\nseed: " << curve.seed << "\n"
        << xml_escape(describe(curve.config)) << "series: " << xml_escape(series_text(curve.series))
        << "\n</metadata>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int d = decade_lo; d <= 0; ++d)
    {
        const double y = sy(std::pow(10.0, d));
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + plot_w)
            << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    constexpr int x_ticks = 5;
    for (int i = 0; i <= x_ticks; ++i)
    {
        const double xv = x_min + (x_max - x_min) * i / x_ticks;
        const double x = sx(xv);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(top + plot_h + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_short(std::round(xv * 1e6) / 1e6)
            << "</text>\n";
    }
    const std::string x_label = curve.variable == SweepVariable::ThresholdDb  ? "T (dB)"
                                : curve.variable == SweepVariable::ClusterSize ? "c_bar"
                                                                               : "r0 (100 m)";
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 15)
        << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << num(top + plot_h / 2) << "\" font-size=\"14\" "
        << "text-anchor=\"middle\" transform=\"rotate(-90 18 " << num(top + plot_h / 2)
        << ")\">outage probability</text>\n";

    for (std::size_t si = 0; si < curve.series.size(); ++si)
    {
        const char* color = palette[si % n_colors];
        const bool dashed = (si / n_colors) % 2 == 1;
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
        bool first = true;
        for (const auto& p : curve.points)
        {
            if (p.series != si)
                continue;
            svg << (first ? "" : " ") << num(sx(p.value)) << "," << num(sy(p.p_out_analytic));
            first = false;
        }
        svg << "\"/>\n";
        for (const auto& p : curve.points)
            if (p.series == si && p.p_out_mc)
                svg << "<circle cx=\"" << num(sx(p.value)) << "\" cy=\"" << num(sy(*p.p_out_mc))
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";

        const double ly = top + 10 + 14.0 * static_cast<double>(si);
        const double lx = left + plot_w + 15;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
        svg << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
            << xml_escape(curve.series[si].id()) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const CoverageCurve& curve, const std::filesystem::path& path)
{
    write_file(path, to_svg(curve));
}

std::size_t ValidationReport::agreeing() const
{
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const ValidationCell& c) { return c.agrees; }));
}

ValidationReport validate_grid(const ScenarioConfig& base, std::uint64_t trials,
                               std::uint64_t seed, const QuadratureSpec& quad)
{
    ValidationReport report;
    report.required = 33;
    std::uint64_t index = 0;
    for (auto road : {RoadCase::OnlyLoS, RoadCase::OnlyNLoS, RoadCase::Both})
        for (auto model : {VehicleModel::PPP, VehicleModel::PCP})
            for (auto carrier : {Carrier::MmWave, Carrier::Sub6})
                for (double t_db : {-10.0, 0.0, 10.0})
                {
                    ScenarioConfig c = base;
                    c.carrier = carrier;
                    c.threshold = db_to_linear(t_db);
                    ValidationCell cell{road, model, carrier, t_db, {}, {}, false};
                    cell.analytic = coverage(c, model, road, quad);
                    cell.mc = estimate_coverage(c, model, road, trials, stream_seed(seed, index++));
                    cell.agrees = cell.mc.wilson99().contains(cell.analytic.p_cov);
                    report.cells.push_back(cell);
                }
    return report;
}

} // namespace v2xcov
