// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/geometry.hpp"

#include "v2xcov/errors.hpp"

#include <cmath>

namespace v2xcov {

namespace {

constexpr int kMaxDisplacementDraws = 100000;

void place_on_road(const ScenarioConfig& config,
                   VehicleModel model,
                   std::size_t road_index,
                   Rng& rng,
                   std::vector<Vehicle>& out)
{
    std::bernoulli_distribution active(config.interference_prob);
    if (model == VehicleModel::PPP)
    {
        for (double x :
             sample_ppp_1d(config.effective_vehicle_density(), config.grid_half_range, rng))
            out.push_back({road_index, x, active(rng), std::nullopt});
        return;
    }
    for (const Cluster& c : sample_thomas_1d(thomas_params(config), rng))
    {
        if (config.thinning == Thinning::PerCluster)
        {
            const bool on = active(rng);
            for (double x : c.daughters)
                out.push_back({road_index, x, on, c.parent});
        }
        else
        {
            for (double x : c.daughters)
                out.push_back({road_index, x, active(rng), c.parent});
        }
    }
}

} // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> sample_ppp_1d(double density, double half_range, Rng& rng)
{
    if (!(density >= 0) || !std::isfinite(density))
        throw ParameterError("sample_ppp_1d: density must be >= 0");
    if (!(half_range > 0) || !std::isfinite(half_range))
        throw ParameterError("sample_ppp_1d: half_range must be > 0");

    std::vector<double> points;
    const double mean = 2.0 * half_range * density;
    if (mean == 0)
        return points;
    const auto n = std::poisson_distribution<long>(mean)(rng);
    points.reserve(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> where(-half_range, half_range);
    for (long i = 0; i < n; ++i)
        points.push_back(where(rng));
    return points;
}

double sample_truncated_normal(double stddev, double bound, Rng& rng)
{
    if (!(stddev > 0))
        throw ParameterError("sample_truncated_normal: stddev must be > 0");
    if (!(bound > 0))
        throw ParameterError("sample_truncated_normal: bound must be > 0");

    // Wide window: plain rejection from the normal. Narrow window: uniform
    // proposal with Gaussian acceptance, which accepts with prob >= e^{-1/2}.
    if (bound >= stddev)
    {
        std::normal_distribution<double> normal(0.0, stddev);
        for (;;)
        {
            const double y = normal(rng);
            if (std::abs(y) <= bound)
                return y;
        }
    }
    std::uniform_real_distribution<double> uniform(-bound, bound);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;)
    {
        const double y = uniform(rng);
        const double z = y / stddev;
        if (unit(rng) <= std::exp(-0.5 * z * z))
            return y;
    }
}

std::vector<Cluster> sample_thomas_1d(const ThomasParams& p, Rng& rng)
{
    if (!(p.cluster_stddev > 0))
        throw ParameterError("sample_thomas_1d: cluster_stddev must be > 0");
    if (!(p.mean_cluster_size >= 0))
        throw ParameterError("sample_thomas_1d: mean_cluster_size must be >= 0");
    if (!(p.cluster_half_range > 0) || p.cluster_half_range > p.half_range)
        throw ParameterError("sample_thomas_1d: need 0 < cluster_half_range <= half_range");

    std::vector<Cluster> clusters;
    for (double parent : sample_ppp_1d(p.parent_density, p.half_range, rng))
    {
        Cluster c{parent, {}};
        const long n = p.mean_cluster_size > 0
                           ? std::poisson_distribution<long>(p.mean_cluster_size)(rng)
                           : 0;
        c.daughters.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i)
        {
            int draws = 0;
            double x;
            do
            {
                if (++draws > kMaxDisplacementDraws)
                    throw NumericError("sample_thomas_1d: daughter rejection loop exhausted");
                x = parent + sample_truncated_normal(p.cluster_stddev, p.cluster_half_range, rng);
            } while (std::abs(x) > p.half_range);
            c.daughters.push_back(x);
        }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

ThomasParams thomas_params(const ScenarioConfig& config)
{
    return {config.parent_density,
            config.mean_cluster_size,
            config.cluster_stddev,
            config.grid_half_range,
            config.cluster_half_range};
}

Scene build_scene(const ScenarioConfig& config, VehicleModel model, Rng& rng)
{
    config.validate();
    Scene scene;
    scene.roads.los_roads = {{Axis::X, 0.0}, {Axis::Y, 0.0}};

    const double R = config.grid_half_range;
    if (config.nlos_road_mode == NlosRoadMode::PoissonMean)
    {
        for (Axis axis : {Axis::X, Axis::Y})
            for (double offset : sample_ppp_1d(config.road_density(), R, rng))
                scene.roads.nlos_roads.push_back({axis, offset});
    }
    else
    {
        std::bernoulli_distribution horizontal(0.5);
        std::uniform_real_distribution<double> where(-R, R);
        const auto n = static_cast<long>(config.nlos_road_count);
        for (long i = 0; i < n; ++i)
        {
            const Axis axis = horizontal(rng) ? Axis::X : Axis::Y;
            scene.roads.nlos_roads.push_back({axis, where(rng)});
        }
    }

    for (std::size_t r = 0; r < scene.roads.size(); ++r)
        place_on_road(config, model, r, rng, scene.vehicles.vehicles);
    return scene;
}

} // namespace v2xcov
