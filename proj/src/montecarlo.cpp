// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/montecarlo.hpp"

#include "v2xcov/channel.hpp"
#include "v2xcov/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace v2xcov {

namespace {

bool too_close(const Scene& scene, double radius)
{
    for (const Vehicle& v : scene.vehicles.vehicles)
        if (v.interferer && scene.roads.is_los(v.road_index) && std::abs(v.position) <= radius)
            return true;
    return false;
}

} // namespace

Interval CoverageEstimate::wilson99() const
{
    if (trials == 0)
        return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double z2 = kZ99 * kZ99;
    const double denom = 1.0 + z2 / n;
    const double centre = (p_hat + z2 / (2 * n)) / denom;
    const double half = kZ99 * std::sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

TrialResult simulate_trial(const ScenarioConfig& config, VehicleModel model, RoadCase road_case,
                           Rng& rng, const TrialOptions& options)
{
    ScenarioConfig scene_config = config;
    if (road_case == RoadCase::OnlyLoS)
    {
        // NLoS roads would be ignored anyway; skip sampling them.
        scene_config.nlos_road_mode = NlosRoadMode::Fixed;
        scene_config.nlos_road_count = 0;
    }

    Scene scene;
    for (int attempt = 0;; ++attempt)
    {
        if (attempt >= options.max_scene_attempts)
            throw NumericError("simulate_trial: no admissible scene after " +
                               std::to_string(options.max_scene_attempts) +
                               " draws (LoS interferer inside the exclusion radius)");
        scene = build_scene(scene_config, model, rng);
        if (!too_close(scene, config.exclusion_radius))
            break;
    }

    const FrequencyProfile profile = frequency_profile(config);
    const double alpha = config.pathloss_exponent;
    const double blockage_scale =
        config.grid_half_range * config.parent_density * config.mean_cluster_size;

    TrialResult out;
    const double h0 = options.serving_fading ? *options.serving_fading : draw_fading(rng);
    const double signal =
        received_power(config.tx_power, profile.antenna, h0, config.serving_distance, alpha);

    for (const Vehicle& v : scene.vehicles.vehicles)
    {
        if (!v.interferer)
            continue;
        const double r = std::abs(v.position);
        if (scene.roads.is_los(v.road_index))
        {
            const LinkDraw link = draw_link(rng, r, 0.0);
            if (road_case != RoadCase::OnlyNLoS)
                out.interference_los += config.tx_power * profile.antenna.gain(link.aoa) *
                                        link.fading * pathloss_los(r, alpha);
        }
        else
        {
            const LinkDraw link = draw_link(rng, r, blockage_scale);
            out.interference_nlos += config.tx_power * profile.antenna.gain(link.aoa) *
                                     link.fading *
                                     blockage_loss(profile.penetration_loss, link.blockage_count);
        }
    }

    const double denom = config.noise_power + out.interference_los + out.interference_nlos;
    out.sinr = denom > 0 ? signal / denom : (signal > 0 ? INFINITY : 0.0);
    out.covered = out.sinr > config.threshold;
    return out;
}

CoverageEstimate estimate_coverage(const ScenarioConfig& config, VehicleModel model,
                                   RoadCase road_case, std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers)
{
    if (trials < 1)
        throw ParameterError("estimate_coverage: trials must be >= 1");
    config.validate();

    const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<std::uint64_t> covered(blocks, 0);

    auto run_block = [&](std::uint64_t b) {
        Rng rng(stream_seed(seed, b));
        const std::uint64_t begin = b * kTrialsPerBlock;
        const std::uint64_t end = std::min(trials, begin + kTrialsPerBlock);
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t)
            hits += simulate_trial(config, model, road_case, rng).covered ? 1 : 0;
        covered[b] = hits;
    };

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (workers <= 1)
    {
        for (std::uint64_t b = 0; b < blocks; ++b)
            run_block(b);
    }
    else
    {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::exception_ptr> failures(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try
                {
                    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;)
                        run_block(b);
                }
                catch (...)
                {
                    failures[w] = std::current_exception();
                    next = blocks;
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& f : failures)
            if (f)
                std::rethrow_exception(f);
    }

    CoverageEstimate est;
    est.trials = trials;
    for (auto c : covered)
        est.covered += c;
    est.p_hat = static_cast<double>(est.covered) / static_cast<double>(trials);
    est.ci99_half_width = kZ99 * std::sqrt(est.p_hat * (1 - est.p_hat) / trials);
    return est;
}

} // namespace v2xcov
