// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/config.hpp"
#include "v2xcov/geometry.hpp"

#include <cstdint>
#include <optional>

namespace v2xcov {

struct TrialResult
{
    double sinr = 0;
    bool covered = false;
    double interference_los = 0;
    double interference_nlos = 0;
};

struct Interval
{
    double lower;
    double upper;

    bool contains(double p) const { return lower <= p && p <= upper; }
};

struct CoverageEstimate
{
    double p_hat = 0;
    std::uint64_t trials = 0;
    std::uint64_t covered = 0;
    double ci99_half_width = 0; // Wald: 2.576 sqrt(p(1-p)/n)

    // 99% Wilson score interval; stays informative when p_hat is 0 or 1.
    Interval wilson99() const;
};

inline constexpr double kZ99 = 2.5758293035489004;

struct TrialOptions
{
    // Serving-link fading override, for deterministic checks.
    std::optional<double> serving_fading;
    int max_scene_attempts = 1000;
};

/**
 * One full-scene SINR draw. LoS interferers use r^{-alpha} with r their
 * along-road distance; NLoS interferers use L^K with K - 1 drawn from the
 * blockage law at the same distance and their own AoA. Scenes with a LoS
 * interferer within exclusion_radius of the receiver are redrawn.
 */
TrialResult simulate_trial(const ScenarioConfig& config, VehicleModel model, RoadCase road_case,
                           Rng& rng, const TrialOptions& options = {});

/**
 * Fraction of covered trials. Trials are grouped in fixed blocks of
 * kTrialsPerBlock; block b draws from Rng(stream_seed(seed, b)), so the
 * result does not depend on `workers`. workers == 0 uses the hardware
 * concurrency.
 */
CoverageEstimate estimate_coverage(const ScenarioConfig& config, VehicleModel model,
                                   RoadCase road_case, std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers = 0);

inline constexpr std::uint64_t kTrialsPerBlock = 2048;

} // namespace v2xcov
