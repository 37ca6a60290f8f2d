// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/config.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace v2xcov {

using Rng = std::mt19937_64;

// Seed for the index-th independent stream derived from a master seed
// (SplitMix64 finalizer over master + (index + 1) * golden gamma).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

enum class Axis
{
    X, // road parallel to the x-axis, offset along y
    Y
};

struct Road
{
    Axis axis;
    double offset; // perpendicular distance from the origin
};

/**
 * Realized road layout. The two LoS roads pass through the typical vehicle
 * at the origin; vehicles refer to roads by index, LoS roads first.
 */
struct RoadGrid
{
    std::vector<Road> los_roads;
    std::vector<Road> nlos_roads;

    std::size_t size() const { return los_roads.size() + nlos_roads.size(); }
    bool is_los(std::size_t road_index) const { return road_index < los_roads.size(); }
};

struct Vehicle
{
    std::size_t road_index;
    double position; // coordinate along the road, in [-R, R]
    bool interferer;
    std::optional<double> cluster_parent;
};

struct VehicleSet
{
    std::vector<Vehicle> vehicles;
};

struct Scene
{
    RoadGrid roads;
    VehicleSet vehicles;
};

struct Cluster
{
    double parent;
    std::vector<double> daughters;
};

struct ThomasParams
{
    double parent_density;     // lambda_p
    double mean_cluster_size;  // c_bar
    double cluster_stddev;     // sigma_c
    double half_range;         // R
    double cluster_half_range; // Rc
};

// Homogeneous PPP on [-half_range, half_range].
std::vector<double> sample_ppp_1d(double density, double half_range, Rng& rng);

// Gaussian(0, stddev^2) conditioned on [-bound, bound].
double sample_truncated_normal(double stddev, double bound, Rng& rng);

/**
 * Thomas cluster process on [-R, R]: PPP parents, Poisson(c_bar) daughters
 * per parent, each displaced by a Gaussian truncated to [-Rc, Rc].
 * Displacements that would leave [-R, R] are redrawn.
 */
std::vector<Cluster> sample_thomas_1d(const ThomasParams& params, Rng& rng);

ThomasParams thomas_params(const ScenarioConfig& config);

// Samples roads, vehicles and interferer marks for one realization.
Scene build_scene(const ScenarioConfig& config, VehicleModel model, Rng& rng);

} // namespace v2xcov
