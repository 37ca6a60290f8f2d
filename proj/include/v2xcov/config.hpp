// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace v2xcov {

enum class VehicleModel
{
    PPP, // homogeneous 1D Poisson point process per road
    PCP  // 1D Thomas cluster process per road
};

enum class Carrier
{
    MmWave,
    Sub6
};

enum class RoadCase
{
    OnlyLoS,
    OnlyNLoS,
    Both
};

// How the interference probability P_I thins a clustered road.
enum class Thinning
{
    PerVehicle, // every vehicle interferes independently with probability P_I
    PerCluster  // whole clusters interfere together with probability P_I
};

enum class NlosRoadMode
{
    Fixed,      // exactly nlos_road_count roads
    PoissonMean // Poisson number of roads with mean nlos_road_count
};

/**
 * All model parameters of the urban vehicular scenario.
 *
 * Lengths are in units of 100 m. Powers are linear mW, thresholds linear
 * SINR, angles radians. Defaults reproduce the reference parameter table;
 * see README for the parameters the table leaves open (r0, T, NLoS roads).
 */
struct ScenarioConfig
{
    double grid_half_range = 5.0;    // R
    double cluster_half_range = 1.0; // Rc
    double parent_density = 0.5;     // lambda_p
    // lambda_v; unset means the density-matched value lambda_p * c_bar
    std::optional<double> vehicle_density;
    double mean_cluster_size = 5.0; // c_bar
    double cluster_stddev = 0.5;    // sigma_c
    double pathloss_exponent = 2.0; // alpha
    double tx_power = 19952.623149688792;        // 43 dBm
    double interference_prob = 0.3;              // P_I
    double noise_power = 3.5481338923357534e-11; // -104.5 dBm
    int n_los = 2;
    NlosRoadMode nlos_road_mode = NlosRoadMode::PoissonMean;
    double nlos_road_count = 8.0; // Lambda, or the fixed count
    double serving_distance = 0.5; // r0
    double threshold = 0.1;         // T, -10 dB
    Carrier carrier = Carrier::MmWave;
    double penetration_loss_mmwave = 1e-4; // -40 dB
    double penetration_loss_sub6 = 1e-3;   // -30 dB
    double antenna_boresight = 3.141592653589793; // 180 deg
    double antenna_stddev = 0.8726646259971648;   // 50 deg
    Thinning thinning = Thinning::PerVehicle;
    // LoS interferers closer than this to the receiver cause the scene to be
    // redrawn. Zero only rejects an interferer exactly at the origin.
    double exclusion_radius = 0.0;
    std::uint64_t rng_seed = 1;

    double effective_vehicle_density() const
    {
        return vehicle_density.value_or(parent_density * mean_cluster_size);
    }

    double penetration_loss() const
    {
        return carrier == Carrier::MmWave ? penetration_loss_mmwave : penetration_loss_sub6;
    }

    // lambda_r per axis: two independent axes share the mean NLoS road count.
    double road_density() const { return nlos_road_count / (4.0 * grid_half_range); }

    // Throws ParameterError naming the first violated invariant.
    void validate() const;
};

std::string_view to_string(VehicleModel m);
std::string_view to_string(Carrier c);
std::string_view to_string(RoadCase c);
std::string_view to_string(Thinning t);
std::string_view to_string(NlosRoadMode m);

VehicleModel parse_vehicle_model(std::string_view s);
Carrier parse_carrier(std::string_view s);
RoadCase parse_road_case(std::string_view s);
Thinning parse_thinning(std::string_view s);
NlosRoadMode parse_nlos_road_mode(std::string_view s);

} // namespace v2xcov
