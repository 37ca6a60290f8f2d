// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/config.hpp"

#include "v2xcov/errors.hpp"

#include <cmath>
#include <string>

namespace v2xcov {

namespace {

void require(bool ok, const char* invariant)
{
    if (!ok)
        throw ParameterError(std::string("invariant violated: ") + invariant);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void ScenarioConfig::validate() const
{
    require(finite(grid_half_range) && grid_half_range > 0, "grid_half_range > 0");
    require(finite(cluster_half_range) && cluster_half_range > 0, "cluster_half_range > 0");
    require(cluster_half_range <= grid_half_range, "cluster_half_range <= grid_half_range");
    require(finite(parent_density) && parent_density >= 0, "parent_density >= 0");
    require(!vehicle_density || (finite(*vehicle_density) && *vehicle_density >= 0),
            "vehicle_density >= 0");
    require(finite(mean_cluster_size) && mean_cluster_size > 0, "mean_cluster_size > 0");
    require(finite(cluster_stddev) && cluster_stddev > 0, "cluster_stddev > 0");
    require(finite(pathloss_exponent) && pathloss_exponent > 0, "pathloss_exponent > 0");
    require(finite(tx_power) && tx_power > 0, "tx_power > 0");
    require(interference_prob >= 0 && interference_prob <= 1, "interference_prob in [0,1]");
    require(finite(noise_power) && noise_power >= 0, "noise_power >= 0");
    require(n_los == 2, "n_los == 2");
    require(finite(nlos_road_count) && nlos_road_count >= 0, "nlos_road_count >= 0");
    if (nlos_road_mode == NlosRoadMode::Fixed)
        require(nlos_road_count == std::floor(nlos_road_count),
                "nlos_road_count integral in fixed mode");
    require(finite(serving_distance) && serving_distance > 0, "serving_distance > 0");
    require(finite(threshold) && threshold >= 0, "threshold >= 0");
    require(penetration_loss_mmwave > 0 && penetration_loss_mmwave < 1,
            "penetration_loss_mmwave in (0,1)");
    require(penetration_loss_sub6 > 0 && penetration_loss_sub6 < 1,
            "penetration_loss_sub6 in (0,1)");
    require(finite(antenna_boresight), "antenna_boresight finite");
    require(finite(antenna_stddev) && antenna_stddev > 0, "antenna_stddev > 0");
    require(finite(exclusion_radius) && exclusion_radius >= 0 &&
                exclusion_radius < grid_half_range,
            "exclusion_radius in [0, grid_half_range)");
}

std::string_view to_string(VehicleModel m) { return m == VehicleModel::PPP ? "ppp" : "pcp"; }

std::string_view to_string(Carrier c) { return c == Carrier::MmWave ? "mmwave" : "sub6"; }

std::string_view to_string(RoadCase c)
{
    switch (c)
    {
    case RoadCase::OnlyLoS:
        return "los";
    case RoadCase::OnlyNLoS:
        return "nlos";
    case RoadCase::Both:
        return "both";
    }
    return "?";
}

std::string_view to_string(Thinning t) { return t == Thinning::PerVehicle ? "vehicle" : "cluster"; }

std::string_view to_string(NlosRoadMode m)
{
    return m == NlosRoadMode::Fixed ? "fixed" : "poisson";
}

VehicleModel parse_vehicle_model(std::string_view s)
{
    if (s == "ppp")
        return VehicleModel::PPP;
    if (s == "pcp")
        return VehicleModel::PCP;
    throw ParameterError("unknown vehicle model '" + std::string(s) + "' (ppp|pcp)");
}

Carrier parse_carrier(std::string_view s)
{
    if (s == "mmwave")
        return Carrier::MmWave;
    if (s == "sub6")
        return Carrier::Sub6;
    throw ParameterError("unknown frequency profile '" + std::string(s) + "' (mmwave|sub6)");
}

RoadCase parse_road_case(std::string_view s)
{
    if (s == "los")
        return RoadCase::OnlyLoS;
    if (s == "nlos")
        return RoadCase::OnlyNLoS;
    if (s == "both")
        return RoadCase::Both;
    throw ParameterError("unknown road case '" + std::string(s) + "' (los|nlos|both)");
}

Thinning parse_thinning(std::string_view s)
{
    if (s == "vehicle")
        return Thinning::PerVehicle;
    if (s == "cluster")
        return Thinning::PerCluster;
    throw ParameterError("unknown thinning '" + std::string(s) + "' (vehicle|cluster)");
}

NlosRoadMode parse_nlos_road_mode(std::string_view s)
{
    if (s == "fixed")
        return NlosRoadMode::Fixed;
    if (s == "poisson")
        return NlosRoadMode::PoissonMean;
    throw ParameterError("unknown nlos road mode '" + std::string(s) + "' (fixed|poisson)");
}

} // namespace v2xcov
