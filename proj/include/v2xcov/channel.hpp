// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/config.hpp"
#include "v2xcov/geometry.hpp"

namespace v2xcov {

/**
 * Receive antenna gain versus angle of arrival.
 *
 * Both kinds integrate to 2*pi over a full turn: the omni pattern is the
 * constant 1, the Gaussian main lobe is scaled so that its wrapped profile
 * carries the same total gain.
 */
class AntennaPattern
{
  public:
    enum class Kind
    {
        GaussianMainlobe,
        Omni
    };

    static AntennaPattern omni();
    static AntennaPattern gaussian_mainlobe(double boresight, double stddev);

    Kind kind() const { return kind_; }
    double boresight() const { return boresight_; }
    double stddev() const { return stddev_; }
    double scale() const { return scale_; }

    // theta in radians, any value (wrapped internally).
    double gain(double theta) const;

    // Gain toward the serving transmitter, which sits on boresight.
    double peak_gain() const { return scale_; }

  private:
    AntennaPattern(Kind kind, double boresight, double stddev, double scale)
        : kind_(kind), boresight_(boresight), stddev_(stddev), scale_(scale)
    {
    }

    Kind kind_;
    double boresight_;
    double stddev_;
    double scale_;
};

struct FrequencyProfile
{
    Carrier carrier;
    double penetration_loss; // L, linear in (0,1)
    AntennaPattern antenna;
};

// mmWave uses the Gaussian main lobe, sub-6 GHz the omni pattern.
FrequencyProfile frequency_profile(const ScenarioConfig& config);

struct LinkDraw
{
    double fading;      // h ~ Exp(1)
    double aoa;         // theta ~ U[0, 2pi)
    int blockage_count; // K >= 1, only meaningful for NLoS links
};

// r^{-alpha}; throws ParameterError for r <= 0.
double pathloss_los(double r, double alpha);

// Mean of K - 1 for an NLoS link of length r arriving at angle theta.
double blockage_mean(double r, double theta, double half_range, double parent_density,
                     double mean_cluster_size);

// L^K; throws ParameterError for K < 1.
double blockage_loss(double penetration_loss, int blockage_count);

double antenna_gain(const AntennaPattern& pattern, double theta);

// Pt * G(boresight) * h * r0^{-alpha}.
double received_power(double tx_power, const AntennaPattern& pattern, double fading,
                      double serving_distance, double alpha);

double draw_fading(Rng& rng);
double draw_aoa(Rng& rng);
int draw_blockage_count(double mean, Rng& rng);

// Draws h and theta for a link of length r; K - 1 ~ Poisson(blockage_mean(r,
// theta)) where blockage_scale = R * lambda_p * c_bar (0 for LoS links, K = 1).
LinkDraw draw_link(Rng& rng, double r, double blockage_scale);

} // namespace v2xcov
