// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/channel.hpp"

#include "v2xcov/errors.hpp"
#include "v2xcov/units.hpp"

#include <cmath>
#include <numbers>

namespace v2xcov {

AntennaPattern AntennaPattern::omni() { return AntennaPattern(Kind::Omni, 0.0, 0.0, 1.0); }

AntennaPattern AntennaPattern::gaussian_mainlobe(double boresight, double stddev)
{
    if (!(stddev > 0) || !std::isfinite(stddev))
        throw ParameterError("gaussian_mainlobe: stddev must be > 0");
    // Integral of exp(-w^2 / (2 sigma^2)) over one wrapped turn w in (-pi, pi].
    const double mass = stddev * std::sqrt(kTwoPi) *
                        std::erf(std::numbers::pi / (stddev * std::numbers::sqrt2));
    return AntennaPattern(Kind::GaussianMainlobe, boresight, stddev, kTwoPi / mass);
}

double AntennaPattern::gain(double theta) const
{
    if (kind_ == Kind::Omni)
        return scale_;
    const double w = wrap_angle(theta - boresight_) / stddev_;
    return scale_ * std::exp(-0.5 * w * w);
}

FrequencyProfile frequency_profile(const ScenarioConfig& config)
{
    if (config.carrier == Carrier::MmWave)
        return {Carrier::MmWave,
                config.penetration_loss_mmwave,
                AntennaPattern::gaussian_mainlobe(config.antenna_boresight, config.antenna_stddev)};
    return {Carrier::Sub6, config.penetration_loss_sub6, AntennaPattern::omni()};
}

double pathloss_los(double r, double alpha)
{
    if (!(r > 0))
        throw ParameterError("pathloss_los: distance must be > 0 (r^-alpha is singular at 0)");
    if (alpha == 2.0)
        return 1.0 / (r * r);
    return std::pow(r, -alpha);
}

double blockage_mean(double r, double theta, double half_range, double parent_density,
                     double mean_cluster_size)
{
    return half_range * parent_density * mean_cluster_size * r *
           (std::abs(std::cos(theta)) + std::abs(std::sin(theta)));
}

double blockage_loss(double penetration_loss, int blockage_count)
{
    if (blockage_count < 1)
        throw ParameterError("blockage_loss: an NLoS link crosses at least one building");
    if (!(penetration_loss > 0 && penetration_loss < 1))
        throw ParameterError("blockage_loss: penetration loss must lie in (0,1)");
    return std::pow(penetration_loss, blockage_count);
}

double antenna_gain(const AntennaPattern& pattern, double theta) { return pattern.gain(theta); }

double received_power(double tx_power, const AntennaPattern& pattern, double fading,
                      double serving_distance, double alpha)
{
    if (!(fading >= 0))
        throw ParameterError("received_power: fading must be >= 0");
    return tx_power * pattern.peak_gain() * fading * pathloss_los(serving_distance, alpha);
}

double draw_fading(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }

double draw_aoa(Rng& rng) { return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng); }

int draw_blockage_count(double mean, Rng& rng)
{
    if (!(mean > 0))
        return 1;
    return 1 + std::poisson_distribution<int>(mean)(rng);
}

LinkDraw draw_link(Rng& rng, double r, double blockage_scale)
{
    LinkDraw d{draw_fading(rng), draw_aoa(rng), 1};
    if (blockage_scale > 0)
        d.blockage_count = draw_blockage_count(
            blockage_scale * r * (std::abs(std::cos(d.aoa)) + std::abs(std::sin(d.aoa))), rng);
    return d;
}

} // namespace v2xcov
