// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/analytic.hpp"

#include "v2xcov/channel.hpp"
#include "v2xcov/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace v2xcov {

namespace {

// Inner integrals run this much tighter than the outer one so that their
// error stays below the outer estimate.
constexpr double kInnerTolFactor = 1e-3;

enum class LinkKind
{
    LoS,
    NLoS
};

/**
 * Angle-averaged interference hit of a single interferer at along-road
 * distance r: (1/2pi) \int q(r, theta) dtheta. Quadrants are integrated
 * separately since |cos| + |sin| has kinks at multiples of pi/2, and the
 * wrapped Gaussian pattern has one at boresight + pi.
 */
class HitKernel
{
  public:
    HitKernel(double s, const ScenarioConfig& config, LinkKind kind, const QuadratureSpec& quad)
        : a_(s * config.tx_power),
          alpha_(config.pathloss_exponent),
          kind_(kind),
          profile_(frequency_profile(config)),
          blockage_scale_(config.grid_half_range * config.parent_density *
                          config.mean_cluster_size),
          series_tol_(quad.poisson_series_mass_tol),
          rule_(quad.angular_nodes_per_quadrant)
    {
        std::vector<double> cuts = {0.0, 0.5 * std::numbers::pi, std::numbers::pi,
                                    1.5 * std::numbers::pi, kTwoPi};
        if (profile_.antenna.kind() == AntennaPattern::Kind::GaussianMainlobe)
        {
            double wrap = std::fmod(profile_.antenna.boresight() + std::numbers::pi, kTwoPi);
            if (wrap < 0)
                wrap += kTwoPi;
            cuts.push_back(wrap);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double u, double v) { return std::abs(u - v) < 1e-14; }),
                   cuts.end());
        angle_cuts_ = std::move(cuts);
        angle_free_ = kind_ == LinkKind::LoS &&
                      profile_.antenna.kind() == AntennaPattern::Kind::Omni;
    }

    double operator()(double r) const
    {
        if (a_ == 0)
            return 0;
        r = std::abs(r);
        if (angle_free_)
            return hit(r, 0.0);
        double sum = 0;
        for (std::size_t i = 0; i + 1 < angle_cuts_.size(); ++i)
            sum += rule_.integrate([&](double theta) { return hit(r, theta); }, angle_cuts_[i],
                                   angle_cuts_[i + 1]);
        return sum / kTwoPi;
    }

    // Largest one-sided error of a single evaluation from cutting the
    // Poisson series short.
    double truncation_bound() const { return kind_ == LinkKind::NLoS ? series_tol_ : 0.0; }

  private:
    double hit(double r, double theta) const
    {
        const double ag = a_ * profile_.antenna.gain(theta);
        if (kind_ == LinkKind::LoS)
        {
            // ag l / (1 + ag l) rewritten to stay finite at r = 0.
            const double rpow = alpha_ == 2.0 ? r * r : std::pow(r, alpha_);
            return ag / (rpow + ag);
        }
        const double mean = blockage_scale_ * r * (std::abs(std::cos(theta)) + std::abs(std::sin(theta)));
        return nlos_expected_hit(ag, profile_.penetration_loss, mean, series_tol_);
    }

    double a_;
    double alpha_;
    LinkKind kind_;
    FrequencyProfile profile_;
    double blockage_scale_;
    double series_tol_;
    GaussLegendreRule rule_;
    std::vector<double> angle_cuts_;
    bool angle_free_ = false;
};

std::vector<double> sorted_points(std::vector<double> pts, double lo, double hi)
{
    std::erase_if(pts, [&](double p) { return p <= lo || p >= hi; });
    pts.push_back(lo);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

LaplaceFactor from_exponent(double exponent, double exponent_error)
{
    LaplaceFactor f;
    f.value = std::exp(-exponent);
    f.error = f.value * exponent_error;
    return f;
}

LaplaceFactor ppp_factor(const HitKernel& kernel, double s, const ScenarioConfig& config,
                         const QuadratureSpec& quad)
{
    const double intensity = config.interference_prob * config.effective_vehicle_density();
    if (s == 0 || intensity == 0)
        return {};
    const double R = config.grid_half_range;
    const auto pts = sorted_points({0.0}, -R, R);
    const Integral in = integrate_adaptive(kernel, std::span<const double>(pts),
                                           quad.abs_tol / intensity, quad.rel_tol,
                                           quad.max_subdivisions);
    return from_exponent(intensity * in.value,
                         intensity * (in.error + 2 * R * kernel.truncation_bound()));
}

LaplaceFactor pcp_factor(const HitKernel& kernel, double s, const ScenarioConfig& config,
                         const QuadratureSpec& quad)
{
    const double P = config.interference_prob;
    const double lp = config.parent_density;
    const double cbar = config.mean_cluster_size;
    if (s == 0 || P == 0 || lp == 0)
        return {};

    // Per-vehicle thinning keeps every cluster with Poisson(P_I c_bar)
    // interferers; per-cluster thinning keeps a P_I fraction of whole clusters.
    const bool per_vehicle = config.thinning == Thinning::PerVehicle;
    const double prefactor = per_vehicle ? lp : P * lp;
    const double cluster_mean = per_vehicle ? P * cbar : cbar;

    const double R = config.grid_half_range;
    const double Rc = config.cluster_half_range;
    const double sigma = config.cluster_stddev;
    const double inv = 1.0 / (sigma * std::numbers::sqrt2);

    const double inner_abs = quad.abs_tol * kInnerTolFactor;
    const double inner_rel = quad.rel_tol * kInnerTolFactor;
    double worst_inner_error = 0;

    auto cluster_hit = [&](double x) {
        const double lo = std::max(-Rc, -R - x);
        const double hi = std::min(Rc, R - x);
        if (!(hi > lo))
            return 0.0;
        const double mass = 0.5 * (std::erf(hi * inv) - std::erf(lo * inv));
        const double norm = 1.0 / (sigma * std::sqrt(kTwoPi) * mass);
        auto integrand = [&](double y) {
            const double z = y / sigma;
            return norm * std::exp(-0.5 * z * z) * kernel(x + y);
        };
        const auto pts = sorted_points({-x}, lo, hi);
        const Integral in = integrate_adaptive(integrand, std::span<const double>(pts), inner_abs,
                                               inner_rel, quad.max_subdivisions);
        worst_inner_error = std::max(worst_inner_error, in.error);
        return in.value;
    };
    auto outer = [&](double x) { return -std::expm1(-cluster_mean * cluster_hit(x)); };

    const auto pts = sorted_points({0.0, -Rc, Rc, -(R - Rc), R - Rc}, -R, R);
    const Integral out = integrate_adaptive(outer, std::span<const double>(pts),
                                            quad.abs_tol / prefactor, quad.rel_tol,
                                            quad.max_subdivisions);
    // d/da (1 - e^{-c a}) <= c bounds how inner errors reach the outer integrand.
    const double error =
        prefactor * (out.error + 2 * R * cluster_mean * (worst_inner_error + kernel.truncation_bound()));
    return from_exponent(prefactor * out.value, error);
}

} // namespace

double laplace_s(double threshold, double tx_power, double peak_gain, double serving_distance,
                 double alpha)
{
    if (!(threshold >= 0))
        throw ParameterError("laplace_s: threshold must be >= 0");
    if (!(tx_power > 0) || !(peak_gain > 0))
        throw ParameterError("laplace_s: tx_power and peak_gain must be > 0");
    return threshold / (tx_power * peak_gain * pathloss_los(serving_distance, alpha));
}

double laplace_s(const ScenarioConfig& config)
{
    return laplace_s(config.threshold, config.tx_power,
                     frequency_profile(config).antenna.peak_gain(), config.serving_distance,
                     config.pathloss_exponent);
}

double nlos_expected_hit(double a, double penetration_loss, double mean, double tol)
{
    if (a <= 0)
        return 0;
    const double guard = mean + 12.0 * std::sqrt(mean) + 30.0;
    // exp(-mean) underflows for large means; walk the pmf in log space then.
    const bool log_space = mean > 600.0;
    const double log_mean = mean > 0 ? std::log(mean) : 0.0;
    double log_pmf = -mean;
    double pmf = std::exp(-mean); // P(K - 1 = j), j = 0 first
    double cumulative = 0;
    double loss = penetration_loss; // L^K
    double sum = 0;
    for (int j = 0;; ++j)
    {
        const double al = a * loss;
        const double q = al / (1.0 + al);
        sum += pmf * q;
        cumulative += pmf;
        // Later terms carry at most the remaining mass times a hit below q * L.
        const double remaining = std::max(0.0, 1.0 - cumulative);
        if (remaining * q * penetration_loss <= tol)
            break;
        if (j + 1 > guard)
            throw NumericError("nlos_expected_hit: Poisson series did not reach tolerance within " +
                               std::to_string(static_cast<long>(guard)) + " terms (mean " +
                               std::to_string(mean) + ")");
        if (log_space)
        {
            log_pmf += log_mean - std::log(j + 1.0);
            pmf = std::exp(log_pmf);
        }
        else
            pmf *= mean / (j + 1);
        loss *= penetration_loss;
    }
    return sum;
}

LaplaceFactor laplace_los_ppp(double s, const ScenarioConfig& config, const QuadratureSpec& quad)
{
    config.validate();
    quad.validate();
    if (!(s >= 0))
        throw ParameterError("laplace_los_ppp: s must be >= 0");
    return ppp_factor(HitKernel(s, config, LinkKind::LoS, quad), s, config, quad);
}

LaplaceFactor laplace_los_pcp(double s, const ScenarioConfig& config, const QuadratureSpec& quad)
{
    config.validate();
    quad.validate();
    if (!(s >= 0))
        throw ParameterError("laplace_los_pcp: s must be >= 0");
    return pcp_factor(HitKernel(s, config, LinkKind::LoS, quad), s, config, quad);
}

LaplaceFactor laplace_nlos(double s, const ScenarioConfig& config, VehicleModel model,
                           const QuadratureSpec& quad)
{
    config.validate();
    quad.validate();
    if (!(s >= 0))
        throw ParameterError("laplace_nlos: s must be >= 0");
    const HitKernel kernel(s, config, LinkKind::NLoS, quad);
    return model == VehicleModel::PPP ? ppp_factor(kernel, s, config, quad)
                                      : pcp_factor(kernel, s, config, quad);
}

LaplaceFactor laplace_los(double s, const ScenarioConfig& config, VehicleModel model,
                          const QuadratureSpec& quad)
{
    return model == VehicleModel::PPP ? laplace_los_ppp(s, config, quad)
                                      : laplace_los_pcp(s, config, quad);
}

CoverageResult coverage(const ScenarioConfig& config, VehicleModel model, RoadCase road_case,
                        const QuadratureSpec& quad)
{
    config.validate();
    CoverageResult out;
    out.s = laplace_s(config);
    out.noise_factor = std::exp(-out.s * config.noise_power);

    double rel_error = 0;
    if (road_case != RoadCase::OnlyNLoS)
    {
        const LaplaceFactor los = laplace_los(out.s, config, model, quad);
        out.los_factor = std::pow(los.value, config.n_los);
        rel_error += config.n_los * los.error / los.value;
    }
    if (road_case != RoadCase::OnlyLoS && config.nlos_road_count > 0)
    {
        const LaplaceFactor nlos = laplace_nlos(out.s, config, model, quad);
        const double n = config.nlos_road_count;
        if (config.nlos_road_mode == NlosRoadMode::Fixed)
        {
            out.nlos_factor = std::pow(nlos.value, n);
            rel_error += n * nlos.error / nlos.value;
        }
        else
        {
            // Poisson number of roads: E[F^N] = exp(-Lambda (1 - F)).
            out.nlos_factor = std::exp(-n * (1.0 - nlos.value));
            rel_error += n * nlos.error;
        }
    }
    out.p_cov = std::clamp(out.noise_factor * out.los_factor * out.nlos_factor, 0.0, 1.0);
    out.p_out = 1.0 - out.p_cov;
    out.error = out.p_cov * rel_error;
    return out;
}

} // namespace v2xcov
