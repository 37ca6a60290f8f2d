// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/config.hpp"
#include "v2xcov/quadrature.hpp"

namespace v2xcov {

// A Laplace-transform factor E[exp(-s I)] of one road's interference.
struct LaplaceFactor
{
    double value = 1; // in (0, 1]
    double error = 0; // absolute error estimate
};

struct CoverageResult
{
    double s = 0; // Laplace argument T / (Pt G0 l(r0))
    double p_cov = 1;
    double p_out = 0;
    double noise_factor = 1;
    double los_factor = 1;  // all LoS roads combined
    double nlos_factor = 1; // all NLoS roads combined
    double error = 0;       // quadrature error estimate on p_cov
};

double laplace_s(double threshold, double tx_power, double peak_gain, double serving_distance,
                 double alpha);

// Laplace argument for the configured threshold, power, pattern and r0.
double laplace_s(const ScenarioConfig& config);

/**
 * LoS road with PPP interferers:
 *   exp(-P_I lambda_v \int_{-R}^{R} E_theta[q(|x|, theta)] dx)
 * where q = s Pt G(theta) l(r) / (1 + s Pt G(theta) l(r)) is the interference
 * hit of one Rayleigh-faded interferer.
 */
LaplaceFactor laplace_los_ppp(double s, const ScenarioConfig& config,
                              const QuadratureSpec& quad = {});

/**
 * LoS road with Thomas-cluster interferers. With a(x) the cluster-averaged
 * hit over the daughter displacement density (Gaussian truncated to
 * [-Rc, Rc] and conditioned on x + y staying on the grid):
 *   per-vehicle thinning: exp(-lambda_p \int 1 - M_{P_I c_bar}(1 - a(x)) dx)
 *   per-cluster thinning: exp(-P_I lambda_p \int 1 - M_{c_bar}(1 - a(x)) dx)
 * with M_c(z) = exp(-c (1 - z)) the cluster-size generating function.
 */
LaplaceFactor laplace_los_pcp(double s, const ScenarioConfig& config,
                              const QuadratureSpec& quad = {});

// Same structure as the LoS transforms with l(r) replaced by L^K and the
// hit averaged over K - 1 ~ Poisson(blockage_mean(|x|, theta)).
LaplaceFactor laplace_nlos(double s, const ScenarioConfig& config, VehicleModel model,
                           const QuadratureSpec& quad = {});

LaplaceFactor laplace_los(double s, const ScenarioConfig& config, VehicleModel model,
                          const QuadratureSpec& quad = {});

/**
 * E_K[a L^K / (1 + a L^K)] for K - 1 ~ Poisson(mean). The series stops once
 * the unsummed Poisson mass times the next term's hit is below tol.
 */
double nlos_expected_hit(double a, double penetration_loss, double mean, double tol);

CoverageResult coverage(const ScenarioConfig& config, VehicleModel model, RoadCase road_case,
                        const QuadratureSpec& quad = {});

} // namespace v2xcov
