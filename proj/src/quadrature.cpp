// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/quadrature.hpp"

#include <numbers>

namespace v2xcov {

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0) || !(abs_tol > 0))
        throw ParameterError("QuadratureSpec: tolerances must be > 0");
    if (!(poisson_series_mass_tol > 0 && poisson_series_mass_tol < 1))
        throw ParameterError("QuadratureSpec: poisson_series_mass_tol must lie in (0,1)");
    if (max_subdivisions < 1)
        throw ParameterError("QuadratureSpec: max_subdivisions must be >= 1");
    if (angular_nodes_per_quadrant < 2)
        throw ParameterError("QuadratureSpec: angular_nodes_per_quadrant must be >= 2");
}

GaussLegendreRule::GaussLegendreRule(int n)
{
    if (n < 1)
        throw ParameterError("GaussLegendreRule: need at least one node");
    nodes_.resize(n);
    weights_.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double w = 2.0 / ((1 - x * x) * dp * dp);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        nodes_[n / 2] = 0.0;
}

} // namespace v2xcov
