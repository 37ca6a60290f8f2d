// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "v2xcov/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace v2xcov {

struct QuadratureSpec
{
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
    int max_subdivisions = 400;
    double poisson_series_mass_tol = 1e-9;
    int angular_nodes_per_quadrant = 32;

    void validate() const;
};

struct Integral
{
    double value = 0;
    double error = 0;
    int evaluations = 0;
};

// Fixed n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendreRule
{
  public:
    explicit GaussLegendreRule(int n);

    int size() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    template <typename F>
    double integrate(F&& f, double a, double b) const
    {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(mid + half * nodes_[i]);
        return sum * half;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod_15(F& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j)
    {
        const double dx = half * kKronrodNodes[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    // Conservative QUADPACK-style scaling of the raw difference.
    if (err > 0)
        err = std::min(err, 200.0 * err * std::sqrt(200.0 * err));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
    return {a, b, kronrod, err};
}

} // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (G7/K15) integration over the consecutive
 * intervals delimited by `points` (sorted, at least two entries). The
 * interval with the largest error estimate is bisected until the summed
 * estimate meets max(abs_tol, rel_tol * |I|).
 */
template <typename F>
Integral integrate_adaptive(F&& f, std::span<const double> points, double abs_tol,
                            double rel_tol, int max_subdivisions)
{
    if (points.size() < 2)
        throw ParameterError("integrate_adaptive: need at least two breakpoints");
    std::priority_queue<detail::Segment> heap;
    Integral total;
    double value = 0, error = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
    {
        if (!(points[i] <= points[i + 1]))
            throw ParameterError("integrate_adaptive: breakpoints must be sorted");
        if (points[i] == points[i + 1])
            continue;
        auto s = detail::gauss_kronrod_15(f, points[i], points[i + 1]);
        total.evaluations += 15;
        value += s.value;
        error += s.error;
        heap.push(s);
    }
    int splits = 0;
    while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::abs(value)))
    {
        if (splits >= max_subdivisions)
        {
            char msg[256];
            std::snprintf(msg, sizeof msg,
                          "integrate_adaptive: no convergence on [%g, %g] after %d subdivisions "
                          "(value %.12g, error estimate %.3g)",
                          points.front(), points.back(), splits, value, error);
            throw NumericError(msg);
        }
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        total.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    // Recompute the sums from the leaves to shed accumulated rounding.
    value = 0;
    error = 0;
    while (!heap.empty())
    {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    total.value = value;
    total.error = error;
    return total;
}

template <typename F>
Integral integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                            int max_subdivisions)
{
    const std::array<double, 2> pts{a, b};
    return integrate_adaptive(std::forward<F>(f), std::span<const double>(pts), abs_tol, rel_tol,
                              max_subdivisions);
}

} // namespace v2xcov
