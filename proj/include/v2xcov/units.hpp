// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace v2xcov {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Config files carry dBm / dB / degrees; everything internal is linear mW,
// linear ratios and radians.
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double theta)
{
    double w = std::remainder(theta, kTwoPi);
    if (w <= -std::numbers::pi)
        w += kTwoPi;
    return w;
}

} // namespace v2xcov
