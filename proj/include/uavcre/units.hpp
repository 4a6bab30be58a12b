#pragma once

#include <cmath>
#include <numbers>

namespace uavcre {

inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// dBm to watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Densities are stored per m^2; configs use per km^2.
inline constexpr double per_km2(double v) { return v * 1e-6; }

} // namespace uavcre
