#pragma once

#include <numbers>

namespace icas::constants {

// CODATA 2018 exact values (SI redefinition).
inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double reduced_planck = planck / (2.0 * std::numbers::pi);

inline constexpr double per_cm_to_per_m = 100.0;
inline constexpr double wcm2_to_wm2 = 1.0e4;

}  // namespace icas::constants
