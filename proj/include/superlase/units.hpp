#pragma once

#include <cmath>

namespace superlase {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// SI constants for the photon-number -> watt conversion.
inline constexpr double hbar_si = 1.054571817e-34;   // J s
inline constexpr double c_light_si = 2.99792458e8;   // m / s

// User-facing frequencies are linear Hz; the model works in angular rad/s.
inline constexpr double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline constexpr double rad_to_hz(double w_rad) { return w_rad / two_pi; }

}  // namespace superlase
