#pragma once

#include <cmath>

namespace gpsparx {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Wrap an angle into [0, 2*pi). Angles throughout the library are in radians;
// a wind direction is the direction the wind blows toward, measured
// counterclockwise from +x.
inline double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2*pi after the add
  return w;
}

// Circular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > kTwoPi / 2.0 ? kTwoPi - d : d;
}

inline double degrees_to_radians(double deg) { return deg * (kTwoPi / 360.0); }

}  // namespace gpsparx
