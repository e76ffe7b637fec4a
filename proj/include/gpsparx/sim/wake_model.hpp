#pragma once

#include <span>

namespace gpsparx::sim {

// Multi-wake superposition is capped: combined losses of more than 80% of
// the free stream are not modeled.
inline constexpr double kMaxCombinedDeficit = 0.8;

// Fractional speed deficit d metres directly downstream of a rotor with
// radius r0, thrust coefficient ct in (0,1), and linear wake decay k:
// (1 - sqrt(1 - ct)) / (1 + k*d/r0)^2, clamped to [0, 1).
double jensen_deficit(double d, double ct, double k, double rotor_radius);

// Root-sum-square superposition of per-neighbor deficits (each in [0, 1)),
// capped at kMaxCombinedDeficit. An empty list combines to 0.
double combine_deficits(std::span<const double> deficits);

}  // namespace gpsparx::sim
