#pragma once

#include <cstdint>
#include <vector>

#include "hsbte/sphere.hpp"

namespace hsbte::pts {

using sph::Vec3;

/// Radical-inverse (van der Corput) value of index n in the given base.
double radical_inverse(std::uint64_t n, std::uint32_t base);

struct PhasePoint {
  Vec3 x;
  Vec3 omega;
  double E;
};

/// Deterministic Halton phase points in the ball of the given radius, the
/// full sphere of directions, and [E_lo, E_hi]. `seed` offsets the Halton
/// index, so the same (n, seed) always yields the same points.
std::vector<PhasePoint> halton_phase_points(int n, std::uint64_t seed,
                                            double radius, double E_lo,
                                            double E_hi);

}  // namespace hsbte::pts
