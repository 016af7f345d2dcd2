#pragma once

#include <vector>

#include "graspgen/transform.hpp"

namespace graspgen {

/// Deterministic Fibonacci-lattice quantization of the unit sphere into
/// `class_count` direction classes. The lattice is a pure function of the
/// class count, so class indices are stable across runs and versions.
struct DirectionLattice {
  int class_count = 0;
  std::vector<Vec3> vectors;  // unit, pairwise distinct
};

/// Point i of V: z = 1 - 2(i+0.5)/V, azimuth = 2*pi*i*(1 - 1/phi) with
/// phi the golden ratio.
DirectionLattice build_lattice(int class_count);

/// Nearest class by maximum dot product; ties resolve to the lowest index.
int encode_direction(const DirectionLattice& lattice, const UnitVec3& v);

/// Lattice vector k; throws std::out_of_range outside [0, class_count).
UnitVec3 decode_class(const DirectionLattice& lattice, int k);

}  // namespace graspgen
