#include "graspgen/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graspgen/error.hpp"

namespace graspgen {

DirectionLattice build_lattice(int class_count) {
  if (class_count < 2) {
    throw ConfigError("direction lattice needs at least 2 classes");
  }
  static const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double azimuth_step = 2.0 * std::numbers::pi * (1.0 - 1.0 / golden);

  DirectionLattice lattice;
  lattice.class_count = class_count;
  lattice.vectors.reserve(class_count);
  for (int i = 0; i < class_count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / class_count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = azimuth_step * i;
    lattice.vectors.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return lattice;
}

int encode_direction(const DirectionLattice& lattice, const UnitVec3& v) {
  int best = 0;
  double best_dot = lattice.vectors[0].dot(v.vec());
  for (int k = 1; k < lattice.class_count; ++k) {
    const double d = lattice.vectors[k].dot(v.vec());
    if (d > best_dot) {
      best_dot = d;
      best = k;
    }
  }
  return best;
}

UnitVec3 decode_class(const DirectionLattice& lattice, int k) {
  if (k < 0 || k >= lattice.class_count) {
    throw std::out_of_range("direction class " + std::to_string(k) +
                            " outside [0, " + std::to_string(lattice.class_count) + ")");
  }
  return UnitVec3::normalized(lattice.vectors[k]);
}

}  // namespace graspgen
