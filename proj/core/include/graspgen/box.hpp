#pragma once

#include <array>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

/// Oriented box: local frame pose plus strictly positive half extents.
struct OrientedBox {
  RigidTransform pose;
  Vec3 half_extents = Vec3::Zero();

  /// Throws InvariantViolation unless all half extents are > 0 and the pose
  /// rotation is proper.
  void validate() const;

  double volume() const {
    return 8.0 * half_extents.x() * half_extents.y() * half_extents.z();
  }

  /// Boundary-inclusive containment in the box frame.
  bool contains(const Vec3& world_point) const {
    const Vec3 local = pose.rotation.transpose() * (world_point - pose.translation);
    return (local.cwiseAbs().array() <= half_extents.array()).all();
  }

  OrientedBox transformed(const RigidTransform& t) const {
    return {t * pose, half_extents};
  }

  OrientedBox dilated(double margin) const {
    return {pose, half_extents + Vec3::Constant(margin)};
  }

  std::array<Vec3, 8> corners() const;
  Aabb world_aabb() const;
};

/// Indices of cloud points inside the box, boundary inclusive, ascending.
std::vector<int> points_in_box(const OrientedBox& box, const PointCloud& cloud);

}  // namespace graspgen
