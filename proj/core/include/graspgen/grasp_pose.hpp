#pragma once

#include "graspgen/transform.hpp"

namespace graspgen {

/// Gripper orientation for an approach direction: the z-column is the
/// approach itself, the x-column is approach x u_ref normalized, y closes
/// the right-handed frame. u_ref is global +z, switching to +x when the
/// approach is within ~2.6 degrees of vertical.
Mat3 frame_from_approach(const UnitVec3& approach);

/// Full grasp pose: rotation = frame_from_approach(approach) * Rz(a),
/// translation = center - approach * depth (the gripper origin stands off
/// `depth` behind the grasp center).
RigidTransform compose_grasp_pose(const Vec3& center, const UnitVec3& approach,
                                  double inplane_angle, double depth);

}  // namespace graspgen
