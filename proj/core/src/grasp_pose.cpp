#include "graspgen/grasp_pose.hpp"

#include <cmath>

namespace graspgen {

Mat3 frame_from_approach(const UnitVec3& approach) {
  const Vec3& z = approach.vec();
  const Vec3 u_ref = std::abs(z.z()) > 0.999 ? Vec3(1, 0, 0) : Vec3(0, 0, 1);
  const Vec3 x = z.cross(u_ref).normalized();
  const Vec3 y = z.cross(x);
  Mat3 frame;
  frame.col(0) = x;
  frame.col(1) = y;
  frame.col(2) = z;
  return frame;
}

RigidTransform compose_grasp_pose(const Vec3& center, const UnitVec3& approach,
                                  double inplane_angle, double depth) {
  Mat3 rz = Mat3::Identity();
  const double c = std::cos(inplane_angle);
  const double s = std::sin(inplane_angle);
  rz(0, 0) = c;
  rz(0, 1) = -s;
  rz(1, 0) = s;
  rz(1, 1) = c;

  RigidTransform pose;
  pose.rotation = frame_from_approach(approach) * rz;
  pose.translation = center - approach.vec() * depth;
  return pose;
}

}  // namespace graspgen
