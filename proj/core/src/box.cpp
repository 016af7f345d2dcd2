#include "graspgen/box.hpp"

#include "graspgen/error.hpp"

namespace graspgen {

void OrientedBox::validate() const {
  if (!(half_extents.array() > 0.0).all()) {
    throw InvariantViolation("OrientedBox: half extents must be > 0");
  }
  pose.check_rotation();
}

std::array<Vec3, 8> OrientedBox::corners() const {
  std::array<Vec3, 8> out;
  int i = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        const Vec3 local(sx * half_extents.x(), sy * half_extents.y(),
                         sz * half_extents.z());
        out[i++] = pose.apply(local);
      }
    }
  }
  return out;
}

Aabb OrientedBox::world_aabb() const {
  Aabb box;
  for (const auto& c : corners()) box.expand(c);
  return box;
}

std::vector<int> points_in_box(const OrientedBox& box, const PointCloud& cloud) {
  std::vector<int> indices;
  const Mat3 rt = box.pose.rotation.transpose();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3 local = rt * (cloud.points[i] - box.pose.translation);
    if ((local.cwiseAbs().array() <= box.half_extents.array()).all()) {
      indices.push_back(static_cast<int>(i));
    }
  }
  return indices;
}

}  // namespace graspgen
