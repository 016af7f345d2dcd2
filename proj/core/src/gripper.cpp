#include "graspgen/gripper.hpp"

#include <cmath>

#include "graspgen/error.hpp"

namespace graspgen {

void GripperDims::validate() const {
  if (!(max_opening > 0.0)) {
    throw InvariantViolation("GripperDims: max_opening must be > 0");
  }
  for (const Vec3* size : {&finger_size, &base_size, &tail_size}) {
    if (!(size->array() > 0.0).all()) {
      throw InvariantViolation("GripperDims: box sizes must be > 0");
    }
  }
}

GripperModel GripperModel::from_dims(const GripperDims& dims) {
  dims.validate();
  const Vec3 fh = dims.finger_size / 2.0;
  const Vec3 bh = dims.base_size / 2.0;
  const Vec3 th = dims.tail_size / 2.0;
  const double gap_half = dims.max_opening / 2.0;

  GripperModel g;
  g.max_opening = dims.max_opening;

  auto at = [](double x, double y, double z) {
    RigidTransform t;
    t.translation = Vec3(x, y, z);
    return t;
  };

  g.finger_pos = {at(gap_half + fh.x(), 0.0, fh.z()), fh};
  g.finger_neg = {at(-gap_half - fh.x(), 0.0, fh.z()), fh};
  g.base = {at(0.0, 0.0, -bh.z()), bh};
  g.tail = {at(0.0, 0.0, -dims.base_size.z() - th.z()), th};
  g.closing_region = {at(0.0, 0.0, fh.z()), Vec3(gap_half, fh.y(), fh.z())};
  g.validate();
  return g;
}

void GripperModel::validate() const {
  for (const OrientedBox* b : body_boxes()) b->validate();
  closing_region.validate();
  if (!(max_opening > 0.0)) {
    throw InvariantViolation("GripperModel: max_opening must be > 0");
  }
  if (std::abs(closing_axis.vec().dot(approach_axis.vec())) > kUnitTol) {
    throw InvariantViolation("GripperModel: approach axis not perpendicular to closing axis");
  }
  // Closing region must sit inside the finger gap along the closing axis.
  const double region_center = closing_region.pose.translation.dot(closing_axis.vec());
  const double region_half =
      (closing_region.pose.rotation.transpose() * closing_axis.vec())
          .cwiseAbs()
          .dot(closing_region.half_extents);
  const double inner_pos = finger_pos.pose.translation.dot(closing_axis.vec()) -
                           finger_pos.half_extents.x();
  const double inner_neg = finger_neg.pose.translation.dot(closing_axis.vec()) +
                           finger_neg.half_extents.x();
  if (region_center + region_half > inner_pos + kUnitTol ||
      region_center - region_half < inner_neg - kUnitTol) {
    throw InvariantViolation("GripperModel: closing region extends outside the finger gap");
  }
}

}  // namespace graspgen
