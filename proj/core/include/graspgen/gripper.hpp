#pragma once

#include <array>

#include "graspgen/box.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

/// Parametric description of a two-finger gripper. Full box extents in the
/// gripper frame: x = closing axis, z = approach axis (toward the object).
struct GripperDims {
  double max_opening = 0.10;
  Vec3 finger_size{0.015, 0.02, 0.05};  // thickness, width, length
  Vec3 base_size{0.13, 0.025, 0.02};
  Vec3 tail_size{0.02, 0.02, 0.04};

  void validate() const;
};

/// Four-box two-finger gripper plus the closing region between the fingers.
/// Origin is the base face the fingers attach to; fingers extend along +z.
struct GripperModel {
  OrientedBox finger_pos;  // finger on the +closing side
  OrientedBox finger_neg;
  OrientedBox base;
  OrientedBox tail;
  OrientedBox closing_region;
  double max_opening = 0.0;
  UnitVec3 closing_axis{Vec3(1, 0, 0)};
  UnitVec3 approach_axis{Vec3(0, 0, 1)};

  static GripperModel from_dims(const GripperDims& dims);

  std::array<const OrientedBox*, 4> body_boxes() const {
    return {&finger_pos, &finger_neg, &base, &tail};
  }

  /// Checks the structural invariants: positive boxes, closing region inside
  /// the finger gap, approach axis perpendicular to closing axis.
  void validate() const;
};

}  // namespace graspgen
