#pragma once

#include <Eigen/Dense>
#include <limits>

namespace graspgen {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kRotationTol = 1e-9;

/// Unit-length direction. Norm is checked to 1 +/- 1e-9 at construction;
/// converts implicitly to Vec3 for arithmetic.
class UnitVec3 {
 public:
  /// Wraps a vector that is already unit length (throws InvariantViolation
  /// otherwise).
  explicit UnitVec3(const Vec3& v);

  /// Normalizes an arbitrary non-zero vector.
  static UnitVec3 normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }

  Vec3 operator-() const { return -v_; }

 private:
  struct Unchecked {};
  UnitVec3(const Vec3& v, Unchecked) : v_(v) {}
  Vec3 v_;
};

/// Proper rigid motion: orthonormal rotation (det +1) plus translation.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 rotate(const Vec3& v) const { return rotation * v; }

  RigidTransform inverse() const {
    RigidTransform inv;
    inv.rotation = rotation.transpose();
    inv.translation = -(inv.rotation * translation);
    return inv;
  }

  RigidTransform operator*(const RigidTransform& rhs) const {
    RigidTransform out;
    out.rotation = rotation * rhs.rotation;
    out.translation = rotation * rhs.translation + translation;
    return out;
  }

  bool rotation_valid(double tol = kRotationTol) const;

  /// Throws InvariantViolation unless the rotation is orthonormal with
  /// determinant +1 within tolerance.
  void check_rotation(double tol = kRotationTol) const;
};

/// Axis-aligned bounds, used for cheap rejection before exact queries.
struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void expand(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void expand(const Aabb& other) {
    min = min.cwiseMin(other.min);
    max = max.cwiseMax(other.max);
  }
  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  bool intersects(const Aabb& other) const {
    return (min.array() <= other.max.array()).all() &&
           (max.array() >= other.min.array()).all();
  }
  bool empty() const { return (min.array() > max.array()).any(); }
  Vec3 extent() const { return max - min; }
  double volume() const {
    if (empty()) return 0.0;
    const Vec3 e = extent();
    return e.x() * e.y() * e.z();
  }
};

}  // namespace graspgen
