#include "graspgen/transform.hpp"

#include <cmath>
#include <sstream>

#include "graspgen/error.hpp"

namespace graspgen {

UnitVec3::UnitVec3(const Vec3& v) : v_(v) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > kUnitTol) {
    std::ostringstream msg;
    msg << "UnitVec3: norm " << n << " outside 1 +/- " << kUnitTol;
    throw InvariantViolation(msg.str());
  }
}

UnitVec3 UnitVec3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvariantViolation("UnitVec3: cannot normalize zero/non-finite vector");
  }
  return UnitVec3(v / n, Unchecked{});
}

bool RigidTransform::rotation_valid(double tol) const {
  const Mat3 err = rotation.transpose() * rotation - Mat3::Identity();
  if (err.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

void RigidTransform::check_rotation(double tol) const {
  if (!rotation_valid(tol)) {
    throw InvariantViolation("RigidTransform: rotation not orthonormal with det +1");
  }
}

}  // namespace graspgen
