#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "graspgen/gripper.hpp"
#include "graspgen/overlap.hpp"
#include "graspgen/sampler.hpp"
#include "graspgen/scene.hpp"

namespace graspgen {

// Deterministic quasi-static stand-in for a rigid-body simulation: a grasp
// scores 1 iff the fingers reach opposing contacts, the contact normals lie
// inside the friction cone of the closing axis, and lifting the object does
// not drag it or the gripper through another scene object.
struct EvalParams {
  double friction_mu = 0.6;
  double lift_height = 0.10;        // meters, along lift_direction
  int sweep_steps = 10;
  double contact_tolerance = 1e-4;  // meters
  int finger_rays = 5;              // ray fan resolution per axis
  int overlap_samples = 2048;       // Monte-Carlo samples for sweep overlap
  double clearance_epsilon = 1e-8;  // m^3 tolerated overlap during the sweep
  Vec3 lift_direction{0.0, 0.0, 1.0};

  void validate() const;
};

/// Opposing first contacts found by closing the fingers. `pos` names the
/// finger on the +closing side; normals point from the object toward the
/// respective finger.
struct FingerContacts {
  Vec3 point_pos = Vec3::Zero();
  Vec3 point_neg = Vec3::Zero();
  UnitVec3 normal_pos{Vec3(1, 0, 0)};
  UnitVec3 normal_neg{Vec3(-1, 0, 0)};
  double width = 0.0;  // contact separation along the closing axis
};

/// Casts opposing ray fans across the closing region (one fan per finger
/// face) against the target mesh and keeps the first contact per side.
/// Absent when either side finds no contact within max_opening.
std::optional<FingerContacts> close_fingers(const RigidTransform& pose,
                                            const SceneObject& target,
                                            const GripperModel& gripper,
                                            const EvalParams& params);

/// Antipodal friction-cone test: both contact normals must lie within
/// atan(mu) of the (signed) closing axis.
bool antipodal_check(const FingerContacts& contacts,
                     const UnitVec3& closing_axis_world, double mu);

/// Sweeps the target mesh and the gripper body boxes along lift_direction
/// in sweep_steps increments; true iff neither overlaps any OTHER scene
/// object beyond clearance_epsilon at any step. Pass cached interior
/// samples of the target to amortize across candidates.
bool lift_sweep_check(const RigidTransform& pose, const SceneObject& target,
                      const Scene& scene, const GripperModel& gripper,
                      const EvalParams& params, std::uint64_t seed,
                      const InteriorSamples* target_samples = nullptr);

/// Binary simulation surrogate score: 1 iff all three sub-checks pass.
int evaluate_grasp(const GraspCandidate& candidate, const Scene& scene,
                   const GripperModel& gripper, const EvalParams& params,
                   std::uint64_t seed,
                   const InteriorSamples* target_samples = nullptr);

/// Pluggable evaluation contract; external physics backends implement this.
class GraspEvaluator {
 public:
  virtual ~GraspEvaluator() = default;
  virtual int evaluate(const GraspCandidate& candidate, const Scene& scene,
                       const GripperModel& gripper) const = 0;
};

/// The built-in surrogate, with per-object interior samples cached for the
/// scene it was constructed against.
class QuasiStaticEvaluator final : public GraspEvaluator {
 public:
  QuasiStaticEvaluator(EvalParams params, std::uint64_t seed, const Scene& scene);

  int evaluate(const GraspCandidate& candidate, const Scene& scene,
               const GripperModel& gripper) const override;

 private:
  EvalParams params_;
  std::uint64_t seed_;
  std::map<int, InteriorSamples> samples_by_instance_;
};

/// Evaluator registry; "quasi-static" is the only built-in name.
std::unique_ptr<GraspEvaluator> make_evaluator(const std::string& name,
                                               const EvalParams& params,
                                               std::uint64_t seed,
                                               const Scene& scene);

}  // namespace graspgen
