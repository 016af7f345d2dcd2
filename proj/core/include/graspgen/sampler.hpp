#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/gripper.hpp"
#include "graspgen/scene.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

struct SamplerParams {
  int num_fps_points = 50;      // grasp centers per object
  int normal_k = 16;            // k-NN neighborhood for normal estimation
  std::vector<double> alpha_levels;    // cone angles off the inverted normal
  int azimuth_steps = 6;               // directions per nonzero alpha ring
  std::vector<double> inplane_angles;  // gripper roll grid, radians
  std::vector<double> standoffs;       // grasp depths, meters
  double iou_pass_threshold = 0.05;    // closing-region IOU gate
  double body_clearance_epsilon = 1e-8;  // m^3 tolerated body-box overlap
  double approach_ray_margin = 0.10;     // corridor margin behind the gripper
  int surface_points = 2048;   // per-object surface cloud size
  int overlap_samples = 2048;  // Monte-Carlo samples per overlap estimate

  SamplerParams();

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// One sampled gripper pose with its gate score. sim_score stays unset
/// until the evaluation stage.
struct GraspCandidate {
  Vec3 center = Vec3::Zero();          // surface sample the grasp targets
  UnitVec3 approach{Vec3(0, 0, 1)};    // gripper z, pointing into the object
  double inplane_angle = 0.0;
  double depth = 0.0;
  RigidTransform pose;                 // compose_grasp_pose(center, approach, a, d)
  double collision_score = 0.0;        // closing-region IOU in [0, 1]
  std::optional<int> sim_score;        // {0, 1} once evaluated
  int instance_id = -1;
};

/// Greedy farthest point sampling: starting from start_index, each pick
/// maximizes the minimum distance to the chosen set; ties resolve to the
/// lowest index. Throws std::invalid_argument when m exceeds the point
/// count or the start index is invalid.
std::vector<int> farthest_point_sample(std::span<const Vec3> points, int m,
                                       int start_index);

/// Per-point normals from the k-NN covariance (smallest eigenvector),
/// sign-flipped toward the viewpoint. Requires k >= 3 and at least k
/// points.
PointCloud estimate_normals(const PointCloud& cloud, int k, const Vec3& viewpoint);

/// Approach directions at each cone angle around the inverted surface
/// normal: alpha = 0 contributes the inverted normal itself, each alpha > 0
/// ring contributes azimuth_steps directions at uniform azimuth, phase 0.
std::vector<UnitVec3> cone_directions(const UnitVec3& normal,
                                      const SamplerParams& params);

/// Retreat-corridor clearance: a 3x3 ray grid sized to the gripper base
/// footprint, cast from center - approach*(standoff + margin) along
/// -approach. True iff nothing is hit within standoff + margin.
bool approach_clear(const Scene& scene, const Vec3& center,
                    const UnitVec3& approach, const GripperModel& gripper,
                    double standoff, double margin);

struct GateResult {
  bool pass = false;
  double collision_score = 0.0;
};

/// Collision/containment gate for one pose: every body box must overlap
/// every scene mesh by at most body_clearance_epsilon, and the closing
/// region must reach the IOU threshold against the target mesh. The
/// returned score is the closing-region IOU either way.
GateResult overlap_gate(const RigidTransform& pose, int target_instance,
                        const Scene& scene, const GripperModel& gripper,
                        const SamplerParams& params, std::uint64_t seed);

/// Full per-object sampling: FPS centers x cone directions (gated by
/// approach_clear at the largest standoff) x the inplane/standoff grid,
/// gated by overlap_gate. Deterministic for a fixed seed; candidates are
/// ordered by (center, direction, angle, standoff) index.
std::vector<GraspCandidate> generate_candidates(const Scene& scene,
                                                int target_instance,
                                                const GripperModel& gripper,
                                                const SamplerParams& params,
                                                std::uint64_t seed,
                                                int workers = 1);

}  // namespace graspgen
