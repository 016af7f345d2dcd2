#pragma once

#include <string>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/gripper.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

struct RefineParams {
  double nms_translation = 0.02;           // meters
  double nms_angle = 0.5235987755982988;   // pi/6 radians
  double top_percent = 10.0;               // (0, 100]
  double collision_dilation = 0.005;       // meters added to each half extent

  void validate() const;
};

/// Grasp surviving the refinement stages. instance_id is -1 until
/// assignment; source_index points back to the input line it came from.
struct RefinedGrasp {
  RigidTransform pose;
  double confidence = 0.0;  // in [0, 1]
  int instance_id = -1;
  int source_index = -1;
};

/// Majority instance label of the cloud points inside the grasp's closing
/// region; grasps with an empty closing region are dropped. Label ties
/// resolve to the lower id.
std::vector<RefinedGrasp> assign_instances(const std::vector<RefinedGrasp>& grasps,
                                           const PointCloud& cloud,
                                           const GripperModel& gripper);

/// True (keep) iff no cloud point lies inside any body box dilated by
/// `dilation` on every half extent. The closing region is not a body box.
bool collision_filter(const RefinedGrasp& grasp, const PointCloud& cloud,
                      const GripperModel& gripper, double dilation);

/// Greedy confidence-descending suppression: a grasp is dropped when an
/// already-kept grasp on the same instance is both closer than
/// nms_translation and within nms_angle of its approach axis.
std::vector<RefinedGrasp> nms(const std::vector<RefinedGrasp>& grasps,
                              const RefineParams& params);

/// The ceil(p/100 * n) highest-confidence grasps, confidence-descending
/// with input order preserved among ties.
std::vector<RefinedGrasp> top_percent(const std::vector<RefinedGrasp>& grasps,
                                      double p);

/// Successful grasps divided by total outcomes; throws on empty input.
double average_precision(const std::vector<bool>& outcomes);

// JSON-Lines I/O. Input lines carry {"pose": ..., "confidence": ...};
// annotated candidate lines are also accepted, with sim_score standing in
// for a missing confidence.
std::vector<RefinedGrasp> read_grasps_jsonl(const std::string& path);
void write_grasps_jsonl(const std::vector<RefinedGrasp>& grasps,
                        const std::string& path);

/// Marker cloud for visualization: one point per grasp origin, approach
/// axis stored as the normal, instance id as the label.
PointCloud grasp_markers(const std::vector<RefinedGrasp>& grasps);

}  // namespace graspgen
