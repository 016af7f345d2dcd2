#include "graspgen/refine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>

#include "graspgen/box.hpp"
#include "graspgen/error.hpp"

namespace graspgen {

using nlohmann::json;

void RefineParams::validate() const {
  if (!(nms_translation > 0.0)) throw ConfigError("refine.nms_translation must be > 0");
  if (!(nms_angle > 0.0)) throw ConfigError("refine.nms_angle must be > 0");
  if (!(top_percent > 0.0) || top_percent > 100.0) {
    throw ConfigError("refine.top_percent must lie in (0, 100]");
  }
  if (collision_dilation < 0.0) {
    throw ConfigError("refine.collision_dilation must be >= 0");
  }
}

std::vector<RefinedGrasp> assign_instances(const std::vector<RefinedGrasp>& grasps,
                                           const PointCloud& cloud,
                                           const GripperModel& gripper) {
  if (!cloud.has_labels()) {
    throw InvariantViolation("assign_instances: cloud has no instance labels");
  }
  std::vector<RefinedGrasp> out;
  out.reserve(grasps.size());
  for (const auto& grasp : grasps) {
    const OrientedBox region = gripper.closing_region.transformed(grasp.pose);
    const auto inside = points_in_box(region, cloud);
    if (inside.empty()) continue;  // nothing graspable in the closing region

    std::map<std::uint32_t, int> votes;
    for (int idx : inside) ++votes[cloud.instance_labels[idx]];
    // Majority label; std::map iteration order means the lower id wins ties.
    std::uint32_t best_label = 0;
    int best_count = -1;
    for (const auto& [label, count] : votes) {
      if (count > best_count) {
        best_count = count;
        best_label = label;
      }
    }
    RefinedGrasp assigned = grasp;
    assigned.instance_id = static_cast<int>(best_label);
    out.push_back(assigned);
  }
  return out;
}

bool collision_filter(const RefinedGrasp& grasp, const PointCloud& cloud,
                      const GripperModel& gripper, double dilation) {
  for (const OrientedBox* body : gripper.body_boxes()) {
    const OrientedBox dilated = body->dilated(dilation).transformed(grasp.pose);
    const Mat3 rt = dilated.pose.rotation.transpose();
    for (const auto& point : cloud.points) {
      const Vec3 local = rt * (point - dilated.pose.translation);
      if ((local.cwiseAbs().array() <= dilated.half_extents.array()).all()) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<int> confidence_order(const std::vector<RefinedGrasp>& grasps) {
  std::vector<int> order(grasps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return grasps[a].confidence > grasps[b].confidence;
  });
  return order;
}

}  // namespace

std::vector<RefinedGrasp> nms(const std::vector<RefinedGrasp>& grasps,
                              const RefineParams& params) {
  params.validate();
  const auto order = confidence_order(grasps);

  std::vector<RefinedGrasp> kept;
  for (int idx : order) {
    const auto& grasp = grasps[idx];
    const Vec3 axis = grasp.pose.rotation.col(2);
    bool suppressed = false;
    for (const auto& winner : kept) {
      if (winner.instance_id != grasp.instance_id) continue;
      const double dist = (winner.pose.translation - grasp.pose.translation).norm();
      if (dist >= params.nms_translation) continue;
      const Vec3 winner_axis = winner.pose.rotation.col(2);
      const double angle =
          std::acos(std::clamp(winner_axis.dot(axis), -1.0, 1.0));
      if (angle < params.nms_angle) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(grasp);
  }
  return kept;
}

std::vector<RefinedGrasp> top_percent(const std::vector<RefinedGrasp>& grasps,
                                      double p) {
  if (!(p > 0.0) || p > 100.0) {
    throw ConfigError("top_percent: p must lie in (0, 100]");
  }
  if (grasps.empty()) return {};
  const auto order = confidence_order(grasps);
  const std::size_t keep = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(grasps.size())));
  std::vector<RefinedGrasp> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep && i < order.size(); ++i) {
    out.push_back(grasps[order[i]]);
  }
  return out;
}

double average_precision(const std::vector<bool>& outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("average_precision: empty outcome list");
  }
  const long successes = std::count(outcomes.begin(), outcomes.end(), true);
  return static_cast<double>(successes) / static_cast<double>(outcomes.size());
}

namespace {

json pose_to_json(const RigidTransform& pose) {
  std::vector<double> rot(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot[r * 3 + c] = pose.rotation(r, c);
  }
  return {{"rotation", rot},
          {"translation", {pose.translation.x(), pose.translation.y(),
                           pose.translation.z()}}};
}

RigidTransform pose_from_json(const json& doc) {
  const auto rot = doc.at("rotation").get<std::vector<double>>();
  const auto trans = doc.at("translation").get<std::vector<double>>();
  if (rot.size() != 9 || trans.size() != 3) {
    throw InputError("pose wants 9 rotation + 3 translation reals");
  }
  RigidTransform pose;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) pose.rotation(r, c) = rot[r * 3 + c];
  }
  pose.translation = Vec3(trans[0], trans[1], trans[2]);
  pose.check_rotation();
  return pose;
}

}  // namespace

std::vector<RefinedGrasp> read_grasps_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("unreadable file: '" + path + "'");
  std::vector<RefinedGrasp> grasps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json doc = json::parse(line);
      RefinedGrasp grasp;
      grasp.pose = pose_from_json(doc.at("pose"));
      if (doc.contains("confidence")) {
        grasp.confidence = doc.at("confidence").get<double>();
      } else if (doc.contains("sim_score")) {
        grasp.confidence = doc.at("sim_score").get<double>();
      } else {
        throw InputError("grasp line lacks confidence");
      }
      if (grasp.confidence < 0.0 || grasp.confidence > 1.0) {
        throw InvariantViolation("grasp confidence outside [0, 1]");
      }
      grasp.instance_id = doc.value("instance_id", -1);
      grasp.source_index = static_cast<int>(grasps.size());
      grasps.push_back(grasp);
    } catch (const json::exception& e) {
      throw InputError("grasp file '" + path + "' line " + std::to_string(lineno) +
                       ": " + e.what());
    }
  }
  return grasps;
}

void write_grasps_jsonl(const std::vector<RefinedGrasp>& grasps,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for write: '" + path + "'");
  for (const auto& grasp : grasps) {
    json doc;
    doc["pose"] = pose_to_json(grasp.pose);
    doc["confidence"] = grasp.confidence;
    doc["instance_id"] = grasp.instance_id;
    doc["source_index"] = grasp.source_index;
    out << doc.dump() << '\n';
  }
  if (!out) throw InputError("write failed: '" + path + "'");
}

PointCloud grasp_markers(const std::vector<RefinedGrasp>& grasps) {
  PointCloud cloud;
  for (const auto& grasp : grasps) {
    cloud.points.push_back(grasp.pose.translation);
    cloud.normals.push_back(grasp.pose.rotation.col(2));
    cloud.instance_labels.push_back(
        grasp.instance_id < 0 ? 0u : static_cast<std::uint32_t>(grasp.instance_id));
  }
  return cloud;
}

}  // namespace graspgen
