#include "graspgen/pipeline.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "graspgen/error.hpp"
#include "graspgen/evaluator.hpp"
#include "graspgen/parallel.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

using nlohmann::json;

PointCloud build_scene_cloud(const Scene& scene, const PipelineConfig& config) {
  PointCloud cloud;
  for (const auto& obj : scene.objects()) {
    const SurfaceSamples samples = sample_surface(
        *obj.mesh, config.sampler.surface_points,
        mix_seed(config.seed, 0xc10dULL, obj.instance_id));
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
      cloud.points.push_back(obj.pose.apply(samples.points[i]));
      cloud.normals.push_back(obj.pose.rotate(samples.normals[i]));
      cloud.instance_labels.push_back(static_cast<std::uint32_t>(obj.instance_id));
    }
  }
  return cloud;
}

std::vector<GraspCandidate> sample_scene(const Scene& scene,
                                         const PipelineConfig& config,
                                         std::vector<std::pair<int, int>>* counts) {
  const GripperModel gripper = GripperModel::from_dims(config.gripper);
  std::vector<GraspCandidate> all;
  for (const auto& obj : scene.objects()) {
    auto candidates =
        generate_candidates(scene, obj.instance_id, gripper, config.sampler,
                            config.seed, config.worker_count);
    if (counts) counts->emplace_back(obj.instance_id, static_cast<int>(candidates.size()));
    all.insert(all.end(), candidates.begin(), candidates.end());
  }
  return all;
}

void annotate_candidates(std::vector<GraspCandidate>& candidates,
                         const Scene& scene, const PipelineConfig& config) {
  const GripperModel gripper = GripperModel::from_dims(config.gripper);
  const auto evaluator =
      make_evaluator(config.evaluator, config.eval, config.seed, scene);
  parallel_for(candidates.size(), config.worker_count, [&](std::size_t i) {
    candidates[i].sim_score = evaluator->evaluate(candidates[i], scene, gripper);
  });
}

LabelRecord aggregate_labels(const std::string& scene_id,
                             const std::string& cloud_path,
                             const std::vector<GraspCandidate>& candidates,
                             const PipelineConfig& config) {
  const DirectionLattice lattice = build_lattice(config.lattice_classes);
  return build_label_record(scene_id, cloud_path, candidates, lattice);
}

std::vector<RefinedGrasp> refine_grasps(const std::vector<RefinedGrasp>& grasps,
                                        const PointCloud& cloud,
                                        const PipelineConfig& config) {
  config.refine.validate();
  const GripperModel gripper = GripperModel::from_dims(config.gripper);

  const auto assigned = assign_instances(grasps, cloud, gripper);
  std::vector<char> keep(assigned.size(), 0);
  parallel_for(assigned.size(), config.worker_count, [&](std::size_t i) {
    keep[i] = collision_filter(assigned[i], cloud, gripper,
                               config.refine.collision_dilation)
                  ? 1
                  : 0;
  });
  std::vector<RefinedGrasp> filtered;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (keep[i]) filtered.push_back(assigned[i]);
  }
  return top_percent(nms(filtered, config.refine), config.refine.top_percent);
}

namespace {

json candidate_to_json(const GraspCandidate& c) {
  json doc;
  doc["center"] = {c.center.x(), c.center.y(), c.center.z()};
  doc["approach"] = {c.approach.x(), c.approach.y(), c.approach.z()};
  doc["inplane_angle"] = c.inplane_angle;
  doc["depth"] = c.depth;
  std::vector<double> rot(9);
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) rot[r * 3 + col] = c.pose.rotation(r, col);
  }
  doc["pose"] = {{"rotation", rot},
                 {"translation", {c.pose.translation.x(), c.pose.translation.y(),
                                  c.pose.translation.z()}}};
  doc["collision_score"] = c.collision_score;
  doc["instance_id"] = c.instance_id;
  if (c.sim_score.has_value()) doc["sim_score"] = *c.sim_score;
  return doc;
}

GraspCandidate candidate_from_json(const json& doc) {
  GraspCandidate c;
  const auto center = doc.at("center").get<std::vector<double>>();
  const auto approach = doc.at("approach").get<std::vector<double>>();
  if (center.size() != 3 || approach.size() != 3) {
    throw InputError("candidate wants 3-real center and approach");
  }
  c.center = Vec3(center[0], center[1], center[2]);
  c.approach = UnitVec3(Vec3(approach[0], approach[1], approach[2]));
  c.inplane_angle = doc.at("inplane_angle").get<double>();
  c.depth = doc.at("depth").get<double>();
  const auto& pose = doc.at("pose");
  const auto rot = pose.at("rotation").get<std::vector<double>>();
  const auto trans = pose.at("translation").get<std::vector<double>>();
  if (rot.size() != 9 || trans.size() != 3) {
    throw InputError("candidate pose wants 9 rotation + 3 translation reals");
  }
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) c.pose.rotation(r, col) = rot[r * 3 + col];
  }
  c.pose.translation = Vec3(trans[0], trans[1], trans[2]);
  c.pose.check_rotation();
  c.collision_score = doc.at("collision_score").get<double>();
  c.instance_id = doc.at("instance_id").get<int>();
  if (doc.contains("sim_score")) c.sim_score = doc.at("sim_score").get<int>();
  return c;
}

}  // namespace

void write_candidates_jsonl(const std::vector<GraspCandidate>& candidates,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for write: '" + path + "'");
  for (const auto& c : candidates) {
    out << candidate_to_json(c).dump() << '\n';
  }
  if (!out) throw InputError("write failed: '" + path + "'");
}

std::vector<GraspCandidate> read_candidates_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("unreadable file: '" + path + "'");
  std::vector<GraspCandidate> candidates;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      candidates.push_back(candidate_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError("candidate file '" + path + "' line " +
                       std::to_string(lineno) + ": " + e.what());
    }
  }
  return candidates;
}

}  // namespace graspgen
