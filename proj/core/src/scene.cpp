#include "graspgen/scene.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <utility>

#include "graspgen/error.hpp"

namespace graspgen {

using nlohmann::json;

SceneObject make_scene_object(TriangleMesh mesh, const RigidTransform& pose,
                              double scale, int instance_id,
                              std::string mesh_path) {
  if (!(scale > 0.0)) {
    throw InvariantViolation("SceneObject: scale must be > 0");
  }
  pose.check_rotation();

  SceneObject obj;
  obj.mesh_path = std::move(mesh_path);
  obj.mesh = std::make_shared<const TriangleMesh>(
      scale == 1.0 ? std::move(mesh) : scaled(mesh, scale));
  obj.accel = std::make_shared<const MeshAccel>(*obj.mesh);
  obj.pose = pose;
  obj.scale = scale;
  obj.instance_id = instance_id;
  for (const auto& v : obj.mesh->vertices) obj.world_aabb.expand(pose.apply(v));
  return obj;
}

Scene::Scene(std::vector<SceneObject> objects) : objects_(std::move(objects)) {
  std::set<int> ids;
  for (const auto& obj : objects_) {
    if (obj.instance_id < 0) {
      throw InvariantViolation("Scene: instance ids must be non-negative");
    }
    if (!ids.insert(obj.instance_id).second) {
      throw InvariantViolation("Scene: duplicate instance id " +
                               std::to_string(obj.instance_id));
    }
  }
}

Scene Scene::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("unreadable file: '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("scene '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("objects") || !doc["objects"].is_array()) {
    throw InputError("scene '" + path + "': expected {\"objects\": [...]}");
  }

  const auto base_dir = std::filesystem::path(path).parent_path();
  std::vector<SceneObject> objects;
  for (const auto& entry : doc["objects"]) {
    try {
      const std::string mesh_ref = entry.at("mesh").get<std::string>();
      RigidTransform pose;
      const auto& pose_json = entry.at("pose");
      const auto rot = pose_json.at("rotation").get<std::vector<double>>();
      const auto trans = pose_json.at("translation").get<std::vector<double>>();
      if (rot.size() != 9 || trans.size() != 3) {
        throw InputError("scene '" + path + "': pose wants 9 rotation + 3 translation reals");
      }
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) pose.rotation(r, c) = rot[r * 3 + c];
      }
      pose.translation = Vec3(trans[0], trans[1], trans[2]);
      const double scale = entry.value("scale", 1.0);
      const int instance_id = entry.at("instance_id").get<int>();

      auto mesh_file = std::filesystem::path(mesh_ref);
      if (mesh_file.is_relative()) mesh_file = base_dir / mesh_file;
      LoadedMesh loaded = load_mesh(mesh_file.string());
      objects.push_back(make_scene_object(std::move(loaded.mesh), pose, scale,
                                          instance_id, mesh_ref));
    } catch (const json::exception& e) {
      throw InputError("scene '" + path + "': " + e.what());
    }
  }
  return Scene(std::move(objects));
}

const SceneObject* Scene::find(int instance_id) const {
  for (const auto& obj : objects_) {
    if (obj.instance_id == instance_id) return &obj;
  }
  return nullptr;
}

const SceneObject& Scene::object(int instance_id) const {
  const SceneObject* obj = find(instance_id);
  if (!obj) {
    throw InputError("instance id " + std::to_string(instance_id) +
                     " not found in scene");
  }
  return *obj;
}

std::optional<RayHit> ray_cast(const Scene& scene, const Vec3& origin,
                               const UnitVec3& dir, double max_dist) {
  if (!(max_dist > 0.0)) {
    throw InvariantViolation("ray_cast: max_dist must be > 0");
  }
  std::optional<RayHit> best;
  for (const auto& obj : scene.objects()) {
    const RigidTransform inv = obj.pose.inverse();
    const Vec3 local_origin = inv.apply(origin);
    const Vec3 local_dir = inv.rotate(dir);
    const auto hit = obj.accel->raycast(local_origin, local_dir, max_dist);
    if (!hit) continue;
    if (!best || hit->distance < best->distance) {
      Vec3 world_normal = obj.pose.rotate(hit->normal);
      if (world_normal.dot(dir.vec()) > 0.0) world_normal = -world_normal;
      best = RayHit{hit->distance, obj.instance_id, hit->face,
                    UnitVec3::normalized(world_normal)};
    }
  }
  return best;
}

}  // namespace graspgen
