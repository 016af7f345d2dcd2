#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graspgen/mesh.hpp"
#include "graspgen/mesh_accel.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

/// Posed mesh instance. Uniform scale is baked into the stored mesh at
/// construction, so `pose` stays a pure rigid transform.
struct SceneObject {
  std::string mesh_path;
  std::shared_ptr<const TriangleMesh> mesh;
  std::shared_ptr<const MeshAccel> accel;
  RigidTransform pose;
  double scale = 1.0;
  int instance_id = 0;
  Aabb world_aabb;
};

/// Builds a SceneObject from an in-memory mesh (bakes scale, builds the
/// accelerator, caches world bounds).
SceneObject make_scene_object(TriangleMesh mesh, const RigidTransform& pose,
                              double scale, int instance_id,
                              std::string mesh_path = {});

class Scene {
 public:
  Scene() = default;
  explicit Scene(std::vector<SceneObject> objects);

  /// Reads the JSON scene document; mesh paths resolve relative to the
  /// scene file's directory.
  static Scene load(const std::string& path);

  const std::vector<SceneObject>& objects() const { return objects_; }
  bool empty() const { return objects_.empty(); }

  const SceneObject* find(int instance_id) const;
  /// Throws InputError when the instance id is absent.
  const SceneObject& object(int instance_id) const;

 private:
  std::vector<SceneObject> objects_;
};

struct RayHit {
  double distance = 0.0;
  int instance_id = -1;
  int face_index = -1;
  UnitVec3 normal{Vec3(0, 0, 1)};  // oriented against the ray direction
};

/// Nearest intersection across all scene objects within max_dist.
/// Deterministic tie-break: earlier object in scene order, then lowest face
/// index within a mesh.
std::optional<RayHit> ray_cast(const Scene& scene, const Vec3& origin,
                               const UnitVec3& dir, double max_dist);

}  // namespace graspgen
