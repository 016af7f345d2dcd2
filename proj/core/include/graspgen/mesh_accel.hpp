#pragma once

#include <optional>
#include <vector>

#include "graspgen/mesh.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

struct LocalHit {
  double distance = 0.0;
  int face = -1;
  Vec3 normal = Vec3::Zero();  // unit geometric normal from winding
};

/// Immutable per-mesh query structure, all in the mesh's local frame:
/// nearest ray hit, and point-in-solid by +x ray parity with a jittered
/// restart when a crossing grazes an edge or vertex. A (y,z) bucket grid
/// narrows the parity ray to a handful of candidate triangles.
class MeshAccel {
 public:
  /// Non-owning: `mesh` must outlive the accelerator.
  explicit MeshAccel(const TriangleMesh& mesh);

  const TriangleMesh& mesh() const { return *mesh_; }
  const Aabb& local_aabb() const { return aabb_; }
  bool watertight() const { return watertight_; }

  /// Enclosed volume (absolute signed-tetrahedron sum). Only meaningful for
  /// watertight meshes.
  double volume() const { return volume_; }

  /// Point-in-solid test, mesh local frame.
  bool inside(const Vec3& point) const;

  /// Nearest intersection along the ray within max_dist, boundary
  /// inclusive. Equal-distance ties resolve to the lowest face index.
  std::optional<LocalHit> raycast(const Vec3& origin, const Vec3& dir,
                                  double max_dist) const;

 private:
  struct TriBounds {
    double min[3];
    double max[3];
  };

  int cell_of(double y, double z) const;
  // Parity along an arbitrary direction over the given triangles; returns
  // the crossing count or nullopt when a degenerate crossing was seen.
  std::optional<int> parity_count(const Vec3& p, const Vec3& dir,
                                  const std::vector<int>& tris) const;

  const TriangleMesh* mesh_;
  Aabb aabb_;
  bool watertight_ = false;
  double volume_ = 0.0;

  std::vector<TriBounds> tri_bounds_;
  std::vector<int> all_tris_;
  // (y,z) grid buckets for the +x parity ray.
  int grid_n_ = 1;
  double cell_y_ = 1.0, cell_z_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace graspgen
