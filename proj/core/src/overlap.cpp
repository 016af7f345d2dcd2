#include "graspgen/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "graspgen/error.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

namespace {

int grid_side(int n_samples) {
  int g = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n_samples))));
  return std::max(g, 1);
}

}  // namespace

OverlapResult box_mesh_overlap(const OrientedBox& box, const MeshAccel& accel,
                               const RigidTransform& mesh_pose, int n_samples,
                               std::uint64_t seed) {
  if (n_samples < 1000) {
    throw InvariantViolation("box_mesh_overlap: n_samples must be >= 1000");
  }
  box.validate();

  OverlapResult result;
  result.volume_reliable = accel.watertight();
  const double vol_box = box.volume();
  const double vol_mesh = accel.volume();

  // World-space bounds reject: no samples can land inside the mesh.
  Aabb mesh_world;
  {
    const Aabb& lb = accel.local_aabb();
    for (int cx = 0; cx < 2; ++cx) {
      for (int cy = 0; cy < 2; ++cy) {
        for (int cz = 0; cz < 2; ++cz) {
          const Vec3 corner(cx ? lb.max.x() : lb.min.x(),
                            cy ? lb.max.y() : lb.min.y(),
                            cz ? lb.max.z() : lb.min.z());
          mesh_world.expand(mesh_pose.apply(corner));
        }
      }
    }
  }
  int inside = 0;
  const int g = grid_side(n_samples);
  const long total = static_cast<long>(g) * g * g;
  if (box.world_aabb().intersects(mesh_world)) {
    // box local -> mesh local, composed once.
    const RigidTransform box_to_mesh = mesh_pose.inverse() * box.pose;
    Rng rng(mix_seed(seed, 0xb0c5ULL));
    const Vec3 h = box.half_extents;
    for (int ix = 0; ix < g; ++ix) {
      for (int iy = 0; iy < g; ++iy) {
        for (int iz = 0; iz < g; ++iz) {
          const double ux = (ix + rng.uniform()) / g;
          const double uy = (iy + rng.uniform()) / g;
          const double uz = (iz + rng.uniform()) / g;
          const Vec3 local(h.x() * (2.0 * ux - 1.0), h.y() * (2.0 * uy - 1.0),
                           h.z() * (2.0 * uz - 1.0));
          if (accel.inside(box_to_mesh.apply(local))) ++inside;
        }
      }
    }
  }

  result.overlap_volume = vol_box * static_cast<double>(inside) / static_cast<double>(total);
  const double denom = vol_box + vol_mesh - result.overlap_volume;
  result.iou = denom > 0.0 ? std::clamp(result.overlap_volume / denom, 0.0, 1.0) : 0.0;
  return result;
}

OverlapResult box_mesh_overlap(const OrientedBox& box, const TriangleMesh& mesh,
                               const RigidTransform& mesh_pose, int n_samples,
                               std::uint64_t seed) {
  const MeshAccel accel(mesh);
  return box_mesh_overlap(box, accel, mesh_pose, n_samples, seed);
}

InteriorSamples build_interior_samples(const MeshAccel& accel, int n_samples,
                                       std::uint64_t seed) {
  InteriorSamples out;
  const Aabb& bounds = accel.local_aabb();
  const Vec3 extent = bounds.extent();
  const int g = grid_side(n_samples);
  const long total = static_cast<long>(g) * g * g;
  out.point_volume = bounds.volume() / static_cast<double>(total);

  Rng rng(mix_seed(seed, 0x15a3ULL));
  for (int ix = 0; ix < g; ++ix) {
    for (int iy = 0; iy < g; ++iy) {
      for (int iz = 0; iz < g; ++iz) {
        const Vec3 p(bounds.min.x() + extent.x() * (ix + rng.uniform()) / g,
                     bounds.min.y() + extent.y() * (iy + rng.uniform()) / g,
                     bounds.min.z() + extent.z() * (iz + rng.uniform()) / g);
        if (accel.inside(p)) out.local_points.push_back(p);
      }
    }
  }
  return out;
}

double mesh_mesh_overlap(const InteriorSamples& samples_a,
                         const RigidTransform& pose_a, const MeshAccel& accel_b,
                         const RigidTransform& pose_b) {
  const RigidTransform a_to_b = pose_b.inverse() * pose_a;
  long count = 0;
  for (const auto& p : samples_a.local_points) {
    if (accel_b.inside(a_to_b.apply(p))) ++count;
  }
  return samples_a.point_volume * static_cast<double>(count);
}

}  // namespace graspgen
