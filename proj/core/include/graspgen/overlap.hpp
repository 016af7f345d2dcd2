#pragma once

#include <cstdint>

#include "graspgen/box.hpp"
#include "graspgen/mesh_accel.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

struct OverlapResult {
  double overlap_volume = 0.0;  // m^3
  double iou = 0.0;             // overlap / (vol(box) + vol(mesh) - overlap)
  bool volume_reliable = true;  // false when the mesh is not watertight
};

/// Monte-Carlo overlap between an oriented box and a posed mesh. Samples a
/// seeded jittered-stratified grid inside the box (at least n_samples
/// points) and tests each against the mesh interior, so results are
/// bit-reproducible for a fixed seed. Mesh volume for the IOU denominator
/// is the exact signed-tetrahedron sum; for open meshes the IOU is still
/// returned but flagged unreliable.
OverlapResult box_mesh_overlap(const OrientedBox& box, const MeshAccel& accel,
                               const RigidTransform& mesh_pose, int n_samples,
                               std::uint64_t seed);

/// Convenience overload that builds the accelerator on the fly.
OverlapResult box_mesh_overlap(const OrientedBox& box, const TriangleMesh& mesh,
                               const RigidTransform& mesh_pose, int n_samples,
                               std::uint64_t seed);

/// Stratified interior point set of a mesh, reusable across many overlap
/// queries against the same geometry (the lift sweep translates these).
struct InteriorSamples {
  std::vector<Vec3> local_points;  // points inside the mesh, local frame
  double point_volume = 0.0;       // volume represented by one point
};

InteriorSamples build_interior_samples(const MeshAccel& accel, int n_samples,
                                       std::uint64_t seed);

/// Estimated intersection volume between mesh A (as interior samples, posed
/// by `pose_a`) and mesh B.
double mesh_mesh_overlap(const InteriorSamples& samples_a,
                         const RigidTransform& pose_a, const MeshAccel& accel_b,
                         const RigidTransform& pose_b);

}  // namespace graspgen
