#include "graspgen/mesh_accel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graspgen {

namespace {

constexpr double kTEps = 1e-12;        // minimum ray parameter that counts
constexpr double kEdgeEps = 1e-10;     // barycentric closeness that triggers a restart
constexpr double kParallelEps = 1e-14;

// Fixed restart directions for degenerate parity rays: slightly tilted off
// +x, distinct tilts per attempt. Deterministic by construction.
const Vec3 kJitterTable[6] = {
    Vec3(1.0, 3.1e-4, 1.7e-4), Vec3(1.0, -2.3e-4, 2.9e-4),
    Vec3(1.0, 1.3e-4, -3.7e-4), Vec3(1.0, -4.1e-4, -1.1e-4),
    Vec3(1.0, 5.3e-4, 4.3e-4), Vec3(1.0, -6.1e-4, 5.9e-4),
};

struct TriHit {
  bool hit = false;
  bool degenerate = false;
  double t = 0.0;
  double min_bary = 1.0;
};

// Moller-Trumbore, boundary inclusive.
TriHit intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                          const Vec3& b, const Vec3& c) {
  TriHit out;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  const double scale = std::sqrt(e1.squaredNorm() * e2.squaredNorm());
  if (std::abs(det) <= kParallelEps * std::max(scale, 1e-300)) {
    // Ray parallel to the triangle plane. Degenerate only if the origin is
    // essentially in that plane (a grazing ray).
    const Vec3 n = e1.cross(e2);
    const double nn = n.norm();
    if (nn > 0.0 && std::abs((origin - a).dot(n)) <= 1e-12 * nn) {
      out.degenerate = true;
    }
    return out;
  }
  const double inv_det = 1.0 / det;
  const Vec3 tvec = origin - a;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return out;
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return out;
  out.hit = true;
  out.t = e2.dot(qvec) * inv_det;
  out.min_bary = std::min({u, v, 1.0 - u - v});
  return out;
}

}  // namespace

MeshAccel::MeshAccel(const TriangleMesh& mesh) : mesh_(&mesh) {
  aabb_ = mesh_aabb(mesh);
  watertight_ = is_watertight(mesh);
  volume_ = std::abs(signed_volume(mesh));

  const int nf = static_cast<int>(mesh.faces.size());
  tri_bounds_.resize(nf);
  all_tris_.resize(nf);
  std::iota(all_tris_.begin(), all_tris_.end(), 0);
  for (int f = 0; f < nf; ++f) {
    const auto& face = mesh.faces[f];
    Aabb tb;
    for (int v : face) tb.expand(mesh.vertices[v]);
    for (int k = 0; k < 3; ++k) {
      tri_bounds_[f].min[k] = tb.min[k];
      tri_bounds_[f].max[k] = tb.max[k];
    }
  }

  grid_n_ = std::clamp(static_cast<int>(std::round(std::sqrt(nf / 2.0))), 1, 64);
  const Vec3 extent = aabb_.extent().cwiseMax(1e-12);
  cell_y_ = extent.y() / grid_n_;
  cell_z_ = extent.z() / grid_n_;
  buckets_.assign(static_cast<std::size_t>(grid_n_) * grid_n_, {});
  for (int f = 0; f < nf; ++f) {
    const auto& tb = tri_bounds_[f];
    const int y0 = std::clamp(static_cast<int>((tb.min[1] - aabb_.min.y()) / cell_y_), 0, grid_n_ - 1);
    const int y1 = std::clamp(static_cast<int>((tb.max[1] - aabb_.min.y()) / cell_y_), 0, grid_n_ - 1);
    const int z0 = std::clamp(static_cast<int>((tb.min[2] - aabb_.min.z()) / cell_z_), 0, grid_n_ - 1);
    const int z1 = std::clamp(static_cast<int>((tb.max[2] - aabb_.min.z()) / cell_z_), 0, grid_n_ - 1);
    for (int iy = y0; iy <= y1; ++iy) {
      for (int iz = z0; iz <= z1; ++iz) {
        buckets_[static_cast<std::size_t>(iy) * grid_n_ + iz].push_back(f);
      }
    }
  }
}

int MeshAccel::cell_of(double y, double z) const {
  const int iy = std::clamp(static_cast<int>((y - aabb_.min.y()) / cell_y_), 0, grid_n_ - 1);
  const int iz = std::clamp(static_cast<int>((z - aabb_.min.z()) / cell_z_), 0, grid_n_ - 1);
  return iy * grid_n_ + iz;
}

std::optional<int> MeshAccel::parity_count(const Vec3& p, const Vec3& dir,
                                           const std::vector<int>& tris) const {
  int crossings = 0;
  for (int f : tris) {
    const auto& tb = tri_bounds_[f];
    if (tb.max[0] < p.x() - 1e-12) continue;  // entirely behind a +x-ish ray
    const auto& face = mesh_->faces[f];
    const TriHit hit = intersect_triangle(p, dir, mesh_->vertices[face[0]],
                                          mesh_->vertices[face[1]],
                                          mesh_->vertices[face[2]]);
    if (hit.degenerate) return std::nullopt;
    if (!hit.hit || hit.t <= kTEps) continue;
    if (hit.min_bary < kEdgeEps) return std::nullopt;  // edge/vertex graze
    ++crossings;
  }
  return crossings;
}

bool MeshAccel::inside(const Vec3& point) const {
  if (!aabb_.contains(point)) return false;

  // First attempt: exact +x ray through the (y,z) bucket.
  const auto& bucket = buckets_[cell_of(point.y(), point.z())];
  if (auto count = parity_count(point, Vec3(1, 0, 0), bucket)) {
    return (*count % 2) == 1;
  }
  // Degenerate crossing: restart with tilted rays over all triangles.
  for (const auto& jitter : kJitterTable) {
    const Vec3 dir = jitter.normalized();
    if (auto count = parity_count(point, dir, all_tris_)) {
      return (*count % 2) == 1;
    }
  }
  // Every attempt grazed something; count the last direction permissively.
  int crossings = 0;
  const Vec3 dir = kJitterTable[5].normalized();
  for (int f : all_tris_) {
    const auto& face = mesh_->faces[f];
    const TriHit hit = intersect_triangle(point, dir, mesh_->vertices[face[0]],
                                          mesh_->vertices[face[1]],
                                          mesh_->vertices[face[2]]);
    if (hit.hit && hit.t > kTEps) ++crossings;
  }
  return (crossings % 2) == 1;
}

std::optional<LocalHit> MeshAccel::raycast(const Vec3& origin, const Vec3& dir,
                                           double max_dist) const {
  // Slab test against the mesh bounds.
  double t0 = 0.0, t1 = max_dist;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(dir[k]) < 1e-300) {
      if (origin[k] < aabb_.min[k] || origin[k] > aabb_.max[k]) return std::nullopt;
      continue;
    }
    double a = (aabb_.min[k] - origin[k]) / dir[k];
    double b = (aabb_.max[k] - origin[k]) / dir[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (t0 > t1) return std::nullopt;

  LocalHit best;
  best.distance = max_dist;
  bool found = false;
  for (std::size_t f = 0; f < mesh_->faces.size(); ++f) {
    const auto& face = mesh_->faces[f];
    const TriHit hit = intersect_triangle(origin, dir, mesh_->vertices[face[0]],
                                          mesh_->vertices[face[1]],
                                          mesh_->vertices[face[2]]);
    if (!hit.hit || hit.t < 0.0 || hit.t > max_dist) continue;
    if (!found || hit.t < best.distance) {
      found = true;
      best.distance = hit.t;
      best.face = static_cast<int>(f);
    }
  }
  if (!found) return std::nullopt;
  best.normal = face_normal(*mesh_, best.face).vec();
  return best;
}

}  // namespace graspgen
