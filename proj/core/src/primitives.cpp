#include "graspgen/primitives.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace graspgen {

TriangleMesh make_box_mesh(const Vec3& size) {
  const Vec3 h = size / 2.0;
  TriangleMesh mesh;
  mesh.vertices = {
      {-h.x(), -h.y(), -h.z()}, {+h.x(), -h.y(), -h.z()},
      {+h.x(), +h.y(), -h.z()}, {-h.x(), +h.y(), -h.z()},
      {-h.x(), -h.y(), +h.z()}, {+h.x(), -h.y(), +h.z()},
      {+h.x(), +h.y(), +h.z()}, {-h.x(), +h.y(), +h.z()},
  };
  mesh.faces = {
      {0, 2, 1}, {0, 3, 2},  // -z
      {4, 5, 6}, {4, 6, 7},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {1, 2, 6}, {1, 6, 5},  // +x
      {3, 0, 4}, {3, 4, 7},  // -x
  };
  return mesh;
}

TriangleMesh make_cylinder_mesh(double radius, double height, int segments) {
  const double hz = height / 2.0;
  TriangleMesh mesh;
  // Ring vertices: bottom [0, n), top [n, 2n); then the two cap centers.
  for (int ring = 0; ring < 2; ++ring) {
    const double z = ring == 0 ? -hz : hz;
    for (int i = 0; i < segments; ++i) {
      const double a = 2.0 * std::numbers::pi * i / segments;
      mesh.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  const int bottom_center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, 0.0, -hz);
  const int top_center = bottom_center + 1;
  mesh.vertices.emplace_back(0.0, 0.0, hz);

  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    // Side quad, outward winding.
    mesh.faces.push_back({i, j, segments + j});
    mesh.faces.push_back({i, segments + j, segments + i});
    // Caps.
    mesh.faces.push_back({bottom_center, j, i});
    mesh.faces.push_back({top_center, segments + i, segments + j});
  }
  return mesh;
}

namespace {

int midpoint(std::map<std::pair<int, int>, int>& cache,
             std::vector<Vec3>& vertices, int a, int b) {
  const auto key = std::minmax(a, b);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const Vec3 mid = ((vertices[a] + vertices[b]) / 2.0).normalized();
  const int idx = static_cast<int>(vertices.size());
  vertices.push_back(mid);
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

TriangleMesh make_icosphere_mesh(double radius, int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh mesh;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& v : mesh.vertices) v.normalize();
  mesh.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const int ab = midpoint(cache, mesh.vertices, f[0], f[1]);
      const int bc = midpoint(cache, mesh.vertices, f[1], f[2]);
      const int ca = midpoint(cache, mesh.vertices, f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(next);
  }
  for (auto& v : mesh.vertices) v *= radius;
  return mesh;
}

}  // namespace graspgen
