#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graspgen/rng.hpp"
#include "graspgen/transform.hpp"

namespace graspgen {

/// Indexed triangle soup. Faces index vertices; degenerate faces are
/// filtered at load time, so downstream code can assume nonzero area.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  bool empty() const { return vertices.empty() || faces.empty(); }
};

struct LoadedMesh {
  TriangleMesh mesh;
  std::size_t dropped_faces = 0;  // degenerate faces removed on load
};

/// Reads an OBJ (ASCII) or PLY (ASCII / binary little-endian) mesh, selected
/// by file extension. Polygonal faces are fan-triangulated. Watertight
/// meshes with inward winding are flipped to outward.
LoadedMesh load_mesh(const std::string& path);

void save_obj(const TriangleMesh& mesh, const std::string& path);

/// Geometric (unnormalized cross-product) normal of face f.
Vec3 face_normal_raw(const TriangleMesh& mesh, int face);

/// Unit normal of face f, from winding order.
UnitVec3 face_normal(const TriangleMesh& mesh, int face);

double face_area(const TriangleMesh& mesh, int face);
double surface_area(const TriangleMesh& mesh);

/// Signed volume by the divergence theorem (sum of signed tetrahedra to the
/// origin). Exact for closed meshes; positive for outward winding.
double signed_volume(const TriangleMesh& mesh);

/// True iff every undirected edge is shared by exactly two faces with
/// opposite orientation.
bool is_watertight(const TriangleMesh& mesh);

Aabb mesh_aabb(const TriangleMesh& mesh);

/// Uniform area-weighted surface samples with face normals.
struct SurfaceSamples {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;  // unit, from face winding
  std::vector<int> face;      // source face per sample
};

SurfaceSamples sample_surface(const TriangleMesh& mesh, int count,
                              std::uint64_t seed);

/// Scales vertices about the local origin. Uniform scale is baked into
/// meshes at scene load so poses stay pure rigid transforms.
TriangleMesh scaled(const TriangleMesh& mesh, double factor);

}  // namespace graspgen
