#include "graspgen/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "graspgen/error.hpp"
#include "ply_detail.hpp"

namespace graspgen {

namespace {

// Faces whose winding cross-product is this small are treated as zero-area.
constexpr double kMinFaceCrossSq = 1e-28;

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool face_degenerate(const std::vector<Vec3>& vertices,
                     const std::array<int, 3>& f) {
  if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return true;
  const Vec3 e1 = vertices[f[1]] - vertices[f[0]];
  const Vec3 e2 = vertices[f[2]] - vertices[f[0]];
  return e1.cross(e2).squaredNorm() <= kMinFaceCrossSq;
}

LoadedMesh finalize_mesh(std::vector<Vec3> vertices,
                         std::vector<std::array<int, 3>> faces,
                         const std::string& path) {
  const int n = static_cast<int>(vertices.size());
  for (const auto& f : faces) {
    for (int idx : f) {
      if (idx < 0 || idx >= n) {
        throw InputError("mesh '" + path + "': face index out of range");
      }
    }
  }

  LoadedMesh out;
  out.mesh.vertices = std::move(vertices);
  out.mesh.faces.reserve(faces.size());
  for (const auto& f : faces) {
    if (face_degenerate(out.mesh.vertices, f)) {
      ++out.dropped_faces;
    } else {
      out.mesh.faces.push_back(f);
    }
  }
  if (out.mesh.empty()) {
    throw InputError("empty mesh: '" + path + "'");
  }
  // Normalize winding so closed meshes enclose positive volume.
  if (is_watertight(out.mesh) && signed_volume(out.mesh) < 0.0) {
    for (auto& f : out.mesh.faces) std::swap(f[1], f[2]);
  }
  return out;
}

// ---------------------------------------------------------------- OBJ ----

int obj_index(const std::string& token, std::size_t vertex_count,
              const std::string& path) {
  // Token forms: "3", "3/1", "3//2", "3/1/2". Negative indices are
  // relative to the current end of the vertex list.
  const auto slash = token.find('/');
  const std::string head =
      slash == std::string::npos ? token : token.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw InputError("mesh '" + path + "': bad OBJ face token '" + token + "'");
  }
  if (idx > 0) return idx - 1;
  if (idx < 0) return static_cast<int>(vertex_count) + idx;
  throw InputError("mesh '" + path + "': OBJ face index 0 is invalid");
}

LoadedMesh load_obj(std::istream& in, const std::string& path) {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw InputError("mesh '" + path + "': malformed OBJ vertex line");
      }
      vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string token;
      while (ls >> token) poly.push_back(obj_index(token, vertices.size(), path));
      if (poly.size() < 3) {
        throw InputError("mesh '" + path + "': OBJ face with <3 vertices");
      }
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        faces.push_back({poly[0], poly[i], poly[i + 1]});
      }
    }
    // All other tags (vn, vt, usemtl, ...) are ignored.
  }
  return finalize_mesh(std::move(vertices), std::move(faces), path);
}

// ---------------------------------------------------------------- PLY ----

template <typename Cursor>
void read_ply_elements(const ply::Header& header, Cursor& cursor,
                       const std::string& path, std::vector<Vec3>& vertices,
                       std::vector<std::array<int, 3>>& faces) {
  for (const auto& el : header.elements) {
    const bool is_vertex = el.name == "vertex";
    const bool is_face = el.name == "face";
    const int ix = el.property_index("x");
    const int iy = el.property_index("y");
    const int iz = el.property_index("z");
    int iface = el.property_index("vertex_indices");
    if (iface < 0) iface = el.property_index("vertex_index");
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) {
      throw InputError("mesh '" + path + "': PLY vertex element lacks x/y/z");
    }

    for (std::size_t row = 0; row < el.count; ++row) {
      Vec3 v = Vec3::Zero();
      std::vector<int> poly;
      for (std::size_t p = 0; p < el.properties.size(); ++p) {
        const auto& prop = el.properties[p];
        if (prop.is_list) {
          const int n = static_cast<int>(cursor.read(prop.count_type));
          for (int j = 0; j < n; ++j) {
            const double value = cursor.read(prop.value_type);
            if (is_face && static_cast<int>(p) == iface) {
              poly.push_back(static_cast<int>(value));
            }
          }
        } else {
          const double value = cursor.read(prop.value_type);
          if (is_vertex) {
            if (static_cast<int>(p) == ix) v.x() = value;
            if (static_cast<int>(p) == iy) v.y() = value;
            if (static_cast<int>(p) == iz) v.z() = value;
          }
        }
      }
      if (is_vertex) vertices.push_back(v);
      if (is_face && iface >= 0) {
        if (poly.size() < 3) {
          throw InputError("mesh '" + path + "': PLY face with <3 vertices");
        }
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
          faces.push_back({poly[0], poly[i], poly[i + 1]});
        }
      }
    }
  }
}

LoadedMesh load_ply(const std::string& bytes, const std::string& path) {
  const ply::Header header = ply::parse_header(bytes, path);
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  if (header.binary) {
    ply::BinaryCursor cursor(bytes, header.data_offset, path);
    read_ply_elements(header, cursor, path, vertices, faces);
  } else {
    ply::AsciiCursor cursor(bytes, header.data_offset, path);
    read_ply_elements(header, cursor, path, vertices, faces);
  }
  return finalize_mesh(std::move(vertices), std::move(faces), path);
}

}  // namespace

LoadedMesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("unreadable file: '" + path + "'");
  }
  const std::string ext = lower_ext(path);
  if (ext == "obj") {
    return load_obj(in, path);
  }
  if (ext == "ply") {
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return load_ply(bytes, path);
  }
  throw InputError("unsupported format: '" + path + "' (expected .obj or .ply)");
}

void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot open for write: '" + path + "'");
  }
  out.precision(17);
  for (const auto& v : mesh.vertices) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  if (!out) {
    throw InputError("write failed: '" + path + "'");
  }
}

Vec3 face_normal_raw(const TriangleMesh& mesh, int face) {
  const auto& f = mesh.faces[face];
  const Vec3 e1 = mesh.vertices[f[1]] - mesh.vertices[f[0]];
  const Vec3 e2 = mesh.vertices[f[2]] - mesh.vertices[f[0]];
  return e1.cross(e2);
}

UnitVec3 face_normal(const TriangleMesh& mesh, int face) {
  return UnitVec3::normalized(face_normal_raw(mesh, face));
}

double face_area(const TriangleMesh& mesh, int face) {
  return 0.5 * face_normal_raw(mesh, face).norm();
}

double surface_area(const TriangleMesh& mesh) {
  double area = 0.0;
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    area += face_area(mesh, f);
  }
  return area;
}

double signed_volume(const TriangleMesh& mesh) {
  double volume = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    volume += a.dot(b.cross(c));
  }
  return volume / 6.0;
}

bool is_watertight(const TriangleMesh& mesh) {
  // Closed orientable manifold: each undirected edge appears in exactly two
  // faces, once per direction.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      if (++directed[{a, b}] > 1) return false;  // repeated directed edge
    }
  }
  for (const auto& [edge, count] : directed) {
    if (directed.find({edge.second, edge.first}) == directed.end()) return false;
  }
  return true;
}

Aabb mesh_aabb(const TriangleMesh& mesh) {
  Aabb box;
  for (const auto& v : mesh.vertices) box.expand(v);
  return box;
}

SurfaceSamples sample_surface(const TriangleMesh& mesh, int count,
                              std::uint64_t seed) {
  if (count <= 0 || mesh.empty()) return {};
  std::vector<double> cumulative(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    total += face_area(mesh, static_cast<int>(f));
    cumulative[f] = total;
  }

  SurfaceSamples out;
  out.points.reserve(count);
  out.normals.reserve(count);
  out.face.reserve(count);
  Rng rng(mix_seed(seed, 0x5a41faceULL));
  for (int i = 0; i < count; ++i) {
    const double pick = rng.uniform() * total;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
    const int f = static_cast<int>(std::min<std::size_t>(
        std::distance(cumulative.begin(), it), mesh.faces.size() - 1));
    // Uniform barycentric point via the sqrt trick.
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    const auto& face = mesh.faces[f];
    const Vec3& a = mesh.vertices[face[0]];
    const Vec3& b = mesh.vertices[face[1]];
    const Vec3& c = mesh.vertices[face[2]];
    out.points.push_back((1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c);
    out.normals.push_back(face_normal(mesh, f).vec());
    out.face.push_back(f);
  }
  return out;
}

TriangleMesh scaled(const TriangleMesh& mesh, double factor) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v *= factor;
  return out;
}

}  // namespace graspgen
