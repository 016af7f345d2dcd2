#include "graspgen/cloud.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "graspgen/error.hpp"
#include "ply_detail.hpp"

namespace graspgen {

void PointCloud::validate() const {
  if (has_normals() && normals.size() != points.size()) {
    throw InvariantViolation("PointCloud: normal count != point count");
  }
  if (has_labels() && instance_labels.size() != points.size()) {
    throw InvariantViolation("PointCloud: label count != point count");
  }
  for (const auto& n : normals) {
    if (std::abs(n.norm() - 1.0) > 1e-6) {
      throw InvariantViolation("PointCloud: non-unit normal");
    }
  }
}

namespace {

template <typename Cursor>
PointCloud read_cloud_elements(const ply::Header& header, Cursor& cursor,
                               const std::string& path) {
  PointCloud cloud;
  for (const auto& el : header.elements) {
    const bool is_vertex = el.name == "vertex";
    const int ix = el.property_index("x");
    const int iy = el.property_index("y");
    const int iz = el.property_index("z");
    const int inx = el.property_index("nx");
    const int iny = el.property_index("ny");
    const int inz = el.property_index("nz");
    const int ilabel = el.property_index("instance_id");
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) {
      throw InputError("cloud '" + path + "': PLY vertex element lacks x/y/z");
    }
    const bool with_normals = is_vertex && inx >= 0 && iny >= 0 && inz >= 0;
    const bool with_labels = is_vertex && ilabel >= 0;

    for (std::size_t row = 0; row < el.count; ++row) {
      Vec3 p = Vec3::Zero();
      Vec3 n = Vec3::Zero();
      double label = 0.0;
      for (std::size_t k = 0; k < el.properties.size(); ++k) {
        const auto& prop = el.properties[k];
        if (prop.is_list) {
          const int count = static_cast<int>(cursor.read(prop.count_type));
          for (int j = 0; j < count; ++j) cursor.read(prop.value_type);
          continue;
        }
        const double value = cursor.read(prop.value_type);
        if (!is_vertex) continue;
        const int kk = static_cast<int>(k);
        if (kk == ix) p.x() = value;
        if (kk == iy) p.y() = value;
        if (kk == iz) p.z() = value;
        if (kk == inx) n.x() = value;
        if (kk == iny) n.y() = value;
        if (kk == inz) n.z() = value;
        if (kk == ilabel) label = value;
      }
      if (is_vertex) {
        cloud.points.push_back(p);
        if (with_normals) cloud.normals.push_back(n);
        if (with_labels) {
          cloud.instance_labels.push_back(static_cast<std::uint32_t>(label));
        }
      }
    }
  }
  return cloud;
}

}  // namespace

PointCloud load_ply_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("unreadable file: '" + path + "'");
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const ply::Header header = ply::parse_header(bytes, path);
  PointCloud cloud;
  if (header.binary) {
    ply::BinaryCursor cursor(bytes, header.data_offset, path);
    cloud = read_cloud_elements(header, cursor, path);
  } else {
    ply::AsciiCursor cursor(bytes, header.data_offset, path);
    cloud = read_cloud_elements(header, cursor, path);
  }
  cloud.validate();
  return cloud;
}

void save_ply_cloud(const PointCloud& cloud, const std::string& path,
                    bool binary) {
  cloud.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open for write: '" + path + "'");
  }
  out << "ply\n";
  out << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
  out << "element vertex " << cloud.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (cloud.has_normals()) {
    out << "property double nx\nproperty double ny\nproperty double nz\n";
  }
  if (cloud.has_labels()) {
    out << "property uint32 instance_id\n";
  }
  out << "end_header\n";

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (binary) {
      auto put = [&](double v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof(double));
      };
      put(cloud.points[i].x());
      put(cloud.points[i].y());
      put(cloud.points[i].z());
      if (cloud.has_normals()) {
        put(cloud.normals[i].x());
        put(cloud.normals[i].y());
        put(cloud.normals[i].z());
      }
      if (cloud.has_labels()) {
        const std::uint32_t label = cloud.instance_labels[i];
        out.write(reinterpret_cast<const char*>(&label), sizeof(label));
      }
    } else {
      out.precision(17);
      out << cloud.points[i].x() << ' ' << cloud.points[i].y() << ' '
          << cloud.points[i].z();
      if (cloud.has_normals()) {
        out << ' ' << cloud.normals[i].x() << ' ' << cloud.normals[i].y() << ' '
            << cloud.normals[i].z();
      }
      if (cloud.has_labels()) out << ' ' << cloud.instance_labels[i];
      out << '\n';
    }
  }
  if (!out) {
    throw InputError("write failed: '" + path + "'");
  }
}

}  // namespace graspgen
