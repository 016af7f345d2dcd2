#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graspgen/transform.hpp"

namespace graspgen {

/// Point set with optional per-point unit normals and instance labels.
/// Normals, when present, must match the point count; labels likewise.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;            // empty until estimated/loaded
  std::vector<std::uint32_t> instance_labels;  // empty if unlabeled

  std::size_t size() const { return points.size(); }
  bool has_normals() const { return !normals.empty(); }
  bool has_labels() const { return !instance_labels.empty(); }

  /// Throws InvariantViolation on count mismatch or non-unit normals.
  void validate() const;
};

/// PLY cloud I/O: properties x,y,z plus optional nx,ny,nz and uint32
/// instance_id. Reader accepts ASCII and binary little-endian.
PointCloud load_ply_cloud(const std::string& path);
void save_ply_cloud(const PointCloud& cloud, const std::string& path,
                    bool binary = true);

}  // namespace graspgen
