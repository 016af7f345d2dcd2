#pragma once

#include "graspgen/mesh.hpp"

namespace graspgen {

// Watertight primitive meshes, outward winding, centered at the local
// origin. Used by the demo scene generator and as desk-scale stand-ins for
// arbitrary object assets.

/// Axis-aligned solid box with the given full extents.
TriangleMesh make_box_mesh(const Vec3& size);

/// Closed cylinder along +z: radius r, height h, `segments` around.
TriangleMesh make_cylinder_mesh(double radius, double height, int segments = 48);

/// Icosphere of the given radius; `subdivisions` of 2 gives 320 faces.
TriangleMesh make_icosphere_mesh(double radius, int subdivisions = 2);

}  // namespace graspgen
