#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasigeo/curves.hpp"
#include "quasigeo/tetra.hpp"
#include "quasigeo/unfolding.hpp"

namespace quasigeo::cli {

// SVG drawing of a star unfolding: one polygon per face copy, boundary
// labels (images primed), optional cut locus, and closed curves developed
// onto the face copies. 1000-unit viewport with a 5% margin, byte-stable.
std::string svg_unfolding(const Tetrahedron& tet, const StarUnfolding& su,
                          const std::optional<CutLocus>& locus,
                          const std::vector<ClosedSurfaceCurve>& curves);

// Wavefront OBJ: the four vertices and outward-facing triangles, then each
// curve sampled at its anchors and crossings as a closed polyline (open for
// open polylines from trace paths).
std::string obj_solid(const Tetrahedron& tet,
                      const std::vector<ClosedSurfaceCurve>& curves);
std::string obj_path(const Tetrahedron& tet,
                     const std::vector<SurfacePoint>& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace quasigeo::cli
