#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quasigeo/curves.hpp"
#include "quasigeo/tetra.hpp"

namespace quasigeo::cli {

// One entry of a curve description as it appears in the input file.
struct CurvePointSpec {
    SurfacePoint::Kind kind = SurfacePoint::Kind::Vertex;
    int vertex = -1;
    int edge_u = -1;
    int edge_w = -1;
    double t = 0.0;
    int face = -1;
    std::array<double, 3> bary{0.0, 0.0, 0.0};
};

struct CurveSpec {
    std::vector<CurvePointSpec> points;
    std::vector<int> faces;
    bool doubled = false;
};

// Parsed input document: exactly one of vertex coordinates or an angle
// table, plus optional settings and an optional curve to verify.
struct InputDocument {
    std::optional<std::array<Vec3, 4>> vertices;
    std::optional<std::array<std::array<double, 4>, 4>> angle_entries;
    double epsilon = 0.0;
    bool allow_flat = false;
    int depth_bound = 8;
    double resolution = 0.0;
    double max_length = 0.0;
    std::optional<CurveSpec> curve_spec;

    bool angle_mode() const { return !vertices.has_value(); }
    double eps() const;

    // Coordinate-only accessor; angle mode cannot be realized as a
    // specific tetrahedron, so subcommands needing geometry reject it.
    Tetrahedron tetra(const std::string& subcommand) const;
    AngleTable angles() const;
    ClosedSurfaceCurve curve() const;
};

InputDocument load_input(const std::string& path);

int vertex_from_name(const std::string& s);
int face_from_name(const std::string& s);

}  // namespace quasigeo::cli
