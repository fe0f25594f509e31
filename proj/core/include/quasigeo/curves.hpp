#pragma once

#include <array>
#include <utility>
#include <vector>

#include "quasigeo/tetra.hpp"
#include "quasigeo/unfolding.hpp"
#include "quasigeo/vec.hpp"

namespace quasigeo {

struct SurfacePoint {
    enum class Kind { Vertex, Edge, Face };

    Kind kind = Kind::Vertex;
    int vertex = -1;                 // Kind::Vertex
    std::array<int, 2> edge{-1, -1}; // Kind::Edge, lower label first
    double t = 0.0;                  // parameter from edge[0] toward edge[1]
    int face = -1;                   // Kind::Face
    std::array<double, 3> bary{};    // barycentric, face-cycle order

    static SurfacePoint at_vertex(int v);
    // Normalizes the edge to (lower, higher) and snaps parameters within
    // eps of 0 or 1 to the corresponding vertex anchor.
    static SurfacePoint on_edge(int u, int w, double t,
                                double eps = default_epsilon());
    static SurfacePoint in_face(int f, const std::array<double, 3>& bary,
                                double eps = default_epsilon());

    bool lies_on_face(int f) const;
};

// Position of a surface point inside the canonical frame of a face it lies on.
Vec2 point_in_face_frame(const Tetrahedron& tet, const SurfacePoint& p, int f);
Vec3 lift_to_3d(const Tetrahedron& tet, const SurfacePoint& p);

// A closed curve on the surface: a cyclic point sequence plus, for each
// consecutive pair, the face carrying the straight connecting segment.
// A doubled edge (the degenerate two-vertex curve running along one edge
// and back) is the two anchors with doubled_edge set.
struct ClosedSurfaceCurve {
    std::vector<SurfacePoint> points;
    std::vector<int> segment_faces;
    bool doubled_edge = false;
};

int count_vertices(const ClosedSurfaceCurve& curve);
double curve_length(const Tetrahedron& tet, const ClosedSurfaceCurve& curve);

// Surface angles on the two sides of the directed curve at one of its
// vertex anchors; left is the counterclockwise side. left + right = theta.
std::pair<double, double> side_angles(const Tetrahedron& tet,
                                      const ClosedSurfaceCurve& curve,
                                      int anchor_vertex,
                                      double eps = default_epsilon());

struct QuasigeodesicReport {
    enum class Verdict { Geodesic, Quasigeodesic, NotQuasigeodesic };

    struct AnchorAngles {
        int vertex = -1;
        double left = 0.0;
        double right = 0.0;
    };

    int k = 0;  // distinct vertex anchors
    std::vector<AnchorAngles> anchors;
    double max_straightness_residual = 0.0;  // radians of turning at non-anchors
    bool simple = false;
    double tau_left = 0.0, tau_right = 0.0;      // total turn per side
    double omega_left = 0.0, omega_right = 0.0;  // enclosed curvature per side
    Verdict verdict = Verdict::NotQuasigeodesic;
    bool degenerate = false;
};

const char* verdict_name(QuasigeodesicReport::Verdict verdict);

// Full verification: straightness across every crossing by developing the
// adjacent faces, side angles at every anchor, simplicity by pairwise
// segment tests within each face (including endpoint-touch contacts), and
// the turn-plus-curvature balance on both sides.
QuasigeodesicReport verify(const Tetrahedron& tet,
                           const ClosedSurfaceCurve& curve,
                           double eps = default_epsilon());

// |tau_side + omega_side - 2 pi| per side; requires a simple curve.
std::pair<double, double> gauss_bonnet_residual(const Tetrahedron& tet,
                                                const ClosedSurfaceCurve& curve,
                                                double eps = default_epsilon());

// Equality as intrinsic curves: same anchor set and matching crossing
// sequence within tol after the best cyclic alignment, either direction.
bool curves_equal(const ClosedSurfaceCurve& a, const ClosedSurfaceCurve& b,
                  double tol = 1e-6);

}  // namespace quasigeo
