#pragma once

#include <vector>

#include "quasigeo/curves.hpp"
#include "quasigeo/tetra.hpp"

namespace quasigeo {

// Direction angles for trace are measured in the tangent fan of the start:
//  - vertex start: counterclockwise from the edge toward the lowest-labeled
//    other vertex, in [0, theta_v);
//  - edge start:   counterclockwise from the directed edge (low -> high
//    label); (0, pi) lies in the lower-labeled adjacent face, (pi, 2 pi) in
//    the other;
//  - face start:   from the +x axis of the face's canonical frame.
double fan_angle_at(const Tetrahedron& tet, const SurfacePoint& start,
                    int face, Vec2 dir_in_face_frame,
                    double eps = default_epsilon());

enum class TraceTermination { MaxLength, VertexHit, SelfReturn, DegenerateDirection };

const char* termination_name(TraceTermination t);

struct TraceStep {
    SurfacePoint point;
    double arclen = 0.0;
};

struct TraceResult {
    std::vector<TraceStep> path;     // start, crossings, terminal point
    std::vector<int> segment_faces;  // face of each path segment
    TraceTermination termination = TraceTermination::MaxLength;
    int hit_vertex = -1;             // for VertexHit
    double length = 0.0;
};

// Straight-line tracing across face developments. Terminates at max_length,
// on reaching a vertex (within tolerance), on returning to the start point
// with the starting direction, or when the ray meets an edge at a
// tolerance-degenerate angle.
TraceResult trace(const Tetrahedron& tet, const SurfacePoint& start,
                  double direction, double max_length,
                  double eps = default_epsilon());

// A trace that closed up (SelfReturn from an edge or face start, or a
// VertexHit back at a vertex start) as a closed surface curve.
ClosedSurfaceCurve closed_curve_from_trace(const TraceResult& result);

struct SweepLoop {
    double departure = 0.0;  // fan angle at the source
    ClosedSurfaceCurve curve;
    QuasigeodesicReport report;
};

struct SweepResult {
    int source = -1;
    double resolution = 0.0;
    std::vector<SweepLoop> loops;  // deduplicated, every report attached
};

// Scans departure directions over the fan at v and collects geodesic loops
// based at v: sign changes of the source-image offset along each developed
// face chain locate candidate chords, which are then extracted exactly from
// the chain geometry and verified; rays that return to v directly are also
// kept. Loops failing verification stay in the result with their reports.
SweepResult sweep_loops(const Tetrahedron& tet, int v, double resolution,
                        double max_length, double eps = default_epsilon());

}  // namespace quasigeo
