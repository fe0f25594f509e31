#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasigeo/curves.hpp"
#include "quasigeo/tetra.hpp"
#include "quasigeo/unfolding.hpp"

namespace quasigeo {

struct ConstructionTrace {
    std::string case_label;
    std::vector<std::pair<std::string, std::string>> choices;
    std::optional<StarUnfolding> unfolding;

    void choose(const std::string& key, const std::string& value) {
        choices.emplace_back(key, value);
    }
    std::string to_text() const;
};

// The geodesic loop at v that separates h from the other two vertices:
// the chord between the two source images flanking h's corner in the star
// unfolding of v. Empty when the chord leaves the unfolding or misses the
// expected edges, i.e. when no such loop exists on the surface.
std::optional<ClosedSurfaceCurve> geodesic_loop(const Tetrahedron& tet,
                                                int v, int h,
                                                double eps = default_epsilon());

struct Q1Outcome {
    bool no_q1_isosceles = false;  // theorem outcome on isosceles input
    ClosedSurfaceCurve curve;      // valid when !no_q1_isosceles
    ConstructionTrace trace;
};

// One-vertex simple closed quasigeodesic by curvature case analysis.
Q1Outcome construct_q1(const Tetrahedron& tet, double eps = default_epsilon());

// Two-vertex quasigeodesic: a doubled edge between two curvature >= pi
// vertices when available, otherwise the edge-loop through the single
// high-curvature vertex found via a visible image pair.
std::pair<ClosedSurfaceCurve, ConstructionTrace> construct_q2(
    const Tetrahedron& tet, double eps = default_epsilon());

// True when the two face angles at v on the faces other than f sum to
// more than pi (strict beyond tolerance).
bool face_fails_at(const AngleTable& table, int f, int v,
                   double eps = default_epsilon());

// First face (order A,B,C,D) failing at none of its vertices; provably exists.
int q3_face(const AngleTable& table, double eps = default_epsilon());
std::pair<int, ClosedSurfaceCurve> construct_q3(const Tetrahedron& tet,
                                                double eps = default_epsilon());

// Face partitions into two pairs; the separating curve visits all four
// vertices along four edges.
enum class Partition { AB_CD = 0, AC_BD = 1, AD_BC = 2 };

const char* partition_name(Partition p);
std::array<int, 4> partition_vertex_cycle(Partition p);

bool q4_partition_valid(const AngleTable& table, Partition p,
                        double eps = default_epsilon());
std::optional<ClosedSurfaceCurve> construct_q4(const Tetrahedron& tet,
                                               Partition p,
                                               double eps = default_epsilon());

struct FoundCurve {
    ClosedSurfaceCurve curve;
    QuasigeodesicReport report;
    std::string note;  // human-readable provenance, e.g. "loop at b around c"
};

struct EnumerationResult {
    std::vector<FoundCurve> q1;
    std::vector<FoundCurve> q2_nondegenerate;
    std::vector<FoundCurve> q2_degenerate;
    std::vector<FoundCurve> q3;
    std::vector<FoundCurve> q4;

    int total() const;
};

// Catalog of simple closed quasigeodesics: the 12 image-chord loop
// candidates, vertex-to-vertex geodesic segments up to depth_bound faces
// closed with their edge, doubled edges, face boundaries, and partitions.
// Every listed curve passes verify with the matching vertex count.
EnumerationResult enumerate_all(const Tetrahedron& tet, int depth_bound = 8,
                                double eps = default_epsilon());

}  // namespace quasigeo
