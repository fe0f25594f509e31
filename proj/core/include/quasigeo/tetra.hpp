#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quasigeo/error.hpp"
#include "quasigeo/tolerance.hpp"
#include "quasigeo/vec.hpp"

namespace quasigeo {

// Vertices a,b,c,d are indices 0..3. Face index f is the face opposite
// vertex f: A = bdc, B = cda, C = adb, D = abc. Cycles are listed so that
// each face is counterclockwise seen from outside the solid once the
// coordinate orientation has been normalized (det[b-a, c-a, d-a] < 0).
inline constexpr int kFaceCycle[4][3] = {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}};

char vertex_name(int v);
char face_name(int f);
int vertex_index(char name);  // -1 when not in {a,b,c,d}
int face_index(char name);    // -1 when not in {A,B,C,D}

bool face_contains(int f, int v);
std::array<int, 3> face_vertices(int f);  // the cycle
// The two faces containing edge uw, ascending face index.
std::array<int, 2> faces_of_edge(int u, int w);
// The vertex of face f other than u and w.
int third_vertex(int f, int u, int w);

struct ValidationReport {
    bool valid = false;
    bool flat = false;      // volume within tolerance of zero, accepted
    double volume = 0.0;    // of the solid, orientation-independent
    std::vector<std::string> failures;
};

struct Tetrahedron {
    std::array<Vec3, 4> pos;
    bool flat = false;

    static Tetrahedron from_vertices(const std::array<Vec3, 4>& vertices,
                                     bool allow_flat = false,
                                     double eps = default_epsilon());

    double edge_length(int u, int w) const { return dist(pos[u], pos[w]); }
    double longest_edge() const;
};

ValidationReport validate(const std::array<Vec3, 4>& vertices,
                          bool allow_flat = false,
                          double eps = default_epsilon());

struct AngleTable {
    // entry[v][f] valid only when face_contains(f, v); radians.
    double entry[4][4] = {};

    double at(int v, int f) const;  // throws VertexNotOnFace otherwise
    double complete_angle(int v) const;             // theta_v
    double curvature(int v) const;                  // omega_v = 2 pi - theta_v
};

AngleTable face_angles(const Tetrahedron& tet);

// Builds a table from raw angle-mode input and checks its consistency:
// entries in (0, pi), per-face sums pi, and the vertex triangle
// inequalities (relaxed to equality when allow_flat).
AngleTable angle_table_from_entries(const double entries[4][4],
                                    bool allow_flat = false,
                                    double eps = default_epsilon(),
                                    double sum_tolerance = 5e-4);

struct Classification {
    std::array<double, 4> curvatures{};       // omega_v, radians
    std::array<double, 4> complete_angles{};  // theta_v, radians
    bool is_isosceles = false;                // all omega_v equal pi
    std::optional<int> pointed_at;            // set iff high_curvature_count == 1
    int high_curvature_count = 0;             // omega_v > pi beyond tolerance
    bool is_f_acute = false;                  // all 12 face angles < pi/2
};

Classification classify(const AngleTable& table, double eps = default_epsilon());
Classification classify(const Tetrahedron& tet, double eps = default_epsilon());

// An endpoint of a longest edge (lexicographic edge tie-break) whose three
// incident face angles are all acute. Throws InternalContradiction if
// neither endpoint qualifies, which would contradict a provable property.
int acute_endpoint_of_longest_edge(const Tetrahedron& tet,
                                   double eps = default_epsilon());

}  // namespace quasigeo
