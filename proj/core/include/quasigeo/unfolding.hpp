#pragma once

#include <array>
#include <utility>
#include <vector>

#include "quasigeo/tetra.hpp"
#include "quasigeo/vec.hpp"

namespace quasigeo {

// One planar copy of a face: positions follow the face cycle.
struct PlacedFace {
    int face = -1;
    std::array<int, 3> cycle{};
    std::array<Vec2, 3> pos{};

    bool has(int v) const { return v == cycle[0] || v == cycle[1] || v == cycle[2]; }
    Vec2 at(int v) const;  // throws VertexNotOnFace when v is not on the face
};

// Face f in its canonical frame: cycle rotated to start at its lowest
// label, that vertex at the origin, the next on +x, the third at +y.
PlacedFace canonical_face(const Tetrahedron& tet, int f);

// Place face g across the directed edge p -> q of an already placed face
// (positions pos_p, pos_q); g's own cycle visits q -> p, so its third
// vertex lands on the far side.
PlacedFace attach_face(const Tetrahedron& tet, int g, int p, int q,
                       Vec2 pos_p, Vec2 pos_q);

// Star unfolding from a source vertex: the surface cut along the three
// edges incident to the source, laid flat. The base is the face opposite
// the source; the other faces fold outward across its edges, each carrying
// one planar image of the source.
struct StarUnfolding {
    int source = -1;
    int base = -1;                      // face index, equals source
    std::array<int, 3> base_cycle{};    // base cycle rotated lowest-first
    std::array<Vec2, 4> vertex_pos{};   // non-source vertices ([source] unused)
    std::array<Vec2, 4> image_pos{};    // image_pos[x] = source image opposite x
    std::array<PlacedFace, 4> faces{};  // base first, then in base_cycle edge order

    struct BoundaryEntry {
        bool is_image = false;
        int label = -1;
        Vec2 pos{};
    };
    std::array<BoundaryEntry, 6> boundary{};  // counterclockwise hexagon
};

StarUnfolding star_unfold(const Tetrahedron& tet, int v);

// True when the open chord between boundary corners i and j stays strictly
// inside the boundary polygon (touching it only at the two corners).
bool boundary_contains_chord(const StarUnfolding& su, int i, int j,
                             double eps = default_epsilon());

// The cut locus of the source in its star unfolding: a degree-3 point y
// equidistant from the three source images, joined to the three non-source
// vertices by straight segments along image bisectors.
struct CutLocus {
    Vec2 y{};
    double radius = 0.0;                             // distance from y to each image
    std::array<double, 3> bary{};                    // y in the base frame, base_cycle order
    std::array<std::pair<Vec2, Vec2>, 3> segments{}; // y -> vertex, ascending label
};

CutLocus cut_locus(const StarUnfolding& su, double eps = default_epsilon());

// Labels x (ascending) whose image-vertex segment (image_pos[x], vertex_pos[x])
// is nowhere exterior to the unfolding and touches the boundary only at its
// endpoints. Positive-length boundary overlap does not count as visible.
std::vector<int> visible_pairs(const StarUnfolding& su,
                               double eps = default_epsilon());

// A chain of face copies sharing consecutive edges, laid out in one plane.
struct FaceSequenceDevelopment {
    std::vector<int> faces;
    std::vector<PlacedFace> placements;
};

struct DevelopmentSeed {
    Vec2 origin{};
    double angle = 0.0;  // rigid motion applied to the first face's canonical frame
};

FaceSequenceDevelopment develop(const Tetrahedron& tet,
                                const std::vector<int>& faces,
                                const DevelopmentSeed& seed = {});

}  // namespace quasigeo
