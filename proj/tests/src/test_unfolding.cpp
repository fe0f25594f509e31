#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "quasigeo/unfolding.hpp"

using namespace quasigeo;

namespace {

double interior_angle(Vec2 prev, Vec2 cur, Vec2 next) {
    // counterclockwise boundary: the interior sweeps from the outgoing ray
    // around to the incoming one
    const Vec2 u = prev - cur;
    const Vec2 w = next - cur;
    const double a = std::atan2(cross(w, u), dot(w, u));
    return a < 0.0 ? a + 2.0 * kPi : a;
}

double polygon_area(const std::array<StarUnfolding::BoundaryEntry, 6>& b) {
    double twice = 0.0;
    for (int i = 0; i < 6; ++i) {
        const Vec2 p = b[i].pos;
        const Vec2 q = b[(i + 1) % 6].pos;
        twice += cross(p, q);
    }
    return twice / 2.0;
}

int boundary_index(const StarUnfolding& su, bool is_image, int label) {
    for (int i = 0; i < 6; ++i) {
        if (su.boundary[i].is_image == is_image && su.boundary[i].label == label) return i;
    }
    return -1;
}

}  // namespace

TEST_CASE("canonical face frames start at the lowest label on the x axis") {
    const auto tet = fixtures::one_q3();
    for (int f = 0; f < 4; ++f) {
        const PlacedFace pf = canonical_face(tet, f);
        CHECK(pf.face == f);
        const auto cyc = face_vertices(f);
        CHECK(pf.cycle[0] == *std::min_element(cyc.begin(), cyc.end()));
        // a rotation of the face cycle
        bool is_rotation = false;
        for (int r = 0; r < 3; ++r) {
            if (pf.cycle[0] == cyc[r] && pf.cycle[1] == cyc[(r + 1) % 3] &&
                pf.cycle[2] == cyc[(r + 2) % 3]) {
                is_rotation = true;
            }
        }
        CHECK(is_rotation);
        CHECK(norm(pf.pos[0]) == doctest::Approx(0.0));
        CHECK(pf.pos[1].y == doctest::Approx(0.0));
        CHECK(pf.pos[1].x ==
              doctest::Approx(tet.edge_length(pf.cycle[0], pf.cycle[1])).epsilon(1e-12));
        CHECK(pf.pos[2].y > 0.0);
        // rigid: all three side lengths match the solid
        for (int i = 0; i < 3; ++i) {
            const int u = pf.cycle[i], w = pf.cycle[(i + 1) % 3];
            CHECK(dist(pf.pos[i], pf.pos[(i + 1) % 3]) ==
                  doctest::Approx(tet.edge_length(u, w)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(pf.at(f), Error);
    }
}

TEST_CASE("attached faces share the edge and lie on the far side") {
    const auto tet = fixtures::case223();
    const PlacedFace base = canonical_face(tet, 3);  // face D = (a, b, c)
    const int p = base.cycle[0], q = base.cycle[1];
    const int r = base.cycle[2];
    // the other face on edge pq
    const auto fs = faces_of_edge(p, q);
    const int g = fs[0] == 3 ? fs[1] : fs[0];
    const PlacedFace att = attach_face(tet, g, p, q, base.at(p), base.at(q));
    CHECK(att.face == g);
    CHECK(norm(att.at(p) - base.at(p)) == doctest::Approx(0.0));
    CHECK(norm(att.at(q) - base.at(q)) == doctest::Approx(0.0));
    const int s = third_vertex(g, p, q);
    const Vec2 e = base.at(q) - base.at(p);
    const double side_base = cross(e, base.at(r) - base.at(p));
    const double side_att = cross(e, att.at(s) - base.at(p));
    CHECK(side_base * side_att < 0.0);
    // rigid
    CHECK(dist(att.at(p), att.at(s)) == doctest::Approx(tet.edge_length(p, s)).epsilon(1e-12));
    CHECK(dist(att.at(q), att.at(s)) == doctest::Approx(tet.edge_length(q, s)).epsilon(1e-12));
}

TEST_CASE("star unfolding of the regular tetrahedron is the doubled triangle") {
    const auto tet = fixtures::regular();
    const StarUnfolding su = star_unfold(tet, 0);
    CHECK(su.base == 0);
    CHECK(su.base_cycle[0] == 1);
    // three images of the source pairwise 2 apart (side-2 triangle corners)
    for (int i : {1, 2, 3}) {
        for (int j : {1, 2, 3}) {
            if (i < j) {
                CHECK(dist(su.image_pos[i], su.image_pos[j]) == doctest::Approx(2.0).epsilon(1e-12));
            }
        }
    }
    // base vertices at image-edge midpoints: hexagon area equals sqrt 3
    CHECK(polygon_area(su.boundary) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("boundary hexagon is counterclockwise with the expected corner angles") {
    const AngleTable table = face_angles(fixtures::one_q3());
    for (int v = 0; v < 4; ++v) {
        const StarUnfolding su = star_unfold(fixtures::one_q3(), v);
        CHECK(polygon_area(su.boundary) > 0.0);
        double total = 0.0;
        for (int i = 0; i < 6; ++i) {
            const auto& e = su.boundary[i];
            const double angle = interior_angle(su.boundary[(i + 5) % 6].pos, e.pos,
                                                su.boundary[(i + 1) % 6].pos);
            total += angle;
            if (e.is_image) {
                // one face copy meets an image corner: its angle at the source
                CHECK(angle == doctest::Approx(table.at(v, e.label)).epsilon(1e-9));
            } else {
                // all faces at a non-source vertex are glued: complete angle
                CHECK(angle == doctest::Approx(table.complete_angle(e.label)).epsilon(1e-9));
            }
        }
        CHECK(total == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    }
}

TEST_CASE("chord containment matches the known loop cases") {
    const auto tet = fixtures::n150();
    // loop at b separating c: chord between the images flanking c
    StarUnfolding su = star_unfold(tet, 1);
    int i = boundary_index(su, true, 0);
    int j = boundary_index(su, true, 3);
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    CHECK(boundary_contains_chord(su, i, j));
    // loop at b separating the apex: side angle pi - 210 deg < 0, chord leaves
    i = boundary_index(su, true, 2);
    j = boundary_index(su, true, 3);
    CHECK(!boundary_contains_chord(su, i, j));
}

TEST_CASE("cut locus of the regular tetrahedron sits at the base centroid") {
    const StarUnfolding su = star_unfold(fixtures::regular(), 0);
    const CutLocus locus = cut_locus(su);
    for (double b : locus.bary) CHECK(b == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(locus.radius == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    for (int x : {1, 2, 3}) {
        CHECK(dist(locus.y, su.image_pos[x]) == doctest::Approx(locus.radius).epsilon(1e-12));
        CHECK(dist(locus.y, su.vertex_pos[x]) ==
              doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }
    // segments run from y to the non-source vertices in ascending label order
    int n = 0;
    for (int x : {1, 2, 3}) {
        CHECK(norm(locus.segments[n].first - locus.y) == doctest::Approx(0.0));
        CHECK(norm(locus.segments[n].second - su.vertex_pos[x]) == doctest::Approx(0.0));
        ++n;
    }
}

TEST_CASE("cut locus matches the frozen interior point") {
    const StarUnfolding su = star_unfold(fixtures::one_q3(), 0);
    CHECK(su.base_cycle[0] == 1);  // base cycle (b, d, c)
    CHECK(su.base_cycle[1] == 3);
    CHECK(su.base_cycle[2] == 2);
    const CutLocus locus = cut_locus(su);
    CHECK(locus.bary[0] == doctest::Approx(0.14446077).epsilon(1e-6));
    CHECK(locus.bary[1] == doctest::Approx(0.044031).epsilon(1e-4));
    CHECK(locus.bary[2] == doctest::Approx(0.81150822).epsilon(1e-6));
    CHECK(locus.radius == doctest::Approx(6.870567388).epsilon(1e-8));
    for (int x : {1, 2, 3}) {
        CHECK(dist(locus.y, su.image_pos[x]) == doctest::Approx(locus.radius).epsilon(1e-9));
    }
}

TEST_CASE("visible image-vertex pairs") {
    StarUnfolding su = star_unfold(fixtures::regular(), 0);
    CHECK(visible_pairs(su) == std::vector<int>{1, 2, 3});
    su = star_unfold(fixtures::pointed_only(), 0);
    CHECK(visible_pairs(su) == std::vector<int>{2, 3});
    su = star_unfold(fixtures::visible1(), 0);
    CHECK(visible_pairs(su) == std::vector<int>{3});
}

TEST_CASE("development lays out chains rigidly") {
    const auto tet = fixtures::obtuse();
    // one face: the canonical frame itself
    FaceSequenceDevelopment dev = develop(tet, {2});
    CHECK(dev.placements.size() == 1);
    const PlacedFace canon = canonical_face(tet, 2);
    for (int i = 0; i < 3; ++i) {
        CHECK(norm(dev.placements[0].pos[i] - canon.pos[i]) == doctest::Approx(0.0));
    }

    // chains share each interface edge
    dev = develop(tet, {3, 0, 2, 1});
    for (size_t k = 0; k + 1 < dev.placements.size(); ++k) {
        const PlacedFace& f1 = dev.placements[k];
        const PlacedFace& f2 = dev.placements[k + 1];
        const int fi = f1.face, gi = f2.face;
        for (int v = 0; v < 4; ++v) {
            if (v != fi && v != gi) {
                CHECK(norm(f1.at(v) - f2.at(v)) == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }

    // going straight back re-creates the original placement
    dev = develop(tet, {3, 0, 3});
    for (int v : face_vertices(3)) {
        CHECK(norm(dev.placements[0].at(v) - dev.placements[2].at(v)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(develop(tet, {3, 3}), Error);

    // seeds apply a rigid motion to the whole chain
    DevelopmentSeed seed;
    seed.origin = Vec2{1.5, -0.5};
    seed.angle = 0.7;
    const FaceSequenceDevelopment moved = develop(tet, {3, 0}, seed);
    const FaceSequenceDevelopment plain = develop(tet, {3, 0});
    for (size_t k = 0; k < moved.placements.size(); ++k) {
        for (int i = 0; i < 3; ++i) {
            const Vec2 expect = rotated(plain.placements[k].pos[i], seed.angle) + seed.origin;
            CHECK(norm(moved.placements[k].pos[i] - expect) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}
