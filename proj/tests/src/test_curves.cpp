#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "quasigeo/construct.hpp"
#include "quasigeo/curves.hpp"

using namespace quasigeo;

namespace {

double deg(double rad) { return rad * 180.0 / kPi; }

// The midpoint quadrilateral of an isosceles tetrahedron: a closed geodesic
// crossing faces D, A, C, B at the midpoints of ac, bc, bd, ad.
ClosedSurfaceCurve midpoint_quad() {
    ClosedSurfaceCurve curve;
    curve.points = {SurfacePoint::on_edge(0, 2, 0.5), SurfacePoint::on_edge(1, 2, 0.5),
                    SurfacePoint::on_edge(1, 3, 0.5), SurfacePoint::on_edge(0, 3, 0.5)};
    curve.segment_faces = {3, 0, 2, 1};
    return curve;
}

ClosedSurfaceCurve rotated_curve(const ClosedSurfaceCurve& curve, int shift) {
    ClosedSurfaceCurve out;
    const int n = static_cast<int>(curve.points.size());
    for (int i = 0; i < n; ++i) {
        out.points.push_back(curve.points[(i + shift) % n]);
        out.segment_faces.push_back(curve.segment_faces[(i + shift) % n]);
    }
    out.doubled_edge = curve.doubled_edge;
    return out;
}

ClosedSurfaceCurve reversed_curve(const ClosedSurfaceCurve& curve) {
    ClosedSurfaceCurve out;
    const int n = static_cast<int>(curve.points.size());
    for (int i = 0; i < n; ++i) {
        out.points.push_back(curve.points[(n - i) % n]);
        out.segment_faces.push_back(curve.segment_faces[(n - 1 - i) % n]);
    }
    out.doubled_edge = curve.doubled_edge;
    return out;
}

}  // namespace

TEST_CASE("surface point factories normalize and snap") {
    SurfacePoint p = SurfacePoint::on_edge(3, 1, 0.25);
    CHECK(p.edge[0] == 1);
    CHECK(p.edge[1] == 3);
    CHECK(p.t == doctest::Approx(0.75));

    p = SurfacePoint::on_edge(0, 2, 1e-12);
    CHECK(p.kind == SurfacePoint::Kind::Vertex);
    CHECK(p.vertex == 0);
    p = SurfacePoint::on_edge(0, 2, 1.0 - 1e-12);
    CHECK(p.kind == SurfacePoint::Kind::Vertex);
    CHECK(p.vertex == 2);

    CHECK_THROWS_AS(SurfacePoint::on_edge(0, 0, 0.5), Error);
    CHECK_THROWS_AS(SurfacePoint::on_edge(0, 1, 1.5), Error);
    CHECK_THROWS_AS(SurfacePoint::in_face(3, {0.5, 0.5, 0.5}, 1e-9), Error);
    CHECK_THROWS_AS(SurfacePoint::in_face(3, {0.7, 0.7, -0.4}, 1e-9), Error);

    p = SurfacePoint::in_face(3, {0.2, 0.3, 0.5});
    CHECK(p.lies_on_face(3));
    CHECK(!p.lies_on_face(2));
    CHECK(SurfacePoint::at_vertex(1).lies_on_face(0));
    CHECK(!SurfacePoint::at_vertex(1).lies_on_face(1));
    CHECK(SurfacePoint::on_edge(1, 2, 0.5).lies_on_face(0));
    CHECK(SurfacePoint::on_edge(1, 2, 0.5).lies_on_face(3));
    CHECK(!SurfacePoint::on_edge(1, 2, 0.5).lies_on_face(1));
}

TEST_CASE("lifting agrees with the face frames") {
    const auto tet = fixtures::one_q3();
    const SurfacePoint p = SurfacePoint::on_edge(1, 2, 0.25);
    const Vec3 lifted = lift_to_3d(tet, p);
    const Vec3 expect = tet.pos[1] + (tet.pos[2] - tet.pos[1]) * 0.25;
    CHECK(dist(lifted, expect) == doctest::Approx(0.0).epsilon(1e-12));

    // frame positions of the same point on its two faces agree in distance
    for (int f : faces_of_edge(1, 2)) {
        const Vec2 q = point_in_face_frame(tet, p, f);
        const Vec2 corner = point_in_face_frame(tet, SurfacePoint::at_vertex(1), f);
        CHECK(dist(q, corner) == doctest::Approx(0.25 * tet.edge_length(1, 2)).epsilon(1e-12));
    }

    const SurfacePoint fp = SurfacePoint::in_face(0, {0.2, 0.3, 0.5});
    const Vec3 lifted_face = lift_to_3d(tet, fp);
    const auto cyc = face_vertices(0);
    const Vec3 comb = tet.pos[cyc[0]] * 0.2 + tet.pos[cyc[1]] * 0.3 + tet.pos[cyc[2]] * 0.5;
    CHECK(dist(lifted_face, comb) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("midpoint quadrilateral of an isosceles box is a closed geodesic") {
    const auto tet = fixtures::iso_box_default();
    const ClosedSurfaceCurve quad = midpoint_quad();
    CHECK(count_vertices(quad) == 0);
    CHECK(curve_length(tet, quad) == doctest::Approx(3.080259729).epsilon(1e-8));

    const QuasigeodesicReport rep = verify(tet, quad);
    CHECK(rep.verdict == QuasigeodesicReport::Verdict::Geodesic);
    CHECK(rep.k == 0);
    CHECK(rep.simple);
    CHECK(rep.max_straightness_residual < 1e-11);
    // no anchors: all turning is zero, each side encloses two flat vertices
    CHECK(rep.tau_left == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(deg(rep.omega_left) == doctest::Approx(360.0).epsilon(1e-9));
    CHECK(deg(rep.omega_right) == doctest::Approx(360.0).epsilon(1e-9));

    const auto [rl, rr] = gauss_bonnet_residual(tet, quad);
    CHECK(rl < 1e-9);
    CHECK(rr < 1e-9);
}

TEST_CASE("regular tetrahedron midpoint square has length 2") {
    const auto tet = fixtures::regular();
    const ClosedSurfaceCurve quad = midpoint_quad();
    CHECK(curve_length(tet, quad) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(verify(tet, quad).verdict == QuasigeodesicReport::Verdict::Geodesic);
}

TEST_CASE("verdict does not depend on starting point or direction") {
    const auto tet = fixtures::n150();
    const Q1Outcome q1 = construct_q1(tet);
    REQUIRE(!q1.no_q1_isosceles);
    const QuasigeodesicReport base = verify(tet, q1.curve);
    CHECK(base.verdict == QuasigeodesicReport::Verdict::Quasigeodesic);
    CHECK(base.k == 1);

    for (int shift = 1; shift < 3; ++shift) {
        const QuasigeodesicReport rep = verify(tet, rotated_curve(q1.curve, shift));
        CHECK(rep.verdict == base.verdict);
        CHECK(rep.anchors[0].left == doctest::Approx(base.anchors[0].left).epsilon(1e-9));
        CHECK(rep.anchors[0].right == doctest::Approx(base.anchors[0].right).epsilon(1e-9));
    }

    const QuasigeodesicReport rev = verify(tet, reversed_curve(q1.curve));
    CHECK(rev.verdict == base.verdict);
    // left and right swap under reversal
    CHECK(rev.anchors[0].left == doctest::Approx(base.anchors[0].right).epsilon(1e-9));
    CHECK(rev.anchors[0].right == doctest::Approx(base.anchors[0].left).epsilon(1e-9));
    CHECK(rev.tau_left == doctest::Approx(base.tau_right).epsilon(1e-9));
    CHECK(rev.omega_left == doctest::Approx(base.omega_right).epsilon(1e-9));
}

TEST_CASE("frozen side angles of the one-vertex loop") {
    const auto tet = fixtures::n150();
    const Q1Outcome q1 = construct_q1(tet);
    REQUIRE(!q1.no_q1_isosceles);
    const int anchor = q1.curve.points[0].vertex;
    const auto [left, right] = side_angles(tet, q1.curve, anchor);
    const double lo = std::min(left, right), hi = std::max(left, right);
    CHECK(deg(lo) == doctest::Approx(10.0).epsilon(1e-7));
    CHECK(deg(hi) == doctest::Approx(160.0).epsilon(1e-7));
    CHECK_THROWS_AS(side_angles(tet, q1.curve, (anchor + 1) % 4), Error);
}

TEST_CASE("doubled edges verify as degenerate quasigeodesics") {
    const auto tet = fixtures::regular();
    ClosedSurfaceCurve doubled;
    doubled.points = {SurfacePoint::at_vertex(1), SurfacePoint::at_vertex(2)};
    doubled.segment_faces = {0, 0};
    doubled.doubled_edge = true;

    CHECK(curve_length(tet, doubled) == doctest::Approx(2.0).epsilon(1e-12));
    const QuasigeodesicReport rep = verify(tet, doubled);
    CHECK(rep.degenerate);
    CHECK(rep.verdict == QuasigeodesicReport::Verdict::Quasigeodesic);
    CHECK(rep.k == 2);
    // both sides balance: left turn 2 pi with no curvature, right turn
    // 2 pi - theta_b - theta_c with the two remaining vertices
    CHECK(deg(rep.tau_left) == doctest::Approx(360.0).epsilon(1e-9));
    CHECK(deg(rep.omega_left) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(deg(rep.tau_right) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(deg(rep.omega_right) == doctest::Approx(360.0).epsilon(1e-9));

    // a doubled edge with a sharp endpoint fails: theta above pi on one side
    const auto sharp = fixtures::case1();  // curvature at a is 282 deg
    ClosedSurfaceCurve bad;
    bad.points = {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1)};
    bad.segment_faces = {2, 2};
    bad.doubled_edge = true;
    CHECK(verify(sharp, bad).verdict == QuasigeodesicReport::Verdict::NotQuasigeodesic);
}

TEST_CASE("out-and-back curves are rejected as non-simple") {
    const auto tet = fixtures::regular();
    ClosedSurfaceCurve back_forth;
    back_forth.points = {SurfacePoint::on_edge(0, 1, 0.5), SurfacePoint::on_edge(0, 2, 0.5)};
    back_forth.segment_faces = {3, 3};
    const QuasigeodesicReport rep = verify(tet, back_forth);
    CHECK(!rep.simple);
    CHECK(rep.verdict == QuasigeodesicReport::Verdict::NotQuasigeodesic);
}

TEST_CASE("a crossing grazing an undeclared vertex is malformed") {
    const auto tet = fixtures::regular();
    ClosedSurfaceCurve graze;
    const double t = 1.0 - 1e-11;
    graze.points = {SurfacePoint::on_edge(0, 2, t, 1e-13), SurfacePoint::on_edge(1, 2, t, 1e-13),
                    SurfacePoint::on_edge(2, 3, 1.0 - t, 1e-13)};
    graze.segment_faces = {3, 0, 1};
    bool threw = false;
    try {
        verify(tet, graze);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.kind == ErrorKind::MalformedCurve);
    }
    CHECK(threw);
}

TEST_CASE("malformed curve representations are rejected") {
    const auto tet = fixtures::regular();
    ClosedSurfaceCurve c;
    c.points = {SurfacePoint::at_vertex(0)};
    c.segment_faces = {3};
    CHECK_THROWS_AS(verify(tet, c), Error);

    c.points = {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1)};
    c.segment_faces = {3};
    CHECK_THROWS_AS(verify(tet, c), Error);

    // segment face must contain its endpoints
    c.points = {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1)};
    c.segment_faces = {0, 3};  // face A misses vertex a
    CHECK_THROWS_AS(verify(tet, c), Error);
}

TEST_CASE("curve equality is intrinsic") {
    const auto tet = fixtures::n150();
    const Q1Outcome q1 = construct_q1(tet);
    REQUIRE(!q1.no_q1_isosceles);
    const ClosedSurfaceCurve& curve = q1.curve;

    CHECK(curves_equal(curve, curve));
    CHECK(curves_equal(curve, rotated_curve(curve, 1)));
    CHECK(curves_equal(curve, rotated_curve(curve, 2)));
    CHECK(curves_equal(curve, reversed_curve(curve)));

    ClosedSurfaceCurve nudged = curve;
    for (auto& p : nudged.points) {
        if (p.kind == SurfacePoint::Kind::Edge) p.t += 1e-3;
    }
    CHECK(!curves_equal(curve, nudged));
    CHECK(curves_equal(curve, nudged, 1e-2));

    const ClosedSurfaceCurve quad = midpoint_quad();
    CHECK(!curves_equal(curve, quad));
    CHECK(curves_equal(quad, reversed_curve(rotated_curve(quad, 2))));
}
