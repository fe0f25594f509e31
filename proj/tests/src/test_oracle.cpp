#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "quasigeo/construct.hpp"
#include "quasigeo/curves.hpp"
#include "quasigeo/oracle.hpp"

using namespace quasigeo;

namespace {

// Fan angle of the direction from a start point toward a target point, both
// placed in the canonical frame of the face they share.
double departure_toward(const Tetrahedron& tet, const SurfacePoint& start,
                        const SurfacePoint& target, int face) {
    const Vec2 from = point_in_face_frame(tet, start, face);
    const Vec2 to = point_in_face_frame(tet, target, face);
    return fan_angle_at(tet, start, face, to - from);
}

ClosedSurfaceCurve midpoint_quad() {
    ClosedSurfaceCurve curve;
    curve.points = {SurfacePoint::on_edge(0, 2, 0.5), SurfacePoint::on_edge(1, 2, 0.5),
                    SurfacePoint::on_edge(1, 3, 0.5), SurfacePoint::on_edge(0, 3, 0.5)};
    curve.segment_faces = {3, 0, 2, 1};
    return curve;
}

}  // namespace

TEST_CASE("fan angles follow the stated conventions") {
    const auto tet = fixtures::regular();

    // vertex start: zero along the edge toward the lowest other label
    const SurfacePoint at_b = SurfacePoint::at_vertex(1);
    for (int f : {2, 3}) {  // faces C and D both contain edge ab
        const double angle = departure_toward(tet, at_b, SurfacePoint::at_vertex(0), f);
        CHECK(angle == doctest::Approx(0.0).epsilon(1e-12));
    }
    // the fan turns counterclockwise: faces C, A, D around b, one wedge each
    const double toward_d = departure_toward(tet, at_b, SurfacePoint::at_vertex(3), 2);
    CHECK(toward_d == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    const double toward_c = departure_toward(tet, at_b, SurfacePoint::at_vertex(2), 3);
    CHECK(toward_c == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));

    // edge start: zero along low -> high, lower face fills (0, pi)
    const SurfacePoint mid_ab = SurfacePoint::on_edge(0, 1, 0.5);
    CHECK(departure_toward(tet, mid_ab, SurfacePoint::at_vertex(1), 2) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(departure_toward(tet, mid_ab, SurfacePoint::at_vertex(0), 3) ==
          doctest::Approx(kPi).epsilon(1e-12));
    // face C = {a, d, b} is the lower-indexed face at edge ab
    CHECK(departure_toward(tet, mid_ab, SurfacePoint::at_vertex(3), 2) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-9));
    CHECK(departure_toward(tet, mid_ab, SurfacePoint::at_vertex(2), 3) ==
          doctest::Approx(1.5 * kPi).epsilon(1e-9));

    // face start: measured from the +x axis of the canonical frame
    const SurfacePoint inside = SurfacePoint::in_face(3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const double a0 = fan_angle_at(tet, inside, 3, {1.0, 0.0});
    CHECK(a0 == doctest::Approx(0.0).epsilon(1e-12));
    const double a1 = fan_angle_at(tet, inside, 3, {0.0, 1.0});
    CHECK(a1 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("perpendicular ray from an edge midpoint hits the far vertex") {
    const auto tet = fixtures::regular();
    const SurfacePoint mid_ab = SurfacePoint::on_edge(0, 1, 0.5);
    // (pi, 2 pi) is the higher-indexed adjacent face, D = {a, b, c}
    const TraceResult res = trace(tet, mid_ab, 1.5 * kPi, 10.0);
    CHECK(res.termination == TraceTermination::VertexHit);
    CHECK(res.hit_vertex == 2);
    CHECK(res.length == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    REQUIRE(res.path.size() == 2);
    CHECK(res.segment_faces == std::vector<int>{3});
    CHECK(res.path[1].point.kind == SurfacePoint::Kind::Vertex);
    CHECK(res.path[1].arclen == doctest::Approx(res.length).epsilon(1e-12));
}

TEST_CASE("ray parallel to an edge closes into the midpoint square") {
    const auto tet = fixtures::regular();
    const SurfacePoint mid_ac = SurfacePoint::on_edge(0, 2, 0.5);
    const double dir = departure_toward(tet, mid_ac, SurfacePoint::on_edge(1, 2, 0.5), 3);
    const TraceResult res = trace(tet, mid_ac, dir, 5.0);
    CHECK(res.termination == TraceTermination::SelfReturn);
    CHECK(res.length == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(res.path.size() == 5);
    CHECK(res.segment_faces == std::vector<int>{3, 0, 2, 1});
    for (int i = 1; i < 4; ++i) {
        CHECK(res.path[i].point.kind == SurfacePoint::Kind::Edge);
        CHECK(res.path[i].point.t == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(res.path[i].arclen == doctest::Approx(0.5 * i).epsilon(1e-9));
    }

    const ClosedSurfaceCurve curve = closed_curve_from_trace(res);
    CHECK(curves_equal(curve, midpoint_quad(), 1e-9));
    const QuasigeodesicReport rep = verify(tet, curve);
    CHECK(rep.verdict == QuasigeodesicReport::Verdict::Geodesic);
}

TEST_CASE("tracing retraces a constructed vertex loop") {
    const auto tet = fixtures::case1();
    const Q1Outcome out = construct_q1(tet);
    REQUIRE(!out.no_q1_isosceles);
    const ClosedSurfaceCurve& loop = out.curve;
    const double total = curve_length(tet, loop);

    const double dir =
        departure_toward(tet, loop.points[0], loop.points[1], loop.segment_faces[0]);
    const TraceResult res = trace(tet, loop.points[0], dir, total + 1.0);
    CHECK(res.termination == TraceTermination::VertexHit);
    CHECK(res.hit_vertex == loop.points[0].vertex);
    CHECK(res.length == doctest::Approx(total).epsilon(1e-9));
    REQUIRE(res.path.size() == 4);
    for (int i = 1; i <= 2; ++i) {
        CHECK(res.path[i].point.kind == SurfacePoint::Kind::Edge);
        CHECK(res.path[i].point.edge == loop.points[i].edge);
        CHECK(res.path[i].point.t == doctest::Approx(loop.points[i].t).epsilon(1e-9));
    }

    const ClosedSurfaceCurve closed = closed_curve_from_trace(res);
    CHECK(curves_equal(closed, loop, 1e-9));
}

TEST_CASE("trace degeneracies and limits") {
    const auto tet = fixtures::regular();
    const SurfacePoint mid_ab = SurfacePoint::on_edge(0, 1, 0.5);

    TraceResult res = trace(tet, mid_ab, 1.5 * kPi, 0.0);
    CHECK(res.termination == TraceTermination::MaxLength);
    CHECK(res.path.empty());
    CHECK(res.length == 0.0);

    // a ray along the edge itself cannot leave the start edge
    res = trace(tet, mid_ab, 0.0, 1.0);
    CHECK(res.termination == TraceTermination::DegenerateDirection);
    res = trace(tet, mid_ab, kPi, 1.0);
    CHECK(res.termination == TraceTermination::DegenerateDirection);

    // an open trace is not a closed curve
    res = trace(tet, mid_ab, 1.2, 0.4);
    CHECK(res.termination == TraceTermination::MaxLength);
    CHECK_THROWS_AS(closed_curve_from_trace(res), Error);

    CHECK(std::string(termination_name(TraceTermination::SelfReturn)) == "SelfReturn");
    CHECK(std::string(termination_name(TraceTermination::VertexHit)) == "VertexHit");
}

TEST_CASE("sweeping the pointed fixture finds exactly its one vertex loop") {
    const auto tet = fixtures::pointed_only();
    const Q1Outcome out = construct_q1(tet);
    REQUIRE(!out.no_q1_isosceles);

    int verified = 0;
    ClosedSurfaceCurve found;
    for (int v = 0; v < 4; ++v) {
        const SweepResult sweep = sweep_loops(tet, v, 0.01, 6.0);
        CHECK(sweep.source == v);
        for (const auto& loop : sweep.loops) {
            if (loop.report.verdict == QuasigeodesicReport::Verdict::Quasigeodesic) {
                ++verified;
                found = loop.curve;
            }
        }
    }
    CHECK(verified == 1);
    CHECK(curves_equal(found, out.curve, 1e-6));
}

TEST_CASE("sweeping a flat-apex base vertex finds its loops") {
    const auto tet = fixtures::n150();
    const SweepResult sweep = sweep_loops(tet, 1, 0.005, 4.0);

    // the two image chords, plus two longer loops that wrap the apex and
    // enclose it together with one base vertex (turn 20 deg, sides 160/10)
    std::vector<const SweepLoop*> verified;
    for (const auto& loop : sweep.loops)
        if (loop.report.verdict == QuasigeodesicReport::Verdict::Quasigeodesic)
            verified.push_back(&loop);
    REQUIRE(verified.size() == 4);

    const auto around_d = geodesic_loop(tet, 1, 3);
    const auto around_c = geodesic_loop(tet, 1, 2);
    REQUIRE(around_d.has_value());
    REQUIRE(around_c.has_value());
    int chord_matches = 0;
    int wraps = 0;
    for (const SweepLoop* loop : verified) {
        CHECK(loop->report.k == 1);
        if (curves_equal(loop->curve, *around_d, 1e-6) ||
            curves_equal(loop->curve, *around_c, 1e-6)) {
            ++chord_matches;
        } else {
            CHECK(loop->curve.points.size() == 6);
            CHECK(curve_length(tet, loop->curve) == doctest::Approx(3.26414).epsilon(1e-5));
            ++wraps;
        }
        const auto [left, right] =
            std::minmax(loop->report.anchors[0].left, loop->report.anchors[0].right);
        CHECK(left == doctest::Approx(10.0 * kPi / 180.0).epsilon(1e-7));
        CHECK(right == doctest::Approx(160.0 * kPi / 180.0).epsilon(1e-7));
    }
    CHECK(chord_matches == 2);
    CHECK(wraps == 2);

    // departures are sorted and every loop passes through the source
    for (size_t i = 1; i < sweep.loops.size(); ++i)
        CHECK(sweep.loops[i - 1].departure <= sweep.loops[i].departure);
    for (const auto& loop : sweep.loops) {
        REQUIRE(!loop.curve.points.empty());
        CHECK(loop.curve.points[0].kind == SurfacePoint::Kind::Vertex);
        CHECK(loop.curve.points[0].vertex == 1);
    }
}

TEST_CASE("sweeping an isosceles tetrahedron finds no vertex loops") {
    const auto tet = fixtures::iso_box_default();
    for (int v = 0; v < 4; ++v) {
        const SweepResult sweep = sweep_loops(tet, v, 0.02, 5.0);
        for (const auto& loop : sweep.loops)
            CHECK(loop.report.verdict != QuasigeodesicReport::Verdict::Quasigeodesic);
    }
}

TEST_CASE("sweep rejects a nonpositive resolution") {
    CHECK_THROWS_AS(sweep_loops(fixtures::regular(), 0, 0.0, 5.0), Error);
    CHECK_THROWS_AS(sweep_loops(fixtures::regular(), 0, -0.1, 5.0), Error);
}
