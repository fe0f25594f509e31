#include "quasigeo/construct.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "internal.hpp"

namespace quasigeo {

namespace {

std::string vertex_list(const std::vector<int>& vs) {
    std::string out;
    for (int v : vs) {
        if (!out.empty()) out += " ";
        out += vertex_name(v);
    }
    return out;
}

std::string angle_text(double radians) {
    std::ostringstream os;
    os << std::setprecision(10) << radians * 180.0 / kPi;
    return os.str();
}

int boundary_index_of(const StarUnfolding& su, bool is_image, int label) {
    for (int i = 0; i < 6; ++i)
        if (su.boundary[i].is_image == is_image && su.boundary[i].label == label)
            return i;
    throw Error(ErrorKind::InternalContradiction, "unfolding corner missing");
}

// Vertices sorted by descending curvature, ties by label.
std::array<int, 4> by_curvature(const AngleTable& table) {
    std::array<int, 4> order = {0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return table.curvature(a) > table.curvature(b);
    });
    return order;
}

// Nearest other vertex by edge length, ties by label.
int closest_vertex(const Tetrahedron& tet, int v, double eps) {
    int best = -1;
    double best_len = 0.0;
    double slack = eps * tet.longest_edge();
    for (int u = 0; u < 4; ++u) {
        if (u == v) continue;
        double len = tet.edge_length(v, u);
        if (best < 0 || len < best_len - slack) {
            best = u;
            best_len = len;
        }
    }
    return best;
}

// Along-edge segments take the lower-labeled adjacent face.
int edge_face(int u, int w) { return faces_of_edge(u, w)[0]; }

std::string loop_note(int v, int h) {
    std::ostringstream os;
    os << "loop at " << vertex_name(v) << " around " << vertex_name(h);
    return os.str();
}

}  // namespace

std::string ConstructionTrace::to_text() const {
    std::ostringstream os;
    os << "case: " << case_label << "\n";
    for (const auto& [name, value] : choices) os << "  " << name << ": " << value << "\n";
    return os.str();
}

std::optional<ClosedSurfaceCurve> geodesic_loop(const Tetrahedron& tet, int v,
                                                int h, double eps) {
    if (v == h || v < 0 || v > 3 || h < 0 || h > 3)
        throw Error(ErrorKind::MalformedInput, "loop needs two distinct vertices");
    int x = -1, y = -1;
    for (int u = 0; u < 4; ++u) {
        if (u == v || u == h) continue;
        (x < 0 ? x : y) = u;
    }
    StarUnfolding su = star_unfold(tet, v);
    Vec2 p = su.image_pos[x];
    Vec2 q = su.image_pos[y];

    // The loop develops to the chord between the two source images whose
    // faces flank h; it must cross the base edges at h strictly inside.
    double s1, u1, s2, u2;
    if (!detail::seg_seg(p, q, su.vertex_pos[h], su.vertex_pos[y], &s1, &u1))
        return std::nullopt;
    if (!detail::seg_seg(p, q, su.vertex_pos[h], su.vertex_pos[x], &s2, &u2))
        return std::nullopt;
    if (u1 <= eps || u1 >= 1.0 - eps || u2 <= eps || u2 >= 1.0 - eps)
        return std::nullopt;
    if (s1 <= eps || s2 >= 1.0 - eps || s1 >= s2) return std::nullopt;
    if (!boundary_contains_chord(su, boundary_index_of(su, true, x),
                                 boundary_index_of(su, true, y), eps))
        return std::nullopt;

    ClosedSurfaceCurve curve;
    curve.points = {SurfacePoint::at_vertex(v), SurfacePoint::on_edge(h, y, u1, eps),
                    SurfacePoint::on_edge(h, x, u2, eps)};
    curve.segment_faces = {x, v, y};
    return curve;
}

Q1Outcome construct_q1(const Tetrahedron& tet, double eps) {
    AngleTable table = face_angles(tet);
    Classification cls = classify(table, eps);
    Q1Outcome outcome;

    if (cls.is_isosceles) {
        outcome.no_q1_isosceles = true;
        outcome.trace.case_label = "isosceles";
        outcome.trace.choose("reason", "every complete angle equals a straight angle");
        return outcome;
    }

    std::vector<int> high;
    for (int v = 0; v < 4; ++v)
        if (exceeds_pi(table.curvature(v), eps)) high.push_back(v);

    auto finish = [&](int v, int h) {
        auto loop = geodesic_loop(tet, v, h, eps);
        if (!loop)
            throw Error(ErrorKind::InternalContradiction,
                        "predicted vertex loop is not realized");
        outcome.trace.choose("loop", loop_note(v, h));
        outcome.trace.unfolding = star_unfold(tet, v);
        outcome.curve = *loop;
        return outcome;
    };

    if (high.size() == 1) {
        int a = high[0];
        int v = closest_vertex(tet, a, eps);
        outcome.trace.case_label = "single sharp vertex";
        outcome.trace.choose("sharp vertex", std::string(1, vertex_name(a)));
        outcome.trace.choose("nearest vertex", std::string(1, vertex_name(v)));
        return finish(v, a);
    }
    if (high.empty())
        throw Error(ErrorKind::InternalContradiction,
                    "non-isosceles tetrahedron without a sharp vertex");

    auto order = by_curvature(table);
    int p = order[0], q = order[1];
    outcome.trace.choose("sharp vertices", vertex_list(high));
    outcome.trace.choose("sharpest pair",
                         std::string(1, vertex_name(p)) + " " + vertex_name(q));

    int cp = closest_vertex(tet, p, eps);
    if (cp == q) {
        outcome.trace.case_label = "sharpest pair adjacent by distance";
        return finish(q, p);
    }
    int cq = closest_vertex(tet, q, eps);
    if (cq == p) {
        outcome.trace.case_label = "second sharpest nearest the first";
        return finish(p, q);
    }

    if (cp != cq) {
        // The two remaining vertices split as nearest of p and nearest of q;
        // the two candidate loops cover complementary angle budgets.
        outcome.trace.case_label = "distinct nearest vertices";
        double sum_p = table.complete_angle(p) + table.complete_angle(cp);
        outcome.trace.choose(
            "angle budget",
            angle_text(sum_p) + " of 360 around " + std::string(1, vertex_name(p)));
        if (at_most_pi(sum_p / 2.0, eps)) return finish(cp, p);
        return finish(cq, q);
    }

    // Common nearest vertex c; d is the one left over. Whichever loop at d
    // is realized pairs with the loop at c around the other sharp vertex;
    // the pocket between them splits the full angle 4 pi evenly, so exactly
    // one of the pair has its far side within a straight angle.
    int c = cp;
    int d = 6 - p - q - c;
    outcome.trace.case_label = "common nearest vertex";
    outcome.trace.choose("common nearest", std::string(1, vertex_name(c)));
    outcome.trace.choose("leftover vertex", std::string(1, vertex_name(d)));

    int wrap_d = p, wrap_c = q;
    auto d_loop = geodesic_loop(tet, d, p, eps);
    if (!d_loop) {
        d_loop = geodesic_loop(tet, d, q, eps);
        wrap_d = q;
        wrap_c = p;
    }
    if (!d_loop)
        throw Error(ErrorKind::InternalContradiction,
                    "neither loop at the leftover vertex is realized");

    double far_d = table.complete_angle(d) - (kPi - table.complete_angle(wrap_d));
    double far_c = table.complete_angle(c) - (kPi - table.complete_angle(wrap_c));
    outcome.trace.choose("pocket angles",
                         angle_text(far_c) + " at " + std::string(1, vertex_name(c)) +
                             ", " + angle_text(far_d) + " at " +
                             std::string(1, vertex_name(d)));
    if (at_most_pi(far_c, eps)) return finish(c, wrap_c);
    outcome.trace.choose("loop", loop_note(d, wrap_d));
    outcome.trace.unfolding = star_unfold(tet, d);
    outcome.curve = *d_loop;
    return outcome;
}

std::pair<ClosedSurfaceCurve, ConstructionTrace> construct_q2(const Tetrahedron& tet,
                                                              double eps) {
    AngleTable table = face_angles(tet);
    ConstructionTrace trace;

    std::vector<int> band;
    for (int v = 0; v < 4; ++v)
        if (at_least_pi(table.curvature(v), eps)) band.push_back(v);

    if (band.size() >= 2) {
        auto order = by_curvature(table);
        int u = std::min(order[0], order[1]);
        int w = std::max(order[0], order[1]);
        trace.case_label = "doubled edge";
        trace.choose("flat-or-sharper vertices", vertex_list(band));
        trace.choose("edge", std::string(1, vertex_name(u)) + vertex_name(w));
        ClosedSurfaceCurve curve;
        curve.points = {SurfacePoint::at_vertex(u), SurfacePoint::at_vertex(w)};
        auto faces = faces_of_edge(u, w);
        curve.segment_faces = {faces[0], faces[1]};
        curve.doubled_edge = true;
        return {curve, trace};
    }

    // Otherwise exactly one vertex concentrates more than half the total
    // curvature; every other corner sees it across the boundary of its star.
    int a = -1;
    for (int v = 0; v < 4; ++v)
        if (exceeds_pi(table.curvature(v), eps)) a = v;
    if (a < 0)
        throw Error(ErrorKind::InternalContradiction,
                    "curvature does not concentrate at any vertex");

    StarUnfolding su = star_unfold(tet, a);
    std::vector<int> visible = visible_pairs(su, eps);
    if (visible.empty())
        throw Error(ErrorKind::InternalContradiction,
                    "no corner sees its source image in the star unfolding");
    int x = visible[0];
    trace.case_label = "pointed";
    trace.choose("pointed vertex", std::string(1, vertex_name(a)));
    trace.choose("corners seeing their image", vertex_list(visible));
    trace.choose("companion vertex", std::string(1, vertex_name(x)));
    trace.unfolding = su;

    int pq[2];
    int k = 0;
    for (int u = 0; u < 4; ++u)
        if (u != a && u != x) pq[k++] = u;

    double s, t;
    if (!detail::seg_seg(su.image_pos[x], su.vertex_pos[x], su.vertex_pos[pq[0]],
                         su.vertex_pos[pq[1]], &s, &t) ||
        t <= eps || t >= 1.0 - eps || s <= eps || s >= 1.0 - eps)
        throw Error(ErrorKind::InternalContradiction,
                    "sight line misses the crossing edge");

    ClosedSurfaceCurve curve;
    curve.points = {SurfacePoint::at_vertex(a),
                    SurfacePoint::on_edge(pq[0], pq[1], t, eps),
                    SurfacePoint::at_vertex(x)};
    curve.segment_faces = {x, a, edge_face(std::min(a, x), std::max(a, x))};
    return {curve, trace};
}

bool face_fails_at(const AngleTable& table, int f, int v, double eps) {
    if (!face_contains(f, v))
        throw Error(ErrorKind::VertexNotOnFace, "vertex not on face");
    return exceeds_pi(table.complete_angle(v) - table.at(v, f), eps);
}

int q3_face(const AngleTable& table, double eps) {
    for (int f = 0; f < 4; ++f) {
        bool ok = true;
        for (int v = 0; v < 4 && ok; ++v)
            if (v != f && face_fails_at(table, f, v, eps)) ok = false;
        if (ok) return f;
    }
    return -1;
}

namespace {

ClosedSurfaceCurve face_boundary_curve(int f) {
    auto cyc = face_vertices(f);
    auto lo = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), lo, cyc.end());
    ClosedSurfaceCurve curve;
    for (int v : cyc) curve.points.push_back(SurfacePoint::at_vertex(v));
    curve.segment_faces = {f, f, f};
    return curve;
}

}  // namespace

std::pair<int, ClosedSurfaceCurve> construct_q3(const Tetrahedron& tet, double eps) {
    AngleTable table = face_angles(tet);
    int f = q3_face(table, eps);
    if (f < 0)
        throw Error(ErrorKind::InternalContradiction,
                    "every face boundary folds past a straight angle");
    return {f, face_boundary_curve(f)};
}

const char* partition_name(Partition p) {
    switch (p) {
        case Partition::AB_CD: return "AB|CD";
        case Partition::AC_BD: return "AC|BD";
        case Partition::AD_BC: return "AD|BC";
    }
    return "?";
}

std::array<int, 4> partition_vertex_cycle(Partition p) {
    // The four edges between the two face pairs form one closed cycle.
    switch (p) {
        case Partition::AB_CD: return {0, 2, 1, 3};
        case Partition::AC_BD: return {0, 1, 2, 3};
        case Partition::AD_BC: return {0, 1, 3, 2};
    }
    throw Error(ErrorKind::MalformedInput, "bad partition");
}

bool q4_partition_valid(const AngleTable& table, Partition p, double eps) {
    int partner = 0;  // face paired with A
    switch (p) {
        case Partition::AB_CD: partner = 1; break;
        case Partition::AC_BD: partner = 2; break;
        case Partition::AD_BC: partner = 3; break;
    }
    std::array<std::array<int, 2>, 2> pairs = {{{0, partner}, {-1, -1}}};
    int k = 0;
    for (int f = 1; f < 4; ++f)
        if (f != partner) pairs[1][k++] = f;
    for (int v = 0; v < 4; ++v) {
        // At v one side of the cycle shows a single face, the other the
        // two faces of the pair not containing the face opposite v; only
        // the two-face side can fold past a straight angle.
        const auto& side = (v == pairs[0][0] || v == pairs[0][1]) ? pairs[1] : pairs[0];
        double sum = table.at(v, side[0]) + table.at(v, side[1]);
        if (exceeds_pi(sum, eps)) return false;
    }
    return true;
}

namespace {

ClosedSurfaceCurve partition_curve(Partition p) {
    auto cyc = partition_vertex_cycle(p);
    ClosedSurfaceCurve curve;
    for (int i = 0; i < 4; ++i) {
        curve.points.push_back(SurfacePoint::at_vertex(cyc[i]));
        curve.segment_faces.push_back(edge_face(std::min(cyc[i], cyc[(i + 1) % 4]),
                                                std::max(cyc[i], cyc[(i + 1) % 4])));
    }
    return curve;
}

}  // namespace

std::optional<ClosedSurfaceCurve> construct_q4(const Tetrahedron& tet, Partition p,
                                               double eps) {
    AngleTable table = face_angles(tet);
    if (!q4_partition_valid(table, p, eps)) return std::nullopt;
    return partition_curve(p);
}

int EnumerationResult::total() const {
    return static_cast<int>(q1.size() + q2_nondegenerate.size() +
                            q2_degenerate.size() + q3.size() + q4.size());
}

namespace {

// Geodesic segments from u to w, found by developing face chains and
// casting the straight chord between the two endpoints.
void collect_edge_segments(const Tetrahedron& tet, int u, int w, int depth_bound,
                           double eps, std::vector<ClosedSurfaceCurve>& out) {
    std::vector<int> chain;

    auto try_chain = [&]() {
        if (chain.size() < 2 || chain[chain.size() - 2] != w) return;
        FaceSequenceDevelopment dev = develop(tet, chain);
        Vec2 from = dev.placements.front().at(u);
        Vec2 to = dev.placements.back().at(w);
        std::vector<SurfacePoint> points = {SurfacePoint::at_vertex(u)};
        double prev_s = eps;
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            int e0 = -1, e1 = -1;
            for (int v = 0; v < 4; ++v)
                if (v != chain[i] && v != chain[i + 1]) (e0 < 0 ? e0 : e1) = v;
            double s, t;
            if (!detail::seg_seg(from, to, dev.placements[i].at(e0),
                                 dev.placements[i].at(e1), &s, &t))
                return;
            if (t <= eps || t >= 1.0 - eps) return;
            if (s <= prev_s || s >= 1.0 - eps) return;
            prev_s = s;
            points.push_back(SurfacePoint::on_edge(e0, e1, t, eps));
        }
        points.push_back(SurfacePoint::at_vertex(w));
        ClosedSurfaceCurve curve;
        curve.points = std::move(points);
        curve.segment_faces = chain;
        curve.segment_faces.push_back(edge_face(u, w));
        out.push_back(std::move(curve));
    };

    auto dfs = [&](auto&& self, int face) -> void {
        chain.push_back(face);
        try_chain();
        if (static_cast<int>(chain.size()) < depth_bound) {
            for (int g = 0; g < 4; ++g) {
                if (g == face) continue;
                if (chain.size() >= 2 && g == chain[chain.size() - 2]) continue;
                self(self, g);
            }
        }
        chain.pop_back();
    };

    for (int f = 0; f < 4; ++f)
        if (face_contains(f, u)) dfs(dfs, f);
}

}  // namespace

EnumerationResult enumerate_all(const Tetrahedron& tet, int depth_bound, double eps) {
    AngleTable table = face_angles(tet);
    EnumerationResult result;

    for (int v = 0; v < 4; ++v) {
        for (int h = 0; h < 4; ++h) {
            if (h == v) continue;
            auto loop = geodesic_loop(tet, v, h, eps);
            if (!loop) continue;
            QuasigeodesicReport report = verify(tet, *loop, eps);
            if (report.verdict != QuasigeodesicReport::Verdict::Quasigeodesic ||
                report.k != 1)
                continue;
            bool dup = false;
            for (const auto& found : result.q1)
                if (curves_equal(found.curve, *loop)) dup = true;
            if (!dup)
                result.q1.push_back({*loop, report, loop_note(v, h)});
        }
    }

    for (int u = 0; u < 4; ++u) {
        for (int w = u + 1; w < 4; ++w) {
            std::vector<ClosedSurfaceCurve> candidates;
            collect_edge_segments(tet, u, w, depth_bound, eps, candidates);
            for (const auto& curve : candidates) {
                QuasigeodesicReport report = verify(tet, curve, eps);
                if (report.verdict != QuasigeodesicReport::Verdict::Quasigeodesic ||
                    report.k != 2)
                    continue;
                bool dup = false;
                for (const auto& found : result.q2_nondegenerate)
                    if (curves_equal(found.curve, curve)) dup = true;
                if (dup) continue;
                std::ostringstream note;
                note << "segment " << vertex_name(u) << " to " << vertex_name(w)
                     << " closed by the edge";
                result.q2_nondegenerate.push_back({curve, report, note.str()});
            }

            ClosedSurfaceCurve doubled;
            doubled.points = {SurfacePoint::at_vertex(u), SurfacePoint::at_vertex(w)};
            auto faces = faces_of_edge(u, w);
            doubled.segment_faces = {faces[0], faces[1]};
            doubled.doubled_edge = true;
            QuasigeodesicReport report = verify(tet, doubled, eps);
            if (report.verdict == QuasigeodesicReport::Verdict::Quasigeodesic) {
                std::ostringstream note;
                note << "doubled edge " << vertex_name(u) << vertex_name(w);
                result.q2_degenerate.push_back({doubled, report, note.str()});
            }
        }
    }

    for (int f = 0; f < 4; ++f) {
        bool ok = true;
        for (int v = 0; v < 4 && ok; ++v)
            if (v != f && face_fails_at(table, f, v, eps)) ok = false;
        if (!ok) continue;
        ClosedSurfaceCurve curve = face_boundary_curve(f);
        QuasigeodesicReport report = verify(tet, curve, eps);
        if (report.verdict == QuasigeodesicReport::Verdict::Quasigeodesic) {
            std::ostringstream note;
            note << "boundary of face " << face_name(f);
            result.q3.push_back({curve, report, note.str()});
        }
    }

    for (Partition p : {Partition::AB_CD, Partition::AC_BD, Partition::AD_BC}) {
        if (!q4_partition_valid(table, p, eps)) continue;
        ClosedSurfaceCurve curve = partition_curve(p);
        QuasigeodesicReport report = verify(tet, curve, eps);
        if (report.verdict == QuasigeodesicReport::Verdict::Quasigeodesic) {
            std::ostringstream note;
            note << "edge cycle " << partition_name(p);
            result.q4.push_back({curve, report, note.str()});
        }
    }

    return result;
}

}  // namespace quasigeo
