#include "quasigeo/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "internal.hpp"

namespace quasigeo {

using detail::angle_mod;
using detail::fan_angle_of;
using detail::point_seg_dist;
using detail::seg_seg_dist;
using detail::vertex_fan;
using detail::VertexFan;

namespace {

// One developed strand of the curve inside one face's canonical frame.
struct Piece {
    int index = -1;  // cyclic segment index
    int face = -1;
    Vec2 a{}, b{};
};

std::array<int, 2> support_span(const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex: return {p.vertex, p.vertex};
        case SurfacePoint::Kind::Edge: return {p.edge[0], p.edge[1]};
        default: return {-1, -1};
    }
}

// The edge the whole segment runs along, or (-1,-1).
std::array<int, 2> along_edge(const SurfacePoint& s, const SurfacePoint& e) {
    auto su = support_span(s);
    auto se = support_span(e);
    if (su[0] < 0 || se[0] < 0) return {-1, -1};
    int verts[4] = {su[0], su[1], se[0], se[1]};
    int lo = 5, hi = -1;
    for (int v : verts) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (int v : verts)
        if (v != lo && v != hi) return {-1, -1};
    if (lo == hi) return {-1, -1};
    return {lo, hi};
}

struct CurveGeometry {
    std::vector<Piece> pieces;
    std::array<PlacedFace, 4> frames;
    double scale = 0.0;
};

CurveGeometry build_geometry(const Tetrahedron& tet, const ClosedSurfaceCurve& curve) {
    CurveGeometry geo;
    for (int f = 0; f < 4; ++f) geo.frames[f] = canonical_face(tet, f);
    geo.scale = tet.longest_edge();
    const int n = static_cast<int>(curve.points.size());
    for (int i = 0; i < n; ++i) {
        const SurfacePoint& s = curve.points[i];
        const SurfacePoint& e = curve.points[(i + 1) % n];
        auto edge = along_edge(s, e);
        if (edge[0] >= 0) {
            for (int f : faces_of_edge(edge[0], edge[1]))
                geo.pieces.push_back({i, f,
                                      point_in_face_frame(tet, s, f),
                                      point_in_face_frame(tet, e, f)});
        } else {
            int f = curve.segment_faces[i];
            geo.pieces.push_back({i, f,
                                  point_in_face_frame(tet, s, f),
                                  point_in_face_frame(tet, e, f)});
        }
    }
    return geo;
}

// Simplicity: strands meeting in a face may touch only where consecutive
// segments share their endpoint. Straight strands out of a shared corner
// can overlap only when they leave in the same direction, and then one
// strand's far end lands on the other, so testing the far ends separates
// folds from arbitrarily sharp corners. Full distance tests catch
// everything else, including endpoint-on-interior touches that a
// proper-crossing test misses.
bool pieces_simple(const CurveGeometry& geo, int n, double eps) {
    double tol = eps * geo.scale;
    for (size_t a = 0; a < geo.pieces.size(); ++a) {
        for (size_t b = a + 1; b < geo.pieces.size(); ++b) {
            const Piece& pa = geo.pieces[a];
            const Piece& pb = geo.pieces[b];
            if (pa.face != pb.face || pa.index == pb.index) continue;
            bool fwd = (pb.index - pa.index + n) % n == 1;   // pa.b == pb.a
            bool bwd = (pa.index - pb.index + n) % n == 1;   // pb.b == pa.a
            if (!fwd && !bwd) {
                if (seg_seg_dist(pa.a, pa.b, pb.a, pb.b) < tol) return false;
                continue;
            }
            if (fwd && (point_seg_dist(pa.a, pb.a, pb.b) < tol ||
                        point_seg_dist(pb.b, pa.a, pa.b) < tol))
                return false;
            if (bwd && (point_seg_dist(pb.a, pa.a, pa.b) < tol ||
                        point_seg_dist(pa.b, pb.a, pb.b) < tol))
                return false;
        }
    }
    return true;
}

void validate_curve(const Tetrahedron& tet, const ClosedSurfaceCurve& curve) {
    const int n = static_cast<int>(curve.points.size());
    if (n < 2) throw Error(ErrorKind::MalformedCurve, "closed curve needs >= 2 points");
    if (curve.segment_faces.size() != curve.points.size())
        throw Error(ErrorKind::MalformedCurve, "one face per curve segment required");
    if (curve.doubled_edge) {
        if (n != 2 || curve.points[0].kind != SurfacePoint::Kind::Vertex ||
            curve.points[1].kind != SurfacePoint::Kind::Vertex ||
            curve.points[0].vertex == curve.points[1].vertex)
            throw Error(ErrorKind::MalformedCurve,
                        "doubled edge must join two distinct vertex anchors");
        return;
    }
    for (int i = 0; i < n; ++i) {
        const SurfacePoint& s = curve.points[i];
        const SurfacePoint& e = curve.points[(i + 1) % n];
        int f = curve.segment_faces[i];
        if (f < 0 || f > 3)
            throw Error(ErrorKind::MalformedCurve, "segment face out of range");
        if (!s.lies_on_face(f) || !e.lies_on_face(f))
            throw Error(ErrorKind::MalformedCurve,
                        "segment endpoints do not lie on the declared face");
        Vec2 ps = point_in_face_frame(tet, s, f);
        Vec2 pe = point_in_face_frame(tet, e, f);
        if (dist(ps, pe) < 1e-13 * tet.longest_edge())
            throw Error(ErrorKind::MalformedCurve, "zero-length curve segment");
    }
}

}  // namespace

SurfacePoint SurfacePoint::at_vertex(int v) {
    if (v < 0 || v > 3) throw Error(ErrorKind::MalformedCurve, "vertex out of range");
    SurfacePoint p;
    p.kind = Kind::Vertex;
    p.vertex = v;
    return p;
}

SurfacePoint SurfacePoint::on_edge(int u, int w, double t, double eps) {
    if (u == w || u < 0 || u > 3 || w < 0 || w > 3)
        throw Error(ErrorKind::MalformedCurve, "edge needs two distinct vertices");
    if (u > w) {
        std::swap(u, w);
        t = 1.0 - t;
    }
    if (t < -eps || t > 1.0 + eps)
        throw Error(ErrorKind::MalformedCurve, "edge parameter outside [0, 1]");
    if (t <= eps) return at_vertex(u);
    if (t >= 1.0 - eps) return at_vertex(w);
    SurfacePoint p;
    p.kind = Kind::Edge;
    p.edge = {u, w};
    p.t = t;
    return p;
}

SurfacePoint SurfacePoint::in_face(int f, const std::array<double, 3>& bary,
                                   double eps) {
    if (f < 0 || f > 3) throw Error(ErrorKind::MalformedCurve, "face out of range");
    double sum = bary[0] + bary[1] + bary[2];
    if (std::abs(sum - 1.0) > 1e-6)
        throw Error(ErrorKind::MalformedCurve, "barycentric coordinates must sum to 1");
    SurfacePoint p;
    p.kind = Kind::Face;
    p.face = f;
    for (int i = 0; i < 3; ++i) {
        double v = bary[i];
        if (v < -eps)
            throw Error(ErrorKind::MalformedCurve, "negative barycentric coordinate");
        p.bary[i] = std::max(0.0, v) / sum;
    }
    return p;
}

bool SurfacePoint::lies_on_face(int f) const {
    switch (kind) {
        case Kind::Vertex: return face_contains(f, vertex);
        case Kind::Edge: return face_contains(f, edge[0]) && face_contains(f, edge[1]);
        case Kind::Face: return face == f;
    }
    return false;
}

Vec2 point_in_face_frame(const Tetrahedron& tet, const SurfacePoint& p, int f) {
    PlacedFace frame = canonical_face(tet, f);
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            return frame.at(p.vertex);
        case SurfacePoint::Kind::Edge:
            return frame.at(p.edge[0]) * (1.0 - p.t) + frame.at(p.edge[1]) * p.t;
        case SurfacePoint::Kind::Face: {
            if (p.face != f)
                throw Error(ErrorKind::VertexNotOnFace,
                            "interior point queried on another face");
            auto cyc = face_vertices(f);
            return frame.at(cyc[0]) * p.bary[0] + frame.at(cyc[1]) * p.bary[1] +
                   frame.at(cyc[2]) * p.bary[2];
        }
    }
    throw Error(ErrorKind::MalformedCurve, "bad surface point");
}

Vec3 lift_to_3d(const Tetrahedron& tet, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            return tet.pos[p.vertex];
        case SurfacePoint::Kind::Edge:
            return tet.pos[p.edge[0]] * (1.0 - p.t) + tet.pos[p.edge[1]] * p.t;
        case SurfacePoint::Kind::Face: {
            auto cyc = face_vertices(p.face);
            return tet.pos[cyc[0]] * p.bary[0] + tet.pos[cyc[1]] * p.bary[1] +
                   tet.pos[cyc[2]] * p.bary[2];
        }
    }
    throw Error(ErrorKind::MalformedCurve, "bad surface point");
}

int count_vertices(const ClosedSurfaceCurve& curve) {
    bool seen[4] = {false, false, false, false};
    int k = 0;
    for (const auto& p : curve.points)
        if (p.kind == SurfacePoint::Kind::Vertex && !seen[p.vertex]) {
            seen[p.vertex] = true;
            ++k;
        }
    return k;
}

double curve_length(const Tetrahedron& tet, const ClosedSurfaceCurve& curve) {
    if (curve.doubled_edge)
        return 2.0 * tet.edge_length(curve.points[0].vertex, curve.points[1].vertex);
    const int n = static_cast<int>(curve.points.size());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        int f = curve.segment_faces[i];
        total += dist(point_in_face_frame(tet, curve.points[i], f),
                      point_in_face_frame(tet, curve.points[(i + 1) % n], f));
    }
    return total;
}

const char* verdict_name(QuasigeodesicReport::Verdict verdict) {
    switch (verdict) {
        case QuasigeodesicReport::Verdict::Geodesic: return "Geodesic";
        case QuasigeodesicReport::Verdict::Quasigeodesic: return "Quasigeodesic";
        case QuasigeodesicReport::Verdict::NotQuasigeodesic: return "NotQuasigeodesic";
    }
    return "Unknown";
}

QuasigeodesicReport verify(const Tetrahedron& tet, const ClosedSurfaceCurve& curve,
                           double eps) {
    validate_curve(tet, curve);
    AngleTable table = face_angles(tet);
    QuasigeodesicReport report;
    report.k = count_vertices(curve);

    if (curve.doubled_edge) {
        int u = curve.points[0].vertex;
        int w = curve.points[1].vertex;
        double theta_u = table.complete_angle(u);
        double theta_w = table.complete_angle(w);
        report.degenerate = true;
        report.simple = true;
        report.anchors = {{u, 0.0, theta_u}, {w, 0.0, theta_w}};
        report.tau_left = 2.0 * kPi;
        report.omega_left = 0.0;
        report.tau_right = 2.0 * kPi - theta_u - theta_w;
        report.omega_right = 0.0;
        for (int x = 0; x < 4; ++x)
            if (x != u && x != w) report.omega_right += table.curvature(x);
        report.verdict = at_most_pi(theta_u, eps) && at_most_pi(theta_w, eps)
                             ? QuasigeodesicReport::Verdict::Quasigeodesic
                             : QuasigeodesicReport::Verdict::NotQuasigeodesic;
        return report;
    }

    CurveGeometry geo = build_geometry(tet, curve);
    const int n = static_cast<int>(curve.points.size());
    double tau_left = 0.0, tau_right = 0.0;
    bool sides_ok = true;

    for (int i = 0; i < n; ++i) {
        const SurfacePoint& prev = curve.points[(i + n - 1) % n];
        const SurfacePoint& here = curve.points[i];
        const SurfacePoint& next = curve.points[(i + 1) % n];
        int f_in = curve.segment_faces[(i + n - 1) % n];
        int f_out = curve.segment_faces[i];

        if (here.kind == SurfacePoint::Kind::Vertex) {
            int v = here.vertex;
            VertexFan fan = vertex_fan(table, v);
            Vec2 vpos_in = point_in_face_frame(tet, here, f_in);
            Vec2 d_back = point_in_face_frame(tet, prev, f_in) - vpos_in;
            Vec2 vpos_out = point_in_face_frame(tet, here, f_out);
            Vec2 d_out = point_in_face_frame(tet, next, f_out) - vpos_out;
            double phi_back = fan_angle_of(fan, f_in, geo.frames[f_in], d_back);
            double phi_out = fan_angle_of(fan, f_out, geo.frames[f_out], d_out);
            double left = angle_mod(phi_back - phi_out, fan.total);
            double right = fan.total - left;
            report.anchors.push_back({v, left, right});
            tau_left += kPi - left;
            tau_right += kPi - right;
            if (exceeds_pi(left, eps) || exceeds_pi(right, eps)) sides_ok = false;
            continue;
        }

        // Straightness across the point: develop the outgoing face next to
        // the incoming one and measure the turning angle.
        Vec2 p0 = point_in_face_frame(tet, prev, f_in);
        Vec2 p1 = point_in_face_frame(tet, here, f_in);
        Vec2 p2;
        if (f_in == f_out) {
            p2 = point_in_face_frame(tet, next, f_in);
        } else {
            FaceSequenceDevelopment dev = develop(tet, {f_in, f_out});
            auto to_frame = [&](const SurfacePoint& p, const PlacedFace& pf) {
                switch (p.kind) {
                    case SurfacePoint::Kind::Vertex: return pf.at(p.vertex);
                    case SurfacePoint::Kind::Edge:
                        return pf.at(p.edge[0]) * (1.0 - p.t) + pf.at(p.edge[1]) * p.t;
                    default: {
                        auto cyc = face_vertices(pf.face);
                        return pf.at(cyc[0]) * p.bary[0] + pf.at(cyc[1]) * p.bary[1] +
                               pf.at(cyc[2]) * p.bary[2];
                    }
                }
            };
            p0 = to_frame(prev, dev.placements[0]);
            p1 = to_frame(here, dev.placements[0]);
            p2 = to_frame(next, dev.placements[1]);
        }
        Vec2 u = p1 - p0;
        Vec2 w = p2 - p1;
        double turn = std::atan2(cross(u, w), dot(u, w));
        report.max_straightness_residual =
            std::max(report.max_straightness_residual, std::abs(turn));
        tau_left += turn;
        tau_right -= turn;
    }

    report.simple = pieces_simple(geo, n, eps);

    // Anchors against non-incident strands: a curve running back through
    // one of its own loop points is not simple.
    double tol = eps * geo.scale;
    for (const auto& anchor : report.anchors) {
        for (const auto& piece : geo.pieces) {
            if (!face_contains(piece.face, anchor.vertex)) continue;
            bool incident = false;
            for (int i = 0; i < n && !incident; ++i) {
                if (curve.points[i].kind == SurfacePoint::Kind::Vertex &&
                    curve.points[i].vertex == anchor.vertex)
                    incident = piece.index == i || piece.index == (i + n - 1) % n;
            }
            if (incident) continue;
            Vec2 vp = geo.frames[piece.face].at(anchor.vertex);
            if (point_seg_dist(vp, piece.a, piece.b) < tol) report.simple = false;
        }
    }

    // Enclosed curvature per side: each off-curve vertex is classified by
    // the nearest strand in its incident faces.
    double omega_left = 0.0, omega_right = 0.0;
    for (int x = 0; x < 4; ++x) {
        bool on_curve = false;
        for (const auto& anchor : report.anchors)
            if (anchor.vertex == x) on_curve = true;
        if (on_curve) continue;
        double best = std::numeric_limits<double>::infinity();
        bool left_side = false;
        for (const auto& piece : geo.pieces) {
            if (!face_contains(piece.face, x)) continue;
            Vec2 xp = geo.frames[piece.face].at(x);
            double d = point_seg_dist(xp, piece.a, piece.b);
            if (d < best) {
                best = d;
                left_side = cross(piece.b - piece.a, xp - piece.a) > 0.0;
            }
        }
        if (best < tol)
            throw Error(ErrorKind::MalformedCurve,
                        "curve passes through an undeclared vertex");
        (left_side ? omega_left : omega_right) += table.curvature(x);
    }

    report.tau_left = tau_left;
    report.tau_right = tau_right;
    report.omega_left = omega_left;
    report.omega_right = omega_right;

    bool straight_ok = report.max_straightness_residual <= eps;
    if (!report.simple || !sides_ok || !straight_ok)
        report.verdict = QuasigeodesicReport::Verdict::NotQuasigeodesic;
    else
        report.verdict = report.k == 0 ? QuasigeodesicReport::Verdict::Geodesic
                                       : QuasigeodesicReport::Verdict::Quasigeodesic;
    return report;
}

std::pair<double, double> side_angles(const Tetrahedron& tet,
                                      const ClosedSurfaceCurve& curve,
                                      int anchor_vertex, double eps) {
    QuasigeodesicReport report = verify(tet, curve, eps);
    for (const auto& anchor : report.anchors)
        if (anchor.vertex == anchor_vertex) return {anchor.left, anchor.right};
    std::ostringstream os;
    os << "vertex " << vertex_name(anchor_vertex) << " is not on the curve";
    throw Error(ErrorKind::AnchorNotOnCurve, os.str());
}

std::pair<double, double> gauss_bonnet_residual(const Tetrahedron& tet,
                                                const ClosedSurfaceCurve& curve,
                                                double eps) {
    QuasigeodesicReport report = verify(tet, curve, eps);
    if (!report.simple)
        throw Error(ErrorKind::NonSimpleCurve,
                    "turn plus curvature needs a simple curve");
    return {std::abs(report.tau_left + report.omega_left - 2.0 * kPi),
            std::abs(report.tau_right + report.omega_right - 2.0 * kPi)};
}

namespace {

struct SignatureItem {
    int kind;  // 0 vertex, 1 edge, 2 face
    int id;
    double t0, t1;
};

std::vector<SignatureItem> signature(const ClosedSurfaceCurve& curve) {
    std::vector<SignatureItem> out;
    for (const auto& p : curve.points) {
        switch (p.kind) {
            case SurfacePoint::Kind::Vertex:
                out.push_back({0, p.vertex, 0.0, 0.0});
                break;
            case SurfacePoint::Kind::Edge:
                out.push_back({1, p.edge[0] * 4 + p.edge[1], p.t, 0.0});
                break;
            case SurfacePoint::Kind::Face:
                out.push_back({2, p.face, p.bary[0], p.bary[1]});
                break;
        }
    }
    return out;
}

bool items_match(const SignatureItem& a, const SignatureItem& b, double tol) {
    return a.kind == b.kind && a.id == b.id && std::abs(a.t0 - b.t0) <= tol &&
           std::abs(a.t1 - b.t1) <= tol;
}

}  // namespace

bool curves_equal(const ClosedSurfaceCurve& a, const ClosedSurfaceCurve& b,
                  double tol) {
    if (a.doubled_edge != b.doubled_edge) return false;
    if (a.points.size() != b.points.size()) return false;
    if (a.doubled_edge) {
        int au = a.points[0].vertex, aw = a.points[1].vertex;
        int bu = b.points[0].vertex, bw = b.points[1].vertex;
        return std::minmax(au, aw) == std::minmax(bu, bw);
    }
    auto sa = signature(a);
    auto sb = signature(b);
    const int n = static_cast<int>(sa.size());
    for (int dir = 0; dir < 2; ++dir) {
        for (int shift = 0; shift < n; ++shift) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                int j = dir == 0 ? (shift + i) % n : (shift - i % n + n * 2) % n;
                ok = items_match(sa[i], sb[j], tol);
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace quasigeo
