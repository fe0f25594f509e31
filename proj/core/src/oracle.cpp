#include "quasigeo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "internal.hpp"

namespace quasigeo {

namespace {

using detail::angle_mod;

Vec2 place_point(const PlacedFace& pf, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            return pf.at(p.vertex);
        case SurfacePoint::Kind::Edge:
            return pf.at(p.edge[0]) * (1.0 - p.t) + pf.at(p.edge[1]) * p.t;
        case SurfacePoint::Kind::Face: {
            auto cyc = face_vertices(pf.face);
            return pf.at(cyc[0]) * p.bary[0] + pf.at(cyc[1]) * p.bary[1] +
                   pf.at(cyc[2]) * p.bary[2];
        }
    }
    throw Error(ErrorKind::MalformedCurve, "bad surface point");
}

// Rotation carrying the original placement of a face onto the current one.
double placement_rotation(const PlacedFace& from, const PlacedFace& to) {
    int a = from.cycle[0], b = from.cycle[1];
    Vec2 e0 = from.at(b) - from.at(a);
    Vec2 e1 = to.at(b) - to.at(a);
    return std::atan2(cross(e0, e1), dot(e0, e1));
}

struct CastHit {
    bool found = false;
    double s = 0.0;
    int k = -1;  // exit through the directed cycle edge (cycle[k], cycle[k+1])
    double t = 0.0;
};

CastHit cast_in_face(const PlacedFace& pf, Vec2 pos, Vec2 dir, int entry_lo,
                     int entry_hi, double scale, double eps) {
    CastHit best;
    for (int k = 0; k < 3; ++k) {
        int p = pf.cycle[k];
        int q = pf.cycle[(k + 1) % 3];
        if (std::min(p, q) == entry_lo && std::max(p, q) == entry_hi) continue;
        Vec2 a = pf.at(p);
        Vec2 b = pf.at(q);
        double den = cross(dir, b - a);
        if (std::abs(den) < 1e-14 * scale) continue;
        double s = cross(a - pos, b - a) / den;
        double t = cross(a - pos, dir) / den;
        if (s <= 1e-12 * scale) continue;
        if (t < -eps || t > 1.0 + eps) continue;
        if (!best.found || s < best.s) best = {true, s, k, t};
    }
    return best;
}

struct CornerHit {
    bool found = false;
    double s = 0.0;
    int label = -1;
};

CornerHit corner_on_ray(const PlacedFace& pf, Vec2 pos, Vec2 dir, double arclen,
                        double scale, double eps) {
    CornerHit best;
    for (int c : pf.cycle) {
        Vec2 cp = pf.at(c);
        double s = dot(cp - pos, dir);
        if (s < -eps * scale) continue;
        if (arclen + s < 1e-6 * scale) continue;
        if (std::abs(cross(dir, cp - pos)) >= eps * scale) continue;
        if (!best.found || s < best.s) best = {true, s, c};
    }
    return best;
}

struct WalkStart {
    bool degenerate = false;
    int face = -1;
    PlacedFace placement;
    Vec2 pos{};
    Vec2 dir{};
    int entry_lo = -1, entry_hi = -1;
};

// Sign that rotates the directed edge u->w toward the interior of the face.
double interior_spin(const PlacedFace& pf, int u, int w) {
    int third = -1;
    for (int v : pf.cycle)
        if (v != u && v != w) third = v;
    return cross(pf.at(w) - pf.at(u), pf.at(third) - pf.at(u)) > 0.0 ? 1.0 : -1.0;
}

WalkStart start_walk(const Tetrahedron& tet, const AngleTable& table,
                     const SurfacePoint& start, double angle, double eps) {
    WalkStart st;
    switch (start.kind) {
        case SurfacePoint::Kind::Vertex: {
            auto fan = detail::vertex_fan(table, start.vertex);
            double a = angle_mod(angle, fan.total);
            int pick = 2;
            for (int i = 0; i < 2; ++i)
                if (a < fan.entries[i + 1].cum) {
                    pick = i;
                    break;
                }
            const auto& entry = fan.entries[pick];
            st.face = entry.face;
            st.placement = canonical_face(tet, entry.face);
            Vec2 v0 = st.placement.at(start.vertex);
            Vec2 e = normalized(st.placement.at(entry.toward) - v0);
            st.pos = v0;
            st.dir = rotated(e, a - entry.cum);
            return st;
        }
        case SurfacePoint::Kind::Edge: {
            double a = angle_mod(angle, 2.0 * kPi);
            if (angle_mod(a, kPi) < eps || kPi - angle_mod(a, kPi) < eps) {
                st.degenerate = true;
                return st;
            }
            auto faces = faces_of_edge(start.edge[0], start.edge[1]);
            bool low = a < kPi;
            st.face = low ? faces[0] : faces[1];
            st.placement = canonical_face(tet, st.face);
            int u = start.edge[0], w = start.edge[1];
            Vec2 e = normalized(st.placement.at(w) - st.placement.at(u));
            double local = low ? a : 2.0 * kPi - a;
            st.dir = rotated(e, interior_spin(st.placement, u, w) * local);
            st.pos = place_point(st.placement, start);
            st.entry_lo = u;
            st.entry_hi = w;
            return st;
        }
        case SurfacePoint::Kind::Face: {
            st.face = start.face;
            st.placement = canonical_face(tet, start.face);
            st.pos = place_point(st.placement, start);
            st.dir = rotated(Vec2{1.0, 0.0}, angle);
            return st;
        }
    }
    throw Error(ErrorKind::MalformedCurve, "bad surface point");
}

void face_bary_of(const PlacedFace& pf, Vec2 p, std::array<double, 3>* bary) {
    auto cyc = face_vertices(pf.face);
    Vec2 a = pf.at(cyc[0]), b = pf.at(cyc[1]), c = pf.at(cyc[2]);
    double area = cross(b - a, c - a);
    (*bary)[0] = cross(b - p, c - p) / area;
    (*bary)[1] = cross(c - p, a - p) / area;
    (*bary)[2] = cross(a - p, b - p) / area;
    for (double& x : *bary) x = std::max(0.0, x);
}

}  // namespace

const char* termination_name(TraceTermination t) {
    switch (t) {
        case TraceTermination::MaxLength: return "MaxLength";
        case TraceTermination::VertexHit: return "VertexHit";
        case TraceTermination::SelfReturn: return "SelfReturn";
        case TraceTermination::DegenerateDirection: return "DegenerateDirection";
    }
    return "Unknown";
}

double fan_angle_at(const Tetrahedron& tet, const SurfacePoint& start, int face,
                    Vec2 dir, double eps) {
    (void)eps;
    AngleTable table = face_angles(tet);
    switch (start.kind) {
        case SurfacePoint::Kind::Vertex: {
            auto fan = detail::vertex_fan(table, start.vertex);
            return detail::fan_angle_of(fan, face, canonical_face(tet, face), dir);
        }
        case SurfacePoint::Kind::Edge: {
            if (!start.lies_on_face(face))
                throw Error(ErrorKind::VertexNotOnFace, "point not on face");
            PlacedFace pf = canonical_face(tet, face);
            int u = start.edge[0], w = start.edge[1];
            Vec2 e = normalized(pf.at(w) - pf.at(u));
            double spin = interior_spin(pf, u, w);
            double raw = angle_mod(spin * std::atan2(cross(e, dir), dot(e, dir)),
                                   2.0 * kPi);
            bool low = face == faces_of_edge(u, w)[0];
            return low ? raw : angle_mod(2.0 * kPi - raw, 2.0 * kPi);
        }
        case SurfacePoint::Kind::Face: {
            if (start.face != face)
                throw Error(ErrorKind::VertexNotOnFace, "point not on face");
            return angle_mod(std::atan2(dir.y, dir.x), 2.0 * kPi);
        }
    }
    throw Error(ErrorKind::MalformedCurve, "bad surface point");
}

TraceResult trace(const Tetrahedron& tet, const SurfacePoint& start,
                  double direction, double max_length, double eps) {
    TraceResult out;
    out.termination = TraceTermination::MaxLength;
    if (max_length <= 0.0) return out;

    AngleTable table = face_angles(tet);
    double scale = tet.longest_edge();
    WalkStart st = start_walk(tet, table, start, direction, eps);
    out.path.push_back({start, 0.0});
    if (st.degenerate) {
        out.termination = TraceTermination::DegenerateDirection;
        return out;
    }

    int face = st.face;
    PlacedFace pf = st.placement;
    Vec2 pos = st.pos;
    Vec2 dir = st.dir;
    int entry_lo = st.entry_lo, entry_hi = st.entry_hi;
    double arclen = 0.0;

    const int face0 = st.face;
    const PlacedFace pf0 = st.placement;
    const Vec2 dir0 = st.dir;
    const bool can_close = start.kind != SurfacePoint::Kind::Vertex;

    for (int step = 0; step < 100000; ++step) {
        double remaining = max_length - arclen;
        CastHit exit = cast_in_face(pf, pos, dir, entry_lo, entry_hi, scale, eps);
        CornerHit corner = corner_on_ray(pf, pos, dir, arclen, scale, eps);
        double exit_s = exit.found ? exit.s : std::numeric_limits<double>::infinity();

        bool self_found = false;
        double self_s = 0.0;
        if (can_close && face == face0 && start.lies_on_face(face)) {
            Vec2 sl = place_point(pf, start);
            double srel = dot(sl - pos, dir);
            if (srel > -1e-6 * scale && arclen + srel > 1e-6 * scale &&
                std::abs(cross(dir, sl - pos)) < eps * scale) {
                Vec2 want = rotated(dir0, placement_rotation(pf0, pf));
                if (std::abs(std::atan2(cross(want, dir), dot(want, dir))) < 1e-6) {
                    self_found = true;
                    self_s = std::max(srel, 0.0);
                }
            }
        }

        if (self_found && self_s <= std::min(exit_s, remaining) + eps * scale &&
            (!corner.found || self_s <= corner.s + eps * scale)) {
            arclen += self_s;
            // when the ray closes exactly on an edge, the closing point was
            // already pushed as the crossing that entered this face
            if (out.path.size() >= 2 &&
                arclen - out.path.back().arclen <= 1e-6 * scale) {
                out.path.back() = {start, arclen};
            } else {
                out.path.push_back({start, arclen});
                out.segment_faces.push_back(face);
            }
            out.termination = TraceTermination::SelfReturn;
            out.length = arclen;
            return out;
        }
        if (corner.found && corner.s <= std::min(exit_s, remaining) + eps * scale) {
            arclen += std::max(corner.s, 0.0);
            out.path.push_back({SurfacePoint::at_vertex(corner.label), arclen});
            out.segment_faces.push_back(face);
            out.termination = TraceTermination::VertexHit;
            out.hit_vertex = corner.label;
            out.length = arclen;
            return out;
        }
        if (remaining <= exit_s) {
            Vec2 end = pos + dir * remaining;
            std::array<double, 3> bary{};
            face_bary_of(pf, end, &bary);
            out.path.push_back({SurfacePoint::in_face(face, bary, eps),
                                max_length});
            out.segment_faces.push_back(face);
            out.termination = TraceTermination::MaxLength;
            out.length = max_length;
            return out;
        }
        if (!exit.found) {
            out.termination = TraceTermination::DegenerateDirection;
            out.length = arclen;
            return out;
        }

        int p = pf.cycle[exit.k];
        int q = pf.cycle[(exit.k + 1) % 3];
        SurfacePoint crossing = SurfacePoint::on_edge(p, q, exit.t, eps);
        arclen += exit.s;
        if (crossing.kind == SurfacePoint::Kind::Vertex) {
            out.path.push_back({crossing, arclen});
            out.segment_faces.push_back(face);
            out.termination = TraceTermination::VertexHit;
            out.hit_vertex = crossing.vertex;
            out.length = arclen;
            return out;
        }
        out.path.push_back({crossing, arclen});
        out.segment_faces.push_back(face);

        auto faces = faces_of_edge(std::min(p, q), std::max(p, q));
        int g = faces[0] == face ? faces[1] : faces[0];
        PlacedFace next = attach_face(tet, g, p, q, pf.at(p), pf.at(q));
        pos = pf.at(p) + (pf.at(q) - pf.at(p)) * exit.t;
        face = g;
        pf = next;
        entry_lo = std::min(p, q);
        entry_hi = std::max(p, q);
    }
    throw Error(ErrorKind::NumericalDegeneracy, "walk failed to terminate");
}

ClosedSurfaceCurve closed_curve_from_trace(const TraceResult& result) {
    bool closes = false;
    if (result.path.size() >= 3) {
        if (result.termination == TraceTermination::SelfReturn) closes = true;
        if (result.termination == TraceTermination::VertexHit &&
            result.path.front().point.kind == SurfacePoint::Kind::Vertex &&
            result.path.front().point.vertex == result.hit_vertex)
            closes = true;
    }
    if (!closes)
        throw Error(ErrorKind::MalformedCurve, "trace does not close up");
    ClosedSurfaceCurve curve;
    for (size_t i = 0; i + 1 < result.path.size(); ++i)
        curve.points.push_back(result.path[i].point);
    curve.segment_faces = result.segment_faces;
    return curve;
}

namespace {

std::string chain_signature(const std::vector<int>& chain) {
    std::string sig;
    for (int f : chain) sig += face_name(f);
    return sig;
}

// Straight chord from the source corner to one of its developed images,
// validated against the chain it was detected in.
std::optional<ClosedSurfaceCurve> loop_from_chain(const Tetrahedron& tet, int v,
                                                  const std::vector<int>& chain,
                                                  double eps) {
    if (chain.size() < 2 || chain.back() == v) return std::nullopt;
    FaceSequenceDevelopment dev = develop(tet, chain);
    Vec2 p0 = dev.placements.front().at(v);
    Vec2 img = dev.placements.back().at(v);
    std::vector<SurfacePoint> points = {SurfacePoint::at_vertex(v)};
    double prev_s = 1e-12;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        int e0 = -1, e1 = -1;
        for (int u = 0; u < 4; ++u)
            if (u != chain[i] && u != chain[i + 1]) (e0 < 0 ? e0 : e1) = u;
        double s, t;
        if (!detail::seg_seg(p0, img, dev.placements[i].at(e0),
                             dev.placements[i].at(e1), &s, &t))
            return std::nullopt;
        if (t <= eps || t >= 1.0 - eps) return std::nullopt;
        if (s <= prev_s || s >= 1.0 - 1e-12) return std::nullopt;
        prev_s = s;
        SurfacePoint crossing = SurfacePoint::on_edge(e0, e1, t, eps);
        if (crossing.kind != SurfacePoint::Kind::Edge) return std::nullopt;
        points.push_back(crossing);
    }
    ClosedSurfaceCurve curve;
    curve.points = std::move(points);
    curve.segment_faces = chain;
    return curve;
}

}  // namespace

SweepResult sweep_loops(const Tetrahedron& tet, int v, double resolution,
                        double max_length, double eps) {
    if (v < 0 || v > 3)
        throw Error(ErrorKind::MalformedInput, "vertex out of range");
    if (resolution <= 0.0)
        throw Error(ErrorKind::MalformedInput, "resolution must be positive");

    AngleTable table = face_angles(tet);
    auto fan = detail::vertex_fan(table, v);
    double scale = tet.longest_edge();

    SweepResult out;
    out.source = v;
    out.resolution = resolution;

    std::vector<ClosedSurfaceCurve> candidates;
    auto add_candidate = [&](const ClosedSurfaceCurve& curve) {
        for (const auto& seen : candidates)
            if (curves_equal(seen, curve)) return;
        candidates.push_back(curve);
    };

    std::map<std::string, double> prev_offsets;

    for (int k = 1; k * resolution < fan.total; ++k) {
        double angle = k * resolution;
        WalkStart st = start_walk(tet, table, SurfacePoint::at_vertex(v), angle, eps);

        int face = st.face;
        PlacedFace pf = st.placement;
        Vec2 pos = st.pos;
        Vec2 dir = st.dir;
        int entry_lo = -1, entry_hi = -1;
        double arclen = 0.0;
        Vec2 p0 = st.pos;

        std::vector<int> chain = {face};
        std::vector<SurfacePoint> walk_points = {SurfacePoint::at_vertex(v)};
        std::map<std::string, double> offsets;
        std::map<std::string, std::vector<int>> chains;

        for (int step = 0; step < 100000; ++step) {
            if (face != v) {
                Vec2 img = pf.at(v);
                double along = dot(dir, img - p0);
                if (along > 1e-6 * scale && along < max_length + scale) {
                    std::string sig = chain_signature(chain);
                    offsets[sig] = cross(dir, img - p0);
                    chains[sig] = chain;
                }
            }
            double remaining = max_length - arclen;
            CastHit exit = cast_in_face(pf, pos, dir, entry_lo, entry_hi, scale, eps);
            CornerHit corner = corner_on_ray(pf, pos, dir, arclen, scale, eps);
            double exit_s =
                exit.found ? exit.s : std::numeric_limits<double>::infinity();
            if (corner.found && corner.s <= std::min(exit_s, remaining) + eps * scale) {
                if (corner.label == v && walk_points.size() >= 2) {
                    ClosedSurfaceCurve curve;
                    curve.points = walk_points;
                    curve.segment_faces = chain;
                    add_candidate(curve);
                }
                break;
            }
            if (remaining <= exit_s || !exit.found) break;

            int p = pf.cycle[exit.k];
            int q = pf.cycle[(exit.k + 1) % 3];
            SurfacePoint crossing = SurfacePoint::on_edge(p, q, exit.t, eps);
            if (crossing.kind != SurfacePoint::Kind::Edge) break;
            walk_points.push_back(crossing);
            arclen += exit.s;

            auto faces = faces_of_edge(std::min(p, q), std::max(p, q));
            int g = faces[0] == face ? faces[1] : faces[0];
            pf = attach_face(tet, g, p, q, pf.at(p), pf.at(q));
            pos = pf.at(p) + (pf.at(q) - pf.at(p)) * exit.t;
            face = g;
            chain.push_back(g);
            entry_lo = std::min(p, q);
            entry_hi = std::max(p, q);
        }

        for (const auto& [sig, off] : offsets) {
            auto it = prev_offsets.find(sig);
            if (it == prev_offsets.end()) continue;
            if ((off < 0.0) == (it->second < 0.0)) continue;
            if (auto loop = loop_from_chain(tet, v, chains[sig], eps))
                add_candidate(*loop);
        }
        prev_offsets = std::move(offsets);
    }

    for (const auto& curve : candidates) {
        SweepLoop loop;
        loop.curve = curve;
        try {
            loop.report = verify(tet, curve, eps);
        } catch (const Error&) {
            continue;
        }
        int f0 = curve.segment_faces[0];
        Vec2 d0 = point_in_face_frame(tet, curve.points[1], f0) -
                  point_in_face_frame(tet, curve.points[0], f0);
        loop.departure = detail::fan_angle_of(fan, f0, canonical_face(tet, f0), d0);
        out.loops.push_back(std::move(loop));
    }
    std::sort(out.loops.begin(), out.loops.end(),
              [](const SweepLoop& a, const SweepLoop& b) {
                  return a.departure < b.departure;
              });
    return out;
}

}  // namespace quasigeo
