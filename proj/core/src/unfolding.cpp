#include "quasigeo/unfolding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quasigeo {

namespace {

double angle_mod_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// Proper line intersection of segments p1p2 and q1q2; false when parallel.
bool seg_seg(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, double& t, double& u) {
    Vec2 r = p2 - p1;
    Vec2 s = q2 - q1;
    double den = cross(r, s);
    double scale = std::max({norm(r), norm(s), 1e-30});
    if (std::abs(den) < 1e-14 * scale * scale) return false;
    Vec2 qp = q1 - p1;
    t = cross(qp, s) / den;
    u = cross(qp, r) / den;
    return true;
}

double polygon_span(const std::array<Vec2, 6>& poly) {
    double lo_x = poly[0].x, hi_x = poly[0].x, lo_y = poly[0].y, hi_y = poly[0].y;
    for (const auto& p : poly) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    return std::max(hi_x - lo_x, hi_y - lo_y);
}

// Open segment between polygon corners ia and ib strictly inside the simple
// counterclockwise polygon: no proper crossing with a non-incident edge, no
// other corner on the open segment, and the segment leaves both endpoints
// into the interior wedge. Boundary overlap therefore does not count.
bool polygon_contains_chord(const std::array<Vec2, 6>& poly, int ia, int ib,
                            double eps) {
    const int n = 6;
    Vec2 A = poly[ia], B = poly[ib];
    double scale = std::max(polygon_span(poly), 1e-30);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (i == ia || i == ib || j == ia || j == ib) continue;
        double t, u;
        if (seg_seg(A, B, poly[i], poly[j], t, u) &&
            t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps)
            return false;
    }
    for (int i = 0; i < n; ++i) {
        if (i == ia || i == ib) continue;
        Vec2 r = B - A;
        double t = dot(poly[i] - A, r) / dot(r, r);
        if (t > eps && t < 1.0 - eps && dist(A + r * t, poly[i]) < eps * scale)
            return false;
    }
    auto in_cone = [&](int idx, Vec2 other) {
        Vec2 v = poly[idx];
        Vec2 a1 = poly[(idx + 1) % n] - v;
        Vec2 a2 = poly[(idx + n - 1) % n] - v;
        Vec2 d = other - v;
        double interior = angle_mod_2pi(std::atan2(cross(a1, a2), dot(a1, a2)));
        double toward = angle_mod_2pi(std::atan2(cross(a1, d), dot(a1, d)));
        return (toward > eps && toward < interior - eps) ||
               interior >= 2.0 * kPi - eps;
    };
    return in_cone(ia, B) && in_cone(ib, A);
}

}  // namespace

Vec2 PlacedFace::at(int v) const {
    for (int i = 0; i < 3; ++i)
        if (cycle[i] == v) return pos[i];
    std::ostringstream os;
    os << "vertex " << vertex_name(v) << " is not on face " << face_name(face);
    throw Error(ErrorKind::VertexNotOnFace, os.str());
}

PlacedFace canonical_face(const Tetrahedron& tet, int f) {
    std::array<int, 3> cyc = face_vertices(f);
    int k = static_cast<int>(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
    std::rotate(cyc.begin(), cyc.begin() + k, cyc.end());

    PlacedFace out;
    out.face = f;
    out.cycle = cyc;
    double len01 = tet.edge_length(cyc[0], cyc[1]);
    double len02 = tet.edge_length(cyc[0], cyc[2]);
    Vec3 u1 = tet.pos[cyc[1]] - tet.pos[cyc[0]];
    Vec3 u2 = tet.pos[cyc[2]] - tet.pos[cyc[0]];
    double a0 = std::acos(std::max(-1.0, std::min(1.0, dot(u1, u2) / (len01 * len02))));
    out.pos[0] = {0.0, 0.0};
    out.pos[1] = {len01, 0.0};
    out.pos[2] = {len02 * std::cos(a0), len02 * std::sin(a0)};
    return out;
}

PlacedFace attach_face(const Tetrahedron& tet, int g, int p, int q,
                       Vec2 pos_p, Vec2 pos_q) {
    if (!face_contains(g, p) || !face_contains(g, q))
        throw Error(ErrorKind::NonAdjacentFaces, "attached face misses the shared edge");
    int x = third_vertex(g, p, q);
    // Angle at q inside g rotates the incoming edge direction onto q -> x.
    Vec3 u1 = tet.pos[p] - tet.pos[q];
    Vec3 u2 = tet.pos[x] - tet.pos[q];
    double len_qp = tet.edge_length(q, p);
    double len_qx = tet.edge_length(q, x);
    double ang = std::acos(
        std::max(-1.0, std::min(1.0, dot(u1, u2) / (len_qp * len_qx))));
    Vec2 d = (pos_p - pos_q) * (len_qx / len_qp);
    Vec2 pos_x = pos_q + rotated(d, ang);

    PlacedFace out;
    out.face = g;
    out.cycle = face_vertices(g);
    for (int i = 0; i < 3; ++i) {
        int v = out.cycle[i];
        out.pos[i] = v == p ? pos_p : v == q ? pos_q : pos_x;
    }
    return out;
}

StarUnfolding star_unfold(const Tetrahedron& tet, int v) {
    StarUnfolding su;
    su.source = v;
    su.base = v;  // face opposite v has index v
    PlacedFace base = canonical_face(tet, su.base);
    su.faces[0] = base;
    su.base_cycle = base.cycle;
    for (int i = 0; i < 3; ++i) su.vertex_pos[base.cycle[i]] = base.pos[i];

    // Each remaining face is opposite one base vertex r and folds outward
    // across the base edge joining the other two.
    for (int i = 0; i < 3; ++i) {
        int p = su.base_cycle[i];
        int q = su.base_cycle[(i + 1) % 3];
        int r = su.base_cycle[(i + 2) % 3];
        PlacedFace attached =
            attach_face(tet, r, p, q, su.vertex_pos[p], su.vertex_pos[q]);
        su.faces[1 + i] = attached;
        su.image_pos[r] = attached.at(v);
    }

    int v0 = su.base_cycle[0], v1 = su.base_cycle[1], v2 = su.base_cycle[2];
    su.boundary = {{{false, v0, su.vertex_pos[v0]},
                    {true, v2, su.image_pos[v2]},
                    {false, v1, su.vertex_pos[v1]},
                    {true, v0, su.image_pos[v0]},
                    {false, v2, su.vertex_pos[v2]},
                    {true, v1, su.image_pos[v1]}}};
    return su;
}

bool boundary_contains_chord(const StarUnfolding& su, int i, int j, double eps) {
    std::array<Vec2, 6> poly;
    for (int k = 0; k < 6; ++k) poly[k] = su.boundary[k].pos;
    return polygon_contains_chord(poly, i, j, eps);
}

CutLocus cut_locus(const StarUnfolding& su, double eps) {
    std::array<Vec2, 3> img;
    std::array<int, 3> labels;
    int n = 0;
    for (int x = 0; x < 4; ++x)
        if (x != su.source) {
            labels[n] = x;
            img[n++] = su.image_pos[x];
        }

    Vec2 p1 = img[0], p2 = img[1], p3 = img[2];
    double den = 2.0 * (p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) +
                        p3.x * (p1.y - p2.y));
    double span = std::max({dist(p1, p2), dist(p2, p3), dist(p3, p1), 1e-30});
    if (std::abs(den) < eps * span * span)
        throw Error(ErrorKind::NumericalDegeneracy,
                    "source images are collinear; the equidistant point is lost");

    CutLocus out;
    double s1 = dot(p1, p1), s2 = dot(p2, p2), s3 = dot(p3, p3);
    out.y = {(s1 * (p2.y - p3.y) + s2 * (p3.y - p1.y) + s3 * (p1.y - p2.y)) / den,
             (s1 * (p3.x - p2.x) + s2 * (p1.x - p3.x) + s3 * (p2.x - p1.x)) / den};
    out.radius = dist(out.y, p1);

    const PlacedFace& base = su.faces[0];
    Vec2 t1 = base.pos[0], t2 = base.pos[1], t3 = base.pos[2];
    double area2 = cross(t2 - t1, t3 - t1);
    double l2 = cross(out.y - t1, t3 - t1) / area2;
    double l3 = cross(t2 - t1, out.y - t1) / area2;
    out.bary = {1.0 - l2 - l3, l2, l3};

    int k = 0;
    for (int u = 0; u < 4; ++u)
        if (u != su.source) out.segments[k++] = {out.y, su.vertex_pos[u]};
    return out;
}

std::vector<int> visible_pairs(const StarUnfolding& su, double eps) {
    std::vector<int> out;
    for (int x = 0; x < 4; ++x) {
        if (x == su.source) continue;
        int ia = -1, ib = -1;
        for (int k = 0; k < 6; ++k) {
            if (su.boundary[k].label != x) continue;
            (su.boundary[k].is_image ? ia : ib) = k;
        }
        if (boundary_contains_chord(su, ia, ib, eps)) out.push_back(x);
    }
    return out;
}

FaceSequenceDevelopment develop(const Tetrahedron& tet,
                                const std::vector<int>& faces,
                                const DevelopmentSeed& seed) {
    if (faces.empty())
        throw Error(ErrorKind::MalformedInput, "empty face sequence");
    FaceSequenceDevelopment out;
    out.faces = faces;

    PlacedFace first = canonical_face(tet, faces[0]);
    for (auto& p : first.pos) p = seed.origin + rotated(p, seed.angle);
    out.placements.push_back(first);

    for (size_t i = 1; i < faces.size(); ++i) {
        int prev = faces[i - 1];
        int next = faces[i];
        if (prev == next)
            throw Error(ErrorKind::NonAdjacentFaces, "face repeats immediately");
        // Shared edge, directed as the previous face's cycle visits it.
        int p = -1, q = -1;
        for (int k = 0; k < 3; ++k) {
            int s = kFaceCycle[prev][k];
            int t = kFaceCycle[prev][(k + 1) % 3];
            if (face_contains(next, s) && face_contains(next, t)) {
                p = s;
                q = t;
                break;
            }
        }
        if (p < 0)
            throw Error(ErrorKind::NonAdjacentFaces, "consecutive faces share no edge");
        const PlacedFace& prev_placed = out.placements.back();
        out.placements.push_back(
            attach_face(tet, next, p, q, prev_placed.at(p), prev_placed.at(q)));
    }
    return out;
}

}  // namespace quasigeo
