#pragma once

// Shared geometry helpers for the library internals. Not installed.

#include <array>
#include <cmath>

#include "quasigeo/tetra.hpp"
#include "quasigeo/unfolding.hpp"
#include "quasigeo/vec.hpp"

namespace quasigeo::detail {

inline double angle_mod(double a, double period) {
    a = std::fmod(a, period);
    if (a < 0.0) a += period;
    return a;
}

// Proper intersection parameters of segments p1p2 (t) and q1q2 (u).
// Parallel pairs report no intersection.
inline bool seg_seg(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, double* t, double* u) {
    Vec2 r = p2 - p1;
    Vec2 s = q2 - q1;
    double den = cross(r, s);
    double scale2 = dot(r, r) + dot(s, s);
    if (std::abs(den) < 1e-14 * scale2) return false;
    Vec2 qp = q1 - p1;
    *t = cross(qp, s) / den;
    *u = cross(qp, r) / den;
    return true;
}

inline double point_seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 r = b - a;
    double len2 = dot(r, r);
    if (len2 == 0.0) return dist(p, a);
    double t = std::max(0.0, std::min(1.0, dot(p - a, r) / len2));
    return dist(a + r * t, p);
}

inline double seg_seg_dist(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    Vec2 r = p2 - p1;
    Vec2 s = q2 - q1;
    double den = cross(r, s);
    if (den != 0.0) {
        Vec2 qp = q1 - p1;
        double t = cross(qp, s) / den;
        double u = cross(qp, r) / den;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return 0.0;
    }
    return std::min(
        std::min(point_seg_dist(p1, q1, q2), point_seg_dist(p2, q1, q2)),
        std::min(point_seg_dist(q1, p1, p2), point_seg_dist(q2, p1, p2)));
}

// Counterclockwise fan of the three faces around a vertex, starting along
// the edge toward the lowest-labeled other vertex.
struct FanEntry {
    int toward = -1;  // fan enters this face along the edge v -> toward
    int face = -1;
    double cum = 0.0;
};

struct VertexFan {
    int vertex = -1;
    std::array<FanEntry, 3> entries{};
    double total = 0.0;
};

inline VertexFan vertex_fan(const AngleTable& table, int v) {
    // In each incident face the cycle at v enters along v->u1 and exits
    // along v->u2; following exits walks the fan counterclockwise.
    int exit_of[4] = {-1, -1, -1, -1};
    int face_of[4] = {-1, -1, -1, -1};
    for (int f = 0; f < 4; ++f) {
        if (!face_contains(f, v)) continue;
        auto cyc = face_vertices(f);
        int k = 0;
        while (cyc[k] != v) ++k;
        int u1 = cyc[(k + 1) % 3];
        int u2 = cyc[(k + 2) % 3];
        exit_of[u1] = u2;
        face_of[u1] = f;
    }
    VertexFan fan;
    fan.vertex = v;
    int cur = v == 0 ? 1 : 0;
    double cum = 0.0;
    for (int i = 0; i < 3; ++i) {
        fan.entries[i] = {cur, face_of[cur], cum};
        cum += table.at(v, face_of[cur]);
        cur = exit_of[cur];
    }
    fan.total = cum;
    return fan;
}

// Fan angle of a direction leaving the fan vertex inside a given face,
// with positions taken from that face's frame. Directions on the entry
// edge can round to a full turn; those wrap back to the wedge start.
inline double fan_angle_of(const VertexFan& fan, int face,
                           const PlacedFace& frame, Vec2 dir) {
    for (const auto& e : fan.entries) {
        if (e.face != face) continue;
        Vec2 entry = frame.at(e.toward) - frame.at(fan.vertex);
        double a =
            angle_mod(std::atan2(cross(entry, dir), dot(entry, dir)), 2.0 * kPi);
        if (a > 1.5 * kPi) a = 0.0;
        return angle_mod(e.cum + a, fan.total);
    }
    throw Error(ErrorKind::VertexNotOnFace, "face not incident to fan vertex");
}

}  // namespace quasigeo::detail
