#include "quasigeo/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace quasigeo {

namespace {

double clamp_unit(double x) { return std::max(-1.0, std::min(1.0, x)); }

double corner_angle(const Vec3& at, const Vec3& p1, const Vec3& p2) {
    Vec3 u1 = p1 - at;
    Vec3 u2 = p2 - at;
    double n = norm(u1) * norm(u2);
    return std::acos(clamp_unit(dot(u1, u2) / n));
}

double scale_of(const std::array<Vec3, 4>& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s = std::max(s, dist(v[i], v[j]));
    return s;
}

}  // namespace

double default_epsilon() {
    static const double eps = [] {
        if (const char* env = std::getenv("QUASIGEO_EPS")) {
            char* end = nullptr;
            double value = std::strtod(env, &end);
            if (end != env && value > 0.0 && value < 1.0) return value;
        }
        return 1e-9;
    }();
    return eps;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::FlatTetrahedron: return "FlatTetrahedron";
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::VertexNotOnFace: return "VertexNotOnFace";
        case ErrorKind::AnchorNotOnCurve: return "AnchorNotOnCurve";
        case ErrorKind::MalformedCurve: return "MalformedCurve";
        case ErrorKind::NonSimpleCurve: return "NonSimpleCurve";
        case ErrorKind::NonAdjacentFaces: return "NonAdjacentFaces";
        case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorKind::InternalContradiction: return "InternalContradiction";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

char vertex_name(int v) { return static_cast<char>('a' + v); }
char face_name(int f) { return static_cast<char>('A' + f); }

int vertex_index(char name) {
    return (name >= 'a' && name <= 'd') ? name - 'a' : -1;
}

int face_index(char name) {
    return (name >= 'A' && name <= 'D') ? name - 'A' : -1;
}

bool face_contains(int f, int v) { return f != v; }

std::array<int, 3> face_vertices(int f) {
    return {kFaceCycle[f][0], kFaceCycle[f][1], kFaceCycle[f][2]};
}

std::array<int, 2> faces_of_edge(int u, int w) {
    std::array<int, 2> out{-1, -1};
    int n = 0;
    for (int f = 0; f < 4; ++f)
        if (f != u && f != w) out[n++] = f;
    return out;
}

int third_vertex(int f, int u, int w) {
    for (int v : kFaceCycle[f])
        if (v != u && v != w) return v;
    throw Error(ErrorKind::VertexNotOnFace, "no third vertex");
}

ValidationReport validate(const std::array<Vec3, 4>& vertices, bool allow_flat,
                          double eps) {
    ValidationReport report;
    double scale = scale_of(vertices);
    if (scale <= 0.0) {
        report.failures.push_back("all vertices coincide");
        return report;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (dist(vertices[i], vertices[j]) < eps * scale) {
                std::ostringstream os;
                os << "vertices " << vertex_name(i) << " and " << vertex_name(j)
                   << " coincide";
                report.failures.push_back(os.str());
            }
    if (!report.failures.empty()) return report;

    // Per-face collinearity.
    for (int f = 0; f < 4; ++f) {
        auto cyc = face_vertices(f);
        Vec3 n = cross(vertices[cyc[1]] - vertices[cyc[0]],
                       vertices[cyc[2]] - vertices[cyc[0]]);
        if (norm(n) < eps * scale * scale) {
            std::ostringstream os;
            os << "face " << face_name(f) << " is collinear";
            report.failures.push_back(os.str());
        }
    }
    if (!report.failures.empty()) return report;

    Vec3 e1 = vertices[1] - vertices[0];
    Vec3 e2 = vertices[2] - vertices[0];
    Vec3 e3 = vertices[3] - vertices[0];
    double det = dot(cross(e1, e2), e3);
    report.volume = std::abs(det) / 6.0;
    bool is_flat = std::abs(det) < eps * scale * scale * scale;
    report.flat = is_flat;
    if (is_flat && !allow_flat) {
        report.failures.push_back("tetrahedron is flat (zero volume)");
        return report;
    }
    report.valid = true;
    return report;
}

Tetrahedron Tetrahedron::from_vertices(const std::array<Vec3, 4>& vertices,
                                       bool allow_flat, double eps) {
    ValidationReport report = validate(vertices, allow_flat, eps);
    if (!report.valid) {
        std::string message;
        for (const auto& failure : report.failures) {
            if (!message.empty()) message += "; ";
            message += failure;
        }
        bool flat_only = report.failures.size() == 1 &&
                         report.failures[0].find("flat") != std::string::npos;
        throw Error(flat_only ? ErrorKind::FlatTetrahedron : ErrorKind::DegenerateInput,
                    message);
    }

    Tetrahedron tet;
    tet.pos = vertices;
    tet.flat = report.flat;
    // Orientation convention: det[b-a, c-a, d-a] < 0 makes every face cycle
    // counterclockwise from outside. Mirror x when the input is the other way.
    Vec3 e1 = tet.pos[1] - tet.pos[0];
    Vec3 e2 = tet.pos[2] - tet.pos[0];
    Vec3 e3 = tet.pos[3] - tet.pos[0];
    if (dot(cross(e1, e2), e3) > 0.0)
        for (auto& p : tet.pos) p.x = -p.x;
    return tet;
}

double Tetrahedron::longest_edge() const {
    double best = 0.0;
    for (int u = 0; u < 4; ++u)
        for (int w = u + 1; w < 4; ++w) best = std::max(best, edge_length(u, w));
    return best;
}

double AngleTable::at(int v, int f) const {
    if (!face_contains(f, v)) {
        std::ostringstream os;
        os << "vertex " << vertex_name(v) << " is not on face " << face_name(f);
        throw Error(ErrorKind::VertexNotOnFace, os.str());
    }
    return entry[v][f];
}

double AngleTable::complete_angle(int v) const {
    double sum = 0.0;
    for (int f = 0; f < 4; ++f)
        if (face_contains(f, v)) sum += entry[v][f];
    return sum;
}

double AngleTable::curvature(int v) const { return 2.0 * kPi - complete_angle(v); }

AngleTable face_angles(const Tetrahedron& tet) {
    AngleTable table;
    for (int f = 0; f < 4; ++f) {
        auto cyc = face_vertices(f);
        for (int i = 0; i < 3; ++i) {
            int v = cyc[i];
            int u1 = cyc[(i + 1) % 3];
            int u2 = cyc[(i + 2) % 3];
            table.entry[v][f] = corner_angle(tet.pos[v], tet.pos[u1], tet.pos[u2]);
        }
    }
    return table;
}

AngleTable angle_table_from_entries(const double entries[4][4], bool allow_flat,
                                    double eps, double sum_tolerance) {
    AngleTable table;
    for (int v = 0; v < 4; ++v)
        for (int f = 0; f < 4; ++f) {
            if (!face_contains(f, v)) continue;
            double angle = entries[v][f];
            if (!(angle > 0.0) || !(angle < kPi)) {
                std::ostringstream os;
                os << "angle " << vertex_name(v) << face_name(f)
                   << " outside (0, 180) degrees";
                throw Error(ErrorKind::MalformedInput, os.str());
            }
            table.entry[v][f] = angle;
        }
    for (int f = 0; f < 4; ++f) {
        double sum = 0.0;
        for (int v : face_vertices(f)) sum += table.entry[v][f];
        if (std::abs(sum - kPi) > sum_tolerance) {
            std::ostringstream os;
            os << "angles of face " << face_name(f) << " sum to "
               << sum * 180.0 / kPi << " degrees, not 180";
            throw Error(ErrorKind::MalformedInput, os.str());
        }
    }
    // Vertex triangle inequality: each incident angle below the sum of the
    // other two, strict unless flat shapes are allowed.
    for (int v = 0; v < 4; ++v) {
        double angles[3];
        int n = 0;
        for (int f = 0; f < 4; ++f)
            if (face_contains(f, v)) angles[n++] = table.entry[v][f];
        for (int i = 0; i < 3; ++i) {
            double rest = angles[(i + 1) % 3] + angles[(i + 2) % 3];
            bool bad = allow_flat ? angles[i] > rest + eps : angles[i] >= rest - eps;
            if (bad) {
                std::ostringstream os;
                os << "vertex " << vertex_name(v)
                   << " violates the angle triangle inequality";
                throw Error(ErrorKind::MalformedInput, os.str());
            }
        }
    }
    return table;
}

Classification classify(const AngleTable& table, double eps) {
    Classification out;
    out.is_isosceles = true;
    out.is_f_acute = true;
    for (int v = 0; v < 4; ++v) {
        out.complete_angles[v] = table.complete_angle(v);
        out.curvatures[v] = table.curvature(v);
        if (!equals_pi(out.curvatures[v], eps)) out.is_isosceles = false;
        if (exceeds_pi(out.curvatures[v], eps)) ++out.high_curvature_count;
        for (int f = 0; f < 4; ++f)
            if (face_contains(f, v) && table.entry[v][f] >= kPi / 2.0 - eps)
                out.is_f_acute = false;
    }
    if (out.high_curvature_count == 1)
        for (int v = 0; v < 4; ++v)
            if (exceeds_pi(out.curvatures[v], eps)) out.pointed_at = v;
    return out;
}

Classification classify(const Tetrahedron& tet, double eps) {
    return classify(face_angles(tet), eps);
}

int acute_endpoint_of_longest_edge(const Tetrahedron& tet, double eps) {
    double best = -1.0;
    int eu = -1, ew = -1;
    for (int u = 0; u < 4; ++u)
        for (int w = u + 1; w < 4; ++w) {
            double len = tet.edge_length(u, w);
            if (len > best + eps * tet.longest_edge()) {
                best = len;
                eu = u;
                ew = w;
            }
        }
    AngleTable table = face_angles(tet);
    // Strict first; a tolerance-band pass guards against both endpoints
    // sitting numerically on a right angle.
    for (double slack : {tet.flat ? eps : 0.0, eps}) {
        for (int v : {eu, ew}) {
            bool acute = true;
            for (int f = 0; f < 4; ++f)
                if (face_contains(f, v) && table.entry[v][f] >= kPi / 2.0 + slack)
                    acute = false;
            if (acute) return v;
        }
    }
    throw Error(ErrorKind::InternalContradiction,
                "no endpoint of the longest edge has all incident angles acute");
}

}  // namespace quasigeo
