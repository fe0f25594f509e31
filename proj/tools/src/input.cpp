#include "input.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "quasigeo/error.hpp"
#include "quasigeo/tolerance.hpp"

namespace quasigeo::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_input(const std::string& what) {
    throw Error(ErrorKind::MalformedInput, what);
}

double number_field(const json& j, const std::string& key) {
    if (!j.at(key).is_number()) bad_input("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::array<Vec3, 4> parse_vertices(const json& j) {
    if (!j.is_object()) bad_input("'vertices' must be an object with keys a, b, c, d");
    if (j.size() != 4) bad_input("'vertices' must contain exactly the keys a, b, c, d");
    std::array<Vec3, 4> out{};
    for (int v = 0; v < 4; ++v) {
        const std::string key(1, vertex_name(v));
        if (!j.contains(key)) bad_input("'vertices' is missing key '" + key + "'");
        const json& arr = j.at(key);
        if (!arr.is_array() || arr.size() != 3) bad_input("vertex '" + key + "' must be an array of three numbers");
        for (int i = 0; i < 3; ++i) {
            if (!arr[i].is_number()) bad_input("vertex '" + key + "' must be an array of three numbers");
        }
        out[v] = Vec3{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
    }
    return out;
}

std::array<std::array<double, 4>, 4> parse_angles(const json& j) {
    if (!j.is_object()) bad_input("'angles' must be an object with twelve entries like \"aB\"");
    std::array<std::array<double, 4>, 4> entries{};
    int seen = 0;
    for (int v = 0; v < 4; ++v) {
        for (int f = 0; f < 4; ++f) {
            if (f == v) continue;
            std::string key;
            key += vertex_name(v);
            key += face_name(f);
            if (!j.contains(key)) bad_input("'angles' is missing entry '" + key + "'");
            entries[v][f] = number_field(j, key) * kPi / 180.0;
            ++seen;
        }
    }
    if (static_cast<int>(j.size()) != seen) bad_input("'angles' must contain exactly twelve entries");
    return entries;
}

CurvePointSpec parse_curve_point(const json& j) {
    if (!j.is_object()) bad_input("curve point must be an object");
    CurvePointSpec p;
    if (j.contains("vertex")) {
        if (j.size() != 1) bad_input("a vertex curve point takes only 'vertex'");
        p.kind = SurfacePoint::Kind::Vertex;
        p.vertex = vertex_from_name(j.at("vertex").get<std::string>());
        return p;
    }
    if (j.contains("edge")) {
        if (j.size() != 2 || !j.contains("t")) bad_input("an edge curve point takes 'edge' and 't'");
        const std::string e = j.at("edge").get<std::string>();
        if (e.size() != 2) bad_input("edge name must be two vertex letters, e.g. \"bd\"");
        p.kind = SurfacePoint::Kind::Edge;
        p.edge_u = vertex_from_name(e.substr(0, 1));
        p.edge_w = vertex_from_name(e.substr(1, 1));
        if (p.edge_u == p.edge_w) bad_input("edge name must use two distinct vertices");
        p.t = number_field(j, "t");
        return p;
    }
    if (j.contains("face")) {
        if (j.size() != 2 || !j.contains("bary")) bad_input("a face curve point takes 'face' and 'bary'");
        p.kind = SurfacePoint::Kind::Face;
        p.face = face_from_name(j.at("face").get<std::string>());
        const json& arr = j.at("bary");
        if (!arr.is_array() || arr.size() != 3) bad_input("'bary' must be an array of three numbers");
        for (int i = 0; i < 3; ++i) p.bary[i] = arr[i].get<double>();
        return p;
    }
    bad_input("curve point must name a 'vertex', an 'edge', or a 'face'");
}

CurveSpec parse_curve(const json& j) {
    if (!j.is_object()) bad_input("'curve' must be an object");
    CurveSpec spec;
    if (!j.contains("points") || !j.at("points").is_array()) bad_input("'curve' needs a 'points' array");
    for (const json& p : j.at("points")) spec.points.push_back(parse_curve_point(p));
    if (!j.contains("faces") || !j.at("faces").is_array()) bad_input("'curve' needs a 'faces' array");
    for (const json& f : j.at("faces")) spec.faces.push_back(face_from_name(f.get<std::string>()));
    if (j.contains("doubled")) {
        if (!j.at("doubled").is_boolean()) bad_input("'doubled' must be a boolean");
        spec.doubled = j.at("doubled").get<bool>();
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "points" && key != "faces" && key != "doubled") bad_input("unknown curve field '" + key + "'");
    }
    return spec;
}

}  // namespace

int vertex_from_name(const std::string& s) {
    if (s.size() == 1) {
        for (int v = 0; v < 4; ++v) {
            if (s[0] == vertex_name(v)) return v;
        }
    }
    bad_input("'" + s + "' is not a vertex name (a, b, c, or d)");
}

int face_from_name(const std::string& s) {
    if (s.size() == 1) {
        for (int f = 0; f < 4; ++f) {
            if (s[0] == face_name(f)) return f;
        }
    }
    bad_input("'" + s + "' is not a face name (A, B, C, or D)");
}

double InputDocument::eps() const {
    return epsilon > 0.0 ? epsilon : default_epsilon();
}

Tetrahedron InputDocument::tetra(const std::string& subcommand) const {
    if (!vertices) {
        bad_input("'" + subcommand + "' needs vertex coordinates; an angle table does not pin down "
                  "a specific tetrahedron");
    }
    return Tetrahedron::from_vertices(*vertices, allow_flat, eps());
}

AngleTable InputDocument::angles() const {
    if (vertices) return face_angles(Tetrahedron::from_vertices(*vertices, allow_flat, eps()));
    double raw[4][4] = {};
    for (int v = 0; v < 4; ++v) {
        for (int f = 0; f < 4; ++f) raw[v][f] = (*angle_entries)[v][f];
    }
    return angle_table_from_entries(raw, allow_flat, eps());
}

ClosedSurfaceCurve InputDocument::curve() const {
    if (!curve_spec) bad_input("this subcommand needs a 'curve' entry in the input file");
    ClosedSurfaceCurve c;
    const double e = eps();
    for (const CurvePointSpec& p : curve_spec->points) {
        switch (p.kind) {
            case SurfacePoint::Kind::Vertex:
                c.points.push_back(SurfacePoint::at_vertex(p.vertex));
                break;
            case SurfacePoint::Kind::Edge:
                c.points.push_back(SurfacePoint::on_edge(p.edge_u, p.edge_w, p.t, e));
                break;
            case SurfacePoint::Kind::Face:
                c.points.push_back(SurfacePoint::in_face(p.face, p.bary, e));
                break;
        }
    }
    c.segment_faces = curve_spec->faces;
    c.doubled_edge = curve_spec->doubled;
    return c;
}

InputDocument load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open input file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        bad_input(std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_input("input document must be a JSON object");

    InputDocument out;
    const bool has_vertices = doc.contains("vertices");
    const bool has_angles = doc.contains("angles");
    if (has_vertices == has_angles) bad_input("input must contain exactly one of 'vertices' or 'angles'");
    if (has_vertices) out.vertices = parse_vertices(doc.at("vertices"));
    if (has_angles) out.angle_entries = parse_angles(doc.at("angles"));

    if (doc.contains("settings")) {
        const json& s = doc.at("settings");
        if (!s.is_object()) bad_input("'settings' must be an object");
        for (const auto& [key, value] : s.items()) {
            if (key == "epsilon") {
                out.epsilon = value.get<double>();
                if (!(out.epsilon > 0.0 && out.epsilon < 1.0)) bad_input("settings.epsilon must lie in (0, 1)");
            } else if (key == "allow_flat") {
                if (!value.is_boolean()) bad_input("settings.allow_flat must be a boolean");
                out.allow_flat = value.get<bool>();
            } else if (key == "depth_bound") {
                if (!value.is_number_integer()) bad_input("settings.depth_bound must be an integer");
                out.depth_bound = value.get<int>();
                if (out.depth_bound < 2 || out.depth_bound > 32) bad_input("settings.depth_bound must lie in [2, 32]");
            } else if (key == "resolution") {
                out.resolution = value.get<double>();
                if (!(out.resolution > 0.0)) bad_input("settings.resolution must be positive (degrees)");
            } else if (key == "max_length") {
                out.max_length = value.get<double>();
                if (!(out.max_length > 0.0)) bad_input("settings.max_length must be positive");
            } else {
                bad_input("unknown setting '" + key + "'");
            }
        }
    }

    if (doc.contains("curve")) out.curve_spec = parse_curve(doc.at("curve"));

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "vertices" && key != "angles" && key != "settings" && key != "curve") {
            bad_input("unknown top-level field '" + key + "'");
        }
    }
    return out;
}

}  // namespace quasigeo::cli
