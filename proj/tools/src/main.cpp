#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "input.hpp"
#include "render.hpp"
#include "quasigeo/construct.hpp"
#include "quasigeo/curves.hpp"
#include "quasigeo/error.hpp"
#include "quasigeo/oracle.hpp"
#include "quasigeo/tetra.hpp"
#include "quasigeo/tolerance.hpp"
#include "quasigeo/unfolding.hpp"

namespace {

using nlohmann::ordered_json;
using namespace quasigeo;
using namespace quasigeo::cli;

std::string clean(const char* buf) {
    std::string s(buf);
    if (!s.empty() && s.front() == '-' &&
        s.find_first_not_of("-0.", 0) == std::string::npos) {
        return s.substr(1);
    }
    return s;
}

std::string deg2(double rad) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", rad * 180.0 / kPi);
    return clean(buf);
}

std::string deg4(double rad) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", rad * 180.0 / kPi);
    return clean(buf);
}

std::string sig6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return clean(buf);
}

std::string sig9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return clean(buf);
}

std::string sci2(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string edge_name(int u, int w) {
    std::string s;
    s += vertex_name(std::min(u, w));
    s += vertex_name(std::max(u, w));
    return s;
}

std::string point_text(const SurfacePoint& p) {
    std::ostringstream out;
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            out << "vertex " << vertex_name(p.vertex);
            break;
        case SurfacePoint::Kind::Edge:
            out << "edge " << edge_name(p.edge[0], p.edge[1]) << " t=" << sig9(p.t);
            break;
        case SurfacePoint::Kind::Face:
            out << "face " << face_name(p.face) << " bary=(" << sig9(p.bary[0]) << ", "
                << sig9(p.bary[1]) << ", " << sig9(p.bary[2]) << ")";
            break;
    }
    return out.str();
}

std::string faces_text(const std::vector<int>& faces) {
    std::string s;
    for (size_t i = 0; i < faces.size(); ++i) {
        if (i) s += ' ';
        s += face_name(faces[i]);
    }
    return s;
}

void print_curve(std::ostream& out, const Tetrahedron& tet,
                 const ClosedSurfaceCurve& curve) {
    if (curve.doubled_edge) {
        out << "curve: doubled edge "
            << edge_name(curve.points[0].vertex, curve.points[1].vertex) << "\n";
        out << "length: " << sig6(curve_length(tet, curve)) << " (both traversals)\n";
        return;
    }
    out << "curve (" << curve.points.size() << " points):\n";
    for (const SurfacePoint& p : curve.points) out << "  " << point_text(p) << "\n";
    out << "segment faces: " << faces_text(curve.segment_faces) << "\n";
    out << "length: " << sig6(curve_length(tet, curve)) << "\n";
}

void print_report(std::ostream& out, const QuasigeodesicReport& r) {
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    out << "vertex anchors: " << r.k << "\n";
    for (const auto& a : r.anchors) {
        out << "  " << vertex_name(a.vertex) << ": left " << deg2(a.left)
            << " deg, right " << deg2(a.right) << " deg\n";
    }
    out << "simple: " << (r.simple ? "yes" : "no") << "\n";
    out << "max straightness residual: " << sci2(r.max_straightness_residual)
        << " rad\n";
    out << "left side:  turn " << deg2(r.tau_left) << " deg + curvature "
        << deg2(r.omega_left) << " deg = " << deg2(r.tau_left + r.omega_left)
        << " deg\n";
    out << "right side: turn " << deg2(r.tau_right) << " deg + curvature "
        << deg2(r.omega_right) << " deg = " << deg2(r.tau_right + r.omega_right)
        << " deg\n";
}

ordered_json point_json(const SurfacePoint& p) {
    ordered_json j;
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            j["vertex"] = std::string(1, vertex_name(p.vertex));
            break;
        case SurfacePoint::Kind::Edge:
            j["edge"] = edge_name(p.edge[0], p.edge[1]);
            j["t"] = p.t;
            break;
        case SurfacePoint::Kind::Face:
            j["face"] = std::string(1, face_name(p.face));
            j["bary"] = {p.bary[0], p.bary[1], p.bary[2]};
            break;
    }
    return j;
}

ordered_json curve_json(const Tetrahedron& tet, const ClosedSurfaceCurve& curve) {
    ordered_json j;
    j["points"] = ordered_json::array();
    for (const SurfacePoint& p : curve.points) j["points"].push_back(point_json(p));
    j["faces"] = ordered_json::array();
    for (int f : curve.segment_faces) j["faces"].push_back(std::string(1, face_name(f)));
    if (curve.doubled_edge) j["doubled"] = true;
    j["length"] = curve_length(tet, curve);
    return j;
}

ordered_json report_json(const QuasigeodesicReport& r) {
    ordered_json j;
    j["verdict"] = verdict_name(r.verdict);
    j["k"] = r.k;
    j["anchors"] = ordered_json::array();
    for (const auto& a : r.anchors) {
        j["anchors"].push_back({{"vertex", std::string(1, vertex_name(a.vertex))},
                                {"left_deg", a.left * 180.0 / kPi},
                                {"right_deg", a.right * 180.0 / kPi}});
    }
    j["simple"] = r.simple;
    j["max_straightness_residual"] = r.max_straightness_residual;
    j["tau_left_deg"] = r.tau_left * 180.0 / kPi;
    j["tau_right_deg"] = r.tau_right * 180.0 / kPi;
    j["omega_left_deg"] = r.omega_left * 180.0 / kPi;
    j["omega_right_deg"] = r.omega_right * 180.0 / kPi;
    if (r.degenerate) j["degenerate"] = true;
    return j;
}

struct Opts {
    std::string input;
    std::string json_out, svg_out, obj_out;
    double epsilon = 0.0;
    bool allow_flat = false;
    int depth = 0;
    double resolution_deg = 0.0;
    double length = 0.0;
    std::string at_vertex, on_edge, in_face;
    double edge_t = -1.0;
    std::vector<double> bary;
    double angle_deg = 0.0;
    std::string vertex;
    std::string source = "a";
    bool with_cut_locus = false;
    std::string partition;
};

InputDocument prepared(const Opts& o) {
    InputDocument doc = load_input(o.input);
    if (o.epsilon > 0.0) doc.epsilon = o.epsilon;
    if (o.allow_flat) doc.allow_flat = true;
    if (o.depth > 0) doc.depth_bound = o.depth;
    if (o.resolution_deg > 0.0) doc.resolution = o.resolution_deg;
    if (o.length > 0.0) doc.max_length = o.length;
    return doc;
}

void emit_json(const Opts& o, const ordered_json& j) {
    if (!o.json_out.empty()) write_text_file(o.json_out, j.dump(2) + "\n");
}

void emit_obj(const Opts& o, const Tetrahedron& tet,
              const std::vector<ClosedSurfaceCurve>& curves) {
    if (!o.obj_out.empty()) write_text_file(o.obj_out, obj_solid(tet, curves));
}

// Star unfolding used to draw a constructed curve: the construction's own
// when it recorded one, otherwise the lowest vertex off the doubled edge.
StarUnfolding drawing_unfolding(const Tetrahedron& tet,
                                const std::optional<StarUnfolding>& recorded,
                                const ClosedSurfaceCurve& curve) {
    if (recorded) return *recorded;
    int v = 0;
    if (curve.doubled_edge) {
        while (v == curve.points[0].vertex || v == curve.points[1].vertex) ++v;
    } else if (!curve.points.empty() &&
               curve.points[0].kind == SurfacePoint::Kind::Vertex) {
        v = curve.points[0].vertex;
    }
    return star_unfold(tet, v);
}

int cmd_validate(const Opts& o) {
    InputDocument doc = prepared(o);
    ordered_json j;
    j["subcommand"] = "validate";
    if (!doc.angle_mode()) {
        ValidationReport rep = validate(*doc.vertices, doc.allow_flat, doc.eps());
        std::cout << "valid: " << (rep.valid ? "yes" : "no") << "\n";
        if (rep.valid) std::cout << "flat: " << (rep.flat ? "yes" : "no") << "\n";
        std::cout << "volume: " << sig6(rep.volume) << "\n";
        for (const std::string& f : rep.failures) std::cout << "failure: " << f << "\n";
        j["mode"] = "coordinates";
        j["valid"] = rep.valid;
        j["flat"] = rep.flat;
        j["volume"] = rep.volume;
        j["failures"] = rep.failures;
        if (rep.valid) {
            AngleTable table = doc.angles();
            double total = 0.0;
            for (int v = 0; v < 4; ++v) total += table.curvature(v);
            std::cout << "curvature total: " << deg2(total) << " deg\n";
            j["curvature_total_deg"] = total * 180.0 / kPi;
        }
        emit_json(o, j);
        return rep.valid ? 0 : 1;
    }
    j["mode"] = "angles";
    try {
        AngleTable table = doc.angles();
        double total = 0.0;
        for (int v = 0; v < 4; ++v) total += table.curvature(v);
        std::cout << "valid: yes\n";
        std::cout << "curvature total: " << deg2(total) << " deg\n";
        j["valid"] = true;
        j["curvature_total_deg"] = total * 180.0 / kPi;
        emit_json(o, j);
        return 0;
    } catch (const Error& e) {
        if (e.kind != ErrorKind::MalformedInput) throw;
        std::cout << "valid: no\n";
        std::cout << "failure: " << e.what() << "\n";
        j["valid"] = false;
        j["failures"] = {std::string(e.what())};
        emit_json(o, j);
        return 1;
    }
}

int cmd_classify(const Opts& o) {
    InputDocument doc = prepared(o);
    AngleTable table = doc.angles();
    Classification cls = classify(table, doc.eps());
    for (int v = 0; v < 4; ++v) {
        std::cout << "vertex " << vertex_name(v) << ": complete angle "
                  << deg2(cls.complete_angles[v]) << " deg, curvature "
                  << deg2(cls.curvatures[v]) << " deg\n";
    }
    std::cout << "isosceles: " << (cls.is_isosceles ? "yes" : "no") << "\n";
    std::cout << "high-curvature vertices: " << cls.high_curvature_count << "\n";
    if (cls.pointed_at) std::cout << "pointed at: " << vertex_name(*cls.pointed_at) << "\n";
    std::cout << "all face angles acute: " << (cls.is_f_acute ? "yes" : "no") << "\n";

    ordered_json j;
    j["subcommand"] = "classify";
    ordered_json angles;
    for (int v = 0; v < 4; ++v) {
        for (int f = 0; f < 4; ++f) {
            if (f == v) continue;
            std::string key;
            key += vertex_name(v);
            key += face_name(f);
            angles[key] = table.at(v, f) * 180.0 / kPi;
        }
    }
    j["angles_deg"] = angles;
    j["curvatures_deg"] = ordered_json::array();
    for (int v = 0; v < 4; ++v) j["curvatures_deg"].push_back(cls.curvatures[v] * 180.0 / kPi);
    j["isosceles"] = cls.is_isosceles;
    j["high_curvature_vertices"] = cls.high_curvature_count;
    if (cls.pointed_at) j["pointed_at"] = std::string(1, vertex_name(*cls.pointed_at));
    j["all_face_angles_acute"] = cls.is_f_acute;

    if (!doc.angle_mode()) {
        Tetrahedron tet = doc.tetra("classify");
        int bu = 0, bw = 1;
        double best = -1.0;
        for (int u = 0; u < 4; ++u) {
            for (int w = u + 1; w < 4; ++w) {
                if (tet.edge_length(u, w) > best + 1e-15) {
                    best = tet.edge_length(u, w);
                    bu = u;
                    bw = w;
                }
            }
        }
        const int sharp = acute_endpoint_of_longest_edge(tet, doc.eps());
        std::cout << "longest edge: " << edge_name(bu, bw) << " (length " << sig6(best)
                  << ")\n";
        std::cout << "acute endpoint of longest edge: " << vertex_name(sharp) << "\n";
        j["longest_edge"] = edge_name(bu, bw);
        j["longest_edge_length"] = best;
        j["acute_endpoint_of_longest_edge"] = std::string(1, vertex_name(sharp));
    }
    emit_json(o, j);
    return 0;
}

int cmd_q1(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("q1");
    Q1Outcome out = construct_q1(tet, doc.eps());
    ordered_json j;
    j["subcommand"] = "q1";
    j["case"] = out.trace.case_label;
    if (out.no_q1_isosceles) {
        std::cout << "no 1-vertex quasigeodesic (isosceles)\n";
        std::cout << out.trace.to_text();
        j["found"] = false;
        emit_json(o, j);
        return 0;
    }
    QuasigeodesicReport rep = verify(tet, out.curve, doc.eps());
    std::cout << out.trace.to_text();
    print_curve(std::cout, tet, out.curve);
    print_report(std::cout, rep);
    j["found"] = true;
    j["choices"] = ordered_json::array();
    for (const auto& [k, v] : out.trace.choices) j["choices"].push_back({{"key", k}, {"value", v}});
    j["curve"] = curve_json(tet, out.curve);
    j["report"] = report_json(rep);
    emit_json(o, j);
    if (!o.svg_out.empty()) {
        StarUnfolding su = drawing_unfolding(tet, out.trace.unfolding, out.curve);
        write_text_file(o.svg_out, svg_unfolding(tet, su, std::nullopt, {out.curve}));
    }
    emit_obj(o, tet, {out.curve});
    return 0;
}

int cmd_q2(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("q2");
    auto [curve, trace] = construct_q2(tet, doc.eps());
    QuasigeodesicReport rep = verify(tet, curve, doc.eps());
    std::cout << trace.to_text();
    print_curve(std::cout, tet, curve);
    print_report(std::cout, rep);
    ordered_json j;
    j["subcommand"] = "q2";
    j["case"] = trace.case_label;
    j["choices"] = ordered_json::array();
    for (const auto& [k, v] : trace.choices) j["choices"].push_back({{"key", k}, {"value", v}});
    j["curve"] = curve_json(tet, curve);
    j["report"] = report_json(rep);
    emit_json(o, j);
    if (!o.svg_out.empty()) {
        StarUnfolding su = drawing_unfolding(tet, trace.unfolding, curve);
        write_text_file(o.svg_out, svg_unfolding(tet, su, std::nullopt, {curve}));
    }
    emit_obj(o, tet, {curve});
    return 0;
}

int cmd_q3(const Opts& o) {
    InputDocument doc = prepared(o);
    AngleTable table = doc.angles();
    const double eps = doc.eps();
    ordered_json j;
    j["subcommand"] = "q3";
    ordered_json face_rows = ordered_json::array();
    for (int f = 0; f < 4; ++f) {
        std::vector<int> failing;
        for (int v = 0; v < 4; ++v) {
            if (v != f && face_fails_at(table, f, v, eps)) failing.push_back(v);
        }
        std::cout << "face " << face_name(f) << ": ";
        ordered_json row;
        row["face"] = std::string(1, face_name(f));
        row["failing_vertices"] = ordered_json::array();
        if (failing.empty()) {
            std::cout << "all vertex conditions hold\n";
        } else {
            std::cout << "fails at";
            for (int v : failing) {
                std::cout << ' ' << vertex_name(v) << " ("
                          << deg2(table.complete_angle(v) - table.at(v, f))
                          << " deg across)";
                row["failing_vertices"].push_back(std::string(1, vertex_name(v)));
            }
            std::cout << "\n";
        }
        face_rows.push_back(row);
    }
    j["faces"] = face_rows;
    const int f = q3_face(table, eps);
    std::cout << "3-vertex quasigeodesic: boundary of face " << face_name(f) << "\n";
    j["face"] = std::string(1, face_name(f));
    if (!doc.angle_mode()) {
        Tetrahedron tet = doc.tetra("q3");
        auto [face, curve] = construct_q3(tet, eps);
        (void)face;
        QuasigeodesicReport rep = verify(tet, curve, eps);
        print_curve(std::cout, tet, curve);
        print_report(std::cout, rep);
        j["curve"] = curve_json(tet, curve);
        j["report"] = report_json(rep);
        emit_obj(o, tet, {curve});
    }
    emit_json(o, j);
    return 0;
}

Partition partition_from_string(std::string s) {
    std::string letters;
    for (char c : s) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            letters += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (letters == "abcd") return Partition::AB_CD;
    if (letters == "acbd") return Partition::AC_BD;
    if (letters == "adbc") return Partition::AD_BC;
    throw Error(ErrorKind::MalformedInput,
                "'" + s + "' is not a partition (use ab-cd, ac-bd, or ad-bc)");
}

int cmd_q4(const Opts& o) {
    InputDocument doc = prepared(o);
    AngleTable table = doc.angles();
    const double eps = doc.eps();
    std::vector<Partition> wanted;
    if (!o.partition.empty()) {
        wanted.push_back(partition_from_string(o.partition));
    } else {
        wanted = {Partition::AB_CD, Partition::AC_BD, Partition::AD_BC};
    }
    ordered_json j;
    j["subcommand"] = "q4";
    j["partitions"] = ordered_json::array();
    std::vector<ClosedSurfaceCurve> curves;
    Tetrahedron tet;
    const bool coords = !doc.angle_mode();
    if (coords) tet = doc.tetra("q4");
    int found = 0;
    for (Partition p : wanted) {
        const bool ok = q4_partition_valid(table, p, eps);
        std::cout << "partition " << partition_name(p) << ": "
                  << (ok ? "valid" : "invalid") << "\n";
        ordered_json row;
        row["partition"] = partition_name(p);
        row["valid"] = ok;
        if (ok && coords) {
            std::optional<ClosedSurfaceCurve> curve = construct_q4(tet, p, eps);
            if (curve) {
                ++found;
                QuasigeodesicReport rep = verify(tet, *curve, eps);
                print_curve(std::cout, tet, *curve);
                print_report(std::cout, rep);
                row["curve"] = curve_json(tet, *curve);
                row["report"] = report_json(rep);
                curves.push_back(*curve);
            }
        } else if (ok) {
            ++found;
        }
        j["partitions"].push_back(row);
    }
    if (found == 0) std::cout << "no 4-vertex quasigeodesic from face partitions\n";
    j["found"] = found;
    emit_json(o, j);
    if (coords) emit_obj(o, tet, curves);
    return 0;
}

int cmd_enumerate(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("enumerate");
    EnumerationResult res = enumerate_all(tet, doc.depth_bound, doc.eps());
    ordered_json j;
    j["subcommand"] = "enumerate";
    j["depth_bound"] = doc.depth_bound;
    std::vector<ClosedSurfaceCurve> all;
    auto section = [&](const char* title, const char* key,
                       const std::vector<FoundCurve>& list) {
        std::cout << title << ": " << list.size() << "\n";
        ordered_json rows = ordered_json::array();
        for (const FoundCurve& fc : list) {
            std::cout << "  " << fc.note << ": length "
                      << sig6(curve_length(tet, fc.curve)) << ", "
                      << verdict_name(fc.report.verdict);
            for (const auto& a : fc.report.anchors) {
                std::cout << ", " << vertex_name(a.vertex) << " " << deg2(a.left) << "/"
                          << deg2(a.right) << " deg";
            }
            std::cout << "\n";
            ordered_json row;
            row["note"] = fc.note;
            row["curve"] = curve_json(tet, fc.curve);
            row["report"] = report_json(fc.report);
            rows.push_back(row);
            all.push_back(fc.curve);
        }
        j[key] = rows;
    };
    section("1-vertex", "q1", res.q1);
    section("2-vertex", "q2", res.q2_nondegenerate);
    section("2-vertex doubled edges", "q2_degenerate", res.q2_degenerate);
    section("3-vertex", "q3", res.q3);
    section("4-vertex", "q4", res.q4);
    std::cout << "total: " << res.total() << "\n";
    j["counts"] = {{"q1", res.q1.size()},
                   {"q2", res.q2_nondegenerate.size()},
                   {"q2_degenerate", res.q2_degenerate.size()},
                   {"q3", res.q3.size()},
                   {"q4", res.q4.size()},
                   {"total", res.total()}};
    emit_json(o, j);
    emit_obj(o, tet, all);
    return 0;
}

int cmd_verify(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("verify");
    ClosedSurfaceCurve curve = doc.curve();
    QuasigeodesicReport rep = verify(tet, curve, doc.eps());
    print_curve(std::cout, tet, curve);
    print_report(std::cout, rep);
    ordered_json j;
    j["subcommand"] = "verify";
    j["curve"] = curve_json(tet, curve);
    j["report"] = report_json(rep);
    if (rep.simple) {
        auto [rl, rr] = gauss_bonnet_residual(tet, curve, doc.eps());
        std::cout << "turn + curvature balance residual: left " << sci2(rl) << ", right "
                  << sci2(rr) << "\n";
        j["balance_residual"] = {rl, rr};
    }
    emit_json(o, j);
    emit_obj(o, tet, {curve});
    return 0;
}

int cmd_unfold(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("unfold");
    const int v = vertex_from_name(o.source);
    StarUnfolding su = star_unfold(tet, v);
    std::cout << "star unfolding at " << vertex_name(v) << "\n";
    std::cout << "base face: " << face_name(su.base) << "\n";
    std::cout << "boundary:\n";
    ordered_json j;
    j["subcommand"] = "unfold";
    j["source"] = std::string(1, vertex_name(v));
    j["base_face"] = std::string(1, face_name(su.base));
    j["boundary"] = ordered_json::array();
    for (const auto& entry : su.boundary) {
        if (entry.is_image) {
            std::cout << "  image " << vertex_name(v) << "' (opposite "
                      << vertex_name(entry.label) << ")";
        } else {
            std::cout << "  vertex " << vertex_name(entry.label);
        }
        std::cout << " at (" << sig6(entry.pos.x) << ", " << sig6(entry.pos.y) << ")\n";
        j["boundary"].push_back({{"kind", entry.is_image ? "image" : "vertex"},
                                 {"label", std::string(1, vertex_name(entry.label))},
                                 {"x", entry.pos.x},
                                 {"y", entry.pos.y}});
    }
    std::vector<int> vis = visible_pairs(su, doc.eps());
    std::cout << "visible image-vertex pairs:";
    j["visible_pairs"] = ordered_json::array();
    for (int x : vis) {
        std::cout << ' ' << vertex_name(x);
        j["visible_pairs"].push_back(std::string(1, vertex_name(x)));
    }
    std::cout << "\n";
    std::optional<CutLocus> locus;
    if (o.with_cut_locus) {
        locus = cut_locus(su, doc.eps());
        std::cout << "cut locus point: (" << sig6(locus->y.x) << ", " << sig6(locus->y.y)
                  << "), radius " << sig6(locus->radius) << "\n";
        std::cout << "cut locus barycentric (base cycle): (" << sig6(locus->bary[0])
                  << ", " << sig6(locus->bary[1]) << ", " << sig6(locus->bary[2])
                  << ")\n";
        j["cut_locus"] = {{"x", locus->y.x},
                          {"y", locus->y.y},
                          {"radius", locus->radius},
                          {"bary", {locus->bary[0], locus->bary[1], locus->bary[2]}}};
    }
    emit_json(o, j);
    if (!o.svg_out.empty()) write_text_file(o.svg_out, svg_unfolding(tet, su, locus, {}));
    return 0;
}

SurfacePoint start_point_from_flags(const Opts& o, double eps) {
    const int picks = (o.at_vertex.empty() ? 0 : 1) + (o.on_edge.empty() ? 0 : 1) +
                      (o.in_face.empty() ? 0 : 1);
    if (picks != 1) {
        throw Error(ErrorKind::MalformedInput,
                    "pick exactly one start: --at-vertex, --on-edge with --t, or "
                    "--in-face with --bary");
    }
    if (!o.at_vertex.empty()) return SurfacePoint::at_vertex(vertex_from_name(o.at_vertex));
    if (!o.on_edge.empty()) {
        if (o.on_edge.size() != 2) {
            throw Error(ErrorKind::MalformedInput, "--on-edge takes two vertex letters");
        }
        if (o.edge_t < 0.0) {
            throw Error(ErrorKind::MalformedInput, "--on-edge needs --t in (0, 1)");
        }
        return SurfacePoint::on_edge(vertex_from_name(o.on_edge.substr(0, 1)),
                                     vertex_from_name(o.on_edge.substr(1, 1)), o.edge_t,
                                     eps);
    }
    if (o.bary.size() != 3) {
        throw Error(ErrorKind::MalformedInput,
                    "--in-face needs --bary with three coordinates");
    }
    return SurfacePoint::in_face(face_from_name(o.in_face),
                                 {o.bary[0], o.bary[1], o.bary[2]}, eps);
}

int cmd_trace(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("trace");
    const double eps = doc.eps();
    SurfacePoint start = start_point_from_flags(o, eps);
    const double max_length =
        doc.max_length > 0.0 ? doc.max_length : 5.0 * tet.longest_edge();
    const double direction = o.angle_deg * kPi / 180.0;
    TraceResult res = trace(tet, start, direction, max_length, eps);
    std::cout << "start: " << point_text(start) << "\n";
    std::cout << "direction: " << deg4(direction) << " deg\n";
    std::cout << "termination: " << termination_name(res.termination) << "\n";
    if (res.termination == TraceTermination::VertexHit) {
        std::cout << "hit vertex: " << vertex_name(res.hit_vertex) << "\n";
    }
    std::cout << "length: " << sig6(res.length) << "\n";
    std::cout << "path (" << res.path.size() << " points):\n";
    for (const TraceStep& step : res.path) {
        std::cout << "  " << point_text(step.point) << "  s=" << sig6(step.arclen)
                  << "\n";
    }
    std::cout << "segment faces: " << faces_text(res.segment_faces) << "\n";

    ordered_json j;
    j["subcommand"] = "trace";
    j["start"] = point_json(start);
    j["direction_deg"] = o.angle_deg;
    j["max_length"] = max_length;
    j["termination"] = termination_name(res.termination);
    if (res.termination == TraceTermination::VertexHit) {
        j["hit_vertex"] = std::string(1, vertex_name(res.hit_vertex));
    }
    j["length"] = res.length;
    j["path"] = ordered_json::array();
    for (const TraceStep& step : res.path) {
        ordered_json row = point_json(step.point);
        row["s"] = step.arclen;
        j["path"].push_back(row);
    }
    j["faces"] = ordered_json::array();
    for (int f : res.segment_faces) j["faces"].push_back(std::string(1, face_name(f)));

    bool closed = false;
    if (res.termination == TraceTermination::SelfReturn ||
        res.termination == TraceTermination::VertexHit) {
        try {
            ClosedSurfaceCurve curve = closed_curve_from_trace(res);
            QuasigeodesicReport rep = verify(tet, curve, eps);
            closed = true;
            std::cout << "closed up:\n";
            print_report(std::cout, rep);
            j["closed"] = true;
            j["curve"] = curve_json(tet, curve);
            j["report"] = report_json(rep);
            emit_obj(o, tet, {curve});
        } catch (const Error&) {
        }
    }
    if (!closed) {
        j["closed"] = false;
        if (!o.obj_out.empty()) {
            std::vector<SurfacePoint> pts;
            for (const TraceStep& step : res.path) pts.push_back(step.point);
            write_text_file(o.obj_out, obj_path(tet, pts));
        }
    }
    emit_json(o, j);
    return 0;
}

int cmd_sweep(const Opts& o) {
    InputDocument doc = prepared(o);
    Tetrahedron tet = doc.tetra("sweep");
    if (o.vertex.empty()) throw Error(ErrorKind::MalformedInput, "--vertex is required");
    const int v = vertex_from_name(o.vertex);
    const double eps = doc.eps();
    const double resolution_deg = doc.resolution > 0.0 ? doc.resolution : 0.5;
    const double max_length =
        doc.max_length > 0.0 ? doc.max_length : 3.0 * tet.longest_edge();
    SweepResult res =
        sweep_loops(tet, v, resolution_deg * kPi / 180.0, max_length, eps);
    int verified = 0;
    for (const SweepLoop& loop : res.loops) {
        if (loop.report.verdict != QuasigeodesicReport::Verdict::NotQuasigeodesic) {
            ++verified;
        }
    }
    std::cout << "sweep at " << vertex_name(v) << ": resolution "
              << deg4(res.resolution) << " deg, max length " << sig6(max_length)
              << "\n";
    std::cout << "loops found: " << res.loops.size() << " (" << verified
              << " verified)\n";
    ordered_json j;
    j["subcommand"] = "sweep";
    j["source"] = std::string(1, vertex_name(v));
    j["resolution_deg"] = resolution_deg;
    j["max_length"] = max_length;
    j["loops"] = ordered_json::array();
    std::vector<ClosedSurfaceCurve> verified_curves;
    for (const SweepLoop& loop : res.loops) {
        std::cout << "  departure " << deg4(loop.departure) << " deg: length "
                  << sig6(curve_length(tet, loop.curve)) << ", "
                  << verdict_name(loop.report.verdict) << "\n";
        for (const SurfacePoint& p : loop.curve.points) {
            std::cout << "    " << point_text(p) << "\n";
        }
        ordered_json row;
        row["departure_deg"] = loop.departure * 180.0 / kPi;
        row["curve"] = curve_json(tet, loop.curve);
        row["report"] = report_json(loop.report);
        j["loops"].push_back(row);
        if (loop.report.verdict != QuasigeodesicReport::Verdict::NotQuasigeodesic) {
            verified_curves.push_back(loop.curve);
        }
    }
    emit_json(o, j);
    if (!o.svg_out.empty()) {
        StarUnfolding su = star_unfold(tet, v);
        write_text_file(o.svg_out, svg_unfolding(tet, su, std::nullopt, verified_curves));
    }
    emit_obj(o, tet, verified_curves);
    return 0;
}

int dispatch(const std::string& name, const Opts& o) {
    if (name == "validate") return cmd_validate(o);
    if (name == "classify") return cmd_classify(o);
    if (name == "q1") return cmd_q1(o);
    if (name == "q2") return cmd_q2(o);
    if (name == "q3") return cmd_q3(o);
    if (name == "q4") return cmd_q4(o);
    if (name == "enumerate") return cmd_enumerate(o);
    if (name == "verify") return cmd_verify(o);
    if (name == "unfold") return cmd_unfold(o);
    if (name == "trace") return cmd_trace(o);
    if (name == "sweep") return cmd_sweep(o);
    throw Error(ErrorKind::MalformedInput, "unknown subcommand '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simple closed quasigeodesics on tetrahedra"};
    app.require_subcommand(1);
    Opts o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", o.input, "input JSON document")->required();
        cmd->add_option("--json", o.json_out, "write a JSON report to this path");
        cmd->add_option("--epsilon", o.epsilon, "tolerance override, in (0, 1)");
        cmd->add_flag("--allow-flat", o.allow_flat, "accept zero-volume input");
        return cmd;
    };

    add_common(app.add_subcommand("validate", "check an input document"));
    add_common(app.add_subcommand("classify", "curvatures and shape classes"));

    CLI::App* q1 = add_common(app.add_subcommand("q1", "construct a 1-vertex quasigeodesic"));
    q1->add_option("--svg", o.svg_out, "draw the construction's star unfolding");
    q1->add_option("--obj", o.obj_out, "write the solid and curve as OBJ");

    CLI::App* q2 = add_common(app.add_subcommand("q2", "construct a 2-vertex quasigeodesic"));
    q2->add_option("--svg", o.svg_out, "draw the construction's star unfolding");
    q2->add_option("--obj", o.obj_out, "write the solid and curve as OBJ");

    CLI::App* q3 = add_common(app.add_subcommand("q3", "construct a 3-vertex quasigeodesic"));
    q3->add_option("--obj", o.obj_out, "write the solid and curve as OBJ");

    CLI::App* q4 = add_common(app.add_subcommand("q4", "4-vertex quasigeodesics from face partitions"));
    q4->add_option("--partition", o.partition, "only this partition (ab-cd, ac-bd, ad-bc)");
    q4->add_option("--obj", o.obj_out, "write the solid and curves as OBJ");

    CLI::App* en = add_common(app.add_subcommand("enumerate", "catalog quasigeodesics"));
    en->add_option("--depth", o.depth, "face-chain depth bound for 2-vertex segments");
    en->add_option("--obj", o.obj_out, "write the solid and curves as OBJ");

    CLI::App* ve = add_common(app.add_subcommand("verify", "verify the curve in the input document"));
    ve->add_option("--obj", o.obj_out, "write the solid and curve as OBJ");

    CLI::App* un = add_common(app.add_subcommand("unfold", "star unfolding from a source vertex"));
    un->add_option("--source", o.source, "source vertex (a, b, c, d)");
    un->add_flag("--cut-locus", o.with_cut_locus, "include the cut locus");
    un->add_option("--svg", o.svg_out, "draw the unfolding");

    CLI::App* tr = add_common(app.add_subcommand("trace", "shoot a geodesic ray"));
    tr->add_option("--at-vertex", o.at_vertex, "start at a vertex");
    tr->add_option("--on-edge", o.on_edge, "start on an edge, e.g. ab");
    tr->add_option("--t", o.edge_t, "edge parameter in (0, 1)");
    tr->add_option("--in-face", o.in_face, "start inside a face");
    tr->add_option("--bary", o.bary, "barycentric coordinates for --in-face")->expected(3);
    tr->add_option("--angle", o.angle_deg, "direction in the start's angle fan, degrees")
        ->required();
    tr->add_option("--length", o.length, "maximum arc length");
    tr->add_option("--obj", o.obj_out, "write the solid and path as OBJ");

    CLI::App* sw = add_common(app.add_subcommand("sweep", "scan for geodesic loops at a vertex"));
    sw->add_option("--vertex", o.vertex, "loop base vertex")->required();
    sw->add_option("--resolution", o.resolution_deg, "departure step, degrees");
    sw->add_option("--length", o.length, "walk length bound");
    sw->add_option("--svg", o.svg_out, "draw verified loops on the star unfolding");
    sw->add_option("--obj", o.obj_out, "write the solid and verified loops as OBJ");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), o);
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind) << "): " << e.what() << "\n";
        switch (e.kind) {
            case ErrorKind::MalformedInput:
            case ErrorKind::MalformedCurve:
                return 2;
            case ErrorKind::InternalContradiction:
                return 3;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
