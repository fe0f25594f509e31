#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "quasigeo/error.hpp"

namespace quasigeo::cli {

namespace {

std::string fmt3(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    if (std::strcmp(buf, "-0.000") == 0) return "0.000";
    return buf;
}

std::string fmt9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    if (std::strcmp(buf, "-0") == 0) return "0";
    return buf;
}

Vec2 place_point(const PlacedFace& pf, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::Vertex:
            return pf.at(p.vertex);
        case SurfacePoint::Kind::Edge: {
            const Vec2 u = pf.at(p.edge[0]);
            const Vec2 w = pf.at(p.edge[1]);
            return u + (w - u) * p.t;
        }
        case SurfacePoint::Kind::Face: {
            const std::array<int, 3> cyc = face_vertices(p.face);
            Vec2 out{0.0, 0.0};
            for (int i = 0; i < 3; ++i) out = out + pf.at(cyc[i]) * p.bary[i];
            return out;
        }
    }
    throw Error(ErrorKind::MalformedCurve, "unknown surface point kind");
}

struct Mapper {
    double scale = 1.0;
    Vec2 center{};

    Vec2 operator()(Vec2 p) const {
        return Vec2{500.0 + (p.x - center.x) * scale, 500.0 - (p.y - center.y) * scale};
    }
};

Mapper fit_viewport(const std::vector<Vec2>& pts) {
    Vec2 lo = pts.front(), hi = pts.front();
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    Mapper m;
    m.center = (lo + hi) * 0.5;
    const double w = std::max(hi.x - lo.x, hi.y - lo.y);
    m.scale = w > 0.0 ? 900.0 / w : 1.0;
    return m;
}

}  // namespace

std::string svg_unfolding(const Tetrahedron& tet, const StarUnfolding& su,
                          const std::optional<CutLocus>& locus,
                          const std::vector<ClosedSurfaceCurve>& curves) {
    (void)tet;
    std::vector<Vec2> extent;
    for (const PlacedFace& pf : su.faces) {
        for (const Vec2& p : pf.pos) extent.push_back(p);
    }
    const Mapper map = fit_viewport(extent);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
    svg << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

    svg << "<g fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\">\n";
    for (const PlacedFace& pf : su.faces) {
        svg << "  <polygon points=\"";
        for (int i = 0; i < 3; ++i) {
            const Vec2 q = map(pf.pos[i]);
            if (i) svg << ' ';
            svg << fmt3(q.x) << ',' << fmt3(q.y);
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n";

    if (locus) {
        svg << "<g stroke=\"#007755\" stroke-width=\"1\" stroke-dasharray=\"6 4\">\n";
        for (const auto& [from, to] : locus->segments) {
            const Vec2 p = map(from), q = map(to);
            svg << "  <line x1=\"" << fmt3(p.x) << "\" y1=\"" << fmt3(p.y)
                << "\" x2=\"" << fmt3(q.x) << "\" y2=\"" << fmt3(q.y) << "\"/>\n";
        }
        svg << "</g>\n";
        const Vec2 y = map(locus->y);
        svg << "<circle cx=\"" << fmt3(y.x) << "\" cy=\"" << fmt3(y.y)
            << "\" r=\"4\" fill=\"#007755\"/>\n";
    }

    if (!curves.empty()) {
        svg << "<g fill=\"none\" stroke=\"#bb2222\" stroke-width=\"2.5\">\n";
        for (const ClosedSurfaceCurve& curve : curves) {
            const int n = static_cast<int>(curve.points.size());
            std::vector<Vec2> line;
            bool drawable = true;
            const int segs = curve.doubled_edge ? 1 : n;
            for (int i = 0; i < segs && drawable; ++i) {
                const int f = curve.doubled_edge
                                  ? faces_of_edge(curve.points[0].vertex, curve.points[1].vertex)[0]
                                  : curve.segment_faces[i];
                const PlacedFace* pf = nullptr;
                for (const PlacedFace& cand : su.faces) {
                    if (cand.face == f) pf = &cand;
                }
                if (!pf) {
                    drawable = false;
                    break;
                }
                try {
                    if (i == 0) line.push_back(map(place_point(*pf, curve.points[0])));
                    line.push_back(map(place_point(*pf, curve.points[(i + 1) % n])));
                } catch (const Error&) {
                    drawable = false;
                }
            }
            if (!drawable || line.size() < 2) continue;
            svg << "  <polyline points=\"";
            for (size_t i = 0; i < line.size(); ++i) {
                if (i) svg << ' ';
                svg << fmt3(line[i].x) << ',' << fmt3(line[i].y);
            }
            svg << "\"/>\n";
        }
        svg << "</g>\n";
    }

    Vec2 hub{0.0, 0.0};
    for (const auto& entry : su.boundary) hub = hub + entry.pos;
    hub = hub / 6.0;
    svg << "<g font-family=\"monospace\" font-size=\"26\" fill=\"#000000\" "
           "text-anchor=\"middle\">\n";
    for (const auto& entry : su.boundary) {
        Vec2 away = entry.pos - hub;
        const double len = norm(away);
        away = len > 0.0 ? away / len : Vec2{0.0, 1.0};
        const Vec2 q = map(entry.pos) + Vec2{away.x, -away.y} * 22.0;
        svg << "  <text x=\"" << fmt3(q.x) << "\" y=\"" << fmt3(q.y + 9.0) << "\">"
            << vertex_name(entry.is_image ? su.source : entry.label)
            << (entry.is_image ? "&#8242;" : "") << "</text>\n";
    }
    svg << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}

namespace {

void obj_header(const Tetrahedron& tet, std::ostringstream& obj) {
    for (int v = 0; v < 4; ++v) {
        obj << "v " << fmt9(tet.pos[v].x) << ' ' << fmt9(tet.pos[v].y) << ' '
            << fmt9(tet.pos[v].z) << '\n';
    }
    for (int f = 0; f < 4; ++f) {
        obj << 'f';
        for (int i = 0; i < 3; ++i) obj << ' ' << kFaceCycle[f][i] + 1;
        obj << '\n';
    }
}

}  // namespace

std::string obj_solid(const Tetrahedron& tet,
                      const std::vector<ClosedSurfaceCurve>& curves) {
    std::ostringstream obj;
    obj_header(tet, obj);
    int next = 5;
    for (const ClosedSurfaceCurve& curve : curves) {
        const int first = next;
        for (const SurfacePoint& p : curve.points) {
            const Vec3 q = lift_to_3d(tet, p);
            obj << "v " << fmt9(q.x) << ' ' << fmt9(q.y) << ' ' << fmt9(q.z) << '\n';
            ++next;
        }
        obj << 'l';
        for (int i = first; i < next; ++i) obj << ' ' << i;
        obj << ' ' << first << '\n';
    }
    return obj.str();
}

std::string obj_path(const Tetrahedron& tet, const std::vector<SurfacePoint>& path) {
    std::ostringstream obj;
    obj_header(tet, obj);
    int next = 5;
    const int first = next;
    for (const SurfacePoint& p : path) {
        const Vec3 q = lift_to_3d(tet, p);
        obj << "v " << fmt9(q.x) << ' ' << fmt9(q.y) << ' ' << fmt9(q.z) << '\n';
        ++next;
    }
    if (next > first) {
        obj << 'l';
        for (int i = first; i < next; ++i) obj << ' ' << i;
        obj << '\n';
    }
    return obj.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
    out << content;
    if (!out.good()) throw Error(ErrorKind::IoFailure, "failed writing '" + path + "'");
}

}  // namespace quasigeo::cli
