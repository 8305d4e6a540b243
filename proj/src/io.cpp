#include "hypfill/io.hpp"
#include "hypfill/errors.hpp"

#include <fstream>
#include <sstream>

namespace hypfill {

using nlohmann::json;

json triangulation_to_json(const CombinatorialTriangulation& t, const std::vector<TriangleShape>& shapes) {
    json j;
    bool ideal = !shapes.empty() && shapes.front().kind == TriangleShape::Kind::Ideal;
    j["kind"] = ideal ? "cusped" : "closed";
    j["triangles"] = t.triangles;
    json gl = json::array();
    for (int d = 0; d < t.darts(); ++d) {
        if (d < t.iota(d)) gl.push_back({d, t.iota(d)});
    }
    j["gluing"] = gl;
    json rot = json::array();
    for (int d = 0; d < t.darts(); ++d) rot.push_back(CombinatorialTriangulation::rho(d));
    j["rotation"] = rot;
    json ang = json::array();
    for (const auto& s : shapes) ang.push_back({s.angles[0], s.angles[1], s.angles[2]});
    j["angles"] = ang;
    return j;
}

json surface_to_json(const TriangulatedSurface& s) { return triangulation_to_json(s.triangulation(), s.shapes()); }

void triangulation_from_json(const json& j, CombinatorialTriangulation& tri, std::vector<TriangleShape>& shapes) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind != "cusped" && kind != "closed") throw InputError("surface json: kind must be cusped or closed");
        int F = j.at("triangles").get<int>();
        std::vector<std::array<int, 2>> pairs;
        for (const auto& p : j.at("gluing")) pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
        tri = CombinatorialTriangulation::from_pairs(F, pairs);
        if (j.contains("rotation")) {
            const auto& rot = j.at("rotation");
            if (static_cast<int>(rot.size()) != 3 * F) throw InputError("surface json: rotation size != 3F");
            for (int d = 0; d < 3 * F; ++d) {
                if (rot[d].get<int>() != CombinatorialTriangulation::rho(d))
                    throw InputError("surface json: rotation must cycle darts 3t -> 3t+1 -> 3t+2");
            }
        }
        shapes.clear();
        if (kind == "cusped") {
            shapes.assign(F, TriangleShape::ideal());
        } else {
            const auto& ang = j.at("angles");
            if (static_cast<int>(ang.size()) != F) throw InputError("surface json: one angle triple per triangle");
            for (const auto& a : ang)
                shapes.push_back(TriangleShape::compact(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("surface json: ") + e.what());
    }
}

TriangulatedSurface surface_from_json(const json& j) {
    CombinatorialTriangulation tri;
    std::vector<TriangleShape> shapes;
    triangulation_from_json(j, tri, shapes);
    return build_surface(tri, shapes);
}

std::vector<int> edge_strip(const EmbeddedGraph& g, int e) {
    const auto& s = g.surface();
    int t = g.vertex(g.edge(e).u).tri;
    HPoint z = g.far_point(2 * e);
    std::vector<int> strip;
    for (int step = 0; step < 100000; ++step) {
        const auto& c = s.chart(t);
        int worst = -1;
        double wv = -1e-15;
        for (int k = 0; k < 3; ++k) {
            double o = orient(c.corners[k], c.corners[(k + 1) % 3], z.disk());
            if (o < wv) {
                wv = o;
                worst = k;
            }
        }
        if (worst < 0) return strip;
        int d = 3 * t + worst;
        strip.push_back(d);
        z = s.transition(d)(z);
        t = s.triangulation().iota(d) / 3;
    }
    throw GeometryError("edge_strip: walk did not terminate");
}

Isometry holonomy_from_strip(const TriangulatedSurface& s, const std::vector<int>& strip) {
    Isometry h;
    for (int d : strip) {
        if (d < 0 || d >= s.triangulation().darts()) throw InputError("graph json: dart out of range");
        h = h * s.transition(d).inverse();
    }
    return h;
}

json graph_to_json(const EmbeddedGraph& g) {
    json j;
    json vs = json::array();
    for (const auto& p : g.vertices()) vs.push_back({{"tri", p.tri}, {"z", {p.z.disk().real(), p.z.disk().imag()}}});
    j["vertices"] = vs;
    json es = json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        es.push_back({{"u", ed.u},
                      {"v", ed.v},
                      {"hol", {ed.hol.a().real(), ed.hol.a().imag(), ed.hol.b().real(), ed.hol.b().imag()}},
                      {"strip", edge_strip(g, e)},
                      {"length", g.edge_length(e)}});
    }
    j["edges"] = es;
    j["total_length"] = g.total_length();
    return j;
}

EmbeddedGraph graph_from_json(const json& j, std::shared_ptr<const TriangulatedSurface> s) {
    try {
        std::vector<SurfacePoint> vs;
        for (const auto& v : j.at("vertices"))
            vs.push_back({v.at("tri").get<int>(), HPoint(cplx(v.at("z").at(0).get<double>(), v.at("z").at(1).get<double>()))});
        std::vector<GraphEdge> es;
        for (const auto& e : j.at("edges")) {
            GraphEdge ed{e.at("u").get<int>(), e.at("v").get<int>(), Isometry()};
            if (e.contains("hol")) {
                const auto& h = e.at("hol");
                ed.hol = Isometry(cplx(h.at(0).get<double>(), h.at(1).get<double>()),
                                  cplx(h.at(2).get<double>(), h.at(3).get<double>()));
            } else {
                ed.hol = holonomy_from_strip(*s, e.at("strip").get<std::vector<int>>());
            }
            es.push_back(ed);
        }
        return EmbeddedGraph(std::move(s), std::move(vs), std::move(es));
    } catch (const json::exception& e) {
        throw InputError(std::string("graph json: ") + e.what());
    }
}

std::string log_to_csv(const std::vector<IterationLog>& log) {
    std::ostringstream out;
    out.precision(21);
    out << "iteration,length,violations,action\n";
    for (const auto& r : log) out << r.iteration << ',' << r.length << ',' << r.violations << ',' << r.action << '\n';
    return out.str();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

} // namespace hypfill
