#include "hypfill/fill_graph.hpp"

#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypfill {

EmbeddedGraph::EmbeddedGraph(std::shared_ptr<const TriangulatedSurface> s, std::vector<SurfacePoint> vertices,
                             std::vector<GraphEdge> edges)
    : surface_(std::move(s)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (!surface_) throw InputError("graph: no surface");
    const int n = vertex_count();
    for (int i = 0; i < n; ++i) {
        const auto& p = vertices_[i];
        if (p.tri < 0 || p.tri >= surface_->triangles()) throw InputError("graph: vertex triangle out of range");
        if (!surface_->contains(p.tri, p.z, 1e-10))
            throw InputError("graph: vertex " + std::to_string(i) + " lies outside its triangle");
    }
    for (const auto& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw InputError("graph: edge endpoint out of range");
    }
    refresh();
}

HPoint EmbeddedGraph::far_point(int h) const { return hol(h)(vertices_[head(h)].z); }

double EmbeddedGraph::direction_angle(int h) const {
    return std::arg(direction(vertices_[base(h)].z, far_point(h)));
}

double EmbeddedGraph::total_length() const {
    return static_cast<double>(std::accumulate(lengths_.begin(), lengths_.end(), 0.0L));
}

std::vector<double> EmbeddedGraph::angles_at(int v) const {
    const auto& rot = rotation_[v];
    const int n = static_cast<int>(rot.size());
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = 2 * kPi;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        double a = direction_angle(rot[(i + 1) % n]) - direction_angle(rot[i]);
        while (a < 0) a += 2 * kPi;
        while (a >= 2 * kPi) a -= 2 * kPi;
        out[i] = a;
    }
    return out;
}

int EmbeddedGraph::face_next(int h) const {
    int t = twin(h);
    const auto& rot = rotation_[base(t)];
    auto it = std::find(rot.begin(), rot.end(), t);
    int pos = static_cast<int>(it - rot.begin());
    int n = static_cast<int>(rot.size());
    return rot[(pos + n - 1) % n];
}

std::vector<std::vector<int>> EmbeddedGraph::faces() const {
    const int H = 2 * edge_count();
    std::vector<char> seen(H, 0);
    std::vector<std::vector<int>> out;
    for (int h = 0; h < H; ++h) {
        if (seen[h]) continue;
        std::vector<int> f;
        int x = h;
        while (!seen[x]) {
            seen[x] = 1;
            f.push_back(x);
            x = face_next(x);
        }
        if (x != h) throw InvariantViolation("graph: face trace is not a permutation cycle");
        out.push_back(std::move(f));
    }
    return out;
}

void EmbeddedGraph::require_min_degree() const {
    for (int v = 0; v < vertex_count(); ++v) {
        if (degree(v) < 3) throw InvariantViolation("graph: vertex " + std::to_string(v) + " has degree < 3");
    }
}

void EmbeddedGraph::refresh() {
    lengths_.resize(edges_.size());
    for (int e = 0; e < edge_count(); ++e) lengths_[e] = dist(vertices_[edges_[e].u].z, far_point(2 * e));
    std::vector<std::vector<std::pair<double, int>>> hs(vertices_.size());
    for (int h = 0; h < 2 * edge_count(); ++h) hs[base(h)].emplace_back(direction_angle(h), h);
    rotation_.assign(vertices_.size(), {});
    for (int v = 0; v < vertex_count(); ++v) {
        std::sort(hs[v].begin(), hs[v].end());
        for (auto& [a, h] : hs[v]) rotation_[v].push_back(h);
    }
}

void EmbeddedGraph::set_vertex(int v, const SurfacePoint& p) {
    vertices_[v] = p;
    refresh();
}

void EmbeddedGraph::set_edge(int e, const GraphEdge& edge) {
    edges_[e] = edge;
    refresh();
}

int EmbeddedGraph::add_vertex(const SurfacePoint& p) {
    vertices_.push_back(p);
    refresh();
    return vertex_count() - 1;
}

int EmbeddedGraph::add_edge(const GraphEdge& edge) {
    edges_.push_back(edge);
    refresh();
    return edge_count() - 1;
}

void EmbeddedGraph::remove_edge(int e) {
    edges_[e] = edges_.back();
    edges_.pop_back();
    refresh();
}

void EmbeddedGraph::remove_vertex(int v) {
    for (auto& e : edges_) {
        if (e.u == v || e.v == v) throw PreconditionError("graph: removing a vertex with incident edges");
        if (e.u > v) --e.u;
        if (e.v > v) --e.v;
    }
    vertices_.erase(vertices_.begin() + v);
    refresh();
}

void EmbeddedGraph::relocate(int v) {
    auto loc = locate(*surface_, vertices_[v].tri, vertices_[v].z);
    const Isometry& R = loc.map;
    Isometry Ri = R.inverse();
    for (auto& e : edges_) {
        if (e.u == v) e.hol = R * e.hol;
        if (e.v == v) e.hol = e.hol * Ri;
    }
    vertices_[v] = loc.point;
    refresh();
}

EmbeddedGraph skeleton_graph(std::shared_ptr<const TriangulatedSurface> s) {
    if (s->kind() != TriangulatedSurface::Kind::Closed)
        throw UnsupportedError("skeleton_graph: cusped surfaces are not supported");
    const auto& tri = s->triangulation();
    const auto& orbits = s->vertex_orbits();
    // corner map of each dart into the chart of its orbit's first dart
    std::vector<Isometry> cmap(tri.darts());
    std::vector<SurfacePoint> verts;
    for (const auto& orbit : orbits) {
        int d0 = orbit.front();
        verts.push_back({d0 / 3, HPoint(s->corner_of_dart(d0))});
        Isometry M;
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            cmap[orbit[i]] = M;
            M = M * s->transition(tri.iota(orbit[i]));
        }
    }
    std::vector<GraphEdge> edges;
    for (int d = 0; d < tri.darts(); ++d) {
        if (tri.iota(d) < d) continue;
        int r = CombinatorialTriangulation::rho(d);
        edges.push_back({s->vertex_of_dart(d), s->vertex_of_dart(r), cmap[d] * cmap[r].inverse()});
    }
    return EmbeddedGraph(std::move(s), std::move(verts), std::move(edges));
}

TriCounts tri_counts(const EmbeddedGraph& g) {
    long excess = 0;
    for (int v = 0; v < g.vertex_count(); ++v) excess += g.degree(v) - 3;
    TriCounts c;
    c.v_tri = g.vertex_count() + excess;
    c.e_tri = g.edge_count() + excess;
    c.f_tri = static_cast<long>(g.faces().size());
    return c;
}

bool is_filling(const EmbeddedGraph& g) {
    long chi = static_cast<long>(g.vertex_count()) - g.edge_count() + static_cast<long>(g.faces().size());
    return chi == 2 - 2L * g.surface().genus();
}

} // namespace hypfill
