#include "hypfill/errors.hpp"
#include "hypfill/fill_graph.hpp"

#include <cmath>
#include <deque>

namespace hypfill {

std::vector<Tile> tiles_near_segment(const TriangulatedSurface& s, int base_tri, const HPoint& a, const HPoint& b,
                                     double margin) {
    const auto& tri = s.triangulation();
    std::vector<Tile> out{{base_tri, Isometry()}};
    std::vector<std::vector<cplx>> seen(s.triangles());
    seen[base_tri].push_back(0.0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int k = 0; k < 3; ++k) {
            int d = 3 * out[i].tri + k;
            int e = tri.iota(d);
            int t = e / 3;
            Isometry M = out[i].map * s.transition(e);
            cplx c = M.apply(0.0);
            bool dup = false;
            for (cplx x : seen[t]) {
                if (std::abs(x - c) < 1e-9) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            if (dist_to_segment(HPoint(c), a, b) > s.chart(t).radius + margin) continue;
            seen[t].push_back(c);
            out.push_back({t, M});
            queue.push_back(static_cast<int>(out.size()) - 1);
            if (out.size() > 200000) throw GeometryError("tiles_near_segment: too many tiles");
        }
    }
    return out;
}

bool segments_conflict(const HPoint& p0, const HPoint& p1, const HPoint& q0, const HPoint& q1, double tol) {
    const HPoint* P[2] = {&p0, &p1};
    const HPoint* Q[2] = {&q0, &q1};
    int si = -1, sj = -1, shared = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (dist(*P[i], *Q[j]) < tol) {
                ++shared;
                si = i;
                sj = j;
            }
        }
    }
    if (shared >= 2) return true;
    if (shared == 1) {
        const HPoint& o = *P[si];
        const HPoint& x = *P[1 - si];
        const HPoint& y = *Q[1 - sj];
        if (dist_to_segment(x, q0, q1) < tol || dist_to_segment(y, p0, p1) < tol) return true;
        return angle(o, x, y) < tol;
    }
    if (dist_to_segment(p0, q0, q1) < tol || dist_to_segment(p1, q0, q1) < tol) return true;
    if (dist_to_segment(q0, p0, p1) < tol || dist_to_segment(q1, p0, p1) < tol) return true;
    double o1 = orient(p0, p1, q0), o2 = orient(p0, p1, q1);
    double o3 = orient(q0, q1, p0), o4 = orient(q0, q1, p1);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

const EmbeddingChecker::Cached& EmbeddingChecker::entry(const EmbeddedGraph& g, int e) {
    if (static_cast<int>(cache_.size()) < g.edge_count()) cache_.resize(g.edge_count(), {-1, 0.0, 0.0, {}, {}, {}, {}});
    const auto& ed = g.edge(e);
    int t = g.vertex(ed.u).tri;
    cplx a = g.vertex(ed.u).z.disk(), b = g.far_point(2 * e).disk();
    auto& c = cache_[e];
    if (c.tri != t || c.a != a || c.b != b) {
        c.tri = t;
        c.a = a;
        c.b = b;
        c.tiles = tiles_near_segment(g.surface(), t, HPoint(a), HPoint(b));
        c.by_tri.assign(g.surface().triangles(), {});
        c.local.clear();
        c.box.clear();
        for (int i = 0; i < static_cast<int>(c.tiles.size()); ++i) {
            c.by_tri[c.tiles[i].tri].push_back(i);
            Isometry inv = c.tiles[i].map.inverse();
            HPoint p = inv(HPoint(a)), q = inv(HPoint(b));
            c.local.emplace_back(p, q);
            cplx kp = p.klein(), kq = q.klein();
            c.box.push_back({std::min(kp.real(), kq.real()), std::max(kp.real(), kq.real()),
                             std::min(kp.imag(), kq.imag()), std::max(kp.imag(), kq.imag())});
        }
    }
    return c;
}

const std::vector<Tile>& EmbeddingChecker::tiles(const EmbeddedGraph& g, int e) { return entry(g, e).tiles; }

namespace {

// Euclidean distance in the Klein model never exceeds hyperbolic distance, so boxes padded
// by the tolerance never miss a conflict.
bool boxes_meet(const std::array<double, 4>& a, const std::array<double, 4>& b, double pad) {
    return a[0] - pad <= b[1] && b[0] - pad <= a[1] && a[2] - pad <= b[3] && b[2] - pad <= a[3];
}

} // namespace

// Both expect the cache entries of the edges involved to be current.
bool EmbeddingChecker::edge_pair(const EmbeddedGraph&, int e, int f, EmbeddingConflict* out) {
    const Cached& ce = cache_[e];
    const Cached& cf = cache_[f];
    std::vector<cplx> done; // lifts of f already tested, keyed by their first endpoint in e's chart
    for (int i = 0; i < static_cast<int>(ce.tiles.size()); ++i) {
        const int t = ce.tiles[i].tri;
        for (int j : cf.by_tri[t]) {
            if (!boxes_meet(ce.box[i], cf.box[j], 2 * tol_)) continue;
            const auto& [p0, p1] = ce.local[i];
            const auto& [q0, q1] = cf.local[j];
            if (e == f) {
                if (dist(p0, q0) < tol_ && dist(p1, q1) < tol_) continue;
                if (dist(p0, q1) < tol_ && dist(p1, q0) < tol_) continue;
            }
            cplx key = ce.tiles[i].map(q0).disk();
            bool dup = false;
            for (cplx d : done) {
                if (std::abs(d - key) < 1e-12) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            done.push_back(key);
            if (segments_conflict(p0, p1, q0, q1, tol_)) {
                if (out) *out = {e, f, -1, "edges " + std::to_string(e) + " and " + std::to_string(f) + " meet"};
                return true;
            }
        }
    }
    return false;
}

bool EmbeddingChecker::vertex_on_edge(const EmbeddedGraph& g, int w, int e, EmbeddingConflict* out) {
    const Cached& ce = cache_[e];
    const auto& pw = g.vertex(w);
    cplx k = pw.z.klein();
    std::array<double, 4> pb{k.real(), k.real(), k.imag(), k.imag()};
    for (int i : ce.by_tri[pw.tri]) {
        if (!boxes_meet(ce.box[i], pb, 2 * tol_)) continue;
        const auto& [a, b] = ce.local[i];
        if (dist(pw.z, a) < tol_ || dist(pw.z, b) < tol_) continue;
        if (dist_to_segment(pw.z, a, b) < tol_) {
            if (out) *out = {e, -1, w, "vertex " + std::to_string(w) + " lies on edge " + std::to_string(e)};
            return true;
        }
    }
    return false;
}

std::vector<EmbeddingConflict> EmbeddingChecker::check(const EmbeddedGraph& g) {
    for (int e = 0; e < g.edge_count(); ++e) entry(g, e);
    std::vector<EmbeddingConflict> out;
    EmbeddingConflict c;
    for (int e = 0; e < g.edge_count(); ++e) {
        for (int f = e; f < g.edge_count(); ++f) {
            if (edge_pair(g, e, f, &c)) out.push_back(c);
        }
        for (int w = 0; w < g.vertex_count(); ++w) {
            if (vertex_on_edge(g, w, e, &c)) out.push_back(c);
        }
    }
    return out;
}

std::vector<EmbeddingConflict> EmbeddingChecker::check_local(const EmbeddedGraph& g, const std::vector<int>& edges,
                                                             const std::vector<int>& vertices) {
    for (int e = 0; e < g.edge_count(); ++e) entry(g, e);
    std::vector<EmbeddingConflict> out;
    EmbeddingConflict c;
    for (int e : edges) {
        for (int f = 0; f < g.edge_count(); ++f) {
            if (edge_pair(g, e, f, &c)) return {c};
        }
        for (int w = 0; w < g.vertex_count(); ++w) {
            if (vertex_on_edge(g, w, e, &c)) return {c};
        }
    }
    for (int w : vertices) {
        for (int e = 0; e < g.edge_count(); ++e) {
            if (vertex_on_edge(g, w, e, &c)) return {c};
        }
    }
    return out;
}

bool is_embedded(const EmbeddedGraph& g) {
    EmbeddingChecker c;
    return c.check(g).empty();
}

} // namespace hypfill
