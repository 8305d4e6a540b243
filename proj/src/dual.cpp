#include "hypfill/dual.hpp"

#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hypfill {

double DualGraph::total_length() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.length;
    return s;
}

DualGraph dual_graph(const EmbeddedGraph& g) {
    for (int w = 0; w < g.vertex_count(); ++w) {
        for (double a : g.angles_at(w)) {
            if (a >= kPi) throw GeometryError("dual_graph: face corner at vertex " + std::to_string(w) + " is not convex");
        }
    }
    DualGraph d;
    d.source = g;
    const int E = g.edge_count();
    d.ends.assign(E, {});
    std::vector<std::array<int, 4>> filled(E, {0, 0, 0, 0});
    d.edges.resize(2 * E);
    for (int a = 0; a < 2 * E; ++a) {
        int b = g.face_next(a);
        int w = g.head(a);
        const HPoint& zw = g.vertex(w).z;
        DualEdge& de = d.edges[a];
        de.corner = a;
        de.vertex = w;
        de.dual_vertex = {edge_of(a), edge_of(b)};
        de.slot = {2 * (a & 1) + (1 - (a & 1)), 2 * (b & 1) + (b & 1)};
        de.points = {midpoint(zw, g.far_point(twin(a))), midpoint(zw, g.far_point(b))};
        de.length = dist(de.points[0], de.points[1]);
        for (int k = 0; k < 2; ++k) {
            int e = de.dual_vertex[k], sl = de.slot[k];
            d.ends[e][sl] = {a, k};
            ++filled[e][sl];
        }
    }
    for (int e = 0; e < E; ++e) {
        for (int sl = 0; sl < 4; ++sl) {
            if (filled[e][sl] != 1) throw InvariantViolation("dual_graph: dual vertex does not have four distinct ends");
        }
    }
    // Opposite ends: the cyclic order of the four outgoing directions at the midpoint, read in
    // the chart of u. Near-coincident directions fall back to the rotation system.
    d.opposite.resize(E);
    for (int e = 0; e < E; ++e) {
        std::array<std::pair<double, int>, 4> dirs;
        for (int sl = 0; sl < 4; ++sl) {
            const DualEdge& de = d.edges[d.ends[e][sl].dual_edge];
            int k = d.ends[e][sl].side;
            HPoint p = de.points[k], q = de.points[1 - k];
            if (sl & 1) {
                Isometry h = g.hol(2 * e);
                p = h(p);
                q = h(q);
            }
            dirs[sl] = {std::arg(direction(p, q)), sl};
        }
        std::sort(dirs.begin(), dirs.end());
        bool degenerate = false;
        for (int i = 0; i < 4; ++i) {
            double gap = dirs[(i + 1) % 4].first - dirs[i].first;
            if (i == 3) gap += 2 * kPi;
            if (gap < 1e-9) degenerate = true;
        }
        for (int i = 0; i < 4; ++i) {
            int sl = dirs[i].second;
            d.opposite[e][sl] = degenerate ? 3 - sl : dirs[(i + 2) % 4].second;
        }
        if (degenerate) ++d.metric_fallbacks;
        for (int sl = 0; sl < 4; ++sl) {
            if (d.opposite[e][d.opposite[e][sl]] != sl) throw InvariantViolation("dual_graph: pairing is not a matching");
        }
    }
    return d;
}

CurveSystem decompose_curves(const DualGraph& d, bool reversed) {
    const auto& g = d.source;
    CurveSystem out;
    std::vector<char> seen(d.edges.size(), 0);
    for (int c0 = 0; c0 < static_cast<int>(d.edges.size()); ++c0) {
        if (seen[c0]) continue;
        DualCurve curve;
        Isometry M;
        const int x0 = reversed ? 1 : 0;
        int c = c0, x = x0;
        while (true) {
            if (seen[c]) throw InvariantViolation("decompose_curves: dual edge reached twice");
            seen[c] = 1;
            const DualEdge& de = d.edges[c];
            curve.edges.push_back(c);
            curve.forward.push_back(x == 0);
            curve.vertices.push_back(de.dual_vertex[x]);
            curve.slots.push_back(de.slot[x]);
            curve.points.push_back(de.points[x]);
            curve.length += de.length;
            const int e = de.dual_vertex[1 - x], sl = de.slot[1 - x];
            const int o = d.opposite[e][sl];
            const DualEnd next = d.ends[e][o];
            const int t = sl & 1, t2 = o & 1;
            Isometry step = t == t2 ? Isometry() : g.hol(2 * e + t);
            curve.steps.push_back(step);
            M = M * step;
            c = next.dual_edge;
            x = next.side;
            if (c == c0 && x == x0) break;
        }
        curve.holonomy = M;
        out.total_length += curve.length;
        out.curves.push_back(std::move(curve));
    }
    return out;
}

Sandwich length_sandwich(const DualGraph& d, const CurveSystem& c) {
    const auto& g = d.source;
    Sandwich s{g.total_length(), c.total_length, 0.0};
    s.ratio = s.dual_length / s.source_length;
    if (!(s.dual_length - s.source_length >= 1e-9) || !(2 * s.source_length - s.dual_length >= 1e-9))
        throw InvariantViolation("length_sandwich: l(G) < l(D(G)) < 2 l(G) fails");
    // the three midpoints around a trivalent vertex against the star at the vertex
    std::vector<std::vector<HPoint>> corners(g.vertex_count());
    for (const auto& de : d.edges) corners[de.vertex].push_back(de.points[0]);
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (corners[w].size() != 3) continue;
        HTriangle t{corners[w][0], corners[w][1], corners[w][2]};
        perimeter_vs_fermat_sum(t, g.vertex(w).z); // throws when the inequality fails
    }
    return s;
}

Tightened tighten_dual_to_geodesics(const CurveSystem& c, const Certificate& cert, const TightenOptions& opt) {
    if (cert.status != CertStatus::Certified)
        throw PreconditionError("tighten_dual_to_geodesics: curves are not certified to be in minimal position");
    Tightened out;
    for (const auto& curve : c.curves) {
        const int n = static_cast<int>(curve.steps.size());
        // Points live in their own charts; steps[i] carries chart i+1 into chart i.
        std::vector<HPoint> p(n);
        std::vector<Isometry> inv(n);
        for (int i = 0; i < n; ++i) inv[i] = curve.steps[i].inverse();
        TightenedCurve tc;
        auto neighbours = [&](int i) {
            HPoint prev = inv[(i + n - 1) % n](p[(i + n - 1) % n]);
            HPoint next = curve.steps[i](p[(i + 1) % n]);
            return std::make_pair(prev, next);
        };
        auto length = [&] {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += dist(p[i], curve.steps[i](p[(i + 1) % n]));
            return s;
        };
        auto max_bend = [&] {
            double worst = 0.0;
            for (int i = 0; i < n; ++i) {
                auto [prev, next] = neighbours(i);
                if (dist(prev, p[i]) < 1e-12 || dist(next, p[i]) < 1e-12) continue;
                worst = std::max(worst, kPi - angle(p[i], prev, next));
            }
            return worst;
        };
        p = curve.points;
        tc.lengths.push_back(length());
        int sweep = 0;
        for (; sweep < opt.max_sweeps && max_bend() >= opt.bend_tol; ++sweep) {
            for (int i = 0; i < n; ++i) {
                auto [prev, next] = neighbours(i);
                p[i] = project_to_segment(p[i], prev, next);
            }
            double l = length();
            if (l > tc.lengths.back() + 1e-12) throw InvariantViolation("tighten_dual_to_geodesics: length increased");
            tc.lengths.push_back(l);
        }
        tc.max_bend = max_bend();
        if (tc.max_bend >= opt.bend_tol) throw GeometryError("tighten_dual_to_geodesics: no convergence");
        tc.points = p;
        tc.length = tc.lengths.back();
        tc.translation_length = curve.holonomy.translation_length();
        out.total_length += tc.length;
        out.curves.push_back(std::move(tc));
    }
    return out;
}

} // namespace hypfill
