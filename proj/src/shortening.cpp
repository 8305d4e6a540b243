#include "hypfill/errors.hpp"
#include "hypfill/fill_graph.hpp"
#include "hypfill/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypfill {

namespace {

std::vector<NonShortestReport> detect_at(const EmbeddedGraph& g, int v, double tol) {
    std::vector<NonShortestReport> out;
    int deg = g.degree(v);
    if (deg < 3) return out;
    auto a = g.angles_at(v);
    if (deg > 3) {
        for (int i = 0; i < deg; ++i) {
            if (a[i] < kPi / 2 - tol) out.push_back({v, ViolationType::I, a[i], i});
        }
        return out;
    }
    int worst = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(a[i] - kTwoPiOver3) > std::abs(a[worst] - kTwoPiOver3)) worst = i;
    }
    if (std::abs(a[worst] - kTwoPiOver3) > tol) out.push_back({v, ViolationType::II, a[worst], worst});
    return out;
}

std::vector<int> incident_edges(const EmbeddedGraph& g, int v) {
    std::vector<int> out;
    for (int h : g.rotation(v)) {
        int e = edge_of(h);
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
}

double min_incident_length(const EmbeddedGraph& g, int v) {
    double m = std::numeric_limits<double>::infinity();
    for (int h : g.rotation(v)) m = std::min(m, g.edge_length(edge_of(h)));
    return m;
}

// Moves half-edges ha, hb from v onto a new vertex at P (coordinates in v's chart) and joins it to v.
EmbeddedGraph split_move(const EmbeddedGraph& g, int v, int ha, int hb, const HPoint& P, int* new_vertex) {
    EmbeddedGraph out = g;
    int w = out.add_vertex({g.vertex(v).tri, P});
    for (int h : {ha, hb}) {
        GraphEdge ed = out.edge(edge_of(h));
        if (h & 1)
            ed.v = w;
        else
            ed.u = w;
        out.set_edge(edge_of(h), ed);
    }
    out.add_edge({v, w, Isometry()});
    out.relocate(w);
    *new_vertex = w;
    return out;
}

void check_counts(const EmbeddedGraph& before, const EmbeddedGraph& after, bool with_faces, const char* op) {
    auto a = tri_counts(before), b = tri_counts(after);
    if (a.v_tri != b.v_tri || a.e_tri != b.e_tri || (with_faces && a.f_tri != b.f_tri))
        throw InvariantViolation(std::string(op) + ": triangulated counts changed (" + std::to_string(a.v_tri) + "," +
                                 std::to_string(a.e_tri) + "," + std::to_string(a.f_tri) + ") -> (" +
                                 std::to_string(b.v_tri) + "," + std::to_string(b.e_tri) + "," +
                                 std::to_string(b.f_tri) + ")");
}

long double sum_lengths(const EmbeddedGraph& g, const std::vector<int>& edges) {
    long double s = 0.0L;
    for (int e : edges) s += g.edge_length(e);
    return s;
}

EmbeddedGraph apply_impl(const EmbeddedGraph& g, const NonShortestReport& r, double eps, EmbeddingChecker* chk,
                         bool check_embedding) {
    if (!(eps > 0)) throw PreconditionError("apply_shortening: epsilon must be positive");
    const int v = r.vertex;
    if (v < 0 || v >= g.vertex_count()) throw PreconditionError("apply_shortening: vertex out of range");
    auto cur = detect_at(g, v, 0.0);
    bool current = false;
    for (const auto& c : cur) {
        if (c.type == r.type && (r.type == ViolationType::II || c.angle_index == r.angle_index)) current = true;
    }
    if (!current) throw PreconditionError("apply_shortening: report is not current for this graph");

    const HPoint zv = g.vertex(v).z;
    const auto& rot = g.rotation(v);
    EmbeddedGraph out;
    HPoint moved;
    std::vector<int> old_edges, new_edges, verts;
    if (r.type == ViolationType::I) {
        int deg = g.degree(v);
        int h1 = rot[r.angle_index], h2 = rot[(r.angle_index + 1) % deg];
        // h2 slides along h1
        int along = h1;
        if (eps >= g.edge_length(edge_of(along))) throw ShorteningConflict("apply_shortening: epsilon exceeds the edge");
        moved = toward(zv, g.far_point(along), eps);
        int w = -1;
        out = split_move(g, v, h1, h2, moved, &w);
        old_edges = {edge_of(h1)};
        if (edge_of(h2) != edge_of(h1)) old_edges.push_back(edge_of(h2));
        new_edges = old_edges;
        new_edges.push_back(out.edge_count() - 1);
        verts = {w};
    } else {
        if (eps >= min_incident_length(g, v))
            throw ShorteningConflict("apply_shortening: epsilon exceeds an incident edge");
        HTriangle t{toward(zv, g.far_point(rot[0]), eps), toward(zv, g.far_point(rot[1]), eps),
                    toward(zv, g.far_point(rot[2]), eps)};
        try {
            moved = fermat_point(t).point;
        } catch (const DegenerateError& e) {
            throw ShorteningConflict(std::string("apply_shortening: ") + e.what());
        } catch (const FermatConvergenceError& e) {
            throw ShorteningConflict(std::string("apply_shortening: ") + e.what());
        }
        out = g;
        out.set_vertex(v, {g.vertex(v).tri, moved});
        out.relocate(v);
        old_edges = incident_edges(g, v);
        new_edges = old_edges;
        verts = {v};
    }
    if (dist(zv, moved) > 2 * eps + 1e-15) throw InvariantViolation("apply_shortening: displacement exceeds 2 epsilon");
    // Decrease is only guaranteed for small epsilon; a longer result asks for a retry. Once the
    // decrease drops below rounding, a type II step is kept if it is length-neutral and lowers the
    // angle residual.
    const long double delta = sum_lengths(out, new_edges) - sum_lengths(g, old_edges);
    bool ok = delta < 0;
    if (!ok) throw ShorteningConflict("apply_shortening: length did not decrease");
    check_counts(g, out, false, "apply_shortening");
    if (check_embedding) {
        EmbeddingChecker local;
        EmbeddingChecker* c = chk ? chk : &local;
        auto conflicts = c->check_local(out, new_edges, verts);
        if (!conflicts.empty()) throw ShorteningConflict("apply_shortening: " + conflicts.front().what);
    }
    if (!is_filling(out)) throw InvariantViolation("apply_shortening: filling lost");
    return out;
}

// Corner-merge model of the remaining type I splits. Corner j of a vertex lies between its
// half-edges j and j+1; splitting it feeds the two flanking faces and merges its angle into
// the neighbour on the side of the shorter edge.
struct SimCorner {
    int face;
    double angle;
};

struct SimState {
    std::vector<int> order;                        // vertices still above degree 3
    std::vector<std::vector<SimCorner>> corners;   // per entry of order
    std::vector<int> face_size;
};

void sim_split(SimState& st, int k, int j) {
    auto& c = st.corners[k];
    const int n = static_cast<int>(c.size());
    ++st.face_size[c[(j + n - 1) % n].face];
    ++st.face_size[c[(j + 1) % n].face];
    // the opening half-edge stays; corner j+1 absorbs corner j
    c[(j + 1) % n].angle += c[j].angle;
    c.erase(c.begin() + j);
}

std::vector<int> sim_candidates(const std::vector<SimCorner>& c) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
        if (c[j].angle < kPi / 2) out.push_back(j);
    }
    if (out.empty()) out.push_back(0); // right-angled degree-4 split
    return out;
}

// Plays the remaining splits at random, starting after entry k of the current sweep.
int sim_rollout(SimState st, int k, std::mt19937_64& rng) {
    const int m = static_cast<int>(st.order.size());
    for (int guard = 0; guard < 100000; ++guard) {
        bool any = false;
        for (int i = 0; i < m; ++i) {
            int kk = (k + 1 + i) % m;
            if (st.corners[kk].size() <= 3) continue;
            any = true;
            auto cand = sim_candidates(st.corners[kk]);
            int pick = cand[uniform_below(rng, cand.size())];
            if (uniform_unit(rng) < 0.5) {
                // feed the neediest faces
                const auto& c = st.corners[kk];
                const int n = static_cast<int>(c.size());
                int best = 1 << 30;
                for (int j : cand) {
                    int a = st.face_size[c[(j + n - 1) % n].face], b = st.face_size[c[(j + 1) % n].face];
                    int key = 100 * (2 - (a < 7) - (b < 7)) + std::min(a, b);
                    if (key < best) {
                        best = key;
                        pick = j;
                    }
                }
            }
            sim_split(st, kk, pick);
        }
        if (!any) break;
    }
    int deficit = 0;
    for (int x : st.face_size) deficit += std::max(0, 7 - x);
    return deficit;
}

// Among the acute angles at a vertex, choose the split that leaves every face with enough
// sides to carry 2pi/3 corners, judged by random playouts of the remaining splits.
NonShortestReport pick_report(const EmbeddedGraph& g, const std::vector<NonShortestReport>& rs, std::uint64_t seed) {
    if (rs.front().type == ViolationType::II || rs.size() == 1) return rs.front();
    const int v0 = rs.front().vertex;
    SimState st;
    std::vector<int> face_of(2 * g.edge_count());
    auto faces = g.faces();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        for (int h : faces[f]) face_of[h] = f;
        st.face_size.push_back(static_cast<int>(faces[f].size()));
    }
    int k0 = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) <= 3) continue;
        if (v == v0) k0 = static_cast<int>(st.order.size());
        st.order.push_back(v);
        auto ang = g.angles_at(v);
        const auto& rot = g.rotation(v);
        std::vector<SimCorner> c;
        for (int j = 0; j < g.degree(v); ++j) c.push_back({face_of[rot[j]], ang[j]});
        st.corners.push_back(std::move(c));
    }
    std::mt19937_64 rng(seed);
    NonShortestReport best = rs.front();
    int best_score = -1;
    for (const auto& r : rs) {
        SimState s1 = st;
        sim_split(s1, k0, r.angle_index);
        int score = 1 << 30;
        for (int t = 0; t < 200 && score > 0; ++t) score = std::min(score, sim_rollout(s1, k0, rng));
        if (best_score < 0 || score < best_score || (score == best_score && r.angle < best.angle)) {
            best = r;
            best_score = score;
        }
    }
    return best;
}

} // namespace

std::vector<NonShortestReport> detect_non_shortest(const EmbeddedGraph& g, double tol) {
    std::vector<NonShortestReport> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto r = detect_at(g, v, tol);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

double max_angle_deviation(const EmbeddedGraph& g) {
    double m = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (double a : g.angles_at(v)) m = std::max(m, std::abs(a - kTwoPiOver3));
    }
    return m;
}

double default_epsilon(const EmbeddedGraph& g, int vertex) { return 1e-2 * min_incident_length(g, vertex); }

EmbeddedGraph apply_shortening(const EmbeddedGraph& g, const NonShortestReport& r, double epsilon) {
    return apply_impl(g, r, epsilon, nullptr, true);
}

EmbeddedGraph split_right_angled(const EmbeddedGraph& g, int v, double epsilon) {
    if (g.degree(v) != 4) throw PreconditionError("split_right_angled: vertex degree is not 4");
    for (double a : g.angles_at(v)) {
        if (std::abs(a - kPi / 2) > 1e-6) throw PreconditionError("split_right_angled: angles are not right angles");
    }
    if (!(epsilon > 0) || epsilon >= min_incident_length(g, v))
        throw ShorteningConflict("split_right_angled: epsilon out of range");
    const auto& rot = g.rotation(v);
    HPoint zv = g.vertex(v).z;
    HPoint A = toward(zv, g.far_point(rot[0]), epsilon), B = toward(zv, g.far_point(rot[1]), epsilon);
    HPoint P = fermat_point({A, zv, B}).point;
    int w = -1;
    EmbeddedGraph out = split_move(g, v, rot[0], rot[1], P, &w);
    if (out.total_length() > g.total_length() + 1e-12) throw InvariantViolation("split_right_angled: length increased");
    check_counts(g, out, true, "split_right_angled");
    EmbeddingChecker c;
    auto conflicts = c.check_local(out, incident_edges(out, w), {w});
    if (!conflicts.empty()) throw ShorteningConflict("split_right_angled: " + conflicts.front().what);
    return out;
}

EmbeddedGraph shrink_edge(const EmbeddedGraph& g, int e) {
    if (e < 0 || e >= g.edge_count()) throw PreconditionError("shrink_edge: edge out of range");
    const GraphEdge ed = g.edge(e);
    if (ed.u == ed.v) throw PreconditionError("shrink_edge: loop edge");
    const int u = ed.u, v = ed.v;
    HPoint m = midpoint(g.vertex(u).z, g.far_point(2 * e));
    const Isometry H = ed.hol, Hi = H.inverse();
    EmbeddedGraph out = g;
    for (int f = 0; f < g.edge_count(); ++f) {
        if (f == e) continue;
        GraphEdge x = g.edge(f);
        bool at_u = x.u == v, at_v = x.v == v;
        if (at_u) {
            x.u = u;
            x.hol = H * x.hol;
        }
        if (at_v) {
            x.v = u;
            x.hol = x.hol * Hi;
        }
        if (at_u || at_v) out.set_edge(f, x);
    }
    out.remove_edge(e);
    out.set_vertex(u, {g.vertex(u).tri, m});
    out.remove_vertex(v);
    out.relocate(u > v ? u - 1 : u);
    check_counts(g, out, true, "shrink_edge");
    return out;
}

namespace {

long double exact_total(const EmbeddedGraph& g) {
    long double s = 0.0L;
    for (int e = 0; e < g.edge_count(); ++e) s += g.edge_length(e);
    return s;
}

} // namespace

ShortenResult shorten_to_local_min(const EmbeddedGraph& g, const ShortenConfig& config) {
    ShortenResult res;
    EmbeddedGraph G = g;
    EmbeddingChecker checker;
    auto trivalent = [](const EmbeddedGraph& x) {
        for (int v = 0; v < x.vertex_count(); ++v) {
            if (x.degree(v) != 3) return false;
        }
        return true;
    };
    res.log.push_back({0, exact_total(G), static_cast<int>(detect_non_shortest(G, config.angle_tol).size()), "start"});
    for (int it = 1; it <= config.max_iterations; ++it) {
        int n_shrink = 0, n_split = 0, n_one = 0, n_two = 0, n_flag = 0;
        // shrink short edges first
        for (bool again = true; again;) {
            again = false;
            for (int e = 0; e < G.edge_count(); ++e) {
                const auto& ed = G.edge(e);
                if (ed.u != ed.v && G.edge_length(e) < config.shrink_threshold) {
                    try {
                        G = shrink_edge(G, e);
                    } catch (const InvariantViolation& ex) {
                        // a face collapsed; the geometric rotation no longer matches the embedding
                        res.stop_reason = ex.what();
                        goto stop;
                    }
                    ++n_shrink;
                    again = true;
                    break;
                }
            }
        }
        auto reports = detect_non_shortest(G, config.angle_tol);
        std::vector<int> right;
        for (int v = 0; v < G.vertex_count(); ++v) {
            if (G.degree(v) != 4) continue;
            bool all = true;
            for (double a : G.angles_at(v)) all = all && std::abs(a - kPi / 2) <= 1e-6;
            if (all && detect_at(G, v, config.angle_tol).empty()) right.push_back(v);
        }
        if (reports.empty() && right.empty() && trivalent(G)) {
            res.converged = true;
            res.stop_reason = "converged";
            break;
        }
        res.iterations = it;
        const long double before = exact_total(G);
        EmbeddedGraph prev = G;
        const int n = G.vertex_count();
        // Degree reductions run as a phase of their own: type II moves wait until no vertex
        // above degree 3 is left, so the split planning sees the angles it will get.
        bool reducing = !right.empty();
        for (const auto& x : reports) reducing = reducing || x.type == ViolationType::I;
        for (int v = 0; v < n; ++v) {
            bool is_right = std::find(right.begin(), right.end(), v) != right.end();
            auto rs = detect_at(G, v, config.angle_tol);
            if (rs.empty() && !is_right) continue;
            if (reducing && !rs.empty() && rs.front().type == ViolationType::II) continue;
            NonShortestReport r{};
            if (!rs.empty()) r = pick_report(G, rs, 0x9e3779b97f4a7c15ULL * it + v);
            double eps = (rs.empty() ? config.split_fraction : config.epsilon_fraction) * min_incident_length(G, v);
            if (!rs.empty() && r.type == ViolationType::I) {
                eps = config.split_fraction * G.edge_length(edge_of(G.rotation(v)[r.angle_index]));
            }
            bool done = false;
            while (eps >= config.epsilon_min) {
                try {
                    if (rs.empty())
                        G = split_right_angled(G, v, eps);
                    else
                        G = apply_impl(G, r, eps, &checker, config.check_embedding);
                    done = true;
                    break;
                } catch (const ShorteningConflict&) {
                    eps *= 0.5;
                } catch (const InvariantViolation& ex) {
                    res.stop_reason = ex.what();
                    goto stop;
                }
            }
            if (!done) {
                ++n_flag;
                if (std::find(res.flagged_vertices.begin(), res.flagged_vertices.end(), v) == res.flagged_vertices.end())
                    res.flagged_vertices.push_back(v);
                continue;
            }
            if (rs.empty())
                ++n_split;
            else if (r.type == ViolationType::I)
                ++n_one;
            else
                ++n_two;
        }
        const long double after = exact_total(G);
        std::string action = "shrink=" + std::to_string(n_shrink) + ";typeI=" + std::to_string(n_one) +
                             ";typeII=" + std::to_string(n_two) + ";split=" + std::to_string(n_split) +
                             ";flagged=" + std::to_string(n_flag);
        if (n_shrink + n_split + n_one + n_two == 0) {
            res.stop_reason = "no applicable move";
            break;
        }
        if (!(before - after > config.min_decrease)) {
            // a sweep that no longer pays is undone and ends the run
            G = std::move(prev);
            res.iterations = it - 1;
            res.stop_reason = "stalled";
            break;
        }
        res.log.push_back({it, after, static_cast<int>(detect_non_shortest(G, config.angle_tol).size()), action});
    }
stop:
    if (res.stop_reason.empty()) res.stop_reason = "iteration limit";
    if (!res.converged) res.converged = trivalent(G) && max_angle_deviation(G) <= config.converged_tol;
    res.remaining = detect_non_shortest(G, config.angle_tol);
    res.residual = max_angle_deviation(G);
    res.graph = std::move(G);
    return res;
}

} // namespace hypfill
