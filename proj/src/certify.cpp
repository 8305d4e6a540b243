#include "hypfill/dual.hpp"

#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hypfill {

using nlohmann::json;

Rational gauss_bonnet_area(int extra, int n, int m) {
    const Rational small(2, 3), large(4, 3);
    Rational area = Rational(extra) * (1 - small);
    area += Rational(n) * ((1 - small) + (1 - large));
    area += Rational(m) * ((1 - small) + (1 - large));
    return area - 2;
}

std::vector<CaseValue> gauss_bonnet_case_areas() {
    std::vector<CaseValue> out{{"disk", 0, 0},    {"monogon-1", 1, 0}, {"monogon-2", 2, 0},
                               {"bigon-1", 2, 0}, {"bigon-2", 3, 0},   {"bigon-3", 4, 0}};
    for (auto& c : out) {
        const bool bigon = c.name.rfind("bigon", 0) == 0;
        c.area = gauss_bonnet_area(c.extra_corners, 1, bigon ? 1 : 0);
        for (int n = 1; n <= 50; ++n) {
            for (int m = bigon ? 1 : 0; m <= (bigon ? 50 : 0); ++m) {
                if (gauss_bonnet_area(c.extra_corners, n, m) != c.area)
                    throw InvariantViolation("gauss_bonnet_case_areas: " + c.name + " depends on n, m");
            }
        }
    }
    return out;
}

Rational euler_degree_check(const std::vector<std::array<int, 3>>& triangles) {
    if (triangles.empty()) throw InputError("euler_degree_check: no triangles");
    std::map<std::pair<int, int>, int> edge_use;
    std::set<int> verts;
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            if (a == b) throw InputError("euler_degree_check: degenerate triangle");
            verts.insert(a);
            ++edge_use[{std::min(a, b), std::max(a, b)}];
        }
    }
    std::map<int, int> deg;
    std::map<int, std::vector<int>> boundary_adj;
    long E = 0, n_edges = 0;
    for (const auto& [e, use] : edge_use) {
        if (use > 2) throw InputError("euler_degree_check: edge in more than two triangles");
        ++E;
        ++deg[e.first];
        ++deg[e.second];
        if (use == 1) {
            ++n_edges;
            boundary_adj[e.first].push_back(e.second);
            boundary_adj[e.second].push_back(e.first);
        }
    }
    // the boundary must be a single cycle
    const long n = static_cast<long>(boundary_adj.size());
    for (const auto& [v, nb] : boundary_adj) {
        if (nb.size() != 2) throw InputError("euler_degree_check: boundary is not a simple cycle");
    }
    if (n == 0 || n != n_edges) throw InputError("euler_degree_check: boundary is not a simple cycle");
    {
        int start = boundary_adj.begin()->first, prev = -1, cur = start;
        long len = 0;
        do {
            const auto& nb = boundary_adj[cur];
            int next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
            ++len;
        } while (cur != start && len <= n);
        if (len != n) throw InputError("euler_degree_check: boundary has several components");
    }
    const long V = static_cast<long>(verts.size()), F = static_cast<long>(triangles.size());
    if (V - E + F != 1) throw InputError("euler_degree_check: triangles do not form a disk");
    long sum = 0;
    for (const auto& [v, d] : deg) sum += d;
    if (sum != 2 * E) throw InputError("euler_degree_check: degree sum differs from 2E");
    return Rational(V) - Rational(n, 3) - Rational(sum, 6);
}

Rational euler_degree_bound(int interior_vertices, const std::vector<int>& boundary_lower_bounds) {
    const long n = static_cast<long>(boundary_lower_bounds.size());
    long sum = 6L * interior_vertices;
    for (int b : boundary_lower_bounds) sum += b;
    return Rational(interior_vertices + n) - Rational(n, 3) - Rational(sum, 6);
}

std::vector<EulerScenario> euler_degree_scenarios() {
    std::vector<EulerScenario> out{{"disk", {}, 0},          {"monogon-1", {3}, 0},   {"monogon-2", {2}, 0},
                                   {"bigon-1", {3, 3}, 0},   {"bigon-2", {3, 2}, 0}, {"bigon-3", {2, 2}, 0}};
    for (auto& s : out) {
        bool first = true;
        for (int n = std::max<int>(3, static_cast<int>(s.special.size())); n <= 50; ++n) {
            std::vector<int> b(n, 4);
            std::copy(s.special.begin(), s.special.end(), b.begin());
            for (int interior = 0; interior <= 50; ++interior) {
                Rational v = euler_degree_bound(interior, b);
                if (first) {
                    s.bound = v;
                    first = false;
                } else if (v != s.bound) {
                    throw InvariantViolation("euler_degree_scenarios: " + s.name + " depends on the disk size");
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- oracle

namespace {

// SU(1,1) matrices of one isometry agree up to sign.
bool same_isometry(const Isometry& x, const Isometry& y) {
    double scale = std::max({std::abs(x.a()), std::abs(x.b()), 1.0});
    double minus = std::max(std::abs(x.a() - y.a()), std::abs(x.b() - y.b()));
    double plus = std::max(std::abs(x.a() + y.a()), std::abs(x.b() + y.b()));
    return std::min(minus, plus) < 1e-7 * scale;
}

int strand_of(int slot) { return slot == 0 || slot == 3 ? 0 : 1; }

struct LiftPoint {
    int index;  // position along the lift, unreduced
    int vertex; // dual vertex
    int strand;
    Isometry key; // chart of u of the dual vertex carried into the base frame
};

struct Lift {
    std::vector<LiftPoint> points;
    bool overflow = false;
};

// Chart map of step i carried to the chart of u of its dual vertex.
Isometry to_u_chart(const DualGraph& d, const DualCurve& c, int i, const Isometry& M) {
    int e = c.vertices[i];
    return (c.slots[i] & 1) ? M * d.source.hol(2 * e + 1) : M;
}

Lift develop_lift(const DualGraph& d, const DualCurve& c, int i0, const Isometry& M0, int depth) {
    const int n = static_cast<int>(c.steps.size());
    Lift L;
    auto add = [&](int i, const Isometry& M) {
        int r = ((i % n) + n) % n;
        L.points.push_back({i, c.vertices[r], strand_of(c.slots[r]), to_u_chart(d, c, r, M)});
    };
    add(i0, M0);
    Isometry M = M0;
    for (int i = i0; i < i0 + depth * n; ++i) {
        M = M * c.steps[((i % n) + n) % n];
        if (std::abs(M.a()) > 1e100) {
            L.overflow = true;
            break;
        }
        add(i + 1, M);
    }
    M = M0;
    for (int i = i0; i > i0 - depth * n; --i) {
        M = M * c.steps[(((i - 1) % n) + n) % n].inverse();
        if (std::abs(M.a()) > 1e100) {
            L.overflow = true;
            break;
        }
        add(i - 1, M);
    }
    return L;
}

} // namespace

OracleResult oracle_search_monogon_bigon(const DualGraph& d, const CurveSystem& cs, int depth) {
    if (depth < 1) throw PreconditionError("oracle_search_monogon_bigon: depth must be >= 1");
    OracleResult res;
    // which curve runs along each strand of each dual vertex
    std::map<std::pair<int, int>, std::pair<int, int>> owner;
    for (int k = 0; k < static_cast<int>(cs.curves.size()); ++k) {
        const auto& c = cs.curves[k];
        for (int i = 0; i < static_cast<int>(c.vertices.size()); ++i) owner[{c.vertices[i], strand_of(c.slots[i])}] = {k, i};
    }
    for (int a = 0; a < static_cast<int>(cs.curves.size()); ++a) {
        const auto& ca = cs.curves[a];
        const int n = static_cast<int>(ca.steps.size());
        if (std::abs(ca.holonomy.a().real()) <= 1.0 + 1e-9) {
            res.witness = Witness{WitnessKind::Disk, a, a, 0, n, ca.vertices[0]};
            return res;
        }
        Lift L = develop_lift(d, ca, 0, Isometry(), depth);
        res.inconclusive = res.inconclusive || L.overflow;
        std::map<int, std::vector<int>> at;
        for (int p = 0; p < static_cast<int>(L.points.size()); ++p) at[L.points[p].vertex].push_back(p);
        // self-crossing lift
        for (const auto& [v, ps] : at) {
            for (std::size_t x = 0; x < ps.size(); ++x) {
                for (std::size_t y = x + 1; y < ps.size(); ++y) {
                    const auto& P = L.points[ps[x]];
                    const auto& Q = L.points[ps[y]];
                    if (P.strand != Q.strand && same_isometry(P.key, Q.key)) {
                        res.witness = Witness{WitnessKind::Monogon, a, a, std::min(P.index, Q.index),
                                              std::max(P.index, Q.index), v};
                        return res;
                    }
                }
            }
        }
        // lifts through each crossing of one period, looking for a second crossing
        for (int p = 0; p < static_cast<int>(L.points.size()); ++p) {
            const auto& P = L.points[p];
            if (P.index < 0 || P.index >= n) continue;
            auto it = owner.find({P.vertex, 1 - P.strand});
            if (it == owner.end()) throw InvariantViolation("oracle: strand without a curve");
            const auto [b, i] = it->second;
            const auto& cb = cs.curves[b];
            Isometry M = (cb.slots[i] & 1) ? P.key * d.source.hol(2 * P.vertex + 1).inverse() : P.key;
            Lift L2 = develop_lift(d, cb, i, M, depth);
            res.inconclusive = res.inconclusive || L2.overflow;
            for (const auto& Q : L2.points) {
                if (Q.index == i) continue;
                auto f = at.find(Q.vertex);
                if (f == at.end()) continue;
                for (int q : f->second) {
                    const auto& R = L.points[q];
                    if (R.vertex == P.vertex && same_isometry(R.key, P.key)) continue; // the first crossing
                    if (R.strand != Q.strand && same_isometry(R.key, Q.key)) {
                        res.witness = Witness{WitnessKind::Bigon, a, b, P.index, Q.index, Q.vertex};
                        return res;
                    }
                }
            }
        }
    }
    return res;
}

Certificate certify_minimal_position(const DualGraph& d, SourceKind kind, int oracle_depth) {
    Certificate cert;
    const auto& g = d.source;
    bool ok = true;
    if (kind == SourceKind::Graph) {
        for (int v = 0; v < g.vertex_count(); ++v) ok = ok && g.degree(v) == 3;
        ok = ok && max_angle_deviation(g) <= 1e-6;
        if (ok) cert.grounds = "trivalent-2pi/3";
    } else {
        for (int v = 0; v < g.vertex_count(); ++v) ok = ok && g.degree(v) >= 6;
        if (ok) cert.grounds = "min-degree-6";
    }
    cert.status = ok ? CertStatus::Certified : CertStatus::NotApplicable;
    if (oracle_depth > 0) {
        CurveSystem cs = decompose_curves(d);
        OracleResult r = oracle_search_monogon_bigon(d, cs, oracle_depth);
        cert.oracle_run = true;
        cert.oracle_inconclusive = r.inconclusive;
        cert.witness = r.witness;
        if (r.witness) {
            if (ok) throw InvariantViolation("certify_minimal_position: oracle found a witness on a certified instance");
            cert.status = CertStatus::CounterexampleFound;
        }
    }
    return cert;
}

Certificate certify_triangulation(const CombinatorialTriangulation& t) {
    Certificate cert;
    auto deg = t.vertex_degrees();
    bool ok = !deg.empty() && *std::min_element(deg.begin(), deg.end()) >= 6;
    cert.status = ok ? CertStatus::Certified : CertStatus::NotApplicable;
    if (ok) cert.grounds = "min-degree-6";
    return cert;
}

namespace {

const char* status_name(CertStatus s) {
    switch (s) {
    case CertStatus::Certified: return "certified-minimal-position";
    case CertStatus::NotApplicable: return "not-applicable";
    case CertStatus::CounterexampleFound: return "counterexample-found";
    }
    return "";
}

const char* witness_name(WitnessKind k) {
    switch (k) {
    case WitnessKind::Disk: return "disk";
    case WitnessKind::Monogon: return "monogon";
    case WitnessKind::Bigon: return "bigon";
    }
    return "";
}

} // namespace

json certificate_to_json(const Certificate& c) {
    json j{{"status", status_name(c.status)}, {"grounds", c.grounds}, {"oracle_run", c.oracle_run},
           {"oracle_inconclusive", c.oracle_inconclusive}};
    if (c.witness) {
        const auto& w = *c.witness;
        j["witness"] = {{"kind", witness_name(w.kind)}, {"curve_a", w.curve_a},  {"curve_b", w.curve_b},
                        {"index_a", w.index_a},        {"index_b", w.index_b}, {"dual_vertex", w.dual_vertex}};
    }
    return j;
}

json curves_to_json(const CurveSystem& c) {
    json curves = json::array();
    for (const auto& x : c.curves) curves.push_back({{"darts", x.edges}, {"length", x.length}});
    return {{"curves", curves}, {"total_length", c.total_length}};
}

} // namespace hypfill
