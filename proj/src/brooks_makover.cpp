#include "hypfill/brooks_makover.hpp"

#include "hypfill/errors.hpp"
#include "hypfill/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace hypfill {

using nlohmann::json;
using CT = CombinatorialTriangulation;

GluingPattern sample_pattern(int n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("sample_pattern: N must be >= 1");
    std::mt19937_64 rng(seed);
    const int darts = 6 * n;
    std::vector<int> order(darts);
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates, then pair neighbours
    for (int i = darts - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
    GluingPattern p;
    p.n = n;
    p.seed = seed;
    p.tri.triangles = 2 * n;
    p.tri.gluing.assign(darts, -1);
    for (int i = 0; i < darts; i += 2) {
        p.tri.gluing[order[i]] = order[i + 1];
        p.tri.gluing[order[i + 1]] = order[i];
    }
    p.tri.validate();
    return p;
}

TriangulatedSurface build_cusped_surface(const GluingPattern& p) {
    return build_surface(p.tri, std::vector<TriangleShape>(p.tri.triangles, TriangleShape::ideal()));
}

CuspData cusp_data(const CombinatorialTriangulation& t) {
    CuspData c;
    for (const auto& o : t.vertex_orbits()) c.degrees.push_back(static_cast<int>(o.size()));
    c.cusps = static_cast<int>(c.degrees.size());
    c.min_degree = c.degrees.empty() ? 0 : *std::min_element(c.degrees.begin(), c.degrees.end());
    // triangles joined by the gluing
    std::vector<int> parent(t.triangles);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    c.components = t.triangles;
    for (int d = 0; d < t.darts(); ++d) {
        int a = find(CT::tri(d)), b = find(CT::tri(t.iota(d)));
        if (a != b) {
            parent[a] = b;
            --c.components;
        }
    }
    const int n = t.triangles / 2;
    const int twice = 2 * c.components + n - c.cusps;
    if (twice < 0 || twice % 2) throw InvariantViolation("cusp_data: 2k + N - c is not a nonnegative even number");
    c.genus = twice / 2;
    return c;
}

double inscribed_arc_length() { return 2.0 * std::asinh(0.5); }

InscribedSystem inscribed_filling_geodesics(const TriangulatedSurface& s) {
    const auto& t = s.triangulation();
    for (int i = 0; i < t.triangles; ++i) {
        if (s.shape(i).kind != TriangleShape::Kind::Ideal)
            throw PreconditionError("inscribed_filling_geodesics: triangle " + std::to_string(i) + " is not ideal");
    }
    const int D = t.darts();
    auto anchor = [&](int d) { return s.chart(CT::tri(d)).anchors[CT::corner(d)]; };
    auto prev = [](int d) { return CT::rho(CT::rho(d)); };

    InscribedSystem out;
    out.min_arc_length = std::numeric_limits<double>::infinity();
    for (int tr = 0; tr < t.triangles; ++tr) {
        for (int k = 0; k < 3; ++k) {
            double l = dist(anchor(3 * tr + k), anchor(3 * tr + (k + 1) % 3));
            out.arc_length = std::max(out.arc_length, l);
            out.min_arc_length = std::min(out.min_arc_length, l);
        }
    }
    // At the tangency point of d the arc at the start corner of d continues as the arc at the
    // start corner of iota(d), and likewise for the end corners.
    for (int d = 0; d < D; ++d) {
        const int e = t.iota(d);
        const HPoint a = anchor(d);
        const Isometry& back = s.transition(e); // chart of tri(e) onto chart of tri(d)
        const HPoint start_here = anchor(prev(d)), end_here = anchor(CT::rho(d));
        const HPoint start_there = back(anchor(prev(e))), end_there = back(anchor(CT::rho(e)));
        for (auto [p, q] : {std::pair{start_here, start_there}, std::pair{end_here, end_there}}) {
            double bend = std::abs(angle(a, p, q) - kPi);
            out.max_bend = std::max(out.max_bend, bend);
        }
    }
    if (out.max_bend > 1e-9) throw GeometryError("inscribed_filling_geodesics: curve bends at a tangency point");

    // Arc (t, k) is the start-corner arc of dart 3t+k and the end-corner arc of dart 3t+k-1.
    std::vector<char> used(D, 0); // indexed by 3t+k
    for (int a0 = 0; a0 < D; ++a0) {
        if (used[a0]) continue;
        InscribedCurve c;
        // leave arc a0 through the tangency point on side k-1
        int arc = a0, exit = prev(a0);
        while (true) {
            if (used[arc]) throw InvariantViolation("inscribed_filling_geodesics: arc reached twice");
            used[arc] = 1;
            c.length += dist(anchor(arc), anchor(prev(arc)));
            c.darts.push_back(exit);
            int e = t.iota(exit);
            if (exit == prev(arc)) {
                // arrived on the end-corner arc of `exit`: continue on the end-corner arc of e
                arc = CT::rho(e);
                exit = CT::rho(e);
            } else {
                // arrived on the start-corner arc of `exit`: continue on the start-corner arc of e
                arc = e;
                exit = prev(e);
            }
            if (arc == a0) break;
        }
        out.total_length += c.length;
        out.curves.push_back(std::move(c));
    }

    // Complement: one central region per triangle and one corner region per corner. Corner
    // regions meet across the half-sides; central regions touch no side.
    std::vector<int> parent(D);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int d = 0; d < D; ++d) {
        // the half of side d at its start corner faces the half of iota(d) at its end corner
        int a = find(d), b = find(CT::rho(t.iota(d)));
        if (a != b) parent[a] = b;
    }
    std::map<int, std::vector<int>> comps;
    for (int d = 0; d < D; ++d) comps[find(d)].push_back(d);
    auto orbits = t.vertex_orbits();
    std::vector<int> vod = t.vertex_of_dart();
    bool annuli_ok = true;
    for (const auto& [root, corners] : comps) {
        int v = vod[corners.front()];
        annuli_ok = annuli_ok && corners.size() == orbits[v].size();
        for (int d : corners) annuli_ok = annuli_ok && vod[d] == v;
    }
    out.disk_faces = t.triangles;
    out.annulus_faces = static_cast<int>(comps.size());
    out.fills = annuli_ok && out.annulus_faces == static_cast<int>(orbits.size());
    return out;
}

FillingBounds filling_length_bounds(const TriangulatedSurface& s, const InscribedSystem& c) {
    const int n = s.triangles() / 2;
    FillingBounds b{kPi * n, c.total_length, 6.0 * n};
    if (!(b.lower <= b.witness && b.witness < b.upper))
        throw InvariantViolation("filling_length_bounds: pi N <= witness < 6N fails");
    return b;
}

namespace {

std::uint64_t sample_seed(std::uint64_t seed, int i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::array<std::uint32_t, 2> w{};
    seq.generate(w.begin(), w.end());
    return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
}

SampleRow one_sample(int n, std::uint64_t seed, int i, bool geometry) {
    GluingPattern p = sample_pattern(n, sample_seed(seed, i));
    CuspData cd = cusp_data(p.tri);
    SampleRow r;
    r.seed = seed;
    r.sample_idx = i;
    r.n = n;
    r.cusps = cd.cusps;
    r.genus = cd.genus;
    r.min_cusp_degree = cd.min_degree;
    if (geometry) {
        TriangulatedSurface s = build_cusped_surface(p);
        InscribedSystem c = inscribed_filling_geodesics(s);
        if (!c.fills) throw InvariantViolation("run_statistics: inscribed system does not fill");
        FillingBounds b = filling_length_bounds(s, c);
        r.witness_length = b.witness;
        r.lower_bound = b.lower;
        r.upper_bound = b.upper;
    } else {
        r.witness_length = 6 * n * inscribed_arc_length();
        r.lower_bound = kPi * n;
        r.upper_bound = 6.0 * n;
    }
    return r;
}

} // namespace

void recompute_aggregates(BMStatistics& s) {
    double g = 0.0;
    long big = 0, lb = 0;
    for (const auto& r : s.rows) {
        g += r.genus;
        big += r.min_cusp_degree >= s.degree_threshold;
        lb += 7.0 * r.genus > 3.5 * r.n;
    }
    const double m = s.rows.empty() ? 1.0 : static_cast<double>(s.rows.size());
    s.mean_genus = g / m;
    s.fraction_min_degree = big / m;
    s.fraction_lower_7g = lb / m;
}

BMStatistics run_statistics(int n, int samples, std::uint64_t seed, const StatisticsOptions& opt) {
    if (samples < 1) throw PreconditionError("run_statistics: samples must be >= 1");
    if (n < 1) throw PreconditionError("run_statistics: N must be >= 1");
    BMStatistics s;
    s.n = n;
    s.samples = samples;
    s.seed = seed;
    s.degree_threshold = opt.degree_threshold;
    s.rows.resize(samples);
    int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, samples);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < samples; i += threads) s.rows[i] = one_sample(n, seed, i, opt.geometry);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    recompute_aggregates(s);
    return s;
}

std::string statistics_to_csv(const BMStatistics& s) {
    std::ostringstream o;
    o << "seed,sample_idx,N,cusps,genus,min_cusp_degree,witness_length,lower_bound,upper_bound\n";
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const auto& r : s.rows) {
        o << r.seed << ',' << r.sample_idx << ',' << r.n << ',' << r.cusps << ',' << r.genus << ','
          << r.min_cusp_degree << ',' << num(r.witness_length) << ',' << num(r.lower_bound) << ','
          << num(r.upper_bound) << '\n';
    }
    return o.str();
}

json statistics_summary(const BMStatistics& s) {
    std::map<int, long> genus_hist;
    for (const auto& r : s.rows) ++genus_hist[r.genus];
    json hist = json::object();
    for (auto [g, k] : genus_hist) hist[std::to_string(g)] = k;
    return {{"N", s.n},
            {"samples", s.samples},
            {"seed", s.seed},
            {"degree_threshold", s.degree_threshold},
            {"mean_genus", s.mean_genus},
            {"fraction_min_cusp_degree_at_least_threshold", s.fraction_min_degree},
            {"fraction_7g_above_3.5N", s.fraction_lower_7g},
            {"genus_histogram", hist}};
}

std::map<std::pair<int, int>, long> enumerate_patterns(int n) {
    if (n < 1 || n > 2) throw PreconditionError("enumerate_patterns: N must be 1 or 2");
    std::map<std::pair<int, int>, long> out;
    CombinatorialTriangulation t;
    t.triangles = 2 * n;
    t.gluing.assign(6 * n, -1);
    auto rec = [&](auto&& self) -> void {
        int a = 0;
        while (a < t.darts() && t.gluing[a] >= 0) ++a;
        if (a == t.darts()) {
            CuspData c = cusp_data(t);
            ++out[{c.cusps, c.genus}];
            return;
        }
        for (int b = a + 1; b < t.darts(); ++b) {
            if (t.gluing[b] >= 0) continue;
            t.gluing[a] = b;
            t.gluing[b] = a;
            self(self);
            t.gluing[a] = t.gluing[b] = -1;
        }
    };
    rec(rec);
    return out;
}

} // namespace hypfill
