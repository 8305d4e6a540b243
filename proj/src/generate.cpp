#include "hypfill/generate.hpp"
#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hypfill {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw DomainError("uniform_below: empty range");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<int> LabelledTriangulation::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (int l : label) ++deg[l];
    return deg;
}

namespace {

// Standard word a1 b1 a1^-1 b1^-1 ...: side 4j pairs with 4j+2, 4j+1 with 4j+3.
int side_partner(int i) { return (i % 4 < 2) ? i + 2 : i - 2; }

void finish(LabelledTriangulation& lt) {
    lt.tri.validate();
    auto orbits = lt.tri.vertex_orbits();
    for (const auto& o : orbits) {
        for (int d : o) {
            if (lt.label[d] != lt.label[o.front()]) throw InvariantViolation("triangulation labels disagree with orbits");
        }
    }
    if (static_cast<int>(orbits.size()) != lt.vertex_count) throw InvariantViolation("triangulation label count mismatch");
}

} // namespace

LabelledTriangulation polygon_fan(int genus) {
    if (genus < 1) throw InputError("polygon_fan: genus must be >= 1");
    int n = 4 * genus;
    LabelledTriangulation lt;
    lt.tri.triangles = n - 2;
    lt.tri.gluing.assign(3 * (n - 2), -1);
    lt.label.assign(3 * (n - 2), 0);
    lt.vertex_count = 1;
    // Triangle i (0-based) has corners P0, P_{i+1}, P_{i+2}.
    std::vector<int> side_dart(n, -1);
    for (int i = 0; i < n - 2; ++i) {
        if (i == 0) side_dart[0] = 0;
        side_dart[i + 1] = 3 * i + 1;
        if (i == n - 3) side_dart[n - 1] = 3 * i + 2;
        if (i + 1 < n - 2) {
            lt.tri.gluing[3 * i + 2] = 3 * (i + 1);
            lt.tri.gluing[3 * (i + 1)] = 3 * i + 2;
        }
    }
    for (int i = 0; i < n; ++i) lt.tri.gluing[side_dart[i]] = side_dart[side_partner(i)];
    finish(lt);
    return lt;
}

LabelledTriangulation polygon_cone(int genus) {
    if (genus < 1) throw InputError("polygon_cone: genus must be >= 1");
    int n = 4 * genus;
    LabelledTriangulation lt;
    lt.tri.triangles = n;
    lt.tri.gluing.assign(3 * n, -1);
    lt.label.assign(3 * n, 1);
    lt.vertex_count = 2;
    for (int i = 0; i < n; ++i) {
        lt.label[3 * i] = 0; // centre
        int j = (i + 1) % n;
        lt.tri.gluing[3 * i + 2] = 3 * j;
        lt.tri.gluing[3 * j] = 3 * i + 2;
    }
    for (int i = 0; i < n; ++i) lt.tri.gluing[3 * i + 1] = 3 * side_partner(i) + 1;
    finish(lt);
    return lt;
}

void split_triangle(LabelledTriangulation& lt, int t) {
    auto& g = lt.tri.gluing;
    int F = lt.tri.triangles;
    int t1 = F, t2 = F + 1;
    int x0 = lt.label[3 * t], x1 = lt.label[3 * t + 1], x2 = lt.label[3 * t + 2];
    int n = lt.vertex_count++;
    auto remap = [&](int d) {
        if (d == 3 * t + 1) return 3 * t1;
        if (d == 3 * t + 2) return 3 * t2;
        return d;
    };
    int p0 = remap(g[3 * t]), p1 = remap(g[3 * t + 1]), p2 = remap(g[3 * t + 2]);
    g.resize(3 * (F + 2), -1);
    lt.label.resize(3 * (F + 2), -1);
    lt.tri.triangles = F + 2;
    auto glue = [&](int a, int b) {
        g[a] = b;
        g[b] = a;
    };
    glue(3 * t, p0);
    glue(3 * t1, p1);
    glue(3 * t2, p2);
    glue(3 * t + 1, 3 * t1 + 2);
    glue(3 * t + 2, 3 * t2 + 1);
    glue(3 * t1 + 1, 3 * t2 + 2);
    int lab[9] = {x0, x1, n, x1, x2, n, x2, x0, n};
    for (int k = 0; k < 3; ++k) {
        lt.label[3 * t + k] = lab[k];
        lt.label[3 * t1 + k] = lab[3 + k];
        lt.label[3 * t2 + k] = lab[6 + k];
    }
}

bool flip_edge(LabelledTriangulation& lt, int d) {
    auto& g = lt.tri.gluing;
    int dp = g[d];
    int t1 = d / 3, t2 = dp / 3;
    if (t1 == t2) return false;
    int k = d % 3, j = dp % 3;
    int A1 = 3 * t1 + (k + 1) % 3, A2 = 3 * t1 + (k + 2) % 3;
    int B1 = 3 * t2 + (j + 1) % 3, B2 = 3 * t2 + (j + 2) % 3;
    int a = lt.label[d], b = lt.label[A1], c = lt.label[A2], e = lt.label[B2];
    int n0 = 3 * t1, n1 = 3 * t1 + 1, n2 = 3 * t1 + 2;
    int m0 = 3 * t2, m1 = 3 * t2 + 1, m2 = 3 * t2 + 2;
    auto remap = [&](int x) {
        if (x == B1) return n0;
        if (x == A2) return n2;
        if (x == B2) return m0;
        if (x == A1) return m1;
        return x;
    };
    int pB1 = remap(g[B1]), pA2 = remap(g[A2]), pB2 = remap(g[B2]), pA1 = remap(g[A1]);
    auto glue = [&](int x, int y) {
        g[x] = y;
        g[y] = x;
    };
    glue(n0, pB1);
    glue(n2, pA2);
    glue(m0, pB2);
    glue(m1, pA1);
    glue(n1, m2);
    lt.label[n0] = a;
    lt.label[n1] = e;
    lt.label[n2] = c;
    lt.label[m0] = e;
    lt.label[m1] = b;
    lt.label[m2] = c;
    return true;
}

LabelledTriangulation anneal_degrees(LabelledTriangulation lt, const std::vector<int>& target, std::uint64_t seed,
                                     long max_steps) {
    if (static_cast<int>(target.size()) != lt.vertex_count) throw InputError("anneal_degrees: target size mismatch");
    long sum = 0;
    for (int x : target) sum += x;
    if (sum != 3L * lt.tri.triangles) throw InputError("anneal_degrees: target degrees do not sum to 3F");
    std::mt19937_64 rng(seed);
    auto deg = lt.degrees();
    auto cost = [&](int v, int dv) {
        long x = dv - target[v];
        return x * x;
    };
    long total = 0;
    for (int v = 0; v < lt.vertex_count; ++v) total += cost(v, deg[v]);
    double temp = 1.5;
    for (long step = 0; step < max_steps && total > 0; ++step) {
        int d = static_cast<int>(uniform_below(rng, lt.tri.darts()));
        int dp = lt.tri.gluing[d];
        if (d / 3 == dp / 3) continue;
        int a = lt.label[d], b = lt.label[CombinatorialTriangulation::rho(d)];
        int c = lt.label[CombinatorialTriangulation::rho(CombinatorialTriangulation::rho(d))];
        int e = lt.label[CombinatorialTriangulation::rho(CombinatorialTriangulation::rho(dp))];
        std::map<int, int> change;
        change[a] -= 1;
        change[b] -= 1;
        change[c] += 1;
        change[e] += 1;
        long delta = 0;
        bool ok = true;
        for (auto [v, dv] : change) {
            if (deg[v] + dv < 3) ok = false;
            delta += cost(v, deg[v] + dv) - cost(v, deg[v]);
        }
        if (!ok) continue;
        if (delta <= 0 || uniform_unit(rng) < std::exp(-delta / temp)) {
            flip_edge(lt, d);
            for (auto [v, dv] : change) deg[v] += dv;
            total += delta;
        }
        temp = std::max(0.05, temp * 0.99999);
    }
    if (total != 0) throw GeometryError("anneal_degrees: target degrees not reached");
    finish(lt);
    return lt;
}

CombinatorialTriangulation regular_triangulation(int genus, int degree, std::uint64_t seed) {
    if (genus < 2 || degree < 7) throw InputError("regular_triangulation: need genus >= 2 and degree >= 7");
    if ((12 * (genus - 1)) % (degree - 6) != 0) throw InputError("regular_triangulation: degree does not divide");
    int V = 12 * (genus - 1) / (degree - 6);
    LabelledTriangulation lt = polygon_fan(genus);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    while (lt.vertex_count < V) split_triangle(lt, static_cast<int>(uniform_below(rng, lt.tri.triangles)));
    lt = anneal_degrees(std::move(lt), std::vector<int>(V, degree), seed);
    for (int x : lt.tri.vertex_degrees()) {
        if (x != degree) throw InvariantViolation("regular_triangulation: degree mismatch");
    }
    return lt.tri;
}

std::vector<TriangleShape> equilateral_shapes(const CombinatorialTriangulation& tri, int degree) {
    double a = 2 * kPi / degree;
    return std::vector<TriangleShape>(tri.triangles, TriangleShape::compact(a, a, a));
}

namespace {

double corner_angle(double r, double ra, double rb) {
    double x = r + ra, y = r + rb, z = ra + rb;
    double c = (std::cosh(x) * std::cosh(y) - std::cosh(z)) / (std::sinh(x) * std::sinh(y));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

} // namespace

std::vector<double> circle_pack(const CombinatorialTriangulation& tri, double tol, int max_sweeps) {
    auto orbits = tri.vertex_orbits();
    auto vod = tri.vertex_of_dart();
    int V = static_cast<int>(orbits.size());
    for (const auto& o : orbits) {
        if (o.size() < 3) throw GeometryError("circle_pack: vertex of degree < 3");
    }
    std::vector<double> r(V, 1.0);
    auto angle_sum = [&](int v, double rv) {
        double s = 0.0;
        for (int d : orbits[v]) {
            int a = vod[CombinatorialTriangulation::rho(d)];
            int b = vod[CombinatorialTriangulation::rho(CombinatorialTriangulation::rho(d))];
            s += corner_angle(rv, a == v ? rv : r[a], b == v ? rv : r[b]);
        }
        return s;
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int v = 0; v < V; ++v) worst = std::max(worst, std::abs(angle_sum(v, r[v]) - 2 * kPi));
        if (worst < tol) return r;
        for (int v = 0; v < V; ++v) {
            double lo = std::log(r[v]) - 8, hi = std::log(r[v]) + 8;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (angle_sum(v, std::exp(mid)) > 2 * kPi ? lo : hi) = mid;
            }
            r[v] = std::exp(0.5 * (lo + hi));
        }
    }
    throw GeometryError("circle_pack: no convergence");
}

std::vector<TriangleShape> shapes_from_radii(const CombinatorialTriangulation& tri, const std::vector<double>& radii) {
    auto vod = tri.vertex_of_dart();
    std::vector<TriangleShape> out;
    for (int t = 0; t < tri.triangles; ++t) {
        double r0 = radii[vod[3 * t]], r1 = radii[vod[3 * t + 1]], r2 = radii[vod[3 * t + 2]];
        out.push_back(TriangleShape::compact(corner_angle(r0, r1, r2), corner_angle(r1, r2, r0), corner_angle(r2, r0, r1)));
    }
    return out;
}

} // namespace hypfill
