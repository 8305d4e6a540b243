#include "hypfill/surface.hpp"
#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hypfill {

// ---------------------------------------------------------------- combinatorics

CombinatorialTriangulation CombinatorialTriangulation::from_pairs(int triangles,
                                                                  const std::vector<std::array<int, 2>>& pairs) {
    CombinatorialTriangulation c;
    c.triangles = triangles;
    c.gluing.assign(3 * triangles, -1);
    for (const auto& p : pairs) {
        for (int d : p) {
            if (d < 0 || d >= 3 * triangles) throw InputError("gluing: dart out of range");
        }
        if (c.gluing[p[0]] != -1 || c.gluing[p[1]] != -1) throw InputError("gluing: dart glued twice");
        c.gluing[p[0]] = p[1];
        c.gluing[p[1]] = p[0];
    }
    c.validate();
    return c;
}

void CombinatorialTriangulation::validate() const {
    if (triangles <= 0 || triangles % 2 != 0) throw InputError("triangulation: triangle count must be positive and even");
    if (static_cast<int>(gluing.size()) != 3 * triangles) throw InputError("triangulation: gluing size != 3F");
    for (int d = 0; d < darts(); ++d) {
        int e = gluing[d];
        if (e < 0 || e >= darts()) throw InputError("triangulation: unglued dart " + std::to_string(d));
        if (e == d) throw InputError("triangulation: dart glued to itself");
        if (gluing[e] != d) throw InputError("triangulation: gluing is not an involution");
    }
}

std::vector<std::vector<int>> CombinatorialTriangulation::vertex_orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(darts(), 0);
    for (int d = 0; d < darts(); ++d) {
        if (seen[d]) continue;
        std::vector<int> orbit;
        int e = d;
        do {
            seen[e] = 1;
            orbit.push_back(e);
            e = sigma(e);
        } while (e != d);
        out.push_back(std::move(orbit));
    }
    return out;
}

std::vector<int> CombinatorialTriangulation::vertex_of_dart() const {
    std::vector<int> v(darts(), -1);
    auto orbits = vertex_orbits();
    for (size_t i = 0; i < orbits.size(); ++i)
        for (int d : orbits[i]) v[d] = static_cast<int>(i);
    return v;
}

std::vector<int> CombinatorialTriangulation::vertex_degrees() const {
    std::vector<int> deg;
    for (const auto& o : vertex_orbits()) deg.push_back(static_cast<int>(o.size()));
    return deg;
}

TriangleShape TriangleShape::compact(double a0, double a1, double a2) {
    sides_from_angles(a0, a1, a2); // validates
    TriangleShape s;
    s.kind = Kind::Compact;
    s.angles = {a0, a1, a2};
    return s;
}

double TriangleShape::side(int k) const {
    if (kind == Kind::Ideal) return std::numeric_limits<double>::infinity();
    auto s = sides_from_angles(angles[0], angles[1], angles[2]);
    return s[(k + 2) % 3];
}

double GeodesicPath::length() const {
    double l = 0.0;
    for (const auto& s : segments) l += dist(s.entry, s.exit);
    return l;
}

// ---------------------------------------------------------------- building

namespace {

TriangleChart ideal_chart() {
    TriangleChart c;
    const double r = 2.0 - std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
        c.corners[k] = std::polar(1.0, 2 * kPi * k / 3);
        c.anchors[k] = HPoint(-r * std::polar(1.0, 2 * kPi * ((k + 2) % 3) / 3));
    }
    c.radius = std::numeric_limits<double>::infinity();
    return c;
}

TriangleChart compact_chart(const TriangleShape& s) {
    HTriangle t = triangle_from_angles(s.angles[0], s.angles[1], s.angles[2]);
    Isometry m = Isometry::translation_to(incenter(t)).inverse();
    TriangleChart c;
    for (int k = 0; k < 3; ++k) c.corners[k] = m(t[k]).disk();
    for (int k = 0; k < 3; ++k) {
        c.anchors[k] = midpoint(HPoint(c.corners[k]), HPoint(c.corners[(k + 1) % 3]));
        c.radius = std::max(c.radius, dist(HPoint(), HPoint(c.corners[k])));
    }
    return c;
}

Isometry side_frame(const TriangleChart& c, int k) {
    return Isometry::frame(c.anchors[k], std::arg(direction(c.anchors[k], c.corners[(k + 1) % 3])));
}

} // namespace

TriangulatedSurface build_surface(const CombinatorialTriangulation& tri, const std::vector<TriangleShape>& shapes) {
    tri.validate();
    if (static_cast<int>(shapes.size()) != tri.triangles) throw InputError("build_surface: one shape per triangle required");
    auto kind0 = shapes.front().kind;
    for (const auto& s : shapes) {
        if (s.kind != kind0) throw InputError("build_surface: mixed triangle kinds");
    }

    TriangulatedSurface out;
    out.kind_ = kind0 == TriangleShape::Kind::Ideal ? TriangulatedSurface::Kind::Cusped
                                                     : TriangulatedSurface::Kind::Closed;
    out.tri_ = tri;
    out.shapes_ = shapes;
    out.orbits_ = tri.vertex_orbits();
    out.vertex_of_dart_ = tri.vertex_of_dart();

    for (const auto& s : shapes) {
        if (s.kind == TriangleShape::Kind::Compact) sides_from_angles(s.angles[0], s.angles[1], s.angles[2]);
        out.charts_.push_back(s.kind == TriangleShape::Kind::Ideal ? ideal_chart() : compact_chart(s));
    }

    if (out.kind_ == TriangulatedSurface::Kind::Closed) {
        for (int d = 0; d < tri.darts(); ++d) {
            int e = tri.iota(d);
            double ld = shapes[d / 3].side(d % 3), le = shapes[e / 3].side(e % 3);
            if (std::abs(ld - le) > 1e-9)
                throw GeometryError("build_surface: glued sides of darts " + std::to_string(d) + " and " +
                                    std::to_string(e) + " differ in length");
        }
        for (size_t v = 0; v < out.orbits_.size(); ++v) {
            double sum = 0.0;
            for (int d : out.orbits_[v]) sum += shapes[d / 3].angles[d % 3];
            if (std::abs(sum - 2 * kPi) > 1e-9)
                throw GeometryError("build_surface: angle sum at vertex orbit " + std::to_string(v) + " is " +
                                    std::to_string(sum) + ", expected 2pi");
        }
    }

    out.transitions_.resize(tri.darts());
    for (int d = 0; d < tri.darts(); ++d) {
        int e = tri.iota(d);
        const auto& ct = out.charts_[d / 3];
        const auto& ce = out.charts_[e / 3];
        out.transitions_[d] = side_frame(ce, e % 3) * Isometry::rotation(kPi) * side_frame(ct, d % 3).inverse();
    }
    for (int d = 0; d < tri.darts(); ++d) {
        int e = tri.iota(d);
        const auto& T = out.transitions_[d];
        const auto& ct = out.charts_[d / 3];
        const auto& ce = out.charts_[e / 3];
        double err = std::max(std::abs(T.apply(ct.corners[d % 3]) - ce.corners[(e % 3 + 1) % 3]),
                              std::abs(T.apply(ct.corners[(d % 3 + 1) % 3]) - ce.corners[e % 3]));
        err = std::max(err, std::abs(T(ct.anchors[d % 3]).disk() - ce.anchors[e % 3].disk()));
        if (err > 1e-9) throw GeometryError("build_surface: transition does not match shared side");
    }

    // components of the side gluing; genus is summed over them
    std::vector<int> comp(tri.triangles);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    int components = tri.triangles;
    for (int d = 0; d < tri.darts(); ++d) {
        int a = find(d / 3), b = find(tri.iota(d) / 3);
        if (a != b) comp[a] = b, --components;
    }

    EulerData& eu = out.euler_;
    eu.vertices = static_cast<int>(out.orbits_.size());
    eu.edges = 3 * tri.triangles / 2;
    eu.faces = tri.triangles;
    eu.components = components;
    if (out.kind_ == TriangulatedSurface::Kind::Closed) {
        int chi = eu.vertices - eu.edges + eu.faces;
        if (chi % 2 != 0) throw InvariantViolation("build_surface: odd Euler characteristic");
        eu.genus = (2 * components - chi) / 2;
    } else {
        int n = tri.triangles / 2;
        int twice = 2 * components + n - eu.vertices;
        if (twice < 0 || twice % 2 != 0) throw InvariantViolation("build_surface: invalid cusped genus");
        eu.genus = twice / 2;
    }
    return out;
}

EulerData euler_data(const TriangulatedSurface& s) { return s.euler(); }

const Isometry& transition(const TriangulatedSurface& s, int dart) {
    if (dart < 0 || dart >= s.triangulation().darts()) throw InputError("transition: dart out of range");
    return s.transition(dart);
}

bool TriangulatedSurface::contains(int t, const HPoint& z, double tol) const {
    const auto& c = charts_[t];
    for (int k = 0; k < 3; ++k) {
        if (orient(c.corners[k], c.corners[(k + 1) % 3], z.disk()) < -tol) return false;
    }
    return true;
}

Located locate(const TriangulatedSurface& s, int tri, const HPoint& z) {
    Located r{{tri, z}, Isometry()};
    for (int step = 0; step < 100000; ++step) {
        const auto& c = s.chart(r.point.tri);
        int worst = -1;
        double wv = -1e-15;
        for (int k = 0; k < 3; ++k) {
            double o = orient(c.corners[k], c.corners[(k + 1) % 3], r.point.z.disk());
            if (o < wv) {
                wv = o;
                worst = k;
            }
        }
        if (worst < 0) return r;
        int d = 3 * r.point.tri + worst;
        const Isometry& T = s.transition(d);
        r.point.z = T(r.point.z);
        r.point.tri = s.triangulation().iota(d) / 3;
        r.map = T * r.map;
    }
    throw GeometryError("locate: walk did not terminate");
}

// ---------------------------------------------------------------- tracing

namespace {

double cross2(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

double busemann(cplx xi, cplx z) { return std::log(std::norm(xi - z) / (1.0 - std::norm(z))); }

// Parameter in [0, 1] along [p, q] where the cusp cutoff is first crossed, or -1.
double cusp_entry(const TriangulatedSurface& s, int t, const HPoint& p, const HPoint& q, double depth_cut) {
    const auto& c = s.chart(t);
    double len = dist(p, q);
    if (len == 0.0) return -1;
    double theta = std::arg(direction(p, q));
    constexpr int n = 64;
    for (int k = 0; k < 3; ++k) {
        cplx xi = c.corners[k];
        double ref = busemann(xi, c.anchors[k].disk());
        auto deep = [&](double f) { return ref - busemann(xi, shoot(p, theta, f * len).disk()) > depth_cut; };
        double prev = 0.0;
        for (int i = 0; i <= n; ++i) {
            double f = static_cast<double>(i) / n;
            if (deep(f)) {
                if (i == 0) return 0.0;
                double lo = prev, hi = f;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    (deep(mid) ? hi : lo) = mid;
                }
                return hi;
            }
            prev = f;
        }
    }
    return -1;
}

} // namespace

GeodesicPath trace_geodesic(const TriangulatedSurface& s, const SurfacePoint& start, double direction_angle,
                            double max_length, const TraceOptions& opt) {
    if (!(max_length > 0.0)) throw PreconditionError("trace_geodesic: max_length must be positive");
    if (start.tri < 0 || start.tri >= s.triangles()) throw PreconditionError("trace_geodesic: bad triangle");
    if (!s.contains(start.tri, start.z, 1e-10)) throw PreconditionError("trace_geodesic: start outside its triangle");

    const bool cusped = s.kind() == TriangulatedSurface::Kind::Cusped;
    const double depth_cut = std::log(2.0 / opt.cusp_horocycle_length);

    GeodesicPath path;
    int t = start.tri;
    HPoint p = start.z;
    double theta = direction_angle;
    double remaining = max_length;
    for (int guard = 0; guard < 10000000; ++guard) {
        const auto& c = s.chart(t);
        cplx P = p.klein();
        cplx D = shoot(p, theta, 1.0).klein() - P;
        int best = -1;
        double best_s = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            cplx a = 2.0 * c.corners[k] / (1.0 + std::norm(c.corners[k]));
            cplx b = 2.0 * c.corners[(k + 1) % 3] / (1.0 + std::norm(c.corners[(k + 1) % 3]));
            cplx E = b - a;
            double den = cross2(D, E);
            if (!(cross2(E, D) < 0.0)) continue; // not leaving through this side
            double sp = cross2(a - P, E) / den;
            if (sp < best_s) {
                best_s = sp;
                best = k;
            }
        }
        if (best < 0) throw GeometryError("trace_geodesic: no exit side");
        best_s = std::max(best_s, 0.0);
        cplx X = P + best_s * D;
        if (std::norm(X) >= 1.0) X *= (1.0 - 1e-16) / std::abs(X);
        HPoint exit = HPoint::from_klein(X);
        double dexit = dist(p, exit);

        bool last = dexit >= remaining;
        HPoint end = last ? shoot(p, theta, remaining) : exit;
        if (cusped) {
            double f = cusp_entry(s, t, p, end, depth_cut);
            if (f >= 0.0) {
                HPoint stop = shoot(p, theta, f * dist(p, end));
                path.segments.push_back({t, p, stop, -1});
                path.reached_cusp = true;
                return path;
            }
        }
        if (last) {
            path.segments.push_back({t, p, end, -1});
            return path;
        }
        if (!cusped) {
            for (int k = 0; k < 3; ++k) {
                if (dist(exit, HPoint(c.corners[k])) < 1e-10) throw CornerHitError("trace_geodesic: hit a corner");
            }
        }
        int d = 3 * t + best;
        path.segments.push_back({t, p, exit, d});
        remaining -= dexit;
        const Isometry& T = s.transition(d);
        HPoint far = shoot(p, theta, dexit + 1.0);
        p = T(exit);
        theta = std::arg(direction(p, T(far)));
        t = s.triangulation().iota(d) / 3;
    }
    throw GeometryError("trace_geodesic: too many segments");
}

void check_contiguous(const TriangulatedSurface& s, const GeodesicPath& p) {
    if (p.segments.empty()) throw InputError("path: no segments");
    const auto& tri = s.triangulation();
    size_t n = p.segments.size();
    for (size_t i = 0; i + 1 < n || (p.closed && i < n); ++i) {
        const auto& a = p.segments[i];
        const auto& b = p.segments[(i + 1) % n];
        if (p.closed && i + 1 == n && a.exit_dart < 0) {
            // closing inside the start chart
            if (a.tri != b.tri || dist(a.exit, b.entry) > 1e-8) throw InputError("path: closed path does not close");
            continue;
        }
        if (a.exit_dart < 0) {
            // bend inside one chart
            if (a.tri != b.tri || dist(a.exit, b.entry) > 1e-9) throw InputError("path: segments do not meet");
            continue;
        }
        if (a.exit_dart / 3 != a.tri) throw InputError("path: exit dart not on the segment's triangle");
        if (tri.iota(a.exit_dart) / 3 != b.tri) throw InputError("path: exit dart does not lead to next triangle");
        HPoint m = s.transition(a.exit_dart)(a.exit);
        if (dist(m, b.entry) > 1e-9) throw InputError("path: segments do not match across a gluing");
    }
}

DevelopedPath develop(const TriangulatedSurface& s, const GeodesicPath& p) {
    check_contiguous(s, p);
    const auto& tri = s.triangulation();
    DevelopedPath out;
    Isometry M;
    for (size_t i = 0; i < p.segments.size(); ++i) {
        const auto& seg = p.segments[i];
        out.points.push_back(M(seg.entry));
        if (i + 1 < p.segments.size() || p.closed) {
            if (seg.exit_dart >= 0) M = M * s.transition(tri.iota(seg.exit_dart));
        } else {
            out.points.push_back(M(seg.exit));
        }
    }
    if (p.closed) out.holonomy = M;
    return out;
}

double closed_polygon_length(const std::vector<HPoint>& pts, const Isometry& h) {
    double l = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) l += dist(pts[i], i + 1 < pts.size() ? pts[i + 1] : h(pts[0]));
    return l;
}

double max_bend_defect(const std::vector<HPoint>& pts, const Isometry& h) {
    size_t n = pts.size();
    Isometry hi = h.inverse();
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        HPoint prev = i == 0 ? hi(pts[n - 1]) : pts[i - 1];
        HPoint next = i + 1 == n ? h(pts[0]) : pts[i + 1];
        if (dist(prev, pts[i]) < 1e-12 || dist(next, pts[i]) < 1e-12) continue;
        worst = std::max(worst, kPi - angle(pts[i], prev, next));
    }
    return worst;
}

std::vector<double> relax_closed_polygon(std::vector<HPoint>& pts, const Isometry& h, double bend_tol,
                                         int max_sweeps) {
    std::vector<double> log{closed_polygon_length(pts, h)};
    size_t n = pts.size();
    if (n == 0) return log;
    Isometry hi = h.inverse();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (max_bend_defect(pts, h) < bend_tol) return log;
        for (size_t i = 0; i < n; ++i) {
            HPoint prev = i == 0 ? hi(pts[n - 1]) : pts[i - 1];
            HPoint next = i + 1 == n ? h(pts[0]) : pts[i + 1];
            pts[i] = project_to_segment(pts[i], prev, next);
        }
        double l = closed_polygon_length(pts, h);
        if (l > log.back() + 1e-12) throw InvariantViolation("relax_closed_polygon: length increased");
        log.push_back(l);
    }
    if (max_bend_defect(pts, h) >= bend_tol) throw GeometryError("relax_closed_polygon: no convergence");
    return log;
}

GeodesicPath straighten_path(const TriangulatedSurface& s, const GeodesicPath& p, std::vector<double>* length_log) {
    DevelopedPath dev = develop(s, p);
    int t0 = p.segments.front().tri;
    if (!p.closed) {
        const HPoint& a = dev.points.front();
        const HPoint& b = dev.points.back();
        double L = dist(a, b);
        if (length_log) *length_log = {p.length(), L};
        if (L == 0.0) return GeodesicPath{{{t0, a, a, -1}}, false, false};
        return trace_geodesic(s, {t0, a}, std::arg(direction(a, b)), L);
    }
    std::vector<double> log = relax_closed_polygon(dev.points, dev.holonomy);
    if (length_log) *length_log = log;
    double L = log.back();
    Located start = locate(s, t0, dev.points[0]);
    HPoint next = dev.points.size() > 1 ? dev.points[1] : dev.holonomy(dev.points[0]);
    double theta = std::arg(direction(start.point.z, start.map(next)));
    GeodesicPath out = trace_geodesic(s, start.point, theta, L);
    out.closed = true;
    return out;
}

} // namespace hypfill
