#include "hypfill/hyperbolic.hpp"
#include "hypfill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypfill {

namespace {

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

cplx to_klein(cplx z) { return 2.0 * z / (1.0 + std::norm(z)); }

} // namespace

HPoint::HPoint(cplx disk) : z_(disk) {
    if (!std::isfinite(disk.real()) || !std::isfinite(disk.imag()) || std::norm(disk) >= 1.0)
        throw DomainError("HPoint: coordinates outside the disk");
}

HPoint HPoint::from_klein(cplx k) {
    double r2 = std::norm(k);
    if (!(r2 < 1.0)) throw DomainError("HPoint: Klein coordinates outside the disk");
    return HPoint(k / (1.0 + std::sqrt(1.0 - r2)));
}

cplx HPoint::klein() const { return to_klein(z_); }

Isometry::Isometry(cplx a, cplx b) {
    double det = std::norm(a) - std::norm(b);
    if (!(det > 0.0) || !std::isfinite(det)) throw DomainError("Isometry: not in SU(1,1)");
    double s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
}

Isometry Isometry::translation_to(const HPoint& p) {
    return Isometry(cplx(1.0, 0.0), p.disk());
}

Isometry Isometry::rotation(double theta) { return Isometry(std::polar(1.0, theta / 2), 0.0); }

Isometry Isometry::frame(const HPoint& p, double theta) {
    return translation_to(p) * rotation(theta);
}

cplx Isometry::apply(cplx z) const { return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_)); }

HPoint Isometry::operator()(const HPoint& p) const {
    cplx w = apply(p.disk());
    double r2 = std::norm(w);
    // Clamp representation noise for points extremely close to the boundary.
    if (r2 >= 1.0) w *= (1.0 - 1e-16) / std::sqrt(r2);
    return HPoint(w);
}

Isometry Isometry::operator*(const Isometry& o) const {
    // [[a, b], [b*, a*]] [[c, d], [d*, c*]]
    cplx a = a_ * o.a_ + b_ * std::conj(o.b_);
    cplx b = a_ * o.b_ + b_ * std::conj(o.a_);
    // |a|^2 - |b|^2 cancels catastrophically for long translations; keep the raw product there
    if (std::norm(a) + std::norm(b) < 1e4) return Isometry(a, b);
    Isometry r;
    r.a_ = a;
    r.b_ = b;
    return r;
}

Isometry Isometry::inverse() const {
    if (std::norm(a_) + std::norm(b_) < 1e4) return Isometry(std::conj(a_), -b_);
    Isometry r;
    r.a_ = std::conj(a_);
    r.b_ = -b_;
    return r;
}

bool Isometry::near_identity(double tol) const {
    // a = +-1 up to phase zero, b = 0
    double phase = std::abs(a_.imag()) / std::abs(a_);
    return std::abs(b_) < tol && phase < tol;
}

double Isometry::translation_length() const {
    double tr = std::abs(a_.real());
    return tr > 1.0 ? 2.0 * std::acosh(tr) : 0.0;
}

double dist(const HPoint& p, const HPoint& q) {
    cplx num = p.disk() - q.disk();
    cplx den = 1.0 - std::conj(p.disk()) * q.disk();
    double r = std::abs(num) / std::abs(den);
    if (r >= 1.0) r = 1.0 - 1e-16;
    return 2.0 * std::atanh(r);
}

cplx direction(const HPoint& from, cplx to) {
    cplx w = (to - from.disk()) / (1.0 - std::conj(from.disk()) * to);
    double r = std::abs(w);
    if (r == 0.0) throw DegenerateError("direction: coincident points");
    return w / r;
}

double angle(const HPoint& vertex, const HPoint& a, const HPoint& b) {
    if (vertex.disk() == a.disk() || vertex.disk() == b.disk())
        throw DegenerateError("angle: ray endpoint coincides with vertex");
    cplx u = direction(vertex, a);
    cplx v = direction(vertex, b);
    return std::abs(std::arg(v * std::conj(u)));
}

HPoint shoot(const HPoint& p, double theta, double s) {
    return Isometry::translation_to(p)(HPoint(std::polar(std::tanh(s / 2), theta)));
}

HPoint toward(const HPoint& p, const HPoint& q, double s) {
    return shoot(p, std::arg(direction(p, q)), s);
}

HPoint midpoint(const HPoint& p, const HPoint& q) {
    if (p.disk() == q.disk()) return p;
    return toward(p, q, dist(p, q) / 2);
}

double orient(cplx a, cplx b, cplx c) {
    cplx ka = to_klein(a), kb = to_klein(b), kc = to_klein(c);
    return cross(kb - ka, kc - ka);
}

namespace {

struct SegmentFrame {
    double length;
    double d;     // distance of p from a
    double along; // signed distance of the foot along the geodesic
    double theta;
};

SegmentFrame segment_frame(const HPoint& p, const HPoint& a, const HPoint& b, Isometry* back) {
    Isometry to_a = Isometry::translation_to(a);
    Isometry inv = to_a.inverse();
    cplx bb = inv.apply(b.disk());
    double rot = std::arg(bb);
    Isometry m = Isometry::rotation(-rot) * inv;
    if (back) *back = to_a * Isometry::rotation(rot);
    cplx pp = m.apply(p.disk());
    SegmentFrame f{};
    f.length = dist(a, b);
    double r = std::min(std::abs(pp), 1.0 - 1e-16);
    f.d = 2.0 * std::atanh(r);
    f.theta = r == 0.0 ? 0.0 : std::arg(pp);
    f.along = std::atanh(std::tanh(f.d) * std::cos(f.theta));
    return f;
}

} // namespace

double dist_to_segment(const HPoint& p, const HPoint& a, const HPoint& b) {
    if (a.disk() == b.disk()) return dist(p, a);
    SegmentFrame f = segment_frame(p, a, b, nullptr);
    if (f.along <= 0.0) return f.d;
    if (f.along >= f.length) return dist(p, b);
    return std::asinh(std::sinh(f.d) * std::abs(std::sin(f.theta)));
}

HPoint project_to_segment(const HPoint& p, const HPoint& a, const HPoint& b) {
    if (a.disk() == b.disk()) return a;
    Isometry back;
    SegmentFrame f = segment_frame(p, a, b, &back);
    double s = std::clamp(f.along, 0.0, f.length);
    return back(HPoint(cplx(std::tanh(s / 2), 0.0)));
}

std::array<double, 3> triangle_angles(const HTriangle& t) {
    return {angle(t.a, t.b, t.c), angle(t.b, t.c, t.a), angle(t.c, t.a, t.b)};
}

void require_nondegenerate(const HTriangle& t) {
    constexpr double tol = 1e-10;
    for (int i = 0; i < 3; ++i) {
        if (dist(t[i], t[(i + 1) % 3]) <= tol) throw DegenerateError("triangle: coincident vertices");
    }
    for (int i = 0; i < 3; ++i) {
        const HPoint& p = t[i];
        // Height over the opposite geodesic line.
        double d = dist(t[(i + 1) % 3], p);
        double h = std::asinh(std::sinh(d) * std::sin(angle(t[(i + 1) % 3], p, t[(i + 2) % 3])));
        if (h <= tol) throw DegenerateError("triangle: collinear vertices");
    }
}

double triangle_area(const HTriangle& t) {
    require_nondegenerate(t);
    auto a = triangle_angles(t);
    return kPi - a[0] - a[1] - a[2];
}

bool strictly_inside(const HTriangle& t, const HPoint& p, double tol) {
    double s = orient(t.a, t.b, t.c) > 0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) {
        if (s * orient(t[i], t[(i + 1) % 3], p) <= tol) return false;
    }
    return true;
}

namespace {

struct Hyperboloid {
    double x0, x1, x2;
};

Hyperboloid lift(const HPoint& p) {
    cplx z = p.disk();
    double r2 = std::norm(z);
    double s = 1.0 / (1.0 - r2);
    return {(1.0 + r2) * s, 2.0 * z.real() * s, 2.0 * z.imag() * s};
}

HPoint drop(const Hyperboloid& h) {
    double n = std::sqrt(h.x0 * h.x0 - h.x1 * h.x1 - h.x2 * h.x2);
    double x0 = h.x0 / n;
    return HPoint(cplx(h.x1 / n, h.x2 / n) / (1.0 + x0));
}

} // namespace

HPoint incenter(const HTriangle& t) {
    double wa = std::sinh(dist(t.b, t.c));
    double wb = std::sinh(dist(t.c, t.a));
    double wc = std::sinh(dist(t.a, t.b));
    Hyperboloid A = lift(t.a), B = lift(t.b), C = lift(t.c);
    return drop({wa * A.x0 + wb * B.x0 + wc * C.x0, wa * A.x1 + wb * B.x1 + wc * C.x1,
                 wa * A.x2 + wb * B.x2 + wc * C.x2});
}

std::array<double, 3> sides_from_angles(double alpha, double beta, double gamma) {
    if (!(alpha > 0 && beta > 0 && gamma > 0) || alpha + beta + gamma >= kPi)
        throw GeometryError("triangle angles must be positive with sum < pi");
    auto side = [](double x, double y, double z) {
        return std::acosh((std::cos(x) + std::cos(y) * std::cos(z)) / (std::sin(y) * std::sin(z)));
    };
    return {side(alpha, beta, gamma), side(beta, gamma, alpha), side(gamma, alpha, beta)};
}

HTriangle triangle_from_angles(double alpha, double beta, double gamma) {
    auto s = sides_from_angles(alpha, beta, gamma);
    HPoint a;
    HPoint b(cplx(std::tanh(s[2] / 2), 0.0));
    HPoint c(std::polar(std::tanh(s[1] / 2), alpha));
    return {a, b, c};
}

double star_sum(const HTriangle& t, const HPoint& p) {
    return dist(p, t.a) + dist(p, t.b) + dist(p, t.c);
}

double fermat_residual(const HTriangle& t, const HPoint& p) {
    cplx g = 0.0;
    for (int i = 0; i < 3; ++i) g += direction(p, t[i]);
    return std::abs(g);
}

namespace {

FermatResult fermat_centered(const HTriangle& t);

} // namespace

FermatResult fermat_point(const HTriangle& t) {
    require_nondegenerate(t);
    auto ang = triangle_angles(t);
    for (int i = 0; i < 3; ++i) {
        if (ang[i] >= kTwoPiOver3) {
            FermatResult r;
            r.point = t[i];
            r.kind = FermatKind::AtVertex;
            r.vertex = i;
            return r;
        }
    }

    // Work in a frame centred at the incenter so that small triangles keep full relative precision.
    Isometry C = Isometry::translation_to(incenter(t));
    Isometry Ci = C.inverse();
    try {
        FermatResult r = fermat_centered({Ci(t.a), Ci(t.b), Ci(t.c)});
        r.point = C(r.point);
        return r;
    } catch (const FermatConvergenceError& e) {
        throw FermatConvergenceError(C(e.last_iterate()), e.residual());
    }
}

namespace {

FermatResult fermat_centered(const HTriangle& t) {
    constexpr int max_iter = 10000;
    constexpr double grad_tol = 1e-10;
    HPoint p;
    double f = star_sum(t, p);
    double res = fermat_residual(t, p);
    for (int it = 0; it < max_iter; ++it) {
        // Tangent-space gradient and distance Hessian at p.
        cplx g = 0.0;
        double h11 = 0, h12 = 0, h22 = 0;
        double dmin = 1e300;
        for (int i = 0; i < 3; ++i) {
            double d = dist(p, t[i]);
            dmin = std::min(dmin, d);
            cplx u = direction(p, t[i]);
            g -= u;
            double w = 1.0 / std::tanh(d);
            h11 += w * (1 - u.real() * u.real());
            h12 -= w * u.real() * u.imag();
            h22 += w * (1 - u.imag() * u.imag());
        }
        res = std::abs(g);
        if (res < grad_tol) {
            FermatResult r;
            r.point = p;
            r.residual = res;
            r.iterations = it;
            return r;
        }
        double det = h11 * h22 - h12 * h12;
        cplx step = det > 1e-14 ? cplx(-(h22 * g.real() - h12 * g.imag()) / det,
                                       -(-h12 * g.real() + h11 * g.imag()) / det)
                                : -g;
        double len = std::abs(step);
        if (len > 0.5 * dmin) {
            step *= 0.5 * dmin / len;
            len = 0.5 * dmin;
        }
        double theta = std::arg(step);
        double lam = 1.0;
        bool moved = false;
        for (int k = 0; k < 60; ++k) {
            HPoint q = shoot(p, theta, lam * len);
            double fq = star_sum(t, q);
            double rq = fermat_residual(t, q);
            // Near the optimum f is flat to rounding; fall back to the residual.
            if (fq < f || (fq <= f + 1e-14 * (1.0 + f) && rq < res)) {
                p = q;
                f = fq;
                moved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!moved) break;
    }
    throw FermatConvergenceError(p, res);
}

} // namespace

bool circumcenter_sector_acute(const HPoint& o, const HPoint& a, const HPoint& b, const HPoint& c) {
    double ra = dist(o, a), rb = dist(o, b), rc = dist(o, c);
    if (std::abs(ra - rb) > 1e-9 || std::abs(ra - rc) > 1e-9)
        throw PreconditionError("circumcenter_sector_acute: points not on a common circle");
    if (ra <= 0.0) throw PreconditionError("circumcenter_sector_acute: zero radius");
    auto ccw = [&](const HPoint& x, const HPoint& y) {
        double t = std::arg(direction(o, y) * std::conj(direction(o, x)));
        return t < 0 ? t + 2 * kPi : t;
    };
    double th = ccw(a, b), ph = ccw(b, c), ps = ccw(c, a);
    if (th + ph + ps > 3 * kPi) {
        // clockwise labelling
        th = ccw(a, c);
        ph = ccw(c, b);
        ps = ccw(b, a);
    }
    constexpr double tol = 1e-12;
    bool ok = th <= kPi + tol && ph <= kPi + tol && ps <= kPi + tol;
    if (ok) {
        auto ang = triangle_angles({a, b, c});
        for (double x : ang) {
            if (!(x < kPi / 2 + 1e-9))
                throw InvariantViolation("circumcenter_sector_acute: triangle not acute, angle " +
                                         std::to_string(x));
        }
    }
    return ok;
}

PerimeterStar perimeter_vs_fermat_sum(const HTriangle& t, const HPoint& p) {
    require_nondegenerate(t);
    if (!strictly_inside(t, p)) throw PreconditionError("perimeter_vs_fermat_sum: point not inside");
    PerimeterStar r{dist(t.a, t.b) + dist(t.b, t.c) + dist(t.c, t.a), 2.0 * star_sum(t, p)};
    if (!(r.perimeter < r.doubled_star_sum))
        throw InvariantViolation("perimeter_vs_fermat_sum: perimeter not below doubled star sum");
    return r;
}

} // namespace hypfill
