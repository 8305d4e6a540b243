#pragma once

#include <array>
#include <complex>

namespace hypfill {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPiOver3 = 2.0 * kPi / 3.0;

// Point of the hyperbolic plane. Stored in the Poincare disk.
class HPoint {
public:
    HPoint() = default;
    explicit HPoint(cplx disk);
    static HPoint origin() { return HPoint(); }
    static HPoint from_klein(cplx k);

    const cplx& disk() const { return z_; }
    cplx klein() const;

private:
    cplx z_{0.0, 0.0};
};

// Orientation-preserving isometry, an SU(1,1) matrix [[a, b], [conj(b), conj(a)]].
class Isometry {
public:
    Isometry() = default;
    Isometry(cplx a, cplx b);

    // origin -> p
    static Isometry translation_to(const HPoint& p);
    static Isometry rotation(double theta);
    // origin -> p, with the positive real direction carried to direction theta at p
    static Isometry frame(const HPoint& p, double theta);

    HPoint operator()(const HPoint& p) const;
    // Also valid on the unit circle (ideal points).
    cplx apply(cplx z) const;
    Isometry operator*(const Isometry& o) const;
    Isometry inverse() const;

    const cplx& a() const { return a_; }
    const cplx& b() const { return b_; }

    bool near_identity(double tol) const;
    // Translation length if hyperbolic, 0 otherwise.
    double translation_length() const;

private:
    cplx a_{1.0, 0.0};
    cplx b_{0.0, 0.0};
};

struct HTriangle {
    HPoint a, b, c;
    const HPoint& operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

double dist(const HPoint& p, const HPoint& q);

// Unit complex number giving the direction at `from` of the geodesic toward `to`.
// `to` may lie on the unit circle.
cplx direction(const HPoint& from, cplx to);
inline cplx direction(const HPoint& from, const HPoint& to) { return direction(from, to.disk()); }

double angle(const HPoint& vertex, const HPoint& a, const HPoint& b);

// Point at distance s from p in direction theta.
HPoint shoot(const HPoint& p, double theta, double s);
// Point at distance s from p toward q.
HPoint toward(const HPoint& p, const HPoint& q, double s);
HPoint midpoint(const HPoint& p, const HPoint& q);

// Positive when a, b, c turn counterclockwise. Points may be ideal.
double orient(cplx a, cplx b, cplx c);
inline double orient(const HPoint& a, const HPoint& b, const HPoint& c) {
    return orient(a.disk(), b.disk(), c.disk());
}

// Distance from p to the geodesic segment [a, b].
double dist_to_segment(const HPoint& p, const HPoint& a, const HPoint& b);
// Closest point of the segment [a, b] to p.
HPoint project_to_segment(const HPoint& p, const HPoint& a, const HPoint& b);

std::array<double, 3> triangle_angles(const HTriangle& t);
void require_nondegenerate(const HTriangle& t);
double triangle_area(const HTriangle& t);
// True if p lies in the open triangle with margin tol (Klein coordinates).
bool strictly_inside(const HTriangle& t, const HPoint& p, double tol = 0.0);
HPoint incenter(const HTriangle& t);

// Side lengths from angles, a_i opposite angle i.
std::array<double, 3> sides_from_angles(double alpha, double beta, double gamma);
// Triangle with the given angles: vertex 0 at the origin, vertex 1 on the positive real axis.
HTriangle triangle_from_angles(double alpha, double beta, double gamma);

enum class FermatKind { Interior, AtVertex };

struct FermatResult {
    HPoint point;
    FermatKind kind = FermatKind::Interior;
    int vertex = -1;
    double residual = 0.0;
    int iterations = 0;
};

class FermatConvergenceError : public std::exception {
public:
    FermatConvergenceError(HPoint last, double residual) : last_(last), residual_(residual) {}
    const char* what() const noexcept override { return "fermat_point: descent did not converge"; }
    HPoint last_iterate() const { return last_; }
    double residual() const { return residual_; }

private:
    HPoint last_;
    double residual_;
};

FermatResult fermat_point(const HTriangle& t);
double star_sum(const HTriangle& t, const HPoint& p);
// |sum of unit tangents toward the vertices| at p
double fermat_residual(const HTriangle& t, const HPoint& p);

bool circumcenter_sector_acute(const HPoint& o, const HPoint& a, const HPoint& b, const HPoint& c);

struct PerimeterStar {
    double perimeter;
    double doubled_star_sum;
};
PerimeterStar perimeter_vs_fermat_sum(const HTriangle& t, const HPoint& p);

} // namespace hypfill
