#pragma once

#include "hypfill/hyperbolic.hpp"

#include <array>
#include <memory>
#include <vector>

namespace hypfill {

// Darts: dart 3t+k is the side of triangle t running from corner k to corner k+1.
// rho(3t+k) = 3t+(k+1)%3 (counterclockwise within the triangle), iota pairs glued sides.
struct CombinatorialTriangulation {
    int triangles = 0;
    std::vector<int> gluing; // iota, one entry per dart

    static CombinatorialTriangulation from_pairs(int triangles, const std::vector<std::array<int, 2>>& pairs);

    int darts() const { return 3 * triangles; }
    static int tri(int d) { return d / 3; }
    static int corner(int d) { return d % 3; }
    static int rho(int d) { return 3 * (d / 3) + (d % 3 + 1) % 3; }
    int iota(int d) const { return gluing[d]; }
    // Walks clockwise around the start vertex of d.
    int sigma(int d) const { return rho(gluing[d]); }

    // Throws InputError when iota is not a fixed-point-free involution or F is odd.
    void validate() const;

    // Cycles of sigma; each dart stands for the corner at its start.
    std::vector<std::vector<int>> vertex_orbits() const;
    // vertex index of the start of each dart
    std::vector<int> vertex_of_dart() const;
    std::vector<int> vertex_degrees() const;
};

struct TriangleShape {
    enum class Kind { Ideal, Compact };
    Kind kind = Kind::Ideal;
    std::array<double, 3> angles{0.0, 0.0, 0.0}; // at corners 0, 1, 2 (compact only)

    static TriangleShape ideal() { return {}; }
    static TriangleShape compact(double a0, double a1, double a2);
    // length of side k (corner k to corner k+1)
    double side(int k) const;
};

// Chart of one triangle in the disk.
struct TriangleChart {
    std::array<cplx, 3> corners;  // on the unit circle for ideal triangles
    std::array<HPoint, 3> anchors; // side midpoint (compact) or incircle tangency point (ideal)
    double radius = 0.0;           // max distance from the origin to a corner (compact)
};

struct SurfacePoint {
    int tri = 0;
    HPoint z;
};

struct ChartSegment {
    int tri = 0;
    HPoint entry;
    HPoint exit;
    int exit_dart = -1; // dart crossed at `exit`, -1 at the end of the path
};

struct GeodesicPath {
    std::vector<ChartSegment> segments;
    bool closed = false;
    bool reached_cusp = false;
    double length() const;
};

struct EulerData {
    int vertices = 0; // cusps for cusped surfaces
    int edges = 0;
    int faces = 0;
    int genus = 0;      // summed over components
    int components = 1;
};

class TriangulatedSurface {
public:
    enum class Kind { Cusped, Closed };

    Kind kind() const { return kind_; }
    const CombinatorialTriangulation& triangulation() const { return tri_; }
    int triangles() const { return tri_.triangles; }
    const TriangleShape& shape(int t) const { return shapes_[t]; }
    const std::vector<TriangleShape>& shapes() const { return shapes_; }
    const TriangleChart& chart(int t) const { return charts_[t]; }
    // Carries the chart of tri(d) onto the chart of tri(iota(d)).
    const Isometry& transition(int d) const { return transitions_[d]; }
    const std::vector<std::vector<int>>& vertex_orbits() const { return orbits_; }
    int vertex_of_dart(int d) const { return vertex_of_dart_[d]; }
    int genus() const { return euler_.genus; }
    const EulerData& euler() const { return euler_; }

    // corner position of the start of dart d in the chart of tri(d)
    cplx corner_of_dart(int d) const { return charts_[d / 3].corners[d % 3]; }
    bool contains(int t, const HPoint& z, double tol) const;

    friend TriangulatedSurface build_surface(const CombinatorialTriangulation&, const std::vector<TriangleShape>&);

private:
    Kind kind_ = Kind::Closed;
    CombinatorialTriangulation tri_;
    std::vector<TriangleShape> shapes_;
    std::vector<TriangleChart> charts_;
    std::vector<Isometry> transitions_;
    std::vector<std::vector<int>> orbits_;
    std::vector<int> vertex_of_dart_;
    EulerData euler_;
};

TriangulatedSurface build_surface(const CombinatorialTriangulation& tri, const std::vector<TriangleShape>& shapes);
EulerData euler_data(const TriangulatedSurface& s);
const Isometry& transition(const TriangulatedSurface& s, int dart);

// Visibility walk. Moves z into the triangle containing it; the returned isometry
// carries the original chart onto the final one.
struct Located {
    SurfacePoint point;
    Isometry map;
};
Located locate(const TriangulatedSurface& s, int tri, const HPoint& z);

struct TraceOptions {
    // Tracing into a cusp stops where the horocyclic segment inside a triangle has this length.
    double cusp_horocycle_length = 1e-4;
};

GeodesicPath trace_geodesic(const TriangulatedSurface& s, const SurfacePoint& start, double direction,
                            double max_length, const TraceOptions& opt = {});

// Checks that consecutive segments match under the transitions; throws InputError otherwise.
void check_contiguous(const TriangulatedSurface& s, const GeodesicPath& p);

// Bend points of a path developed into the chart of its first segment. For a closed path the
// holonomy carries the start chart around the loop (pts.back() == holonomy(pts.front()) is not stored).
struct DevelopedPath {
    std::vector<HPoint> points;
    Isometry holonomy;
};
DevelopedPath develop(const TriangulatedSurface& s, const GeodesicPath& p);

// Gauss-Seidel straightening of a closed polygon whose successor of the last point is
// holonomy(points[0]). Returns the length after each sweep.
std::vector<double> relax_closed_polygon(std::vector<HPoint>& pts, const Isometry& holonomy,
                                         double bend_tol = 1e-7, int max_sweeps = 200000);
double closed_polygon_length(const std::vector<HPoint>& pts, const Isometry& holonomy);
double max_bend_defect(const std::vector<HPoint>& pts, const Isometry& holonomy);

GeodesicPath straighten_path(const TriangulatedSurface& s, const GeodesicPath& p,
                             std::vector<double>* length_log = nullptr);

} // namespace hypfill
