#pragma once

#include "hypfill/fill_graph.hpp"

#include <boost/rational.hpp>
#include <json.hpp>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hypfill {

// One dual vertex per source edge, at its midpoint. Dual edge a joins the midpoints of edge(a) and
// edge(b), b = face_next(a), across the corner at head(a).
//
// The four ends at dual vertex e are indexed 2s+t: s says which face (0: left of half-edge 2e,
// 1: left of 2e+1), t which endpoint of e the corner sits at (0: u, 1: v).
struct DualEnd {
    int dual_edge = -1;
    int side = 0; // 0 or 1, which end of the dual edge
};

struct DualEdge {
    int corner = -1; // half-edge a
    int vertex = -1; // head(a), the chart the edge is drawn in
    std::array<int, 2> slot{};       // end slots 2s+t at the two dual vertices
    std::array<int, 2> dual_vertex{}; // edge(a), edge(b)
    std::array<HPoint, 2> points;    // midpoints in the chart of `vertex`
    double length = 0.0;
};

struct DualGraph {
    EmbeddedGraph source;
    std::vector<DualEdge> edges;               // indexed by corner half-edge
    std::vector<std::array<DualEnd, 4>> ends;  // per dual vertex, by slot
    std::vector<std::array<int, 4>> opposite;  // slot paired with each slot
    int metric_fallbacks = 0;                  // vertices resolved combinatorially
    double total_length() const;
};

// Throws GeometryError when a face has a corner angle >= pi.
DualGraph dual_graph(const EmbeddedGraph& g);

struct DualCurve {
    std::vector<int> edges;         // dual edges in traversal order
    std::vector<char> forward;      // traversed from end 0 to end 1
    std::vector<int> vertices;      // dual vertex at the start of each step
    std::vector<int> slots;         // slot at which each step leaves its start vertex
    std::vector<HPoint> points;     // start of each step, in the chart of that step
    // steps[i] carries the chart of step i+1 into the chart of step i (the last one closes the loop)
    std::vector<Isometry> steps;
    Isometry holonomy;               // carries the start chart once around the curve
    double length = 0.0;
};

struct CurveSystem {
    std::vector<DualCurve> curves;
    double total_length = 0.0;
};

// Follows opposite slots; starts each curve at the lowest unvisited dual edge.
CurveSystem decompose_curves(const DualGraph& d, bool reversed = false);

// ------------------------------------------------------------ exact case tables

using Rational = boost::rational<long long>;

// Area of the disk in multiples of pi when it has `extra` additional corners of angle 2pi/3 besides
// n (and m) alternating pairs of 2pi/3 and 4pi/3 corners.
Rational gauss_bonnet_area(int extra, int n, int m);

struct CaseValue {
    std::string name;
    int extra_corners;
    Rational area; // in multiples of pi
};
// disk, monogon 1, monogon 2, bigon 1, bigon 2, bigon 3. Throws InvariantViolation if a value
// depends on n or m over [1, 50].
std::vector<CaseValue> gauss_bonnet_case_areas();

// Triangulated disk given by its triangles (vertex triples). Returns |V| - n/3 - (1/6) sum deg,
// which equals 1 for every triangulated disk. Throws InputError if the triangles do not form a disk.
Rational euler_degree_check(const std::vector<std::array<int, 3>>& triangles);

// Upper bound on |V| - n/3 - (1/6) sum deg when interior vertices have degree >= 6 and boundary
// vertices the given lower bounds.
Rational euler_degree_bound(int interior_vertices, const std::vector<int>& boundary_lower_bounds);

struct EulerScenario {
    std::string name;
    std::vector<int> special; // boundary lower bounds below 4
    Rational bound;
};
// The six scenarios; throws InvariantViolation if a bound depends on the disk size.
std::vector<EulerScenario> euler_degree_scenarios();

// ------------------------------------------------------------ certification

enum class WitnessKind { Disk, Monogon, Bigon };

struct Witness {
    WitnessKind kind = WitnessKind::Disk;
    int curve_a = -1;
    int curve_b = -1;
    int index_a = -1;
    int index_b = -1;
    int dual_vertex = -1;
};

struct OracleResult {
    std::optional<Witness> witness;
    bool inconclusive = false;
};

// Develops lifts of every curve for `depth` periods each way and looks for a closed lift (disk),
// a self-crossing lift (monogon) or two lifts crossing twice (bigon).
OracleResult oracle_search_monogon_bigon(const DualGraph& d, const CurveSystem& c, int depth = 4);

enum class CertStatus { Certified, NotApplicable, CounterexampleFound };
enum class SourceKind { Graph, Triangulation };

struct Certificate {
    CertStatus status = CertStatus::NotApplicable;
    std::string grounds; // "trivalent-2pi/3", "min-degree-6" or ""
    std::optional<Witness> witness;
    bool oracle_run = false;
    bool oracle_inconclusive = false;
};

Certificate certify_minimal_position(const DualGraph& d, SourceKind kind, int oracle_depth = 4);
// Combinatorial route only, for triangulations without geometry.
Certificate certify_triangulation(const CombinatorialTriangulation& t);

nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json curves_to_json(const CurveSystem& c);

// ------------------------------------------------------------ lengths

struct Sandwich {
    double source_length;
    double dual_length;
    double ratio;
};
// Checks l(G) < l(D(G)) < 2 l(G) with margin 1e-9 and the per-vertex perimeter inequality.
Sandwich length_sandwich(const DualGraph& d, const CurveSystem& c);

struct TightenOptions {
    double bend_tol = 1e-7;
    int max_sweeps = 2000000;
};

struct TightenedCurve {
    std::vector<HPoint> points;   // vertex i in the chart of step i of the source curve
    std::vector<double> lengths;  // after each sweep
    double length = 0.0;
    double max_bend = 0.0;        // largest deviation of a bend angle from pi
    double translation_length = 0.0;
};

struct Tightened {
    std::vector<TightenedCurve> curves;
    double total_length = 0.0;
};

// Refuses (PreconditionError) unless the certificate is Certified.
Tightened tighten_dual_to_geodesics(const CurveSystem& c, const Certificate& cert, const TightenOptions& opt = {});

} // namespace hypfill
