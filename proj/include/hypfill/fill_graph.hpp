#pragma once

#include "hypfill/surface.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace hypfill {

// Edge from vertex u to vertex v. `hol` carries the chart of v's triangle into the chart of u's
// triangle; the edge is the geodesic segment from z_u to hol(z_v) in u's chart.
struct GraphEdge {
    int u = 0;
    int v = 0;
    Isometry hol;
};

// Half-edge h = 2e is the end of edge e at u, h = 2e+1 the end at v.
inline int edge_of(int h) { return h >> 1; }
inline int twin(int h) { return h ^ 1; }

class EmbeddedGraph {
public:
    EmbeddedGraph() = default;
    EmbeddedGraph(std::shared_ptr<const TriangulatedSurface> s, std::vector<SurfacePoint> vertices,
                  std::vector<GraphEdge> edges);

    const TriangulatedSurface& surface() const { return *surface_; }
    const std::shared_ptr<const TriangulatedSurface>& surface_ptr() const { return surface_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const SurfacePoint& vertex(int i) const { return vertices_[i]; }
    const GraphEdge& edge(int e) const { return edges_[e]; }
    const std::vector<SurfacePoint>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
    // Half-edges at v in counterclockwise order of their outgoing direction.
    const std::vector<int>& rotation(int v) const { return rotation_[v]; }
    int base(int h) const { return h & 1 ? edges_[h >> 1].v : edges_[h >> 1].u; }
    int head(int h) const { return base(twin(h)); }
    // Carries the chart of head(h) into the chart of base(h).
    Isometry hol(int h) const { return h & 1 ? edges_[h >> 1].hol.inverse() : edges_[h >> 1].hol; }
    // The far endpoint of h in the chart of base(h).
    HPoint far_point(int h) const;
    double direction_angle(int h) const;

    double edge_length(int e) const { return lengths_[e]; }
    double total_length() const;
    // Counterclockwise gaps: entry i is the angle from rotation(v)[i] to rotation(v)[i+1].
    std::vector<double> angles_at(int v) const;

    // Half-edge following h on the face to its left.
    int face_next(int h) const;
    std::vector<std::vector<int>> faces() const;

    // Throws InvariantViolation when some vertex has degree < 3.
    void require_min_degree() const;

    // Mutators used by the graph operations. They keep rotations and lengths current.
    void set_vertex(int v, const SurfacePoint& p);
    void set_edge(int e, const GraphEdge& edge);
    int add_vertex(const SurfacePoint& p);
    int add_edge(const GraphEdge& edge);
    void remove_edge(int e);   // swaps the last edge into slot e
    void remove_vertex(int v); // vertex must be isolated; ids above v shift down
    // Moves vertex v back inside a triangle after its coordinates left it, fixing holonomies.
    void relocate(int v);
    void refresh();

private:
    std::shared_ptr<const TriangulatedSurface> surface_;
    std::vector<SurfacePoint> vertices_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<int>> rotation_;
    std::vector<double> lengths_;
};

struct TriCounts {
    long v_tri = 0;
    long e_tri = 0;
    long f_tri = 0;
    bool operator==(const TriCounts&) const = default;
};

EmbeddedGraph skeleton_graph(std::shared_ptr<const TriangulatedSurface> s);
TriCounts tri_counts(const EmbeddedGraph& g);
bool is_filling(const EmbeddedGraph& g);

// ---------------------------------------------------------------- embeddedness

// Lift of a triangle: chart of `tri` carried into some base chart by `map`.
struct Tile {
    int tri;
    Isometry map;
};

// Tiles whose triangles come within `margin` of the segment [a, b] drawn in the chart of base_tri.
std::vector<Tile> tiles_near_segment(const TriangulatedSurface& s, int base_tri, const HPoint& a, const HPoint& b,
                                     double margin = 1e-6);

struct EmbeddingConflict {
    int edge_a = -1;
    int edge_b = -1; // -1 when a vertex lies on edge_a
    int vertex = -1;
    std::string what;
};

class EmbeddingChecker {
public:
    explicit EmbeddingChecker(double tol = 1e-9) : tol_(tol) {}
    // Full pairwise check.
    std::vector<EmbeddingConflict> check(const EmbeddedGraph& g);
    // Checks the listed edges against all edges and the listed vertices against all edges.
    std::vector<EmbeddingConflict> check_local(const EmbeddedGraph& g, const std::vector<int>& edges,
                                               const std::vector<int>& vertices);
    void reset() { cache_.clear(); }

private:
    const std::vector<Tile>& tiles(const EmbeddedGraph& g, int e);
    bool edge_pair(const EmbeddedGraph& g, int e, int f, EmbeddingConflict* out);
    bool vertex_on_edge(const EmbeddedGraph& g, int w, int e, EmbeddingConflict* out);

    struct Cached {
        int tri;
        cplx a, b;
        std::vector<Tile> tiles;
        std::vector<std::vector<int>> by_tri; // tile indices per triangle
        std::vector<std::pair<HPoint, HPoint>> local; // segment endpoints in each tile's own chart
        std::vector<std::array<double, 4>> box;        // Klein bounding box of each local segment
    };
    const Cached& entry(const EmbeddedGraph& g, int e);
    double tol_;
    std::vector<Cached> cache_;
};

// True when the two segments meet anywhere except at a common endpoint (overlaps count).
bool segments_conflict(const HPoint& p0, const HPoint& p1, const HPoint& q0, const HPoint& q1, double tol);

bool is_embedded(const EmbeddedGraph& g);

// ---------------------------------------------------------------- shortening

enum class ViolationType { I, II };

struct NonShortestReport {
    int vertex = -1;
    ViolationType type = ViolationType::II;
    double angle = 0.0;
    int angle_index = -1; // position in angles_at(vertex)
};

std::vector<NonShortestReport> detect_non_shortest(const EmbeddedGraph& g, double tol = 1e-9);

// Thrown when the modified edges would cross the rest of the graph; retry with a smaller epsilon.
class ShorteningConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EmbeddedGraph shrink_edge(const EmbeddedGraph& g, int e);
double default_epsilon(const EmbeddedGraph& g, int vertex);
EmbeddedGraph apply_shortening(const EmbeddedGraph& g, const NonShortestReport& r, double epsilon);
// Fermat split of a degree-4 vertex whose four angles are all pi/2.
EmbeddedGraph split_right_angled(const EmbeddedGraph& g, int v, double epsilon);

struct ShortenConfig {
    int max_iterations = 10000;
    double angle_tol = 1e-9;
    double shrink_threshold = 1e-8;
    double epsilon_fraction = 0.95; // type II radius, relative to the shortest incident edge
    double split_fraction = 0.02;   // type I slide, relative to the edge slid along
    double epsilon_min = 1e-12;
    double right_angle_tol = 1e-9;
    double min_decrease = 0.0;    // a sweep gaining no more than this ends the run
    double converged_tol = 1e-6;  // angle tolerance of the final certificate
    bool check_embedding = true;
};

struct IterationLog {
    int iteration;
    long double length; // summed in extended precision so that small gains stay visible
    int violations;
    std::string action;
};

struct ShortenResult {
    EmbeddedGraph graph;
    std::vector<IterationLog> log;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0; // largest angle deviation left
    std::vector<int> flagged_vertices;
    std::vector<NonShortestReport> remaining;
    std::string stop_reason;
};

ShortenResult shorten_to_local_min(const EmbeddedGraph& g, const ShortenConfig& config = {});
double max_angle_deviation(const EmbeddedGraph& g);

} // namespace hypfill
