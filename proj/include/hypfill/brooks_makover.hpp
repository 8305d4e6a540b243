#pragma once

#include "hypfill/surface.hpp"

#include <json.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hypfill {

// 2N ideal triangles, every side glued with zero shear. Dart 3t+k as in CombinatorialTriangulation.
struct GluingPattern {
    int n = 0;
    CombinatorialTriangulation tri;
    std::uint64_t seed = 0;
};

// Uniform perfect matching of the 6N darts (loops and multi-edges allowed).
GluingPattern sample_pattern(int n, std::uint64_t seed);

TriangulatedSurface build_cusped_surface(const GluingPattern& p);

struct CuspData {
    int cusps = 0;
    int components = 1; // the matching may split the triangles into several surfaces
    int genus = 0;      // summed over components: (2 components + N - c) / 2
    std::vector<int> degrees; // corner count around each cusp
    int min_degree = 0;
};
// Throws InvariantViolation when (2 components + N - c) is odd or negative.
CuspData cusp_data(const CombinatorialTriangulation& t);

// Arcs of the small inscribed triangles joined across the gluings. Arc (t, k) sits at corner k of
// triangle t and joins the tangency points on sides k and k-1.
struct InscribedCurve {
    std::vector<int> darts; // tangency points passed, in order
    double length = 0.0;
};

struct InscribedSystem {
    std::vector<InscribedCurve> curves;
    double arc_length = 0.0;     // largest measured arc length
    double min_arc_length = 0.0;
    double total_length = 0.0;
    double max_bend = 0.0;       // largest |angle - pi| at a crossing
    int disk_faces = 0;
    int annulus_faces = 0;
    bool fills = false;
};

// Throws PreconditionError unless every triangle is ideal, GeometryError when a crossing bends by
// more than 1e-9.
InscribedSystem inscribed_filling_geodesics(const TriangulatedSurface& s);

double inscribed_arc_length(); // 2 asinh(1/2)

struct FillingBounds {
    double lower;   // pi N, half the area
    double witness; // length of the inscribed system
    double upper;   // 6N
};
// Throws InvariantViolation unless lower <= witness < upper.
FillingBounds filling_length_bounds(const TriangulatedSurface& s, const InscribedSystem& c);

struct SampleRow {
    std::uint64_t seed = 0;
    int sample_idx = 0;
    int n = 0;
    int cusps = 0;
    int genus = 0;
    int min_cusp_degree = 0;
    double witness_length = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
};

struct BMStatistics {
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    int degree_threshold = 6;
    std::vector<SampleRow> rows;
    double mean_genus = 0.0;
    double fraction_min_degree = 0.0; // min cusp degree >= threshold
    double fraction_lower_7g = 0.0;   // 7 genus > (7/2) N
};

struct StatisticsOptions {
    int degree_threshold = 6;
    int threads = 0;       // 0: hardware concurrency
    bool geometry = true;  // build each surface and measure the inscribed system
};

// Sample i uses its own generator seeded from (seed, i), so rows do not depend on scheduling.
BMStatistics run_statistics(int n, int samples, std::uint64_t seed, const StatisticsOptions& opt = {});
void recompute_aggregates(BMStatistics& s);

std::string statistics_to_csv(const BMStatistics& s);
nlohmann::json statistics_summary(const BMStatistics& s);

// Exact distribution of (cusps, genus) over all (6N-1)!! matchings; practical for N <= 2.
std::map<std::pair<int, int>, long> enumerate_patterns(int n);

} // namespace hypfill
