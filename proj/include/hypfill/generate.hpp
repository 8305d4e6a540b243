#pragma once

#include "hypfill/surface.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hypfill {

// Uniform integer in [0, n) by rejection on raw 64-bit output, so that results do not depend
// on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
double uniform_unit(std::mt19937_64& rng);

// Triangulation with persistent vertex labels (label of the start corner of each dart).
struct LabelledTriangulation {
    CombinatorialTriangulation tri;
    std::vector<int> label;
    int vertex_count = 0;

    std::vector<int> degrees() const;
};

// Fan triangulation of the standard 4g-gon: one vertex, 4g-2 triangles.
LabelledTriangulation polygon_fan(int genus);
// Cone over the standard 4g-gon: two vertices, 4g triangles.
LabelledTriangulation polygon_cone(int genus);

// Insert a vertex inside triangle t (one triangle becomes three).
void split_triangle(LabelledTriangulation& lt, int t);
// Flip the edge of dart d. Returns false when both sides lie in one triangle.
bool flip_edge(LabelledTriangulation& lt, int d);

// Flip annealing towards a target degree per vertex label. Throws GeometryError if it fails.
LabelledTriangulation anneal_degrees(LabelledTriangulation lt, const std::vector<int>& target, std::uint64_t seed,
                                     long max_steps = 2000000);

// Genus-g triangulation with every vertex of degree d (needs (d-6) | 12(g-1)).
CombinatorialTriangulation regular_triangulation(int genus, int degree, std::uint64_t seed);

std::vector<TriangleShape> equilateral_shapes(const CombinatorialTriangulation& tri, int degree);

// Circle packing radii per vertex orbit (index as in vertex_orbits()). Needs every degree >= 3.
std::vector<double> circle_pack(const CombinatorialTriangulation& tri, double tol = 1e-13, int max_sweeps = 200000);
std::vector<TriangleShape> shapes_from_radii(const CombinatorialTriangulation& tri, const std::vector<double>& radii);

} // namespace hypfill
