#pragma once

#include "hypfill/fill_graph.hpp"
#include "hypfill/generate.hpp"

#include <map>
#include <memory>
#include <set>
#include <utility>

namespace fixtures {

using namespace hypfill;

inline std::shared_ptr<const TriangulatedSurface> equilateral(int genus, int degree, std::uint64_t seed = 1) {
    auto t = regular_triangulation(genus, degree, seed);
    return std::make_shared<const TriangulatedSurface>(build_surface(t, equilateral_shapes(t, degree)));
}

inline std::shared_ptr<const TriangulatedSurface> packed(const LabelledTriangulation& lt) {
    auto r = circle_pack(lt.tri);
    return std::make_shared<const TriangulatedSurface>(build_surface(lt.tri, shapes_from_radii(lt.tri, r)));
}

// Genus 2 with one vertex of degree 3.
inline LabelledTriangulation degree3_triangulation() {
    auto lt = polygon_cone(2);
    split_triangle(lt, 0);
    return lt;
}

// Genus 2 with two vertices of degree 5.
inline LabelledTriangulation degree5_triangulation() {
    auto lt = polygon_cone(2);
    for (int i = 0; i < 4; ++i) split_triangle(lt, 0);
    return anneal_degrees(lt, {5, 5, 8, 10, 10, 10}, 1);
}

// Genus 2, every vertex of degree 8.
inline LabelledTriangulation degree8_triangulation() {
    auto lt = polygon_cone(2);
    for (int i = 0; i < 4; ++i) split_triangle(lt, 0);
    return anneal_degrees(lt, {8, 8, 8, 8, 8, 8}, 1);
}

// Shortened skeleton of the equilateral degree-18 surface, computed once per process.
inline const ShortenResult& converged(int genus) {
    static std::map<int, ShortenResult> cache;
    auto it = cache.find(genus);
    if (it == cache.end()) it = cache.emplace(genus, shorten_to_local_min(skeleton_graph(equilateral(genus, 18)))).first;
    return it->second;
}

// Keeps only the edges at v whose rotation positions are listed; v must carry no loop.
inline EmbeddedGraph prune_at(const EmbeddedGraph& g, int v, const std::set<int>& keep) {
    EmbeddedGraph out = g;
    std::vector<int> drop;
    const auto& rot = g.rotation(v);
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
        if (!keep.count(i)) drop.push_back(edge_of(rot[i]));
    }
    std::sort(drop.rbegin(), drop.rend());
    for (int e : drop) out.remove_edge(e);
    return out;
}

inline int loop_free_vertex(const EmbeddedGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool ok = true;
        for (int e = 0; e < g.edge_count(); ++e) ok = ok && !(g.edge(e).u == v && g.edge(e).v == v);
        if (ok) return v;
    }
    return -1;
}

} // namespace fixtures
