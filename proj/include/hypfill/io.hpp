#pragma once

#include "hypfill/fill_graph.hpp"
#include "hypfill/surface.hpp"

#include <json.hpp>
#include <string>

namespace hypfill {

nlohmann::json surface_to_json(const TriangulatedSurface& s);
nlohmann::json triangulation_to_json(const CombinatorialTriangulation& t, const std::vector<TriangleShape>& shapes);
// Parses the triangulation and shapes; shapes are ideal for "cusped" and compact for "closed".
void triangulation_from_json(const nlohmann::json& j, CombinatorialTriangulation& tri, std::vector<TriangleShape>& shapes);
TriangulatedSurface surface_from_json(const nlohmann::json& j);

// Vertices as (triangle, disk coordinates). Each edge carries its holonomy and the strip of darts
// crossed walking from u's triangle to the far endpoint; the strip alone suffices when v lies
// inside its triangle.
nlohmann::json graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from_json(const nlohmann::json& j, std::shared_ptr<const TriangulatedSurface> s);
std::vector<int> edge_strip(const EmbeddedGraph& g, int e);
Isometry holonomy_from_strip(const TriangulatedSurface& s, const std::vector<int>& strip);

// iteration,length,violations,action
std::string log_to_csv(const std::vector<IterationLog>& log);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace hypfill
