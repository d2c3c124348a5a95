#pragma once
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tilescope/graph.hpp"

namespace tilescope {

struct Tiling; // tilings.hpp

// Interchange format for every CLI command:
//   {"n": int, "q": int, "edges": [[u, v, c], ...]} with u < v.
// Emission is canonical (edges sorted ascending) so equal graphs emit
// byte-identical JSON.
nlohmann::json graph_to_json(const ColoredGraph& g);
ColoredGraph graph_from_json(const nlohmann::json& j); // accepts a {"graph": ...} wrapper too
std::string graph_to_string(const ColoredGraph& g);
ColoredGraph graph_from_string(const std::string& text);
ColoredGraph graph_from_file(const std::string& path);

struct DotAnnotations {
    std::vector<VertexSet> clusters;          // e.g. construction parts
    std::vector<std::string> cluster_labels;  // optional, parallel to clusters
    const Tiling* tiling = nullptr;           // tiling edges drawn bold
    std::optional<VertexSet> highlight;       // e.g. a template's center
};

// Colors 1..q map onto a fixed 12-color palette, cycling beyond 12.
std::string export_dot(const ColoredGraph& g, const DotAnnotations& ann = {});

} // namespace tilescope
