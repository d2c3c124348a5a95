#include "tilescope/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tilescope/tilings.hpp"

namespace tilescope {

using nlohmann::json;

json graph_to_json(const ColoredGraph& g) {
    json edges = json::array();
    auto es = g.edges();
    std::sort(es.begin(), es.end());
    for (auto [u, v] : es) edges.push_back({u, v, g.color(u, v)});
    return json{{"n", g.n()}, {"q", g.q()}, {"edges", edges}};
}

ColoredGraph graph_from_json(const json& j) {
    const json* obj = &j;
    if (j.is_object() && j.contains("graph")) obj = &j.at("graph");
    if (!obj->is_object() || !obj->contains("n") || !obj->contains("q") || !obj->contains("edges"))
        throw std::invalid_argument("graph JSON must contain n, q and edges");
    int n = obj->at("n").get<int>();
    int q = obj->at("q").get<int>();
    std::vector<std::array<int, 3>> es;
    for (const auto& e : obj->at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("each edge must be [u, v, c]");
        es.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    return ColoredGraph::build(n, q, es);
}

std::string graph_to_string(const ColoredGraph& g) { return graph_to_json(g).dump(); }

ColoredGraph graph_from_string(const std::string& text) {
    return graph_from_json(json::parse(text));
}

ColoredGraph graph_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_string(ss.str());
}

namespace {
const char* kPalette[12] = {"red",     "blue",  "green",    "orange", "purple", "cyan3",
                            "magenta", "gold3", "sienna",   "deeppink", "gray40", "black"};
}

std::string export_dot(const ColoredGraph& g, const DotAnnotations& ann) {
    std::ostringstream out;
    out << "graph G {\n  node [shape=circle fontsize=10];\n";

    std::vector<char> clustered(g.n(), 0);
    for (size_t i = 0; i < ann.clusters.size(); ++i) {
        out << "  subgraph cluster_" << i << " {\n    label=\"";
        if (i < ann.cluster_labels.size())
            out << ann.cluster_labels[i];
        else
            out << "part " << i + 1;
        out << "\";\n   ";
        for (int v : ann.clusters[i]) {
            out << " " << v << ";";
            clustered[v] = 1;
        }
        out << "\n  }\n";
    }
    for (int v = 0; v < g.n(); ++v)
        if (!clustered[v]) out << "  " << v << ";\n";

    if (ann.highlight)
        for (int v : *ann.highlight) out << "  " << v << " [shape=doublecircle];\n";

    std::vector<std::vector<char>> bold;
    if (ann.tiling) {
        bold.assign(g.n(), std::vector<char>(g.n(), 0));
        for (const auto& block : ann.tiling->blocks)
            for (size_t i = 0; i < block.size(); ++i)
                for (size_t j = i + 1; j < block.size(); ++j)
                    bold[block[i]][block[j]] = bold[block[j]][block[i]] = 1;
    }

    auto es = g.edges();
    std::sort(es.begin(), es.end());
    for (auto [u, v] : es) {
        int c = g.color(u, v);
        out << "  " << u << " -- " << v << " [color=\"" << kPalette[(c - 1) % 12] << "\"";
        if (!bold.empty() && bold[u][v]) out << " penwidth=2.5 style=bold";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace tilescope
