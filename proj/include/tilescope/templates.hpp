#pragma once
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tilescope/graph.hpp"
#include "tilescope/tilings.hpp"

namespace tilescope {

// An (r-2)-clique center plus an unbalanced cycle of length 4 or 6 inside the
// center's common neighborhood. Cycle stored in traversal order, normalized:
// cycle[0] is the minimum, cycle[1] < cycle.back().
struct Template {
    VertexSet center;
    std::vector<int> cycle;
};

// The template with each center vertex blown up to an independent set of
// size k (= half the cycle length); blown edges keep their colors. Vertex
// layout: center copy j occupies [j*(r-2), (j+1)*(r-2)), cycle vertices last.
struct Blowup {
    ColoredGraph graph;
    std::vector<VertexSet> center_copies; // Z_1..Z_k
    std::vector<int> cycle_vertices;      // u_1..u_2k
};

struct EmbeddedBlowup {
    Blowup pattern;
    std::vector<int> vertex_map; // pattern vertex -> host vertex, color-preserving
};

// Multiset test on a cycle's color sequence (f(w1w2), f(w2w3), ...):
// balanced iff entries at even positions equal entries at odd positions
// as multisets. Length must be 4 or 6.
bool is_balanced_cycle(const std::vector<int>& colors);

std::vector<int> cycle_colors(const ColoredGraph& g, const std::vector<int>& cycle);

void validate_template(const ColoredGraph& g, int r, const Template& t); // throws

// Canonical order: centers lexicographic, 4-cycles before 6-cycles per
// center, cycles lexicographic among normalized traversals.
void for_each_template(const ColoredGraph& g, int r,
                       const std::function<bool(const Template&)>& cb);
std::vector<Template> find_templates(const ColoredGraph& g, int r, long long limit = -1);

Blowup blowup(const ColoredGraph& g, const Template& t);

// The two tilings T^1 = {Z_j + {u_{2j-1}, u_{2j}}} and
// T^2 = {Z_j + {u_{2j}, u_{2j+1}}}; their profiles always differ in some
// color because the cycle is unbalanced.
std::pair<Tiling, Tiling> canonical_tilings(const Blowup& b, int r);

// Greedy maximal collection of vertex-disjoint embedded blowup copies,
// scanning templates in canonical order; embeddings are color-preserving
// subgraph maps found by lexicographic backtracking.
std::vector<std::pair<Template, EmbeddedBlowup>> greedy_disjoint_blowups(const ColoredGraph& g,
                                                                         int r);

struct BoostResult {
    Tiling tiling;
    int color = 0;
    long long margin = 0;
    int blowup_count = 0;
};

// Case-1 discrepancy boost: tile the residual, pick the majority unbalance
// color c over the embedded blowups, assemble the T^1 variant raising #c and
// compare with the flipped assembly; returns the better tiling with the
// witnessing color and the #c margin between the two assemblies.
std::optional<BoostResult> boost_discrepancy(const ColoredGraph& g, int r);

// relabels S to 0..|S|-1; second member maps new index -> original vertex
std::pair<ColoredGraph, VertexSet> induced_subgraph(const ColoredGraph& g, const VertexSet& S);

} // namespace tilescope
