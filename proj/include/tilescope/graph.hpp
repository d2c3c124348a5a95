#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tilescope/bitset.hpp"

namespace tilescope {

using VertexSet = std::vector<int>;          // strictly increasing
using ColorProfile = std::vector<long long>; // index c-1 holds the count of color c

// Simple undirected graph with a total q-coloring of its edges.
// Vertices are 0..n-1, colors 1..q; an absent pair is a non-edge.
// Adjacency lives in bitset rows, colors in an unordered pair -> color map.
// Immutable once built; safe to share across concurrent readers.
class ColoredGraph {
public:
    ColoredGraph(int n, int q);

    // build_graph: collapses duplicate identical entries, rejects conflicts.
    static ColoredGraph build(int n, int q, const std::vector<std::array<int, 3>>& colored_edges);

    int n() const { return n_; }
    int q() const { return q_; }
    long long edge_count() const { return (long long)colors_.size(); }

    bool has_edge(int u, int v) const;
    int color(int u, int v) const;         // 0 when uv is a non-edge
    int color_checked(int u, int v) const; // throws on a non-edge

    int degree(int v) const;
    int min_degree() const; // 0 for the empty graph

    const Bitset& adj(int v) const { return adj_[v]; }

    Bitset common_neighborhood_bits(const VertexSet& K) const; // N(empty) = V
    VertexSet common_neighborhood(const VertexSet& K) const;
    bool is_clique(const VertexSet& K) const;

    std::vector<std::pair<int, int>> edges() const; // ascending, u < v

    bool operator==(const ColoredGraph& o) const;

    void add_edge(int u, int v, int c); // build-time only

private:
    int n_, q_;
    std::vector<Bitset> adj_;
    std::unordered_map<std::uint64_t, int> colors_;

    static std::uint64_t key(int u, int v);
    void check_vertex(int v) const;
};

// Def. of discrepancy solved for the exact integer t: q * max_c(#c) - sum.
long long discrepancy(const ColorProfile& p);

ColorProfile profile(const ColoredGraph& g, const std::vector<std::pair<int, int>>& es); // all pairs must be edges
ColorProfile induced_profile(const ColoredGraph& g, const VertexSet& S);                 // edges present inside S
ColorProfile clique_profile(const ColoredGraph& g, const VertexSet& K);                  // every pair must be an edge
std::vector<int> colors_in(const ColoredGraph& g, const VertexSet& S);                   // sorted distinct colors of G[S]

// Lexicographic backtracking over size-k cliques inside `within` (default V).
// Deterministic; the callback returns false to stop early.
void for_each_clique(const ColoredGraph& g, int size, const VertexSet* within,
                     const std::function<bool(const VertexSet&)>& cb);
std::vector<VertexSet> enumerate_cliques(const ColoredGraph& g, int size,
                                         const VertexSet* within = nullptr,
                                         long long limit = -1);

// sorted-set helpers
VertexSet vs_intersect(const VertexSet& a, const VertexSet& b);
VertexSet vs_union(const VertexSet& a, const VertexSet& b);
VertexSet vs_difference(const VertexSet& a, const VertexSet& b);
bool vs_contains(const VertexSet& a, int v);

int induced_min_degree(const ColoredGraph& g, const Bitset& mask);

// Exact check of min_degree(g) >= (p/q)*n + C without floating point.
bool degree_meets(const ColoredGraph& g, long long p, long long q, long long C);

} // namespace tilescope
