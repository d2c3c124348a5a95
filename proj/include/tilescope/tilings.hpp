#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tilescope/graph.hpp"
#include "tilescope/rational.hpp"

namespace tilescope {

// A partition of V(g) into r-cliques. Normal form: blocks sorted internally,
// then sorted by first element; everything here emits normal form.
struct Tiling {
    std::vector<VertexSet> blocks;

    void normalize();
    bool operator==(const Tiling& o) const { return blocks == o.blocks; }
};

void validate_tiling(const ColoredGraph& g, const Tiling& t, int r); // throws on violation
bool is_valid_tiling(const ColoredGraph& g, const Tiling& t, int r);

ColorProfile tiling_profile(const ColoredGraph& g, const Tiling& t);
long long tiling_discrepancy(const ColoredGraph& g, const Tiling& t); // validates blocks are cliques

// Exact-cover backtracking over the clique hypergraph: branch on the lowest
// uncovered vertex, candidate blocks in lexicographic order. First solution.
std::optional<Tiling> find_tiling(const ColoredGraph& g, int r);

// All tilings in canonical order; callback may return false to stop.
void for_each_tiling(const ColoredGraph& g, int r, const std::function<bool(const Tiling&)>& cb);
std::vector<Tiling> enumerate_tilings(const ColoredGraph& g, int r, long long limit = -1);
long long count_tilings(const ColoredGraph& g, int r);

// Seeded randomized-restart sampling; sample i uses a generator derived from
// (seed, i) so runs are reproducible and samples independent.
// Throws HypothesisError after the restart cap, invalid_argument when no
// tiling exists at all or r does not divide n.
std::vector<Tiling> sample_tilings(const ColoredGraph& g, int r, int count, std::uint64_t seed);

long long crossing_edges(const Tiling& t, const VertexSet& X); // edges inside X

// Swap descent on K_n: exchange vertices between blocks while some pair of
// blocks differs in |block ∩ X| by >= 2. Terminates at the {k, k+1} structure,
// which on K_n is the global minimum of X-induced edges.
Tiling minimize_crossing(long long n, int r, const VertexSet& X);

// 2|X|/n - 1; requires |X| > (r-1)n/r (below that the bound is not asserted).
Rational induced_fraction_bound(long long n, int r, const VertexSet& X);

// graph builders used across suites
ColoredGraph complete_graph(int n, int q, int color = 1);
ColoredGraph complete_multipartite(const std::vector<int>& sizes, int q, int color = 1);
// Complete r-partite with parts n/r - 1, n/r + 1, n/r, ...: min degree
// (r-1)n/r - 1 and no K_r-tiling.
ColoredGraph tightness_example(int n, int r);

} // namespace tilescope
