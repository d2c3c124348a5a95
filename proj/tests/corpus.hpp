#pragma once
// seeded graph generators shared by the unit and acceptance suites
#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "tilescope/graph.hpp"
#include "tilescope/tilings.hpp"

namespace tilescope::testgen {

using Edges = std::vector<std::pair<int, int>>;

inline Edges all_pairs(int n) {
    Edges es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return es;
}

// K_n with random deletions, keeping every degree >= min_deg
inline Edges dense_edges(int n, int min_deg, std::mt19937_64& rng) {
    Edges es = all_pairs(n);
    std::shuffle(es.begin(), es.end(), rng);
    std::vector<int> deg(n, n - 1);
    Edges kept;
    for (auto [u, v] : es) {
        if (deg[u] > min_deg && deg[v] > min_deg && rng() % 2 == 0) {
            --deg[u];
            --deg[v];
        } else {
            kept.emplace_back(u, v);
        }
    }
    return kept;
}

// K_n minus a matching on vertices 1..n-1 (vertex 0 untouched)
inline Edges minus_matching(int n) {
    std::vector<std::vector<char>> drop(n, std::vector<char>(n, 0));
    for (int v = 1; v + 1 < n; v += 2) drop[v][v + 1] = drop[v + 1][v] = 1;
    Edges kept;
    for (auto [u, v] : all_pairs(n))
        if (!drop[u][v]) kept.emplace_back(u, v);
    return kept;
}

// circulant complement on vertices 1..n-1 (vertex 0 untouched); each step s
// removes the edges (i, i+s) around the ring, so a full step is 2-regular
// and the half-ring step is a perfect matching
inline Edges minus_circulant(int n, const std::vector<int>& steps) {
    std::vector<std::vector<char>> drop(n, std::vector<char>(n, 0));
    int m = n - 1; // ring 1..n-1
    for (int s : steps)
        for (int i = 0; i < m; ++i) {
            int a = 1 + i, b = 1 + (i + s) % m;
            drop[a][b] = drop[b][a] = 1;
        }
    Edges kept;
    for (auto [u, v] : all_pairs(n))
        if (!drop[u][v]) kept.emplace_back(u, v);
    return kept;
}

inline ColoredGraph color_random(int n, int q, const Edges& es, std::mt19937_64& rng) {
    ColoredGraph g(n, q);
    std::uniform_int_distribution<int> color(1, q);
    for (auto [u, v] : es) g.add_edge(u, v, color(rng));
    return g;
}

inline ColoredGraph color_mono(int n, int q, const Edges& es, int c = 1) {
    ColoredGraph g(n, q);
    for (auto [u, v] : es) g.add_edge(u, v, c);
    return g;
}

// 2-colored star: edges at `center` get color 1, the rest color 2
inline ColoredGraph color_star(int n, int q, const Edges& es, int center = 0) {
    ColoredGraph g(n, q);
    for (auto [u, v] : es) g.add_edge(u, v, (u == center || v == center) ? 1 : 2);
    return g;
}

inline ColoredGraph random_dense_colored(int n, int q, int min_deg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Edges es = dense_edges(n, min_deg, rng);
    return color_random(n, q, es, rng);
}

// disjoint union, relabeling the second graph after the first
inline ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
    ColoredGraph g(a.n() + b.n(), std::max(a.q(), b.q()));
    for (auto [u, v] : a.edges()) g.add_edge(u, v, a.color(u, v));
    for (auto [u, v] : b.edges()) g.add_edge(a.n() + u, a.n() + v, b.color(u, v));
    return g;
}

} // namespace tilescope::testgen
