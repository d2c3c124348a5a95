#include "tilescope/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tilescope {

ColoredGraph::ColoredGraph(int n, int q) : n_(n), q_(q) {
    if (n < 0) throw std::invalid_argument("ColoredGraph: negative vertex count");
    if (q < 1) throw std::invalid_argument("ColoredGraph: color count must be >= 1");
    adj_.assign(n, Bitset(n));
}

std::uint64_t ColoredGraph::key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t)u << 32 | (std::uint32_t)v;
}

void ColoredGraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range [0," +
                                    std::to_string(n_) + ")");
}

void ColoredGraph::add_edge(int u, int v, int c) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (c < 1 || c > q_)
        throw std::invalid_argument("color " + std::to_string(c) + " out of range [1," +
                                    std::to_string(q_) + "]");
    auto [it, inserted] = colors_.try_emplace(key(u, v), c);
    if (!inserted && it->second != c)
        throw std::invalid_argument("conflicting colors for edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}: " + std::to_string(it->second) +
                                    " vs " + std::to_string(c));
    adj_[u].set(v);
    adj_[v].set(u);
}

ColoredGraph ColoredGraph::build(int n, int q, const std::vector<std::array<int, 3>>& colored_edges) {
    ColoredGraph g(n, q);
    for (const auto& e : colored_edges) g.add_edge(e[0], e[1], e[2]);
    return g;
}

bool ColoredGraph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return u != v && adj_[u].test(v);
}

int ColoredGraph::color(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    auto it = colors_.find(key(u, v));
    return it == colors_.end() ? 0 : it->second;
}

int ColoredGraph::color_checked(int u, int v) const {
    int c = color(u, v);
    if (c == 0)
        throw std::invalid_argument("pair {" + std::to_string(u) + "," + std::to_string(v) +
                                    "} is not an edge");
    return c;
}

int ColoredGraph::degree(int v) const {
    check_vertex(v);
    return adj_[v].count();
}

int ColoredGraph::min_degree() const {
    if (n_ == 0) return 0;
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, adj_[v].count());
    return d;
}

Bitset ColoredGraph::common_neighborhood_bits(const VertexSet& K) const {
    Bitset b(n_);
    b.set_all();
    for (int v : K) {
        check_vertex(v);
        b &= adj_[v];
    }
    return b; // members of K drop out automatically: v is never adjacent to itself
}

VertexSet ColoredGraph::common_neighborhood(const VertexSet& K) const {
    return common_neighborhood_bits(K).to_vector();
}

bool ColoredGraph::is_clique(const VertexSet& K) const {
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i + 1; j < K.size(); ++j)
            if (!has_edge(K[i], K[j])) return false;
    return true;
}

std::vector<std::pair<int, int>> ColoredGraph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(colors_.size());
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (v > u) es.emplace_back(u, v);
        });
    return es;
}

bool ColoredGraph::operator==(const ColoredGraph& o) const {
    return n_ == o.n_ && q_ == o.q_ && colors_ == o.colors_;
}

long long discrepancy(const ColorProfile& p) {
    long long mx = 0, sum = 0;
    for (long long c : p) {
        mx = std::max(mx, c);
        sum += c;
    }
    return (long long)p.size() * mx - sum;
}

ColorProfile profile(const ColoredGraph& g, const std::vector<std::pair<int, int>>& es) {
    ColorProfile p(g.q(), 0);
    for (auto [u, v] : es) p[g.color_checked(u, v) - 1]++;
    return p;
}

ColorProfile induced_profile(const ColoredGraph& g, const VertexSet& S) {
    ColorProfile p(g.q(), 0);
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j) {
            int c = g.color(S[i], S[j]);
            if (c) p[c - 1]++;
        }
    return p;
}

ColorProfile clique_profile(const ColoredGraph& g, const VertexSet& K) {
    ColorProfile p(g.q(), 0);
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i + 1; j < K.size(); ++j) p[g.color_checked(K[i], K[j]) - 1]++;
    return p;
}

std::vector<int> colors_in(const ColoredGraph& g, const VertexSet& S) {
    ColorProfile p = induced_profile(g, S);
    std::vector<int> cs;
    for (int c = 1; c <= g.q(); ++c)
        if (p[c - 1] > 0) cs.push_back(c);
    return cs;
}

namespace {

bool extend_clique(const ColoredGraph& g, int size, VertexSet& cur, const Bitset& cand,
                   const std::function<bool(const VertexSet&)>& cb) {
    if ((int)cur.size() == size) return cb(cur);
    bool go = true;
    cand.for_each([&](int v) {
        if (!go) return;
        if (!cur.empty() && v <= cur.back()) return; // ascending extension keeps lex order
        Bitset next = cand & g.adj(v);
        cur.push_back(v);
        go = extend_clique(g, size, cur, next, cb);
        cur.pop_back();
    });
    return go;
}

} // namespace

void for_each_clique(const ColoredGraph& g, int size, const VertexSet* within,
                     const std::function<bool(const VertexSet&)>& cb) {
    if (size < 1) throw std::invalid_argument("clique size must be >= 1");
    Bitset ground(g.n());
    if (within) {
        for (int v : *within) {
            if (v < 0 || v >= g.n()) throw std::invalid_argument("within: vertex out of range");
            ground.set(v);
        }
    } else {
        ground.set_all();
    }
    VertexSet cur;
    cur.reserve(size);
    extend_clique(g, size, cur, ground, cb);
}

std::vector<VertexSet> enumerate_cliques(const ColoredGraph& g, int size, const VertexSet* within,
                                         long long limit) {
    std::vector<VertexSet> out;
    for_each_clique(g, size, within, [&](const VertexSet& K) {
        out.push_back(K);
        return limit < 0 || (long long)out.size() < limit;
    });
    return out;
}

VertexSet vs_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VertexSet vs_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VertexSet vs_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool vs_contains(const VertexSet& a, int v) {
    return std::binary_search(a.begin(), a.end(), v);
}

int induced_min_degree(const ColoredGraph& g, const Bitset& mask) {
    int d = -1;
    mask.for_each([&](int v) {
        int dv = (g.adj(v) & mask).count();
        if (d < 0 || dv < d) d = dv;
    });
    return d < 0 ? 0 : d;
}

bool degree_meets(const ColoredGraph& g, long long p, long long q, long long C) {
    // min_degree >= (p/q)*n + C  <=>  q*min_degree >= p*n + q*C
    return (long long)g.min_degree() * q >= p * (long long)g.n() + q * C;
}

} // namespace tilescope
