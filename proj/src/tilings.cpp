#include "tilescope/tilings.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "tilescope/errors.hpp"

namespace tilescope {

void Tiling::normalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
}

void validate_tiling(const ColoredGraph& g, const Tiling& t, int r) {
    std::vector<char> seen(g.n(), 0);
    long long covered = 0;
    for (const auto& b : t.blocks) {
        if ((int)b.size() != r)
            throw std::invalid_argument("tiling block has size " + std::to_string(b.size()) +
                                        ", expected " + std::to_string(r));
        for (int v : b) {
            if (v < 0 || v >= g.n()) throw std::invalid_argument("tiling: vertex out of range");
            if (seen[v]) throw std::invalid_argument("tiling: vertex " + std::to_string(v) +
                                                     " covered twice");
            seen[v] = 1;
            ++covered;
        }
        if (!g.is_clique(b)) throw std::invalid_argument("tiling: block is not a clique");
    }
    if (covered != g.n()) throw std::invalid_argument("tiling does not cover all vertices");
}

bool is_valid_tiling(const ColoredGraph& g, const Tiling& t, int r) {
    try {
        validate_tiling(g, t, r);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

ColorProfile tiling_profile(const ColoredGraph& g, const Tiling& t) {
    ColorProfile p(g.q(), 0);
    for (const auto& b : t.blocks)
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j) p[g.color_checked(b[i], b[j]) - 1]++;
    return p;
}

long long tiling_discrepancy(const ColoredGraph& g, const Tiling& t) {
    return discrepancy(tiling_profile(g, t));
}

namespace {

struct TilingSearch {
    const ColoredGraph& g;
    int r;
    Bitset uncovered;
    Tiling current;
    const std::function<bool(const Tiling&)>* cb;
    std::mt19937_64* rng = nullptr;   // shuffles candidate order when set
    bool fail_first = false;          // branch on the scarcest vertex (sampling)
    long long node_budget = -1;       // -1 = unlimited
    bool budget_exhausted = false;

    TilingSearch(const ColoredGraph& g_, int r_) : g(g_), r(r_), uncovered(g_.n()) {
        uncovered.set_all();
    }

    // all r-cliques through v inside `uncovered`: partner subsets ascend
    // among themselves (under lexicographic branching v is the global
    // minimum, so blocks come out lexicographic as well)
    std::vector<VertexSet> candidates(int v) {
        std::vector<VertexSet> out;
        Bitset avail = uncovered & g.adj(v);
        VertexSet cur{v};
        extend(avail, cur, out);
        return out;
    }

    void extend(const Bitset& avail, VertexSet& cur, std::vector<VertexSet>& out) {
        if ((int)cur.size() == r) {
            VertexSet sorted = cur;
            std::sort(sorted.begin(), sorted.end());
            out.push_back(std::move(sorted));
            return;
        }
        avail.for_each([&](int w) {
            if (cur.size() > 1 && w <= cur.back()) return;
            Bitset next = avail & g.adj(w);
            cur.push_back(w);
            extend(next, cur, out);
            cur.pop_back();
        });
    }

    int pick_branch_vertex() {
        if (!fail_first) return uncovered.lowest();
        // scarcest-first: minimum uncovered degree breaks stranded searches
        // early; ties go to the lowest index
        int best = -1, best_deg = 0;
        uncovered.for_each([&](int v) {
            int d = (g.adj(v) & uncovered).count();
            if (best < 0 || d < best_deg) {
                best = v;
                best_deg = d;
            }
        });
        return best;
    }

    bool run() { // returns false when the callback stopped the search
        if (node_budget == 0) {
            budget_exhausted = true;
            return true;
        }
        if (node_budget > 0) --node_budget;
        int v = pick_branch_vertex();
        if (v < 0) return (*cb)(current);
        auto cands = candidates(v);
        if (rng) std::shuffle(cands.begin(), cands.end(), *rng);
        for (const auto& block : cands) {
            for (int w : block) uncovered.reset(w);
            current.blocks.push_back(block);
            bool go = run();
            current.blocks.pop_back();
            for (int w : block) uncovered.set(w);
            if (!go || budget_exhausted) return go;
        }
        return true;
    }
};

void check_divides(const ColoredGraph& g, int r) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (g.n() % r != 0)
        throw std::invalid_argument("r = " + std::to_string(r) + " does not divide n = " +
                                    std::to_string(g.n()));
}

} // namespace

void for_each_tiling(const ColoredGraph& g, int r, const std::function<bool(const Tiling&)>& cb) {
    check_divides(g, r);
    TilingSearch s(g, r);
    std::function<bool(const Tiling&)> emit = [&](const Tiling& t) {
        Tiling copy = t; // already in canonical order by construction
        return cb(copy);
    };
    s.cb = &emit;
    s.run();
}

std::optional<Tiling> find_tiling(const ColoredGraph& g, int r) {
    std::optional<Tiling> found;
    for_each_tiling(g, r, [&](const Tiling& t) {
        found = t;
        return false;
    });
    return found;
}

std::vector<Tiling> enumerate_tilings(const ColoredGraph& g, int r, long long limit) {
    std::vector<Tiling> out;
    for_each_tiling(g, r, [&](const Tiling& t) {
        out.push_back(t);
        return limit < 0 || (long long)out.size() < limit;
    });
    return out;
}

long long count_tilings(const ColoredGraph& g, int r) {
    long long c = 0;
    for_each_tiling(g, r, [&](const Tiling&) {
        ++c;
        return true;
    });
    return c;
}

std::vector<Tiling> sample_tilings(const ColoredGraph& g, int r, int count, std::uint64_t seed) {
    check_divides(g, r);
    constexpr int kMaxRestarts = 10000;
    const long long kNodeBudget = std::max(5000LL, 100LL * g.n());

    std::vector<Tiling> out;
    for (int i = 0; i < count; ++i) {
        std::optional<Tiling> got;
        bool exhausted_everything = false;
        for (int attempt = 0; attempt < kMaxRestarts && !got; ++attempt) {
            std::seed_seq sq{seed, (std::uint64_t)i, (std::uint64_t)attempt};
            std::mt19937_64 rng(sq);
            TilingSearch s(g, r);
            s.rng = &rng;
            s.fail_first = true;
            s.node_budget = kNodeBudget;
            std::function<bool(const Tiling&)> emit = [&](const Tiling& t) {
                got = t;
                got->normalize();
                return false;
            };
            s.cb = &emit;
            s.run();
            if (!got && !s.budget_exhausted) {
                exhausted_everything = true; // complete search found nothing
                break;
            }
        }
        if (exhausted_everything)
            throw std::invalid_argument("sample_tilings: graph has no K_r-tiling");
        if (!got)
            throw HypothesisError("sample_tilings",
                                  "no tiling found within " + std::to_string(kMaxRestarts) +
                                      " randomized restarts");
        out.push_back(std::move(*got));
    }
    return out;
}

long long crossing_edges(const Tiling& t, const VertexSet& X) {
    long long e = 0;
    for (const auto& b : t.blocks) {
        long long in = (long long)vs_intersect(b, X).size();
        e += in * (in - 1) / 2;
    }
    return e;
}

Tiling minimize_crossing(long long n, int r, const VertexSet& X) {
    if (r < 1 || n % r != 0)
        throw std::invalid_argument("minimize_crossing: r must divide n");
    for (int v : X)
        if (v < 0 || v >= n) throw std::invalid_argument("minimize_crossing: X out of range");

    std::vector<char> in_x(n, 0);
    for (int v : X) in_x[v] = 1;

    Tiling t;
    for (long long v = 0; v < n; v += r) {
        VertexSet b;
        for (int i = 0; i < r; ++i) b.push_back((int)(v + i));
        t.blocks.push_back(std::move(b));
    }

    auto x_count = [&](const VertexSet& b) {
        int c = 0;
        for (int v : b) c += in_x[v];
        return c;
    };

    // swap move from the structure lemma's proof: while some block exceeds
    // another by >= 2 in |block ∩ X|, exchange an X-vertex for a Y-vertex.
    for (;;) {
        int lo = 0, hi = 0;
        for (size_t i = 1; i < t.blocks.size(); ++i) {
            if (x_count(t.blocks[i]) < x_count(t.blocks[lo])) lo = (int)i;
            if (x_count(t.blocks[i]) > x_count(t.blocks[hi])) hi = (int)i;
        }
        if (x_count(t.blocks[hi]) < x_count(t.blocks[lo]) + 2) break;
        int x = -1, y = -1;
        for (int v : t.blocks[hi])
            if (in_x[v]) { x = v; break; }
        for (int v : t.blocks[lo])
            if (!in_x[v]) { y = v; break; }
        auto& bh = t.blocks[hi];
        auto& bl = t.blocks[lo];
        *std::find(bh.begin(), bh.end(), x) = y;
        *std::find(bl.begin(), bl.end(), y) = x;
    }

    t.normalize();
    return t;
}

Rational induced_fraction_bound(long long n, int r, const VertexSet& X) {
    if (r < 2 || n <= 0 || n % r != 0)
        throw std::invalid_argument("induced_fraction_bound: r must divide n");
    // requires |X| > (r-1)n/r, checked exactly
    if ((long long)X.size() * r <= (long long)(r - 1) * n)
        throw std::invalid_argument("induced_fraction_bound: |X| must exceed (r-1)n/r");
    return Rational(2 * (long long)X.size(), n) - Rational(1);
}

ColoredGraph complete_graph(int n, int q, int color) {
    ColoredGraph g(n, q);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v, color);
    return g;
}

ColoredGraph complete_multipartite(const std::vector<int>& sizes, int q, int color) {
    int n = 0;
    for (int s : sizes) n += s;
    ColoredGraph g(n, q);
    std::vector<int> part_of;
    for (size_t i = 0; i < sizes.size(); ++i)
        for (int t = 0; t < sizes[i]; ++t) part_of.push_back((int)i);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v]) g.add_edge(u, v, color);
    return g;
}

ColoredGraph tightness_example(int n, int r) {
    if (r < 2 || n % r != 0) throw std::invalid_argument("tightness_example: r must divide n");
    std::vector<int> sizes{n / r - 1, n / r + 1};
    for (int i = 2; i < r; ++i) sizes.push_back(n / r);
    return complete_multipartite(sizes, 1);
}

} // namespace tilescope
