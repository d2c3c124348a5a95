#include "tilescope/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tilescope/constructions.hpp"
#include "tilescope/errors.hpp"

namespace tilescope {

namespace {

std::string vs_str(const VertexSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

} // namespace

// --- degree cascade ---------------------------------------------------------

DegreeBoundResult neighborhood_degree_bound(const ColoredGraph& g, const VertexSet& K, int r,
                                            long long C) {
    if (!g.is_clique(K)) throw std::invalid_argument("neighborhood_degree_bound: K is not a clique");
    int t = (int)K.size();
    if (t > r - 1) throw std::invalid_argument("neighborhood_degree_bound: need |K| <= r-1");
    Bitset N = g.common_neighborhood_bits(K);
    long long observed = induced_min_degree(g, N);
    long long num = (long long)(r - t - 1) * N.count();
    long long den = r - t;
    long long bound = (num + den - 1) / den + C;
    return {observed, bound};
}

// --- bowties ----------------------------------------------------------------

namespace {

void validate_bowtie(const ColoredGraph& g, const Bowtie& b) {
    VertexSet all{b.v, b.wing1[0], b.wing1[1], b.wing2[0], b.wing2[1]};
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("bowtie: the five vertices must be distinct");
    for (auto& wing : {b.wing1, b.wing2})
        if (!g.has_edge(b.v, wing[0]) || !g.has_edge(b.v, wing[1]) ||
            !g.has_edge(wing[0], wing[1]))
            throw std::invalid_argument("bowtie: wings must form triangles with v");
}

} // namespace

BowtieCheck check_bowtie(const ColoredGraph& g, int r, const VertexSet& center, const Bowtie& b) {
    if ((int)center.size() != r - 2)
        throw std::invalid_argument("check_bowtie: center must have size r-2");
    if (!g.is_clique(center)) throw std::invalid_argument("check_bowtie: center is not a clique");
    validate_bowtie(g, b);
    Bitset N = g.common_neighborhood_bits(center);
    for (int v : {b.v, b.wing1[0], b.wing1[1], b.wing2[0], b.wing2[1]})
        if (!N.test(v))
            throw std::invalid_argument("check_bowtie: bowtie is not inside N(center)");

    std::array<int, 3> lhs{g.color_checked(b.wing1[0], b.wing1[1]),
                           g.color_checked(b.v, b.wing2[0]), g.color_checked(b.v, b.wing2[1])};
    std::array<int, 3> rhs{g.color_checked(b.wing2[0], b.wing2[1]),
                           g.color_checked(b.v, b.wing1[0]), g.color_checked(b.v, b.wing1[1])};
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    return {lhs == rhs, lhs, rhs};
}

std::vector<ReportItem> bowtie_consequences(const ColoredGraph& g, const VertexSet& center,
                                            const Bowtie& b) {
    auto chk = check_bowtie(g, (int)center.size() + 2, center, b);
    if (!chk.holds)
        throw std::invalid_argument("bowtie_consequences: the multiset identity fails");

    int vx1 = g.color_checked(b.v, b.wing1[0]), vy1 = g.color_checked(b.v, b.wing1[1]);
    int x1y1 = g.color_checked(b.wing1[0], b.wing1[1]);
    int vx2 = g.color_checked(b.v, b.wing2[0]), vy2 = g.color_checked(b.v, b.wing2[1]);
    int x2y2 = g.color_checked(b.wing2[0], b.wing2[1]);

    std::vector<ReportItem> items;
    if (vx1 != vy1 && vx1 != x1y1 && vy1 != x1y1) {
        bool pass = std::minmax(vx2, vy2) == std::minmax(vx1, vy1) && x2y2 == x1y1;
        items.push_back({"item_a_rainbow_wing", true, pass,
                         "v-colors must transfer and wing colors must match"});
    }
    if (vx1 == vy1 && vx1 != x1y1) {
        bool pass = vx2 == vx1 && vy2 == vx1 && x2y2 == x1y1;
        items.push_back({"item_b_matched_v_edges", true, pass,
                         "all four v-edges equal and wing edges equal"});
    }
    std::set<int> s{vx1, vy1, x1y1};
    if (s.size() == 2) {
        int rare = 0;
        for (int c : s) {
            int mult = (vx1 == c) + (vy1 == c) + (x1y1 == c);
            if (mult == 1) rare = c;
        }
        bool pass = rare == vx2 || rare == vy2 || rare == x2y2;
        items.push_back({"item_c_rare_color_transfers", true, pass,
                         "color of multiplicity 1 reappears on the other wing"});
    }
    return items;
}

// --- clique chains ----------------------------------------------------------

namespace {

int lowest_common_neighbor(const ColoredGraph& g, const Bitset& mask, const VertexSet& among,
                           const VertexSet& exclude) {
    Bitset b = mask;
    for (int v : among) b &= g.adj(v);
    for (int v : exclude) b.reset(v);
    return b.lowest();
}

[[noreturn]] void chain_fail(const std::string& where, const VertexSet& constraint) {
    throw HypothesisError("build_chain",
                          "no common neighbor available at " + where + " for " +
                              vs_str(constraint) + "; the minimum degree slack is violated");
}

// chain of (s)-cliques between ordered lists X, Y inside mask, with
// |consecutive intersection| >= s-1; requires y_i x_j in E for i <= s-2,
// j >= i+2 (chain auxiliary lemma, proven by induction on s)
std::vector<VertexSet> chain_between(const ColoredGraph& g, const Bitset& mask,
                                     const std::vector<int>& X, const std::vector<int>& Y) {
    size_t s = X.size();
    if (s == 1) {
        VertexSet a{X[0]}, b{Y[0]};
        return {a, b};
    }
    VertexSet need(Y.begin(), Y.end() - 1);
    need.push_back(X.back());
    int z = lowest_common_neighbor(g, mask, need, {});
    if (z < 0) chain_fail("chain_between z-pick", need);

    VertexSet M(Y.begin(), Y.end() - 1);
    M.push_back(z);
    std::sort(M.begin(), M.end());
    VertexSet K2(Y.begin(), Y.end());
    std::sort(K2.begin(), K2.end());

    std::vector<int> Xp(X.begin(), X.end() - 1);
    std::vector<int> Yp(Y.begin(), Y.end() - 2);
    Yp.push_back(z);
    Bitset sub = mask & g.adj(X.back());
    auto inner = chain_between(g, sub, Xp, Yp);

    std::vector<VertexSet> out;
    for (auto& L : inner) {
        L.push_back(X.back());
        std::sort(L.begin(), L.end());
        out.push_back(std::move(L));
    }
    out.push_back(std::move(M));
    out.push_back(std::move(K2));
    return out;
}

// chain of (s)-cliques inside mask from the ordered clique L (anchor last) to
// a clique containing the edge uw; anchor belongs to all but the last two
std::vector<VertexSet> chain_to_edge(const ColoredGraph& g, const Bitset& mask,
                                     const std::vector<int>& L, int u, int w) {
    size_t s = L.size();
    std::vector<int> ys;
    for (size_t i = 1; i + 1 < s; ++i) { // y_1..y_{s-2}
        VertexSet need{u, w};
        for (int y : ys) need.push_back(y);
        for (size_t j = i + 1; j < s; ++j) need.push_back(L[j]);
        int y = lowest_common_neighbor(g, mask, need, {});
        if (y < 0) chain_fail("chain_to_edge y-pick", need);
        ys.push_back(y);
    }
    {
        VertexSet need{u};
        for (int y : ys) need.push_back(y);
        need.push_back(L.back());
        int y = lowest_common_neighbor(g, mask, need, {});
        if (y < 0) chain_fail("chain_to_edge y-last-pick", need);
        ys.push_back(y); // y_{s-1}
    }

    VertexSet M(ys.begin(), ys.end() - 1);
    M.push_back(u);
    M.push_back(w);
    std::sort(M.begin(), M.end());
    VertexSet N(ys.begin(), ys.end());
    N.push_back(u);
    std::sort(N.begin(), N.end());

    std::vector<int> Xp(L.begin(), L.end() - 1);
    auto inner = chain_between(g, mask & g.adj(L.back()), Xp, ys);

    std::vector<VertexSet> out;
    for (auto& Lp : inner) {
        Lp.push_back(L.back());
        std::sort(Lp.begin(), Lp.end());
        out.push_back(std::move(Lp));
    }
    out.push_back(std::move(N));
    out.push_back(std::move(M));
    return out;
}

} // namespace

ChainResult build_chain(const ColoredGraph& g, int v, const VertexSet& K, int x, int u, int w) {
    int r = (int)K.size();
    if (r < 3) throw std::invalid_argument("build_chain: K must have size >= 3");
    if (!degree_meets(g, r - 1, r, 2))
        throw std::invalid_argument("build_chain: needs min degree >= (r-1)n/r + 2");
    if (!g.is_clique(K)) throw std::invalid_argument("build_chain: K is not a clique");
    for (int k : K)
        if (!g.has_edge(v, k)) throw std::invalid_argument("build_chain: K must lie in N(v)");
    if (!vs_contains(K, x)) throw std::invalid_argument("build_chain: x must belong to K");
    if (u == w || !g.has_edge(u, w)) throw std::invalid_argument("build_chain: uw must be an edge");
    if (!g.has_edge(v, u) || !g.has_edge(v, w))
        throw std::invalid_argument("build_chain: u, w must lie in N(v)");

    if (vs_contains(K, u) && vs_contains(K, w)) return {{K}, x}; // trivial case

    int y = -1;
    for (int cand : K)
        if (cand != x && cand != u && cand != w) { y = cand; break; }
    if (y < 0) throw std::invalid_argument("build_chain: no spare vertex in K");

    Bitset mask = g.adj(v);
    mask.reset(y);

    std::vector<int> L;
    for (int cand : K)
        if (cand != y && cand != x) L.push_back(cand);
    L.push_back(x); // anchor goes last

    auto Ls = chain_to_edge(g, mask, L, u, w);

    // collapse consecutive duplicates so every intersection is exactly r-2
    std::vector<VertexSet> dedup;
    for (auto& s : Ls)
        if (dedup.empty() || dedup.back() != s) dedup.push_back(std::move(s));

    std::vector<VertexSet> chain;
    chain.push_back(K);
    for (size_t i = 1; i < dedup.size(); ++i) {
        VertexSet among = dedup[i];
        among.push_back(v);
        VertexSet exclude = chain.back();
        if (i + 1 < dedup.size()) exclude = vs_union(exclude, dedup[i + 1]);
        int z = lowest_common_neighbor(g, g.adj(v), among, exclude);
        if (z < 0) chain_fail("z-extension", among);
        VertexSet Ki = dedup[i];
        Ki.push_back(z);
        std::sort(Ki.begin(), Ki.end());
        chain.push_back(std::move(Ki));
    }
    return {std::move(chain), x};
}

void validate_chain(const ColoredGraph& g, int v, const VertexSet& K, int x, int u, int w,
                    const ChainResult& chain) {
    const auto& ks = chain.cliques;
    int r = (int)K.size();
    if (ks.empty()) throw std::invalid_argument("chain: empty");
    if ((long long)ks.size() > g.n()) throw std::invalid_argument("chain: longer than n");
    if (ks.front() != K) throw std::invalid_argument("chain: K_1 != K");
    if (chain.anchor != x) throw std::invalid_argument("chain: anchor mismatch");
    for (const auto& c : ks) {
        if ((int)c.size() != r) throw std::invalid_argument("chain: clique of wrong size");
        if (!g.is_clique(c)) throw std::invalid_argument("chain: block is not a clique");
        for (int z : c)
            if (!g.has_edge(v, z)) throw std::invalid_argument("chain: clique leaves N(v)");
    }
    if (!vs_contains(ks.back(), u) || !vs_contains(ks.back(), w))
        throw std::invalid_argument("chain: target edge not inside K_m");
    for (size_t i = 0; i + 1 < ks.size(); ++i)
        if ((int)vs_intersect(ks[i], ks[i + 1]).size() != r - 2)
            throw std::invalid_argument("chain: consecutive intersection != r-2");
    for (size_t i = 0; i + 2 < ks.size(); ++i)
        if (!vs_contains(ks[i], x))
            throw std::invalid_argument("chain: anchor missing from K_" + std::to_string(i + 1));
}

// --- color transfer ---------------------------------------------------------

int centered_main_color(const ColoredGraph& g, int v, const VertexSet& K) {
    if (K.empty()) return 0;
    int c = g.color(v, K[0]);
    if (c == 0) return 0;
    for (int k : K)
        if (g.color(v, k) != c) return 0;
    return c;
}

bool is_isolated_vertex(const ColoredGraph& g, int v, const VertexSet& K, int t) {
    int main = centered_main_color(g, v, K);
    if (main == 0) throw std::invalid_argument("is_isolated_vertex: (v,K) is not centered");
    if (!vs_contains(K, t)) throw std::invalid_argument("is_isolated_vertex: t not in K");
    for (int k : K)
        if (k != t && g.color_checked(t, k) == main) return false;
    return true;
}

namespace {

struct SettingParts {
    int r;
    VertexSet zs; // K1 ∩ K2
    int x1, y1, x2, y2;
};

SettingParts decompose_setting(const ColoredGraph& g, int v, const VertexSet& K1,
                               const VertexSet& K2) {
    int r = (int)K1.size();
    if (r < 3 || (int)K2.size() != r)
        throw std::invalid_argument("setting: K1, K2 must be r-cliques, r >= 3");
    for (const auto* K : {&K1, &K2}) {
        if (!g.is_clique(*K)) throw std::invalid_argument("setting: not a clique");
        for (int k : *K)
            if (!g.has_edge(v, k)) throw std::invalid_argument("setting: clique leaves N(v)");
    }
    VertexSet zs = vs_intersect(K1, K2);
    if ((int)zs.size() != r - 2)
        throw std::invalid_argument("setting: |K1 ∩ K2| must be r-2");
    VertexSet a = vs_difference(K1, zs), b = vs_difference(K2, zs);
    return {r, std::move(zs), a[0], a[1], b[0], b[1]};
}

} // namespace

TripleClass classify_triple(const ColoredGraph& g, int v, const VertexSet& K1,
                            const VertexSet& K2) {
    decompose_setting(g, v, K1, K2);
    TripleClass tc;
    tc.profile1 = clique_profile(g, K1);
    tc.profile2 = clique_profile(g, K2);
    tc.main_color = centered_main_color(g, v, K1);

    bool good = tc.profile1 == tc.profile2;
    if (!good) {
        for (int c = 1; c <= g.q(); ++c)
            if (tc.profile1[c - 1] != tc.profile2[c - 1]) { tc.neither_color = c; break; }
        tc.verdict = TripleVerdict::Neither;
        return tc;
    }
    bool excellent = tc.main_color != 0;
    if (excellent)
        for (int k : K2)
            if (g.color(v, k) != tc.main_color) { excellent = false; break; }
    tc.verdict = excellent ? TripleVerdict::Excellent : TripleVerdict::Good;
    return tc;
}

std::vector<ReportItem> check_transfer_lemmas(const ColoredGraph& g, int v, const VertexSet& K1,
                                              const VertexSet& K2) {
    auto sp = decompose_setting(g, v, K1, K2);
    int c1 = centered_main_color(g, v, K1);
    if (c1 == 0) throw std::invalid_argument("check_transfer_lemmas: (v,K1) must be centered");
    auto tc = classify_triple(g, v, K1, K2);
    bool excellent = tc.verdict == TripleVerdict::Excellent;
    int c2 = g.color_checked(sp.x2, sp.y2);

    std::vector<ReportItem> items;
    if (!excellent) {
        items.push_back({"item1_wing1_has_main_color", true,
                         g.color_checked(sp.x1, sp.y1) == c1, "f(x1y1) = c1"});
        items.push_back({"item2_wing2_color_differs", true, c2 != c1, "f(x2y2) != c1"});
        bool it3 = true;
        for (int z : sp.zs) {
            bool left = g.color_checked(z, sp.x1) == c1 || g.color_checked(z, sp.y1) == c1;
            bool right = g.color_checked(z, sp.x2) == c2 || g.color_checked(z, sp.y2) == c2;
            if (!left || !right) { it3 = false; break; }
        }
        items.push_back({"item3_shared_vertices_touch_both", true, it3,
                         "each z_i touches c1 on wing 1 and c2 on wing 2"});

        VertexSet M = K2;
        M.push_back(v);
        std::sort(M.begin(), M.end());
        std::vector<int> monos;
        for (int m : M) {
            int c = 0;
            bool mono = true;
            for (int o : M) {
                if (o == m) continue;
                int e = g.color_checked(m, o);
                if (c == 0) c = e;
                else if (c != e) { mono = false; break; }
            }
            if (mono) monos.push_back(m);
        }
        bool it4 = true;
        if (!monos.empty()) {
            it4 = monos.size() == 1 && (monos[0] == sp.x2 || monos[0] == sp.y2);
            if (it4) {
                int wv = monos[0];
                for (int k : K2)
                    if (k != wv && g.color_checked(v, k) != c1) { it4 = false; break; }
                int other = wv == sp.x2 ? sp.y2 : sp.x2;
                if (g.color_checked(wv, other) != c2) it4 = false;
            }
        }
        items.push_back({"item4_monochromatic_vertex_shape", true, it4,
                         "at most one mono vertex, in the new pair, colored c2"});
    }

    {
        bool contained = true;
        auto cs2 = colors_in(g, K2);
        auto cs1 = colors_in(g, K1);
        for (int c : cs2) {
            if (!excellent && c == c2) continue;
            if (!std::binary_search(cs1.begin(), cs1.end(), c)) { contained = false; break; }
        }
        items.push_back({"colors_contained_except_c2", true, contained,
                         "every K2 color except possibly c2 appears in K1"});
    }

    if (excellent) {
        bool any = false, pass = true;
        for (int t : sp.zs)
            if (is_isolated_vertex(g, v, K1, t)) {
                any = true;
                if (!is_isolated_vertex(g, v, K2, t)) pass = false;
            }
        items.push_back({"isolated_vertex_propagation", any, !any || pass,
                         "isolated shared vertices stay isolated"});
    }
    return items;
}

// --- cliques of r+1 and r+2 vertices ----------------------------------------

R2CliqueClass classify_r2clique(const ColoredGraph& g, const VertexSet& M) {
    if (M.size() < 5) throw std::invalid_argument("classify_r2clique: need an (r+2)-clique, r >= 3");
    if (!g.is_clique(M)) throw std::invalid_argument("classify_r2clique: M is not a clique");

    auto cs = colors_in(g, M);
    if (cs.size() == 1) return {CliqueClass::Monochromatic, -1, 0, cs[0]};

    for (int v : M) {
        int star = 0, base = 0;
        bool ok = true;
        for (int o : M) {
            if (o == v) continue;
            int c = g.color_checked(v, o);
            if (star == 0) star = c;
            else if (star != c) { ok = false; break; }
        }
        if (!ok) continue;
        VertexSet rest = vs_difference(M, {v});
        for (size_t i = 0; ok && i < rest.size(); ++i)
            for (size_t j = i + 1; ok && j < rest.size(); ++j) {
                int c = g.color_checked(rest[i], rest[j]);
                if (base == 0) base = c;
                else if (base != c) ok = false;
            }
        if (ok && star != base) return {CliqueClass::TwoColoredStar, v, star, base};
    }
    return {CliqueClass::Other, -1, 0, 0};
}

VertexSet rich_subclique(const ColoredGraph& g, const VertexSet& M, int r) {
    if (r < 3) throw std::invalid_argument("rich_subclique: r must be >= 3");
    if ((int)M.size() != r + 1 || !g.is_clique(M))
        throw std::invalid_argument("rich_subclique: M must be an (r+1)-clique");
    long long have = (long long)colors_in(g, M).size();
    if (have < binom2(r) + 1)
        throw std::invalid_argument("rich_subclique: M needs at least C(r,2)+1 colors");

    VertexSet result;
    if (r == 3) {
        // base case: a 4-clique with >= 4 colors contains a rainbow triangle
        for (size_t skip = 0; skip < M.size() && result.empty(); ++skip) {
            VertexSet T;
            for (size_t i = 0; i < M.size(); ++i)
                if (i != M.size() - 1 - skip) T.push_back(M[i]);
            // iterate triangles in lex order: drop the last, then earlier ones
            if (colors_in(g, T).size() == 3) result = T;
        }
        if (result.empty())
            throw std::logic_error("rich_subclique: no rainbow triangle in a 4-colored K4");
    } else if (have == binom2(r + 1)) {
        result = VertexSet(M.begin(), M.end() - 1); // rainbow: any r-subclique works
    } else {
        ColorProfile counts = clique_profile(g, M);
        int v = -1;
        for (int cand : M) {
            for (int o : M) {
                if (o == cand) continue;
                if (counts[g.color_checked(cand, o) - 1] >= 2) { v = cand; break; }
            }
            if (v >= 0) break;
        }
        if (v < 0) throw std::logic_error("rich_subclique: repeated color without a witness");
        VertexSet K = vs_difference(M, {v});
        if ((long long)colors_in(g, K).size() >= binom2(r - 1) + 2) {
            result = K;
        } else {
            VertexSet L = rich_subclique(g, K, r - 1);
            L.push_back(v);
            std::sort(L.begin(), L.end());
            result = L;
        }
    }
    if ((long long)colors_in(g, result).size() < binom2(r - 1) + 2)
        throw std::logic_error("rich_subclique: output misses the color bound");
    return result;
}

// --- large few-color sets ---------------------------------------------------

ExtractResult extract_U_from_clique(const ColoredGraph& g, int r, const VertexSet& K) {
    if (r < 3) throw std::invalid_argument("extract_U_from_clique: r must be >= 3");
    if ((int)K.size() != r + 1) throw std::invalid_argument("extract_U_from_clique: |K| != r+1");
    if (!g.is_clique(K)) throw std::invalid_argument("extract_U_from_clique: K is not a clique");
    for (int v : K) {
        int c0 = 0;
        bool mono = true;
        for (int o : K) {
            if (o == v) continue;
            int c = g.color_checked(v, o);
            if (!c0) c0 = c;
            else if (c0 != c) { mono = false; break; }
        }
        if (mono)
            throw std::invalid_argument("extract_U_from_clique: K has a monochromatic vertex (" +
                                        std::to_string(v) + ")");
    }
    auto kcolors = colors_in(g, K);
    if ((long long)kcolors.size() > binom2(r))
        throw std::invalid_argument("extract_U_from_clique: K carries more than C(r,2) colors");
    if (g.common_neighborhood_bits(K).any())
        throw std::invalid_argument("extract_U_from_clique: K extends to an (r+2)-clique");
    if (!degree_meets(g, r - 1, r, 0))
        throw std::invalid_argument("extract_U_from_clique: needs min degree >= (r-1)n/r");

    Bitset kbits(g.n());
    for (int v : K) kbits.set(v);

    VertexSet U;
    std::vector<VertexSet> parts(r + 1);
    for (int v = 0; v < g.n(); ++v) {
        int d = (g.adj(v) & kbits).count();
        bool in_k = vs_contains(K, v);
        if (d < r && !in_k) continue;
        U.push_back(v);
        int missing = -1;
        if (in_k) {
            missing = (int)(std::lower_bound(K.begin(), K.end(), v) - K.begin());
        } else {
            if (d > r)
                throw HypothesisError("extract_U", "vertex adjacent to the whole of K despite "
                                                   "no (r+2)-clique containing K");
            for (size_t i = 0; i < K.size(); ++i)
                if (!g.has_edge(v, K[i])) { missing = (int)i; break; }
        }
        parts[missing].push_back(v);
    }

    long long lb = (long long)(r + 1) * g.min_degree() - (long long)(r - 1) * g.n();
    if ((long long)U.size() < lb)
        throw HypothesisError("extract_U", "|U| fell below the counting bound");
    if ((long long)U.size() < g.min_degree())
        throw HypothesisError("extract_U", "|U| < min degree");

    for (int i = 0; i <= r; ++i) {
        for (size_t a = 0; a < parts[i].size(); ++a) {
            int u = parts[i][a];
            for (size_t b = a + 1; b < parts[i].size(); ++b)
                if (g.has_edge(u, parts[i][b]))
                    throw HypothesisError("extract_U", "U_" + std::to_string(i + 1) +
                                                           " is not independent");
            for (size_t j = 0; j < K.size(); ++j) {
                if ((int)j == i) continue;
                if (g.color_checked(u, K[j]) != g.color_checked(K[i], K[j]))
                    throw HypothesisError("extract_U",
                                          "edge u-x_j disagrees with x_i-x_j (clique vertex copy)");
            }
        }
    }
    for (int i = 0; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            for (int u : parts[i])
                for (int w : parts[j]) {
                    int c = g.color(u, w);
                    if (c && c != g.color_checked(K[i], K[j]))
                        throw HypothesisError("extract_U",
                                              "edge between U_i and U_j leaves the K coloring");
                }

    return {std::move(U), std::move(kcolors), std::move(parts)};
}

namespace {

enum class ChainMode { Excellent, ManyColors, MonoVertex };

// edge-by-edge transfer across N(v): every chain step must preserve the
// profile by the mechanism the mode promises; the target edge color must
// land inside colors(K).
void run_chain_transfer(const ColoredGraph& g, int v, const VertexSet& K, ChainMode mode, int c1,
                        int anchor) {
    VertexSet N = g.adj(v).to_vector();
    auto kcolors = colors_in(g, K);
    ColorProfile profK = clique_profile(g, K);
    bool anchor_isolated =
        mode == ChainMode::MonoVertex && centered_main_color(g, v, K) != 0 &&
        is_isolated_vertex(g, v, K, anchor);

    for (size_t a = 0; a < N.size(); ++a)
        for (size_t b = a + 1; b < N.size(); ++b) {
            int u = N[a], w = N[b];
            if (!g.has_edge(u, w)) continue;
            auto chain = build_chain(g, v, K, anchor, u, w);
            const auto& ks = chain.cliques;
            size_t m = ks.size();

            for (size_t i = 0; i + 1 < m; ++i) {
                auto tc = classify_triple(g, v, ks[i], ks[i + 1]);
                bool last = (i + 2 == m);
                switch (mode) {
                    case ChainMode::Excellent:
                        if (tc.verdict != TripleVerdict::Excellent || tc.main_color != c1)
                            throw HypothesisError(
                                "chain_transfer",
                                "step " + std::to_string(i + 1) +
                                    " is not excellent though the main color is absent from K");
                        break;
                    case ChainMode::ManyColors: {
                        auto sp = decompose_setting(g, v, ks[i], ks[i + 1]);
                        bool rainbow = false;
                        for (int z : sp.zs) {
                            int e1 = g.color_checked(z, sp.x1), e2 = g.color_checked(z, sp.y1);
                            int e3 = g.color_checked(sp.x1, sp.y1);
                            if (e1 != e2 && e1 != e3 && e2 != e3) { rainbow = true; break; }
                        }
                        if (!rainbow)
                            throw HypothesisError("chain_transfer",
                                                  "no rainbow triangle despite the color-rich "
                                                  "clique invariant");
                        if (tc.verdict == TripleVerdict::Neither)
                            throw HypothesisError("chain_transfer",
                                                  "profiles diverged on a rainbow step");
                        break;
                    }
                    case ChainMode::MonoVertex:
                        if (!last) {
                            if (tc.verdict != TripleVerdict::Excellent || tc.main_color != c1)
                                throw HypothesisError("chain_transfer",
                                                      "inner step lost the centered structure");
                            if (anchor_isolated && i + 2 <= m - 2 &&
                                !is_isolated_vertex(g, v, ks[i + 1], anchor))
                                throw HypothesisError("chain_transfer",
                                                      "isolated anchor failed to propagate");
                        } else if (tc.verdict != TripleVerdict::Excellent) {
                            auto csm = colors_in(g, ks[m - 1]);
                            auto prev = colors_in(g, ks[m - 2]);
                            for (int c : csm)
                                if (!std::binary_search(prev.begin(), prev.end(), c))
                                    throw HypothesisError(
                                        "chain_transfer",
                                        "final clique introduced a color unseen one step back");
                        }
                        break;
                }
                // profile equality holds along the whole chain except possibly
                // at the final clique of the mono-vertex argument
                bool need_eq = mode != ChainMode::MonoVertex || !last;
                if (need_eq && clique_profile(g, ks[i + 1]) != profK)
                    throw HypothesisError("chain_transfer", "profile drifted along the chain");
            }

            int cuw = g.color_checked(u, w);
            if (!std::binary_search(kcolors.begin(), kcolors.end(), cuw))
                throw HypothesisError("chain_transfer",
                                      "edge {" + std::to_string(u) + "," + std::to_string(w) +
                                          "} has color " + std::to_string(cuw) +
                                          " which never appears in K");
        }
}

} // namespace

FewColorResult find_few_color_set(const ColoredGraph& g, int r) {
    if (r < 3) throw std::invalid_argument("find_few_color_set: r must be >= 3");
    if (!degree_meets(g, r - 1, r, 3))
        throw std::invalid_argument("find_few_color_set: needs min degree >= (r-1)n/r + 3");

    // a non-monochromatic (r+2)-clique must be a 2-colored star
    std::optional<VertexSet> nonmono;
    for_each_clique(g, r + 2, nullptr, [&](const VertexSet& M) {
        if (colors_in(g, M).size() > 1) {
            nonmono = M;
            return false;
        }
        return true;
    });
    if (nonmono) {
        auto cls = classify_r2clique(g, *nonmono);
        if (cls.kind != CliqueClass::TwoColoredStar)
            throw HypothesisError("find_few_color_set",
                                  "non-monochromatic (r+2)-clique " + vs_str(*nonmono) +
                                      " is not a 2-colored star; a template exists");
        int v = cls.center;
        VertexSet rest = vs_difference(*nonmono, {v});
        VertexSet K(rest.begin(), rest.begin() + r);
        run_chain_transfer(g, v, K, ChainMode::Excellent, cls.star_color, K[0]);
        VertexSet U = g.adj(v).to_vector();
        auto ucolors = colors_in(g, U);
        if ((long long)ucolors.size() > binom2(r) || (long long)U.size() < g.min_degree())
            throw HypothesisError("find_few_color_set", "star case produced a bad U");
        return {std::move(U), std::move(ucolors), "two_colored_star", v, std::move(K)};
    }

    // all (r+2)-cliques are monochromatic; split over the (r+1)-cliques
    std::optional<VertexSet> case1, case2;
    bool any_rp1 = false;
    for_each_clique(g, r + 1, nullptr, [&](const VertexSet& M) {
        any_rp1 = true;
        long long ncolors = (long long)colors_in(g, M).size();
        bool has_mono = false;
        for (int m : M) {
            int c0 = 0;
            bool mono = true;
            for (int o : M) {
                if (o == m) continue;
                int c = g.color_checked(m, o);
                if (!c0) c0 = c;
                else if (c0 != c) { mono = false; break; }
            }
            if (mono) { has_mono = true; break; }
        }
        if (!case1 && !has_mono && ncolors <= binom2(r)) case1 = M;
        if (!case2 && ncolors >= binom2(r) + 1) case2 = M;
        return !(case1 && case2);
    });
    if (!any_rp1)
        throw HypothesisError("find_few_color_set",
                              "no (r+1)-clique found despite the degree bound");

    if (case1) {
        auto ex = extract_U_from_clique(g, r, *case1);
        if ((long long)ex.U.size() < g.min_degree())
            throw HypothesisError("find_few_color_set", "extracted U is too small");
        return {std::move(ex.U), std::move(ex.colors), "no_mono_vertex_clique", -1,
                std::move(*case1)};
    }

    if (case2) {
        VertexSet K = rich_subclique(g, *case2, r);
        VertexSet rest = vs_difference(*case2, K);
        int v = rest[0];
        run_chain_transfer(g, v, K, ChainMode::ManyColors, 0, K[0]);
        VertexSet U = g.adj(v).to_vector();
        auto ucolors = colors_in(g, U);
        if ((long long)ucolors.size() > binom2(r) || (long long)U.size() < g.min_degree())
            throw HypothesisError("find_few_color_set", "many-colors case produced a bad U");
        return {std::move(U), std::move(ucolors), "many_colors_clique", v, std::move(K)};
    }

    // every (r+1)-clique has a monochromatic vertex: pick a centered clique,
    // preferring one with an isolated vertex and minimal main-color count
    std::optional<std::tuple<long long, int, VertexSet, int>> pick; // count, v, K, t
    std::optional<std::pair<int, VertexSet>> fallback;
    for_each_clique(g, r + 1, nullptr, [&](const VertexSet& M) {
        for (int m : M) {
            VertexSet K = vs_difference(M, {m});
            int main = centered_main_color(g, m, K);
            if (main == 0) continue;
            if (!fallback) fallback = {m, K};
            int iso = -1;
            for (int t : K)
                if (is_isolated_vertex(g, m, K, t)) { iso = t; break; }
            if (iso < 0) continue;
            long long cnt = clique_profile(g, K)[main - 1];
            std::tuple<long long, int, VertexSet, int> cand{cnt, m, K, iso};
            if (!pick || cand < *pick) pick = std::move(cand);
        }
        return true;
    });
    int v, t;
    VertexSet K;
    if (pick) {
        v = std::get<1>(*pick);
        K = std::get<2>(*pick);
        t = std::get<3>(*pick);
    } else if (fallback) {
        v = fallback->first;
        K = fallback->second;
        t = K[0];
    } else {
        throw HypothesisError("find_few_color_set",
                              "no centered (r+1)-clique although every (r+1)-clique has a "
                              "monochromatic vertex");
    }
    int c1 = centered_main_color(g, v, K);
    run_chain_transfer(g, v, K, ChainMode::MonoVertex, c1, t);
    VertexSet U = g.adj(v).to_vector();
    auto ucolors = colors_in(g, U);
    if ((long long)ucolors.size() > binom2(r) || (long long)U.size() < g.min_degree())
        throw HypothesisError("find_few_color_set", "mono-vertex case produced a bad U");
    return {std::move(U), std::move(ucolors), "mono_vertex_cliques", v, std::move(K)};
}

MonoResult find_monochromatic_set(const ColoredGraph& g, int r) {
    if (r < 3) throw std::invalid_argument("find_monochromatic_set: r must be >= 3");
    if (!degree_meets(g, r, r + 1, 3))
        throw std::invalid_argument("find_monochromatic_set: needs min degree >= rn/(r+1) + 3");

    std::optional<VertexSet> first, star;
    for_each_clique(g, r + 2, nullptr, [&](const VertexSet& M) {
        if (!first) first = M;
        auto cls = classify_r2clique(g, M);
        if (cls.kind == CliqueClass::Other)
            throw HypothesisError("find_monochromatic_set",
                                  "(r+2)-clique " + vs_str(M) +
                                      " is neither monochromatic nor a 2-colored star");
        if (cls.kind == CliqueClass::TwoColoredStar) {
            star = M;
            return false;
        }
        return true;
    });
    if (!first)
        throw HypothesisError("find_monochromatic_set",
                              "no (r+2)-clique found despite the degree bound");

    if (star) {
        auto cls = classify_r2clique(g, *star);
        int v = cls.center;
        VertexSet rest = vs_difference(*star, {v});
        VertexSet K(rest.begin(), rest.begin() + r);
        run_chain_transfer(g, v, K, ChainMode::Excellent, cls.star_color, K[0]);
        VertexSet U = g.adj(v).to_vector();
        for (size_t a = 0; a < U.size(); ++a)
            for (size_t b = a + 1; b < U.size(); ++b) {
                int c = g.color(U[a], U[b]);
                if (c && c != cls.base_color)
                    throw HypothesisError("find_monochromatic_set",
                                          "N(center) is not monochromatic");
            }
        if ((long long)U.size() < g.min_degree())
            throw HypothesisError("find_monochromatic_set", "|U| < min degree");
        return {std::move(U), cls.base_color, "two_colored_star", v};
    }

    // every (r+2)-clique is monochromatic: chains of (r+1)-cliques in N(v)
    const VertexSet& M = *first;
    int color = g.color_checked(M[0], M[1]);
    int v = M[0];
    VertexSet K = vs_difference(M, {v}); // an (r+1)-clique inside N(v)
    VertexSet N = g.adj(v).to_vector();
    for (size_t a = 0; a < N.size(); ++a)
        for (size_t b = a + 1; b < N.size(); ++b) {
            int u = N[a], w = N[b];
            if (!g.has_edge(u, w)) continue;
            auto chain = build_chain(g, v, K, K[0], u, w);
            for (const auto& Ki : chain.cliques) {
                for (size_t i = 0; i < Ki.size(); ++i) {
                    if (g.color_checked(v, Ki[i]) != color)
                        throw HypothesisError("find_monochromatic_set",
                                              "an (r+2)-clique along the chain is not "
                                              "monochromatic");
                    for (size_t j = i + 1; j < Ki.size(); ++j)
                        if (g.color_checked(Ki[i], Ki[j]) != color)
                            throw HypothesisError("find_monochromatic_set",
                                                  "an (r+2)-clique along the chain is not "
                                                  "monochromatic");
                }
            }
            if (g.color_checked(u, w) != color)
                throw HypothesisError("find_monochromatic_set",
                                      "target edge escaped the clique color");
        }
    if ((long long)N.size() < g.min_degree())
        throw HypothesisError("find_monochromatic_set", "|U| < min degree");
    return {std::move(N), color, "all_mono", v};
}

} // namespace tilescope
