#include "tilescope/templates.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "tilescope/errors.hpp"

namespace tilescope {

bool is_balanced_cycle(const std::vector<int>& colors) {
    if (colors.size() != 4 && colors.size() != 6)
        throw std::invalid_argument("cycle length must be 4 or 6");
    std::vector<int> odd, even;
    for (size_t i = 0; i < colors.size(); ++i)
        (i % 2 == 0 ? odd : even).push_back(colors[i]);
    std::sort(odd.begin(), odd.end());
    std::sort(even.begin(), even.end());
    return odd == even;
}

std::vector<int> cycle_colors(const ColoredGraph& g, const std::vector<int>& cycle) {
    std::vector<int> cs;
    for (size_t i = 0; i < cycle.size(); ++i)
        cs.push_back(g.color_checked(cycle[i], cycle[(i + 1) % cycle.size()]));
    return cs;
}

void validate_template(const ColoredGraph& g, int r, const Template& t) {
    if (r < 3) throw std::invalid_argument("template: r must be >= 3");
    if ((int)t.center.size() != r - 2)
        throw std::invalid_argument("template center must have size r-2");
    if (!g.is_clique(t.center)) throw std::invalid_argument("template center is not a clique");
    if (t.cycle.size() != 4 && t.cycle.size() != 6)
        throw std::invalid_argument("template cycle length must be 4 or 6");
    std::vector<int> sorted = t.cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("template cycle vertices must be distinct");
    for (int w : t.cycle) {
        if (vs_contains(t.center, w))
            throw std::invalid_argument("template cycle meets the center");
        for (int c : t.center)
            if (!g.has_edge(w, c))
                throw std::invalid_argument("cycle vertex not adjacent to the whole center");
    }
    if (is_balanced_cycle(cycle_colors(g, t.cycle)))
        throw std::invalid_argument("template cycle is balanced");
}

namespace {

// cycles normalized: w1 minimal, w2 < w_last; nested ascending loops give
// lexicographic emission and visit each cycle subgraph exactly once
bool scan_4cycles(const ColoredGraph& g, const VertexSet& center, const std::vector<int>& N,
                  const std::function<bool(const Template&)>& cb) {
    for (size_t a = 0; a < N.size(); ++a) {
        int w1 = N[a];
        for (size_t b = a + 1; b < N.size(); ++b) {
            int w2 = N[b];
            if (!g.has_edge(w1, w2)) continue;
            for (size_t c = a + 1; c < N.size(); ++c) {
                int w3 = N[c];
                if (w3 == w2 || !g.has_edge(w2, w3)) continue;
                for (size_t d = b + 1; d < N.size(); ++d) {
                    int w4 = N[d];
                    if (w4 == w3 || !g.has_edge(w3, w4) || !g.has_edge(w4, w1)) continue;
                    Template t{center, {w1, w2, w3, w4}};
                    if (!is_balanced_cycle(cycle_colors(g, t.cycle)))
                        if (!cb(t)) return false;
                }
            }
        }
    }
    return true;
}

bool scan_6cycles(const ColoredGraph& g, const VertexSet& center, const std::vector<int>& N,
                  const std::function<bool(const Template&)>& cb) {
    size_t n = N.size();
    for (size_t a = 0; a < n; ++a) {
        int w1 = N[a];
        for (size_t b = a + 1; b < n; ++b) {
            int w2 = N[b];
            if (!g.has_edge(w1, w2)) continue;
            for (size_t c = a + 1; c < n; ++c) {
                int w3 = N[c];
                if (w3 == w2 || !g.has_edge(w2, w3)) continue;
                for (size_t d = a + 1; d < n; ++d) {
                    int w4 = N[d];
                    if (w4 == w2 || w4 == w3 || !g.has_edge(w3, w4)) continue;
                    for (size_t e = a + 1; e < n; ++e) {
                        int w5 = N[e];
                        if (w5 == w2 || w5 == w3 || w5 == w4 || !g.has_edge(w4, w5)) continue;
                        for (size_t f = b + 1; f < n; ++f) {
                            int w6 = N[f];
                            if (w6 == w3 || w6 == w4 || w6 == w5) continue;
                            if (!g.has_edge(w5, w6) || !g.has_edge(w6, w1)) continue;
                            Template t{center, {w1, w2, w3, w4, w5, w6}};
                            if (!is_balanced_cycle(cycle_colors(g, t.cycle)))
                                if (!cb(t)) return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

} // namespace

void for_each_template(const ColoredGraph& g, int r,
                       const std::function<bool(const Template&)>& cb) {
    if (r < 3) throw std::invalid_argument("find_templates: r must be >= 3");
    for_each_clique(g, r - 2, nullptr, [&](const VertexSet& center) {
        VertexSet N = g.common_neighborhood(center);
        if (N.size() < 4) return true;
        if (!scan_4cycles(g, center, N, cb)) return false;
        return scan_6cycles(g, center, N, cb);
    });
}

std::vector<Template> find_templates(const ColoredGraph& g, int r, long long limit) {
    std::vector<Template> out;
    for_each_template(g, r, [&](const Template& t) {
        out.push_back(t);
        return limit < 0 || (long long)out.size() < limit;
    });
    return out;
}

Blowup blowup(const ColoredGraph& g, const Template& t) {
    int r = (int)t.center.size() + 2;
    validate_template(g, r, t);
    int k = (int)t.cycle.size() / 2;
    int twok = 2 * k;
    int nb = (r - 2) * k + twok;

    auto copy_idx = [&](int i, int j) { return j * (r - 2) + i; }; // center vertex i, copy j
    int cyc0 = (r - 2) * k;

    ColoredGraph bg(nb, g.q());
    for (int i = 0; i < r - 2; ++i)
        for (int i2 = i + 1; i2 < r - 2; ++i2) {
            int col = g.color_checked(t.center[i], t.center[i2]);
            for (int j = 0; j < k; ++j)
                for (int j2 = 0; j2 < k; ++j2) bg.add_edge(copy_idx(i, j), copy_idx(i2, j2), col);
        }
    for (int i = 0; i < r - 2; ++i)
        for (int l = 0; l < twok; ++l) {
            int col = g.color_checked(t.center[i], t.cycle[l]);
            for (int j = 0; j < k; ++j) bg.add_edge(copy_idx(i, j), cyc0 + l, col);
        }
    for (int l = 0; l < twok; ++l)
        bg.add_edge(cyc0 + l, cyc0 + (l + 1) % twok,
                    g.color_checked(t.cycle[l], t.cycle[(l + 1) % twok]));

    Blowup b{std::move(bg), {}, {}};
    for (int j = 0; j < k; ++j) {
        VertexSet z;
        for (int i = 0; i < r - 2; ++i) z.push_back(copy_idx(i, j));
        b.center_copies.push_back(std::move(z));
    }
    for (int l = 0; l < twok; ++l) b.cycle_vertices.push_back(cyc0 + l);
    return b;
}

std::pair<Tiling, Tiling> canonical_tilings(const Blowup& b, int r) {
    int k = (int)b.center_copies.size();
    int twok = (int)b.cycle_vertices.size();
    if (twok != 2 * k || (k != 2 && k != 3))
        throw std::invalid_argument("canonical_tilings: malformed blowup");
    for (const auto& z : b.center_copies)
        if ((int)z.size() != r - 2)
            throw std::invalid_argument("canonical_tilings: center copies must have size r-2");

    Tiling t1, t2;
    for (int j = 0; j < k; ++j) {
        VertexSet b1 = b.center_copies[j];
        b1.push_back(b.cycle_vertices[2 * j]);
        b1.push_back(b.cycle_vertices[2 * j + 1]);
        std::sort(b1.begin(), b1.end());
        t1.blocks.push_back(std::move(b1));

        VertexSet b2 = b.center_copies[j];
        b2.push_back(b.cycle_vertices[2 * j + 1]);
        b2.push_back(b.cycle_vertices[(2 * j + 2) % twok]);
        std::sort(b2.begin(), b2.end());
        t2.blocks.push_back(std::move(b2));
    }
    t1.normalize();
    t2.normalize();
    validate_tiling(b.graph, t1, r);
    validate_tiling(b.graph, t2, r);
    if (tiling_profile(b.graph, t1) == tiling_profile(b.graph, t2))
        throw HypothesisError("canonical_tilings",
                              "profiles coincide; the cycle was not unbalanced");
    return {std::move(t1), std::move(t2)};
}

std::pair<ColoredGraph, VertexSet> induced_subgraph(const ColoredGraph& g, const VertexSet& S) {
    ColoredGraph h((int)S.size(), g.q());
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j) {
            int c = g.color(S[i], S[j]);
            if (c) h.add_edge((int)i, (int)j, c);
        }
    return {std::move(h), S};
}

namespace {

// extend the identity embedding of the template to a full blowup copy,
// assigning the extra center copies by ascending backtracking
bool extend_embedding(const ColoredGraph& g, const Template& t, int k,
                      const std::vector<char>& used, std::vector<std::vector<int>>& copies) {
    int rm2 = (int)t.center.size();
    struct Slot { int i, j; };
    std::vector<Slot> slots;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < rm2; ++i) slots.push_back({i, j});

    std::vector<char> taken(g.n(), 0);
    for (int v : t.center) taken[v] = 1;
    for (int v : t.cycle) taken[v] = 1;

    std::function<bool(size_t)> rec = [&](size_t s) -> bool {
        if (s == slots.size()) return true;
        auto [i, j] = slots[s];
        for (int w = 0; w < g.n(); ++w) {
            if (used[w] || taken[w]) continue;
            bool ok = true;
            for (size_t l = 0; ok && l < t.cycle.size(); ++l)
                ok = g.color(w, t.cycle[l]) == g.color(t.center[i], t.cycle[l]);
            for (int i2 = 0; ok && i2 < rm2; ++i2) {
                if (i2 == i) continue;
                int want = g.color(t.center[i], t.center[i2]);
                ok = g.color(w, t.center[i2]) == want;
                for (int j2 = 1; ok && j2 < k; ++j2)
                    if (copies[i2][j2] >= 0) ok = g.color(w, copies[i2][j2]) == want;
            }
            if (!ok) continue;
            copies[i][j] = w;
            taken[w] = 1;
            if (rec(s + 1)) return true;
            copies[i][j] = -1;
            taken[w] = 0;
        }
        return false;
    };
    return rec(0);
}

} // namespace

std::vector<std::pair<Template, EmbeddedBlowup>> greedy_disjoint_blowups(const ColoredGraph& g,
                                                                         int r) {
    std::vector<std::pair<Template, EmbeddedBlowup>> out;
    std::vector<char> used(g.n(), 0);
    int unused = g.n();

    for_each_template(g, r, [&](const Template& t) {
        if (unused < 2 * r) return false; // no further blowup can fit
        int k = (int)t.cycle.size() / 2;
        if (unused < k * r) return true;
        for (int v : t.center)
            if (used[v]) return true;
        for (int v : t.cycle)
            if (used[v]) return true;

        int rm2 = (int)t.center.size();
        std::vector<std::vector<int>> copies(rm2, std::vector<int>(k, -1));
        for (int i = 0; i < rm2; ++i) copies[i][0] = t.center[i];
        if (!extend_embedding(g, t, k, used, copies)) return true;

        Blowup pat = blowup(g, t);
        std::vector<int> vmap(pat.graph.n(), -1);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < rm2; ++i) vmap[j * rm2 + i] = copies[i][j];
        for (int l = 0; l < 2 * k; ++l) vmap[rm2 * k + l] = t.cycle[l];
        for (int v : vmap) {
            used[v] = 1;
            --unused;
        }
        out.emplace_back(t, EmbeddedBlowup{std::move(pat), std::move(vmap)});
        return true;
    });
    return out;
}

std::optional<BoostResult> boost_discrepancy(const ColoredGraph& g, int r) {
    if (r < 3 || g.n() % r != 0)
        throw std::invalid_argument("boost_discrepancy: r must be >= 3 and divide n");

    auto blowups = greedy_disjoint_blowups(g, r);
    if (blowups.empty()) return std::nullopt;

    std::vector<char> in_blowup(g.n(), 0);
    for (const auto& [t, eb] : blowups)
        for (int v : eb.vertex_map) in_blowup[v] = 1;
    VertexSet residual;
    for (int v = 0; v < g.n(); ++v)
        if (!in_blowup[v]) residual.push_back(v);

    Tiling base;
    if (!residual.empty()) {
        auto [h, back] = induced_subgraph(g, residual);
        auto rt = find_tiling(h, r);
        if (!rt) return std::nullopt; // residual admits no tiling at this scale
        for (const auto& blk : rt->blocks) {
            VertexSet mapped;
            for (int v : blk) mapped.push_back(back[v]);
            std::sort(mapped.begin(), mapped.end());
            base.blocks.push_back(std::move(mapped));
        }
    }

    struct Choice { Tiling t1, t2; int color; };
    std::vector<Choice> choices;
    for (const auto& [t, eb] : blowups) {
        auto [p1, p2] = canonical_tilings(eb.pattern, r);
        auto map_tiling = [&](const Tiling& pt) {
            Tiling m;
            for (const auto& blk : pt.blocks) {
                VertexSet mb;
                for (int v : blk) mb.push_back(eb.vertex_map[v]);
                std::sort(mb.begin(), mb.end());
                m.blocks.push_back(std::move(mb));
            }
            return m;
        };
        Tiling h1 = map_tiling(p1), h2 = map_tiling(p2);
        ColorProfile f1 = tiling_profile(g, h1), f2 = tiling_profile(g, h2);
        int c = 0;
        for (int i = 0; i < g.q(); ++i)
            if (f1[i] != f2[i]) { c = i + 1; break; }
        if (f1[c - 1] < f2[c - 1]) std::swap(h1, h2); // orient: t1 carries more of c
        choices.push_back({std::move(h1), std::move(h2), c});
    }

    std::map<int, int> freq;
    for (const auto& ch : choices) freq[ch.color]++;
    int majority = 0, best = -1;
    for (auto [c, f] : freq)
        if (f > best) { best = f; majority = c; }

    auto assemble = [&](bool flip_majority) {
        Tiling t = base;
        for (const auto& ch : choices) {
            const Tiling& pick = (flip_majority && ch.color == majority) ? ch.t2 : ch.t1;
            for (const auto& blk : pick.blocks) t.blocks.push_back(blk);
        }
        t.normalize();
        return t;
    };
    Tiling A = assemble(false), B = assemble(true);
    long long margin =
        tiling_profile(g, A)[majority - 1] - tiling_profile(g, B)[majority - 1];

    bool take_a = tiling_discrepancy(g, A) >= tiling_discrepancy(g, B);
    BoostResult res;
    res.tiling = take_a ? std::move(A) : std::move(B);
    res.color = majority;
    res.margin = margin;
    res.blowup_count = (int)blowups.size();
    validate_tiling(g, res.tiling, r);
    return res;
}

} // namespace tilescope
