#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "tilescope/constructions.hpp"
#include "tilescope/errors.hpp"
#include "tilescope/templates.hpp"
#include "corpus.hpp"

using namespace tilescope;

namespace {

// hub 4 adjacent to an unbalanced 4-cycle 0-1-2-3, colors 1,2,1,2
ColoredGraph wheel_with_unbalanced_c4() {
    ColoredGraph g(5, 3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 2);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 0, 2);
    for (int v = 0; v < 4; ++v) g.add_edge(v, 4, 3);
    return g;
}

// normalized cycles by brute force: all subsets, all traversals
std::set<std::pair<VertexSet, std::vector<int>>> brute_templates(const ColoredGraph& g, int r) {
    std::set<std::pair<VertexSet, std::vector<int>>> found;
    for (const auto& center : enumerate_cliques(g, r - 2)) {
        VertexSet N = g.common_neighborhood(center);
        for (int len : {4, 6}) {
            if ((int)N.size() < len) continue;
            std::vector<int> pick(len);
            std::vector<int> idx(N.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<int> comb(len);
            std::function<void(int, int)> subsets = [&](int start, int depth) {
                if (depth == len) {
                    std::vector<int> verts(len);
                    for (int i = 0; i < len; ++i) verts[i] = N[comb[i]];
                    std::vector<int> perm(verts.begin() + 1, verts.end());
                    std::sort(perm.begin(), perm.end());
                    do {
                        std::vector<int> cyc{verts[0]};
                        cyc.insert(cyc.end(), perm.begin(), perm.end());
                        if (cyc[1] > cyc.back()) continue; // reflection dedup
                        bool ok = true;
                        for (int i = 0; ok && i < len; ++i)
                            ok = g.has_edge(cyc[i], cyc[(i + 1) % len]);
                        if (!ok) continue;
                        if (!is_balanced_cycle(cycle_colors(g, cyc))) found.insert({center, cyc});
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    return;
                }
                for (int i = start; i <= (int)N.size() - (len - depth); ++i) {
                    comb[depth] = i;
                    subsets(i + 1, depth + 1);
                }
            };
            subsets(0, 0);
        }
    }
    return found;
}

} // namespace

TEST_CASE("balanced cycle test") {
    CHECK(is_balanced_cycle({1, 1, 1, 1}));
    CHECK_FALSE(is_balanced_cycle({1, 2, 1, 2}));
    CHECK(is_balanced_cycle({1, 1, 2, 2, 3, 3}));
    CHECK(is_balanced_cycle({1, 2, 2, 1}));
    CHECK_FALSE(is_balanced_cycle({1, 2, 3, 1, 2, 2}));
    CHECK_THROWS_AS(is_balanced_cycle({1, 2, 3, 4, 5}), std::invalid_argument);
    CHECK_THROWS_AS(is_balanced_cycle({1, 2}), std::invalid_argument);
}

TEST_CASE("template detection") {
    CHECK(find_templates(complete_graph(5, 2), 3).empty()); // monochromatic

    auto wheel = wheel_with_unbalanced_c4();
    auto ts = find_templates(wheel, 3);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].center == VertexSet{4});
    CHECK(ts[0].cycle == std::vector<int>{0, 1, 2, 3});

    // bare unbalanced C4 with no hub: no vertex sees the whole cycle, so
    // there is no K_1 center and no template
    ColoredGraph c4(4, 2);
    c4.add_edge(0, 1, 1);
    c4.add_edge(1, 2, 2);
    c4.add_edge(2, 3, 1);
    c4.add_edge(3, 0, 2);
    CHECK(find_templates(c4, 3).empty());

    auto built = tilescope::testgen::color_mono(6, 1, tilescope::testgen::all_pairs(6));
    CHECK(find_templates(built, 4).empty());
}

TEST_CASE("detector agrees with the brute-force cycle scan") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 7 + (int)(rng() % 3);
        auto g = testgen::random_dense_colored(n, 3, n - 3, rng());
        for (int r : {3, 4}) {
            auto got = find_templates(g, r);
            std::set<std::pair<VertexSet, std::vector<int>>> got_set;
            for (const auto& t : got) {
                validate_template(g, r, t);
                got_set.insert({t.center, t.cycle});
            }
            CHECK(got_set.size() == got.size()); // no duplicates
            CHECK(got_set == brute_templates(g, r));
        }
    }
}

TEST_CASE("construction graphs report their empirical template count") {
    // part-pair colorings keep alternating cycle multisets equal inside every
    // vertex neighborhood, so the detector and the brute scan agree (on zero)
    auto built = tilescope::build_construction(tilescope::preset_mid_q(3, 6), 12);
    auto got = find_templates(built.graph, 3);
    auto brute = brute_templates(built.graph, 3);
    CHECK(got.size() == brute.size());
    CHECK(got.empty());
}

TEST_CASE("template order is canonical and the limit short-circuits") {
    auto g = testgen::random_dense_colored(9, 3, 6, 4242);
    auto all = find_templates(g, 3);
    auto two = find_templates(g, 3, 2);
    REQUIRE(all.size() >= 2);
    CHECK(two.size() == 2);
    CHECK(two[0].center == all[0].center);
    CHECK(two[0].cycle == all[0].cycle);
    auto again = find_templates(g, 3);
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].center == again[i].center);
        CHECK(all[i].cycle == again[i].cycle);
    }
}

TEST_CASE("validate_template rejects balanced cycles") {
    ColoredGraph g(5, 2);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 0, 1);
    for (int v = 0; v < 4; ++v) g.add_edge(v, 4, 2);
    Template t{{4}, {0, 1, 2, 3}};
    CHECK_THROWS_AS(validate_template(g, 3, t), std::invalid_argument);
}

TEST_CASE("blowup shapes and inherited colors") {
    auto wheel = wheel_with_unbalanced_c4();
    Template t{{4}, {0, 1, 2, 3}};
    auto b = blowup(wheel, t);
    CHECK(b.graph.n() == 6); // k*r = 2*3
    CHECK(b.center_copies.size() == 2);
    CHECK(b.cycle_vertices.size() == 4);
    // copies of the single center vertex are non-adjacent
    CHECK_FALSE(b.graph.has_edge(b.center_copies[0][0], b.center_copies[1][0]));
    // blown edges inherit colors
    for (const auto& z : b.center_copies)
        for (int l = 0; l < 4; ++l)
            CHECK(b.graph.color(z[0], b.cycle_vertices[l]) == 3);
    CHECK(b.graph.color(b.cycle_vertices[0], b.cycle_vertices[1]) == 1);
    CHECK(b.graph.color(b.cycle_vertices[1], b.cycle_vertices[2]) == 2);

    // r = 4 with a 2-vertex center
    ColoredGraph host(6, 3);
    host.add_edge(4, 5, 3); // center edge
    for (int v = 0; v < 4; ++v) {
        host.add_edge(v, 4, 3);
        host.add_edge(v, 5, 3);
    }
    host.add_edge(0, 1, 1);
    host.add_edge(1, 2, 2);
    host.add_edge(2, 3, 1);
    host.add_edge(3, 0, 2);
    Template t4{{4, 5}, {0, 1, 2, 3}};
    auto b4 = blowup(host, t4);
    CHECK(b4.graph.n() == 8);
    CHECK(b4.center_copies[0].size() == 2);
    CHECK(b4.center_copies[1].size() == 2);

    // 6-cycle at r=3 blows up to 3r vertices
    ColoredGraph host6(7, 3);
    int cols6[6] = {1, 1, 1, 2, 1, 1}; // unbalanced: odd {1,1,1}, even {1,2,1}
    for (int i = 0; i < 6; ++i) host6.add_edge(i, (i + 1) % 6, cols6[i]);
    for (int v = 0; v < 6; ++v) host6.add_edge(v, 6, 3);
    Template t6{{6}, {0, 1, 2, 3, 4, 5}};
    auto b6 = blowup(host6, t6);
    CHECK(b6.graph.n() == 9);
    CHECK(b6.center_copies.size() == 3);
}

TEST_CASE("canonical tilings differ in some color") {
    auto wheel = wheel_with_unbalanced_c4();
    auto b = blowup(wheel, Template{{4}, {0, 1, 2, 3}});
    auto [t1, t2] = canonical_tilings(b, 3);
    validate_tiling(b.graph, t1, 3);
    validate_tiling(b.graph, t2, 3);
    auto p1 = tiling_profile(b.graph, t1), p2 = tiling_profile(b.graph, t2);
    CHECK(p1 != p2);
    // cycle colors (1,2,1,2): T1 takes both color-1 cycle edges, T2 both 2s
    CHECK(p1[0] - p2[0] == 2);
    CHECK(p2[1] - p1[1] == 2);

    ColoredGraph host(6, 3);
    host.add_edge(4, 5, 3);
    for (int v = 0; v < 4; ++v) {
        host.add_edge(v, 4, 3);
        host.add_edge(v, 5, 3);
    }
    host.add_edge(0, 1, 1);
    host.add_edge(1, 2, 2);
    host.add_edge(2, 3, 1);
    host.add_edge(3, 0, 2);
    auto b4 = blowup(host, Template{{4, 5}, {0, 1, 2, 3}});
    auto [u1, u2] = canonical_tilings(b4, 4);
    auto q1 = tiling_profile(b4.graph, u1), q2 = tiling_profile(b4.graph, u2);
    CHECK(q1[0] != q2[0]); // differ exactly in colors 1 and 2
    CHECK(q1[1] != q2[1]);
    CHECK(q1[2] == q2[2]);
}

TEST_CASE("greedy disjoint blowups") {
    CHECK(greedy_disjoint_blowups(complete_graph(12, 2), 4).empty()); // monochromatic

    // three disjoint copies of one blown-up template pattern, r = 4
    ColoredGraph host(6, 3);
    host.add_edge(4, 5, 3);
    for (int v = 0; v < 4; ++v) {
        host.add_edge(v, 4, 3);
        host.add_edge(v, 5, 3);
    }
    host.add_edge(0, 1, 1);
    host.add_edge(1, 2, 2);
    host.add_edge(2, 3, 1);
    host.add_edge(3, 0, 2);
    auto pattern = blowup(host, Template{{4, 5}, {0, 1, 2, 3}});
    auto one = pattern.graph;
    auto three = testgen::disjoint_union(testgen::disjoint_union(one, one), one);
    auto found = greedy_disjoint_blowups(three, 4);
    CHECK(found.size() == 3);
    for (const auto& [t, eb] : found) {
        // the embedding map preserves adjacency and colors of the pattern
        auto es = eb.pattern.graph.edges();
        for (auto [u, v] : es)
            CHECK(three.color(eb.vertex_map[u], eb.vertex_map[v]) ==
                  eb.pattern.graph.color(u, v));
    }
}

TEST_CASE("boost_discrepancy") {
    CHECK_FALSE(boost_discrepancy(complete_graph(12, 2), 4).has_value()); // template-free

    ColoredGraph host(6, 3);
    host.add_edge(4, 5, 3);
    for (int v = 0; v < 4; ++v) {
        host.add_edge(v, 4, 3);
        host.add_edge(v, 5, 3);
    }
    host.add_edge(0, 1, 1);
    host.add_edge(1, 2, 2);
    host.add_edge(2, 3, 1);
    host.add_edge(3, 0, 2);
    auto one = blowup(host, Template{{4, 5}, {0, 1, 2, 3}}).graph;

    auto single = boost_discrepancy(one, 4);
    REQUIRE(single.has_value());
    validate_tiling(one, single->tiling, 4);
    CHECK(single->blowup_count == 1);
    CHECK(single->margin == 2); // per-copy difference in the majority color

    auto three = testgen::disjoint_union(testgen::disjoint_union(one, one), one);
    auto boosted = boost_discrepancy(three, 4);
    REQUIRE(boosted.has_value());
    validate_tiling(three, boosted->tiling, 4);
    CHECK(boosted->blowup_count == 3);
    CHECK(boosted->margin == 3 * single->margin);
    CHECK(boosted->color == single->color);
}
