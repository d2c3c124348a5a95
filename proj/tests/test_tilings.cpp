#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilescope/constructions.hpp"
#include "tilescope/errors.hpp"
#include "tilescope/tilings.hpp"
#include "corpus.hpp"

using namespace tilescope;

TEST_CASE("find_tiling on complete and multipartite graphs") {
    auto k6 = complete_graph(6, 1);
    auto t = find_tiling(k6, 3);
    REQUIRE(t.has_value());
    CHECK(t->blocks.size() == 2);
    validate_tiling(k6, *t, 3);

    // a part larger than n/r blocks any tiling
    auto skew = complete_multipartite({1, 3, 2}, 1);
    CHECK_FALSE(find_tiling(skew, 3).has_value());

    CHECK_FALSE(find_tiling(tightness_example(9, 3), 3).has_value());
    CHECK_FALSE(find_tiling(tightness_example(8, 4), 4).has_value());
    CHECK(tightness_example(9, 3).min_degree() == 5); // (r-1)n/r - 1

    CHECK_THROWS_AS(find_tiling(k6, 4), std::invalid_argument); // 4 does not divide 6
}

TEST_CASE("enumeration counts match the partition formulas") {
    CHECK(enumerate_tilings(complete_graph(6, 1), 3).size() == 10);   // 6!/(3!^2 2!)
    CHECK(count_tilings(complete_graph(9, 1), 3) == 280);             // 9!/(3!^3 3!)
    CHECK(enumerate_tilings(complete_multipartite({3, 3}, 1), 3).empty()); // K_{3,3}

    auto ts = enumerate_tilings(complete_graph(6, 1), 3);
    for (size_t i = 0; i + 1 < ts.size(); ++i) CHECK(ts[i].blocks < ts[i + 1].blocks);
    CHECK(enumerate_tilings(complete_graph(6, 1), 3, 4).size() == 4);
}

TEST_CASE("every enumerated tiling of a construction is valid") {
    auto built = build_construction(preset_mid_q(3, 6), 12);
    long long count = 0;
    for_each_tiling(built.graph, 3, [&](const Tiling& t) {
        validate_tiling(built.graph, t, 3);
        ++count;
        return true;
    });
    CHECK(count > 0);
}

TEST_CASE("sampling is reproducible and validated") {
    auto k6 = complete_graph(6, 1);
    auto s1 = sample_tilings(k6, 3, 5, 7);
    auto s2 = sample_tilings(k6, 3, 5, 7);
    CHECK(s1.size() == 5);
    for (const auto& t : s1) validate_tiling(k6, t, 3);
    for (size_t i = 0; i < 5; ++i) CHECK(s1[i] == s2[i]);

    CHECK_THROWS_AS(sample_tilings(complete_multipartite({3, 3}, 1), 3, 1, 1),
                    std::invalid_argument);

    auto big = build_construction(preset_large_q(3, 7), 42);
    auto samples = sample_tilings(big.graph, 3, 3, 1);
    for (const auto& t : samples) {
        validate_tiling(big.graph, t, 3);
        CHECK(tiling_discrepancy(big.graph, t) == 0);
    }
}

TEST_CASE("tiling discrepancy") {
    auto built = build_construction(preset_mid_q(3, 6), 12);
    auto t = find_tiling(built.graph, 3);
    REQUIRE(t);
    CHECK(tiling_discrepancy(built.graph, *t) == 0);

    auto mono = complete_graph(6, 2);
    auto mt = find_tiling(mono, 3);
    CHECK(tiling_discrepancy(mono, *mt) == 6); // (q-1) * e(T)

    // a coloring making one explicit tiling rainbow-balanced
    ColoredGraph g(6, 3);
    int cc[3] = {1, 2, 3};
    int idx = 0;
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}})
        g.add_edge(u, v, cc[idx++]);
    idx = 0;
    for (auto [u, v] : std::vector<std::pair<int, int>>{{3, 4}, {3, 5}, {4, 5}})
        g.add_edge(u, v, cc[idx++]);
    for (int u : {0, 1, 2})
        for (int v : {3, 4, 5}) g.add_edge(u, v, 1);
    Tiling t2;
    t2.blocks = {{0, 1, 2}, {3, 4, 5}};
    CHECK(tiling_profile(g, t2) == ColorProfile{2, 2, 2});
    CHECK(tiling_discrepancy(g, t2) == 0);

    Tiling bad;
    bad.blocks = {{0, 1, 2}, {3, 4, 4}};
    CHECK_THROWS_AS(validate_tiling(g, bad, 3), std::invalid_argument);
}

TEST_CASE("minimize_crossing attains the enumerated minimum at n = 6") {
    auto tilings = enumerate_tilings(complete_graph(6, 1), 3);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        VertexSet X;
        for (int v = 0; v < 6; ++v)
            if (mask >> v & 1) X.push_back(v);
        long long best = -1;
        for (const auto& t : tilings) {
            long long c = crossing_edges(t, X);
            if (best < 0 || c < best) best = c;
        }
        Tiling mc = minimize_crossing(6, 3, X);
        CHECK(crossing_edges(mc, X) == best);
        int lo = 4, hi = -1;
        for (const auto& b : mc.blocks) {
            int k = (int)vs_intersect(b, X).size();
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        CHECK(hi - lo <= 1);
    }
    CHECK(crossing_edges(minimize_crossing(6, 3, {0, 1, 2, 3}), {0, 1, 2, 3}) == 2);
    CHECK(crossing_edges(minimize_crossing(6, 3, {0, 1, 2, 3, 4}), {0, 1, 2, 3, 4}) == 4);
    CHECK(crossing_edges(minimize_crossing(6, 3, {}), {}) == 0);
}

TEST_CASE("induced fraction bound") {
    CHECK(induced_fraction_bound(6, 3, {0, 1, 2, 3, 4}) == Rational(2, 3));
    CHECK(induced_fraction_bound(12, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8}) == Rational(1, 2));
    VertexSet all;
    for (int v = 0; v < 6; ++v) all.push_back(v);
    CHECK(induced_fraction_bound(6, 3, all) == Rational(1));
    CHECK_THROWS_AS(induced_fraction_bound(6, 3, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("hajnal-szemeredi style corpus always tiles") {
    std::mt19937_64 rng(3);
    for (int n : {6, 9, 12}) {
        int bound = (2 * n + 2) / 3; // ceil(2n/3)
        for (int trial = 0; trial < 3; ++trial) {
            auto g = testgen::random_dense_colored(n, 2, bound, rng());
            REQUIRE(g.min_degree() >= bound);
            auto t = find_tiling(g, 3);
            REQUIRE(t.has_value());
            validate_tiling(g, *t, 3);
        }
    }
}
