#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "tilescope/templates.hpp"
#include "tilescope/verify.hpp"
#include "corpus.hpp"

using namespace tilescope;

TEST_CASE("zero discrepancy suite on the exact instances") {
    auto rep = verify_zero_discrepancy("mid", 3, 6, 12, VerifyMode::enumerate());
    CHECK(rep.all_pass());
    rep = verify_zero_discrepancy("small", 3, 2, 12, VerifyMode::enumerate());
    CHECK(rep.all_pass());
    rep = verify_zero_discrepancy("large", 3, 7, 42, VerifyMode::sampled(25, 1));
    CHECK(rep.all_pass());
}

TEST_CASE("edge counting suite") {
    CHECK(verify_edge_counting(preset_mid_q(3, 6), 12, VerifyMode::enumerate()).all_pass());
    CHECK(verify_edge_counting(preset_small_q(3, 2), 12, VerifyMode::enumerate()).all_pass());
    ConstructionParams p;
    p.r = 4;
    p.q = 6;
    p.variant = Variant::C1;
    p.alphas.assign(6, Rational(0));
    CHECK(verify_edge_counting(p, 8, VerifyMode::enumerate()).all_pass());
}

TEST_CASE("extremal suite") {
    auto rep = verify_extremal_bound(6, 3);
    CHECK(rep.all_pass());
    bool equality_row = false;
    for (const auto& c : rep.cases)
        if (c.instance.find("|X|=5 equality") != std::string::npos) equality_row = true;
    CHECK(equality_row);
    CHECK(verify_extremal_bound(8, 4).all_pass());
    // above the full-sweep cutoff only the bound-relevant X sizes are swept
    CHECK(verify_extremal_bound(12, 3).all_pass());
}

TEST_CASE("template suite") {
    CHECK(verify_template_lemma(4, 25, 1).all_pass());
    CHECK(verify_template_lemma(5, 25, 2).all_pass());
    CHECK(verify_template_lemma(3, 25, 3).all_pass());
}

TEST_CASE("threshold table suite") {
    auto rep = verify_threshold_table(1);
    INFO(rep.table());
    CHECK(rep.all_pass());
}

TEST_CASE("certificates") {
    // balanced construction: the plain pigeonhole tier, fraction exactly 1/q
    auto built = build_construction(preset_mid_q(3, 6), 12);
    auto cert = certify_discrepancy(built.graph, 3);
    REQUIRE(cert.has_value());
    CHECK(cert->path == "pigeonhole");
    CHECK(cert->fraction == Rational(1, 6));

    // blowup-rich instance: the boost tier
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
    auto three = testgen::disjoint_union(testgen::disjoint_union(one, one), one);
    cert = certify_discrepancy(three, 4);
    REQUIRE(cert.has_value());
    CHECK(cert->path == "boost");
    CHECK(cert->margin > 0);

    // 2-colored star: the monochromatic-set tier with its guarantee
    auto star = testgen::color_star(16, 2, testgen::all_pairs(16));
    cert = certify_discrepancy(star, 4);
    REQUIRE(cert.has_value());
    CHECK(cert->path == "few_color_pigeonhole");
    CHECK(cert->color == 2);
    CHECK(cert->fraction == Rational(7, 8));

    // delta = 17 >= 3n/4 + 3 at n = 18: the monochromatic-set tier
    auto star3 = testgen::color_star(18, 2, testgen::all_pairs(18));
    cert = certify_discrepancy(star3, 3);
    REQUIRE(cert.has_value());
    CHECK(cert->path == "mono_set");
    CHECK(cert->color == 2);

    // no tiling at all: no certificate
    CHECK_FALSE(certify_discrepancy(tightness_example(9, 3), 3).has_value());
}

TEST_CASE("reports are deterministic") {
    auto a = verify_template_lemma(4, 10, 5).to_json().dump();
    auto b = verify_template_lemma(4, 10, 5).to_json().dump();
    CHECK(a == b);
    auto c = verify_zero_discrepancy("large", 3, 7, 42, VerifyMode::sampled(5, 9)).to_json().dump();
    auto d = verify_zero_discrepancy("large", 3, 7, 42, VerifyMode::sampled(5, 9)).to_json().dump();
    CHECK(c == d);
}

TEST_CASE("thread cap respects the environment") {
    CHECK(thread_cap() >= 1);
}
