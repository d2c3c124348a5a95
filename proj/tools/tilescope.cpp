// tilescope: edge-colored graphs, K_r-tilings, discrepancy machinery.
// JSON on stdout, diagnostics as JSON on stderr.
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 hypothesis violation.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "tilescope/constructions.hpp"
#include "tilescope/errors.hpp"
#include "tilescope/graph.hpp"
#include "tilescope/json_io.hpp"
#include "tilescope/structure.hpp"
#include "tilescope/templates.hpp"
#include "tilescope/tilings.hpp"
#include "tilescope/verify.hpp"

using nlohmann::json;
using namespace tilescope;

namespace {

json tiling_json(const ColoredGraph& g, const Tiling& t) {
    json blocks = json::array();
    for (const auto& b : t.blocks) blocks.push_back(b);
    return json{{"blocks", blocks},
                {"profile", tiling_profile(g, t)},
                {"discrepancy", tiling_discrepancy(g, t)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_construct(int r, int q, const std::string& preset, long long n, long long min_n,
                  const std::string& format) {
    ConstructionParams p = preset_by_name(preset, r, q);
    if (n == 0) n = minimal_admissible_n(p, min_n);
    auto built = build_construction(p, n);

    if (format == "dot") {
        DotAnnotations ann;
        for (size_t i = 0; i < built.parts.size(); ++i) {
            if (built.parts[i].empty()) continue;
            ann.clusters.push_back(built.parts[i]);
            ann.cluster_labels.push_back("V" + std::to_string(i + 1));
        }
        std::cout << export_dot(built.graph, ann);
        return 0;
    }

    json alphas = json::array();
    for (const auto& a : p.alphas) alphas.push_back(a.str());
    json gm = json::array();
    for (int c = 0; c < q; ++c)
        for (auto [i, j] : built.g_map[c]) gm.push_back({{"pair", {i, j}}, {"color", c + 1}});
    json parts = json::array();
    for (const auto& part : built.parts) parts.push_back(part);
    json yparts = json::array();
    for (const auto& part : built.y_parts) yparts.push_back(part);

    emit(json{{"graph", graph_to_json(built.graph)},
              {"n", n},
              {"variant", p.variant == Variant::C1 ? "C1" : "C2"},
              {"alphas", alphas},
              {"parts", parts},
              {"y_parts", yparts},
              {"g_map", gm},
              {"predicted_color_counts", expected_color_counts(p, n)},
              {"min_degree", built.graph.min_degree()},
              {"min_degree_fraction", construction_degree_fraction(p).str()}});
    return 0;
}

int run_tilings(const std::string& file, int r, bool find, bool enumerate, long long limit,
                int sample, std::uint64_t seed, const std::string& format) {
    ColoredGraph g = graph_from_file(file);
    if (find) {
        auto t = find_tiling(g, r);
        if (format == "dot") {
            DotAnnotations ann;
            if (t) ann.tiling = &*t;
            std::cout << export_dot(g, ann);
            return 0;
        }
        emit(t ? json{{"found", true}, {"tiling", tiling_json(g, *t)}} : json{{"found", false}});
        return 0;
    }
    if (enumerate) {
        json ts = json::array();
        long long count = 0;
        bool truncated = false;
        for_each_tiling(g, r, [&](const Tiling& t) {
            ++count;
            ts.push_back(tiling_json(g, t));
            truncated = limit > 0 && count >= limit;
            return !truncated;
        });
        emit(json{{"tilings", ts}, {"count", count}, {"truncated", truncated}});
        return 0;
    }
    auto samples = sample_tilings(g, r, sample, seed);
    json ts = json::array();
    for (const auto& t : samples) ts.push_back(tiling_json(g, t));
    emit(json{{"samples", ts}, {"seed", seed}});
    return 0;
}

int run_templates(const std::string& file, int r, long long limit) {
    ColoredGraph g = graph_from_file(file);
    json ts = json::array();
    long long count = 0;
    for_each_template(g, r, [&](const Template& t) {
        ++count;
        ts.push_back({{"center", t.center},
                      {"cycle", t.cycle},
                      {"cycle_colors", cycle_colors(g, t.cycle)}});
        return limit <= 0 || count < limit;
    });
    emit(json{{"templates", ts}, {"count", count}});
    return 0;
}

int run_boost(const std::string& file, int r) {
    ColoredGraph g = graph_from_file(file);
    auto res = boost_discrepancy(g, r);
    if (!res) {
        emit(json{{"found", false}});
        return 0;
    }
    emit(json{{"found", true},
              {"tiling", tiling_json(g, res->tiling)},
              {"color", res->color},
              {"margin", res->margin},
              {"blowups", res->blowup_count}});
    return 0;
}

json report_items(const std::vector<ReportItem>& items) {
    json out = json::array();
    for (const auto& it : items)
        out.push_back({{"name", it.name},
                       {"applicable", it.applicable},
                       {"pass", it.pass},
                       {"detail", it.detail}});
    return out;
}

int run_analyze(const std::string& file, int r, bool few, bool mono, bool triples, bool bowties,
                const std::vector<int>& chain_args, long long limit) {
    ColoredGraph g = graph_from_file(file);
    if (few) {
        auto res = find_few_color_set(g, r);
        emit(json{{"analysis", "few-color-set"},
                  {"case", res.case_name},
                  {"v", res.v},
                  {"K", res.K},
                  {"U", res.U},
                  {"colors", res.colors},
                  {"size", res.U.size()},
                  {"min_degree", g.min_degree()}});
        return 0;
    }
    if (mono) {
        auto res = find_monochromatic_set(g, r);
        emit(json{{"analysis", "mono-set"},
                  {"case", res.case_name},
                  {"v", res.v},
                  {"U", res.U},
                  {"color", res.color},
                  {"size", res.U.size()},
                  {"min_degree", g.min_degree()}});
        return 0;
    }
    if (!chain_args.empty()) {
        if (chain_args.size() < 5)
            throw CLI::ValidationError("--chain needs v,K...,x,u,w (at least 5 integers)");
        int v = chain_args[0];
        VertexSet K(chain_args.begin() + 1, chain_args.end() - 3);
        std::sort(K.begin(), K.end());
        int x = chain_args[chain_args.size() - 3];
        int u = chain_args[chain_args.size() - 2];
        int w = chain_args[chain_args.size() - 1];
        auto res = build_chain(g, v, K, x, u, w);
        validate_chain(g, v, K, x, u, w, res);
        json cliques = json::array();
        for (const auto& c : res.cliques) cliques.push_back(c);
        emit(json{{"analysis", "chain"},
                  {"cliques", cliques},
                  {"anchor", res.anchor},
                  {"length", res.cliques.size()}});
        return 0;
    }
    if (triples) {
        json out = json::array();
        long long count = 0, excellent = 0, good = 0, neither = 0;
        for (int v = 0; v < g.n() && (limit <= 0 || count < limit); ++v) {
            VertexSet N = g.adj(v).to_vector();
            auto cliques = enumerate_cliques(g, r, &N);
            for (size_t i = 0; i < cliques.size() && (limit <= 0 || count < limit); ++i)
                for (size_t j = i + 1; j < cliques.size() && (limit <= 0 || count < limit); ++j) {
                    if ((int)vs_intersect(cliques[i], cliques[j]).size() != r - 2) continue;
                    auto tc = classify_triple(g, v, cliques[i], cliques[j]);
                    const char* verdict = tc.verdict == TripleVerdict::Excellent ? "excellent"
                                          : tc.verdict == TripleVerdict::Good    ? "good"
                                                                                 : "neither";
                    (tc.verdict == TripleVerdict::Excellent
                         ? excellent
                         : tc.verdict == TripleVerdict::Good ? good : neither)++;
                    ++count;
                    out.push_back({{"v", v},
                                   {"K1", cliques[i]},
                                   {"K2", cliques[j]},
                                   {"verdict", verdict}});
                }
        }
        emit(json{{"analysis", "triples"},
                  {"triples", out},
                  {"scanned", count},
                  {"excellent", excellent},
                  {"good", good},
                  {"neither", neither}});
        return 0;
    }
    if (bowties) {
        json violations = json::array();
        long long checked = 0, violated = 0;
        for_each_clique(g, r - 2, nullptr, [&](const VertexSet& center) {
            VertexSet N = g.common_neighborhood(center);
            for (int v : N) {
                VertexSet wingground = vs_intersect(N, g.adj(v).to_vector());
                for (size_t a = 0; a < wingground.size(); ++a)
                    for (size_t b = a + 1; b < wingground.size(); ++b) {
                        int x1 = wingground[a], y1 = wingground[b];
                        if (!g.has_edge(x1, y1)) continue;
                        for (size_t c = a; c < wingground.size(); ++c)
                            for (size_t d = c + 1; d < wingground.size(); ++d) {
                                int x2 = wingground[c], y2 = wingground[d];
                                if (x2 == x1 || x2 == y1 || y2 == x1 || y2 == y1) continue;
                                if (!g.has_edge(x2, y2)) continue;
                                Bowtie bow{v, {x1, y1}, {x2, y2}};
                                auto res = check_bowtie(g, r, center, bow);
                                ++checked;
                                if (!res.holds) {
                                    ++violated;
                                    if (limit <= 0 || (long long)violations.size() < limit)
                                        violations.push_back({{"center", center},
                                                              {"v", v},
                                                              {"wing1", {x1, y1}},
                                                              {"wing2", {x2, y2}},
                                                              {"lhs", res.lhs},
                                                              {"rhs", res.rhs}});
                                }
                            }
                    }
            }
            return true;
        });
        emit(json{{"analysis", "bowties"},
                  {"checked", checked},
                  {"violations", violated},
                  {"witnesses", violations}});
        return 0;
    }
    throw CLI::ValidationError("analyze: pick one of --few-color-set, --mono-set, --chain, "
                               "--triples, --bowties");
}

int run_verify(const std::string& suite, int r, int q, long long n, std::uint64_t seed,
               const std::string& format) {
    std::vector<VerificationReport> reps;
    if (suite == "all") {
        reps = verify_all(seed);
    } else if (suite == "zero-disc") {
        int rr = r ? r : 3, qq = q ? q : 6;
        std::string preset = qq >= binom2(rr + 1)   ? "large"
                             : qq >= binom2(rr)     ? "mid"
                                                    : "small";
        ConstructionParams p = preset_by_name(preset, rr, qq);
        long long nn = n ? n : minimal_admissible_n(p, 0);
        reps.push_back(verify_zero_discrepancy(preset, rr, qq, nn, default_mode(rr, nn, 200, seed)));
    } else if (suite == "edge-count") {
        int rr = r ? r : 3, qq = q ? q : 6;
        std::string preset = qq >= binom2(rr + 1)   ? "large"
                             : qq >= binom2(rr)     ? "mid"
                                                    : "small";
        ConstructionParams p = preset_by_name(preset, rr, qq);
        long long nn = n ? n : minimal_admissible_n(p, 0);
        reps.push_back(verify_edge_counting(p, nn, default_mode(rr, nn, 200, seed)));
    } else if (suite == "extremal") {
        reps.push_back(verify_extremal_bound(n ? n : 6, r ? r : 3));
        if (!n) reps.push_back(verify_extremal_bound(9, r ? r : 3));
    } else if (suite == "template") {
        reps.push_back(verify_template_lemma(r ? r : 4, 100, seed));
        if (!r) reps.push_back(verify_template_lemma(5, 100, seed));
    } else if (suite == "threshold") {
        reps.push_back(verify_threshold_table(seed));
    } else {
        throw CLI::ValidationError("unknown suite: " + suite);
    }

    bool ok = true;
    if (format == "table") {
        for (const auto& rep : reps) {
            std::cout << rep.table();
            ok = ok && rep.all_pass();
        }
    } else {
        json out = json::array();
        for (const auto& rep : reps) {
            out.push_back(rep.to_json());
            ok = ok && rep.all_pass();
        }
        emit(json{{"reports", out}, {"all_pass", ok}});
    }
    return ok ? 0 : 1;
}

int run_thresholds(int r, int q_max, const std::string& format) {
    json rows = json::array();
    std::ostringstream tab;
    for (int q = 2; q <= q_max; ++q) {
        auto th = threshold(r, q);
        rows.push_back({{"q", q}, {"delta", th ? json(th->str()) : json(nullptr)}});
        tab << "  q=" << q << "  delta=" << (th ? th->str() : "unknown") << "\n";
    }
    if (format == "table")
        std::cout << "r=" << r << "\n" << tab.str();
    else
        emit(json{{"r", r}, {"rows", rows}});
    return 0;
}

int run_certify(const std::string& file, int r) {
    ColoredGraph g = graph_from_file(file);
    auto cert = certify_discrepancy(g, r);
    if (!cert) {
        emit(json{{"found", false}});
        return 1;
    }
    emit(json{{"found", true},
              {"path", cert->path},
              {"color", cert->color},
              {"fraction", cert->fraction.str()},
              {"margin", cert->margin},
              {"tiling", tiling_json(g, cert->tiling)}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tilescope: K_r-tilings, multicolor discrepancy and extremal constructions"};
    app.require_subcommand(1);

    // construct
    auto* c = app.add_subcommand("construct", "build an extremal construction");
    int cr = 3, cq = 6;
    std::string cpreset = "mid", cformat = "json";
    long long cn = 0, cminn = 0;
    c->add_option("--r", cr, "clique size r")->required();
    c->add_option("--q", cq, "number of colors")->required();
    c->add_option("--preset", cpreset, "mid|large|small")->required();
    auto* optn = c->add_option("--n", cn, "explicit order (must be admissible)");
    c->add_option("--min-n", cminn, "smallest admissible order above this")->excludes(optn);
    c->add_option("--format", cformat, "json|dot");

    // tilings
    auto* t = app.add_subcommand("tilings", "find, enumerate or sample K_r-tilings");
    std::string tfile, tformat = "json";
    int tr = 3, tsample = 0;
    long long tlimit = 0;
    std::uint64_t tseed = 1;
    bool tfind = false, tenum = false;
    t->add_option("--graph", tfile, "graph JSON file")->required();
    t->add_option("--r", tr, "clique size r")->required();
    auto* fopt = t->add_flag("--find", tfind, "first tiling in canonical order");
    auto* eopt = t->add_flag("--enumerate", tenum, "all tilings")->excludes(fopt);
    t->add_option("--limit", tlimit, "truncate enumeration");
    t->add_option("--sample", tsample, "number of sampled tilings")
        ->excludes(fopt)
        ->excludes(eopt);
    t->add_option("--seed", tseed, "sampling seed");
    t->add_option("--format", tformat, "json|dot (dot with --find)");

    // templates
    auto* tp = app.add_subcommand("templates", "list templates (center + unbalanced cycle)");
    std::string tpfile;
    int tpr = 3;
    long long tplimit = 0;
    tp->add_option("--graph", tpfile, "graph JSON file")->required();
    tp->add_option("--r", tpr, "clique size r")->required();
    tp->add_option("--limit", tplimit, "stop after this many");

    // boost
    auto* b = app.add_subcommand("boost", "discrepancy boost via disjoint blowups");
    std::string bfile;
    int br = 3;
    b->add_option("--graph", bfile, "graph JSON file")->required();
    b->add_option("--r", br, "clique size r")->required();

    // analyze
    auto* a = app.add_subcommand("analyze", "structural reports with witnesses");
    std::string afile;
    int ar = 3;
    bool afew = false, amono = false, atriples = false, abowties = false;
    std::vector<int> achain;
    long long alimit = 100;
    a->add_option("--graph", afile, "graph JSON file")->required();
    a->add_option("--r", ar, "clique size r")->required();
    a->add_flag("--few-color-set", afew, "large set with at most C(r,2) colors");
    a->add_flag("--mono-set", amono, "large monochromatic set");
    a->add_option("--chain", achain, "v K... x u w (clique chain to an edge)");
    a->add_flag("--triples", atriples, "classify good/excellent triples");
    a->add_flag("--bowties", abowties, "scan bowtie multiset identities");
    a->add_option("--limit", alimit, "cap listed witnesses");

    // verify
    auto* v = app.add_subcommand("verify", "run verification suites");
    std::string vsuite = "all", vformat = "json";
    int vr = 0, vq = 0;
    long long vn = 0;
    std::uint64_t vseed = 1;
    v->add_option("--suite", vsuite, "zero-disc|edge-count|extremal|template|threshold|all");
    v->add_option("--r", vr, "r override");
    v->add_option("--q", vq, "q override");
    v->add_option("--n", vn, "n override");
    v->add_option("--seed", vseed, "seed");
    v->add_option("--format", vformat, "json|table");

    // certify
    auto* ce = app.add_subcommand("certify", "discrepancy certificate for a graph");
    std::string cefile;
    int cer = 3;
    ce->add_option("--graph", cefile, "graph JSON file")->required();
    ce->add_option("--r", cer, "clique size r")->required();

    // thresholds
    auto* th = app.add_subcommand("thresholds", "print the delta_{r,q} table");
    int thr = 3, thqmax = 16;
    std::string thformat = "json";
    th->add_option("--r", thr, "clique size r")->required();
    th->add_option("--q-max", thqmax, "largest q listed");
    th->add_option("--format", thformat, "json|table");

    try {
        app.parse(argc, argv);
        if (*c) return run_construct(cr, cq, cpreset, cn, cminn, cformat);
        if (*t) {
            if (!tfind && !tenum && tsample <= 0)
                throw CLI::ValidationError("tilings: pick --find, --enumerate or --sample N");
            return run_tilings(tfile, tr, tfind, tenum, tlimit, tsample, tseed, tformat);
        }
        if (*tp) return run_templates(tpfile, tpr, tplimit);
        if (*b) return run_boost(bfile, br);
        if (*a) return run_analyze(afile, ar, afew, amono, atriples, abowties, achain, alimit);
        if (*v) return run_verify(vsuite, vr, vq, vn, vseed, vformat);
        if (*ce) return run_certify(cefile, cer);
        if (*th) return run_thresholds(thr, thqmax, thformat);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const tilescope::HypothesisError& e) {
        std::cerr << json{{"error", "hypothesis_violation"},
                          {"step", e.step()},
                          {"message", e.detail()}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "invalid_argument"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
}
