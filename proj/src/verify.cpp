#include "tilescope/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tilescope/errors.hpp"
#include "tilescope/structure.hpp"
#include "tilescope/templates.hpp"

namespace tilescope {

using nlohmann::json;

bool VerificationReport::all_pass() const {
    for (const auto& c : cases)
        if (!c.pass) return false;
    return true;
}

int VerificationReport::passed() const {
    int k = 0;
    for (const auto& c : cases) k += c.pass;
    return k;
}

int VerificationReport::failed() const { return (int)cases.size() - passed(); }

json VerificationReport::to_json() const {
    json cs = json::array();
    for (const auto& c : cases)
        cs.push_back({{"instance", c.instance},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"pass", c.pass}});
    return json{{"suite", suite},
                {"cases", cs},
                {"passed", passed()},
                {"failed", failed()},
                {"all_pass", all_pass()}};
}

std::string VerificationReport::table() const {
    std::ostringstream out;
    out << "suite: " << suite << "\n";
    for (const auto& c : cases)
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.instance
            << " | expected: " << c.expected << " | observed: " << c.observed << "\n";
    out << "  " << passed() << "/" << cases.size() << " passed\n";
    return out.str();
}

int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TILESCOPE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < (long)hw) return (int)v;
        if (v >= (long)hw) return (int)hw;
    }
    return (int)hw;
}

namespace {

// index-parallel map with canonical (index-ordered) results
template <class F>
void parallel_for(long long count, F&& fn) {
    int threads = std::min<long long>(thread_cap(), count);
    if (threads <= 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

std::string profile_str(const ColorProfile& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

struct TilingSweep {
    long long count = 0;
    long long bad_discrepancy = 0;
    long long bad_profile = 0;
    bool sampled = false;
    std::string first_bad;
};

TilingSweep sweep_construction(const ConstructionParams& p, long long n, VerifyMode mode) {
    auto built = build_construction(p, n);
    ColorProfile expected = expected_color_counts(p, n);
    TilingSweep sw;
    sw.sampled = mode.sample;
    auto check = [&](const Tiling& t) {
        ++sw.count;
        ColorProfile prof = tiling_profile(built.graph, t);
        if (discrepancy(prof) != 0) {
            ++sw.bad_discrepancy;
            if (sw.first_bad.empty()) sw.first_bad = profile_str(prof);
        }
        if (prof != expected) {
            ++sw.bad_profile;
            if (sw.first_bad.empty()) sw.first_bad = profile_str(prof);
        }
    };
    if (mode.sample) {
        for (const auto& t : sample_tilings(built.graph, p.r, mode.count, mode.seed)) {
            validate_tiling(built.graph, t, p.r);
            check(t);
        }
    } else {
        for_each_tiling(built.graph, p.r, [&](const Tiling& t) {
            validate_tiling(built.graph, t, p.r);
            check(t);
            return true;
        });
    }
    return sw;
}

} // namespace

VerifyMode default_mode(int r, long long n, int sample_count, std::uint64_t seed) {
    bool enumerate = (r == 3 && n <= 14) || (r == 4 && n <= 12);
    if (enumerate) return VerifyMode::enumerate();
    return VerifyMode::sampled(sample_count, seed);
}

VerificationReport verify_zero_discrepancy(const std::string& preset, int r, int q, long long n,
                                           VerifyMode mode) {
    VerificationReport rep;
    rep.suite = "zero-disc";
    ConstructionParams p = preset_by_name(preset, r, q);
    if (n == 0) n = minimal_admissible_n(p, 0);
    std::string inst = preset + " r=" + std::to_string(r) + " q=" + std::to_string(q) +
                       " n=" + std::to_string(n) + (mode.sample ? " (sampled)" : " (exhaustive)");
    auto sw = sweep_construction(p, n, mode);
    rep.cases.push_back({inst + " discrepancy", "0 on every tiling",
                         std::to_string(sw.count) + " tilings, " +
                             std::to_string(sw.bad_discrepancy) + " nonzero" +
                             (sw.first_bad.empty() ? "" : " e.g. " + sw.first_bad),
                         sw.count > 0 && sw.bad_discrepancy == 0});
    rep.cases.push_back({inst + " profile", profile_str(expected_color_counts(p, n)),
                         std::to_string(sw.bad_profile) + " mismatches",
                         sw.count > 0 && sw.bad_profile == 0});
    return rep;
}

VerificationReport verify_edge_counting(const ConstructionParams& p, long long n, VerifyMode mode) {
    VerificationReport rep;
    rep.suite = "edge-count";
    std::string inst = std::string(p.variant == Variant::C1 ? "C1" : "C2") +
                       " r=" + std::to_string(p.r) + " q=" + std::to_string(p.q) +
                       " n=" + std::to_string(n) + (mode.sample ? " (sampled)" : " (exhaustive)");
    auto sw = sweep_construction(p, n, mode);
    long long total = 0;
    for (long long e : expected_color_counts(p, n)) total += e;
    bool sum_ok = total == n * (p.r - 1) / 2;
    rep.cases.push_back({inst + " per-tiling profile", profile_str(expected_color_counts(p, n)),
                         std::to_string(sw.count) + " tilings, " +
                             std::to_string(sw.bad_profile) + " mismatches",
                         sw.count > 0 && sw.bad_profile == 0});
    rep.cases.push_back({inst + " profile sum", "n(r-1)/2 = " + std::to_string(n * (p.r - 1) / 2),
                         std::to_string(total), sum_ok});
    return rep;
}

VerificationReport verify_extremal_bound(long long n, int r) {
    VerificationReport rep;
    rep.suite = "extremal";
    if (n > 16) throw std::invalid_argument("verify_extremal_bound: n too large to enumerate");
    ColoredGraph kn = complete_graph((int)n, 1);
    auto tilings = enumerate_tilings(kn, r);
    long long blocks = n / r;
    long long e_total = n * (r - 1) / 2;

    // block masks per tiling for fast X sweeps
    std::vector<std::vector<std::uint32_t>> masks;
    masks.reserve(tilings.size());
    for (const auto& t : tilings) {
        std::vector<std::uint32_t> ms;
        for (const auto& b : t.blocks) {
            std::uint32_t m = 0;
            for (int v : b) m |= 1u << v;
            ms.push_back(m);
        }
        masks.push_back(std::move(ms));
    }

    bool full_sweep = n <= 9;
    long long x_lo_times_r = (r - 1) * n; // |X| * r must exceed this for the bound

    struct SizeStat {
        long long checked = 0, bound_violations = 0, min_mismatches = 0, structure_fails = 0;
        bool equality_seen = false;
    };
    std::vector<SizeStat> stats(n + 1);
    std::vector<std::mutex> locks(n + 1);

    long long total_masks = 1LL << n;
    parallel_for(total_masks, [&](long long xm) {
        std::uint32_t xmask = (std::uint32_t)xm;
        int xs = __builtin_popcount(xmask);
        bool bound_applies = (long long)xs * r > x_lo_times_r;
        if (!full_sweep && !bound_applies) return;

        long long min_cross = -1;
        for (const auto& ms : masks) {
            long long cross = 0;
            for (std::uint32_t bm : ms) {
                long long k = __builtin_popcount(bm & xmask);
                cross += k * (k - 1) / 2;
            }
            if (min_cross < 0 || cross < min_cross) min_cross = cross;
        }

        VertexSet X;
        for (int v = 0; v < n; ++v)
            if (xmask >> v & 1) X.push_back(v);
        Tiling mc = minimize_crossing(n, r, X);
        long long attained = crossing_edges(mc, X);

        bool bound_ok = true, equality = false;
        if (bound_applies) {
            // fraction >= 2|X|/n - 1  <=>  cross * n >= (2|X| - n) * e_total
            long long rhs = (2LL * xs - n) * e_total;
            bound_ok = min_cross * n >= rhs;
            equality = attained * n == rhs;
        }
        bool min_ok = attained == min_cross;
        int lo = r + 1, hi = -1;
        for (const auto& b : mc.blocks) {
            int k = (int)vs_intersect(b, X).size();
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        bool structure_ok = hi - lo <= 1;

        std::lock_guard<std::mutex> lock(locks[xs]);
        auto& st = stats[xs];
        ++st.checked;
        if (bound_applies && !bound_ok) ++st.bound_violations;
        if (!min_ok) ++st.min_mismatches;
        if (!structure_ok) ++st.structure_fails;
        if (equality) st.equality_seen = true;
    });

    std::string base = "K_" + std::to_string(n) + " r=" + std::to_string(r) + " (" +
                       std::to_string(tilings.size()) + " tilings, " + std::to_string(blocks) +
                       " blocks)";
    for (int xs = 0; xs <= n; ++xs) {
        const auto& st = stats[xs];
        if (st.checked == 0) continue;
        bool bound_applies = (long long)xs * r > x_lo_times_r;
        std::string inst = base + " |X|=" + std::to_string(xs);
        if (bound_applies)
            rep.cases.push_back({inst + " fraction bound", "min fraction >= 2|X|/n - 1",
                                 std::to_string(st.bound_violations) + " violations over " +
                                     std::to_string(st.checked) + " sets",
                                 st.bound_violations == 0});
        rep.cases.push_back({inst + " swap minimizer", "matches the enumerated minimum",
                             std::to_string(st.min_mismatches) + " mismatches, " +
                                 std::to_string(st.structure_fails) + " structure failures",
                             st.min_mismatches == 0 && st.structure_fails == 0});
        if (xs == n - 1)
            rep.cases.push_back({inst + " equality", "bound attained at |X| = n-1",
                                 st.equality_seen ? "attained" : "not attained",
                                 st.equality_seen});
    }
    return rep;
}

VerificationReport verify_template_lemma(int r, int trials, std::uint64_t seed) {
    VerificationReport rep;
    rep.suite = "template";
    const int q = 6;
    for (int len : {4, 6}) {
        std::atomic<int> ok{0}, bad{0};
        parallel_for(trials, [&](long long trial) {
            std::seed_seq sq{seed, (std::uint64_t)r, (std::uint64_t)len, (std::uint64_t)trial};
            std::mt19937_64 rng(sq);
            std::uniform_int_distribution<int> color(1, q);

            int nc = r - 2;
            ColoredGraph pat(nc + len, q);
            for (int i = 0; i < nc; ++i)
                for (int j = i + 1; j < nc; ++j) pat.add_edge(i, j, color(rng));
            for (int i = 0; i < nc; ++i)
                for (int l = 0; l < len; ++l) pat.add_edge(i, nc + l, color(rng));
            std::vector<int> cyc;
            for (int l = 0; l < len; ++l) cyc.push_back(nc + l);
            std::vector<int> cols(len);
            do {
                for (int& c : cols) c = color(rng);
            } while (is_balanced_cycle(cols));
            for (int l = 0; l < len; ++l) pat.add_edge(cyc[l], cyc[(l + 1) % len], cols[l]);

            VertexSet center;
            for (int i = 0; i < nc; ++i) center.push_back(i);
            Template t{center, cyc};
            try {
                validate_template(pat, r, t);
                Blowup b = blowup(pat, t);
                auto [t1, t2] = canonical_tilings(b, r);
                validate_tiling(b.graph, t1, r);
                validate_tiling(b.graph, t2, r);
                if (tiling_profile(b.graph, t1) != tiling_profile(b.graph, t2))
                    ++ok;
                else
                    ++bad;
            } catch (const std::exception&) {
                ++bad;
            }
        });
        rep.cases.push_back({"r=" + std::to_string(r) + " cycle length " + std::to_string(len) +
                                 ", " + std::to_string(trials) + " random templates",
                             "two valid tilings with differing profiles every time",
                             std::to_string(ok.load()) + "/" + std::to_string(trials) + " differ",
                             ok == trials && bad == 0});
    }
    return rep;
}

VerificationReport verify_threshold_table(std::uint64_t seed) {
    VerificationReport rep;
    rep.suite = "threshold";

    struct Row {
        int r, q;
        const char* preset; // nullptr = open problem row
        const char* delta;  // expected threshold, "?" = Unknown
        bool matches_threshold; // construction degree should equal delta_{r,q}
    };
    const std::vector<Row> rows = {
        {3, 2, "small", "3/4", true},   {3, 3, "small", "3/4", true},
        {3, 6, "mid", "3/4", true},     {3, 7, "large", "5/7", true},
        {3, 8, "large", "11/16", true}, {3, 9, "large", "2/3", true},
        {4, 6, "mid", "4/5", true},     {4, 10, "mid", "4/5", true},
        {4, 11, "large", "17/22", true},
        // beyond the phase transition the tight example is the tiling-free
        // graph, not the construction; its degree follows its own closed form
        {4, 13, "large", "3/4", false},
        {5, 9, nullptr, "?", false},
    };

    std::vector<std::vector<CaseResult>> results(rows.size());
    parallel_for((long long)rows.size(), [&](long long idx) {
        const Row& row = rows[idx];
        auto& out = results[idx];
        std::string inst = "(r=" + std::to_string(row.r) + ", q=" + std::to_string(row.q) + ")";

        auto th = threshold(row.r, row.q);
        std::string observed = th ? th->str() : "?";
        out.push_back({inst + " delta_{r,q}", row.delta, observed,
                       observed == row.delta});
        if (!row.preset) {
            bool small_rejects = false;
            try {
                preset_small_q(row.r, row.q);
            } catch (const std::invalid_argument&) {
                small_rejects = true;
            }
            out.push_back({inst + " open-problem guard", "no preset applies, threshold unknown",
                           small_rejects && !th ? "as expected" : "unexpected value",
                           small_rejects && !th});
            return;
        }

        ConstructionParams p = preset_by_name(row.preset, row.r, row.q);
        long long n = minimal_admissible_n(p, 0);
        auto built = build_construction(p, n);
        Rational frac = construction_degree_fraction(p);
        bool deg_ok = Rational(built.graph.min_degree()) == frac * Rational(n);
        out.push_back({inst + " construction degree n=" + std::to_string(n), frac.str() + " * n",
                       std::to_string(built.graph.min_degree()) + "/" + std::to_string(n),
                       deg_ok});
        if (row.matches_threshold)
            out.push_back({inst + " degree equals threshold", row.delta, frac.str(),
                           th && frac == *th});

        if (p.alpha() > Rational(1, p.r)) {
            // |V_{r+1}| exceeds n/r, so no perfect tiling exists and the
            // zero-discrepancy claim holds vacuously
            out.push_back({inst + " tilings n=" + std::to_string(n),
                           "none (|V_{r+1}| > n/r)", "skipped: no perfect tiling exists", true});
            return;
        }
        VerifyMode mode = default_mode(row.r, n, n > 60 ? 10 : 30, seed + idx);
        auto sw = sweep_construction(p, n, mode);
        out.push_back({inst + " tilings n=" + std::to_string(n) +
                           (mode.sample ? " (sampled)" : " (exhaustive)"),
                       "discrepancy 0 and closed-form profile",
                       std::to_string(sw.count) + " tilings, " +
                           std::to_string(sw.bad_discrepancy + sw.bad_profile) + " bad",
                       sw.count > 0 && sw.bad_discrepancy == 0 && sw.bad_profile == 0});
    });
    for (auto& rs : results)
        for (auto& c : rs) rep.cases.push_back(std::move(c));
    return rep;
}

std::optional<Certificate> certify_discrepancy(const ColoredGraph& g, int r) {
    if (r < 3 || g.n() % r != 0)
        throw std::invalid_argument("certify_discrepancy: r must be >= 3 and divide n");

    if (auto boost = boost_discrepancy(g, r)) {
        ColorProfile prof = tiling_profile(g, boost->tiling);
        long long e = 0;
        for (long long c : prof) e += c;
        Certificate cert{std::move(boost->tiling), boost->color,
                         Rational(prof[boost->color - 1], e), "boost", boost->margin};
        return cert;
    }

    VertexSet U;
    std::vector<int> ucolors;
    std::string path = "pigeonhole";
    try {
        if (degree_meets(g, r, r + 1, 3)) {
            auto mono = find_monochromatic_set(g, r);
            U = std::move(mono.U);
            ucolors = {mono.color};
            path = "mono_set";
        } else if (degree_meets(g, r - 1, r, 3)) {
            auto few = find_few_color_set(g, r);
            U = std::move(few.U);
            ucolors = std::move(few.colors);
            path = "few_color_pigeonhole";
        }
    } catch (const HypothesisError&) {
        // templated graph without enough disjoint blowups: fall back below
        U.clear();
        path = "pigeonhole";
    }

    auto t = find_tiling(g, r);
    if (!t) return std::nullopt;
    ColorProfile prof = tiling_profile(g, *t);
    long long e = 0;
    for (long long c : prof) e += c;

    int color;
    if (!U.empty()) {
        // pigeonhole inside U: count tiling edges induced by U per color
        std::vector<char> inU(g.n(), 0);
        for (int v : U) inU[v] = 1;
        ColorProfile inside(g.q(), 0);
        for (const auto& b : t->blocks)
            for (size_t i = 0; i < b.size(); ++i)
                for (size_t j = i + 1; j < b.size(); ++j)
                    if (inU[b[i]] && inU[b[j]]) inside[g.color_checked(b[i], b[j]) - 1]++;
        color = 1;
        for (int c = 2; c <= g.q(); ++c)
            if (inside[c - 1] > inside[color - 1]) color = c;
        Rational frac(prof[color - 1], e);
        Rational guarantee =
            (Rational(2 * (long long)U.size(), g.n()) - Rational(1)) /
            Rational((long long)ucolors.size());
        if (frac < guarantee)
            throw HypothesisError("certify_discrepancy",
                                  "certificate fraction " + frac.str() +
                                      " fell below the guarantee " + guarantee.str());
        return Certificate{std::move(*t), color, frac, path, 0};
    }

    color = 1;
    for (int c = 2; c <= g.q(); ++c)
        if (prof[c - 1] > prof[color - 1]) color = c;
    return Certificate{std::move(*t), color, Rational(prof[color - 1], e), "pigeonhole", 0};
}

std::vector<VerificationReport> verify_all(std::uint64_t seed) {
    std::vector<VerificationReport> reps;
    reps.push_back(verify_zero_discrepancy("mid", 3, 6, 12, VerifyMode::enumerate()));
    reps.push_back(verify_zero_discrepancy("small", 3, 3, 12, VerifyMode::enumerate()));
    reps.push_back(verify_zero_discrepancy("small", 3, 2, 12, VerifyMode::enumerate()));
    reps.push_back(verify_zero_discrepancy("large", 3, 7, 42, VerifyMode::sampled(100, seed)));
    reps.push_back(verify_edge_counting(preset_mid_q(3, 6), 12, VerifyMode::enumerate()));
    reps.push_back(verify_edge_counting(preset_small_q(3, 2), 12, VerifyMode::enumerate()));
    {
        ConstructionParams p;
        p.r = 4;
        p.q = 6;
        p.variant = Variant::C1;
        p.alphas.assign(6, Rational(0));
        reps.push_back(verify_edge_counting(p, 8, VerifyMode::enumerate()));
    }
    reps.push_back(verify_extremal_bound(6, 3));
    reps.push_back(verify_extremal_bound(9, 3));
    reps.push_back(verify_extremal_bound(8, 4));
    reps.push_back(verify_template_lemma(4, 100, seed));
    reps.push_back(verify_template_lemma(5, 100, seed));
    reps.push_back(verify_threshold_table(seed));
    return reps;
}

} // namespace tilescope
