#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tilescope/constructions.hpp"
#include "tilescope/graph.hpp"
#include "tilescope/rational.hpp"
#include "tilescope/tilings.hpp"

namespace tilescope {

// Every suite compares closed-form expectations against independent
// enumeration or sampling; all comparisons are exact, no tolerances.
struct CaseResult {
    std::string instance;
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<CaseResult> cases;

    bool all_pass() const;
    int passed() const;
    int failed() const;
    nlohmann::json to_json() const;
    std::string table() const;
};

struct VerifyMode {
    bool sample = false; // false = full enumeration
    int count = 0;       // samples when sampling
    std::uint64_t seed = 0;

    static VerifyMode enumerate() { return {}; }
    static VerifyMode sampled(int count, std::uint64_t seed) { return {true, count, seed}; }
};

// spec'd enumeration cutoffs: r=3 up to n=14, r=4 up to n=12, otherwise sample
VerifyMode default_mode(int r, long long n, int sample_count, std::uint64_t seed);

// every tiling of the preset construction has discrepancy 0 and the
// closed-form profile
VerificationReport verify_zero_discrepancy(const std::string& preset, int r, int q, long long n,
                                           VerifyMode mode);

// per-tiling profiles equal the closed-form counts, both construction variants
VerificationReport verify_edge_counting(const ConstructionParams& p, long long n, VerifyMode mode);

// exhaustive oracle over K_n: the induced-fraction bound, attainment by the
// swap minimizer, and the {k, k+1} block structure
VerificationReport verify_extremal_bound(long long n, int r);

// random valid templates always yield two tilings with differing profiles
VerificationReport verify_template_lemma(int r, int trials, std::uint64_t seed);

// the delta_{r,q} table against the built constructions
VerificationReport verify_threshold_table(std::uint64_t seed = 1);

struct Certificate {
    Tiling tiling;
    int color = 0;
    Rational fraction;   // exact share of tiling edges carrying `color`
    std::string path;    // "boost", "mono_set", "few_color_pigeonhole", "pigeonhole"
    long long margin = 0; // boost path only
};

// finite-instance certificate pipeline: blowup boost, then the structural
// few-color route, then the plain pigeonhole on any tiling
std::optional<Certificate> certify_discrepancy(const ColoredGraph& g, int r);

std::vector<VerificationReport> verify_all(std::uint64_t seed);

int thread_cap(); // TILESCOPE_THREADS, default hardware parallelism

} // namespace tilescope
