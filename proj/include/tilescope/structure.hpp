#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tilescope/graph.hpp"

namespace tilescope {

// --- degree cascade ---------------------------------------------------------

struct DegreeBoundResult {
    long long observed; // min degree of G[N(K)]
    long long bound;    // ceil((r-t-1)|N(K)|/(r-t)) + C
};

// K must be a clique of size t <= r-1; the contract observed >= bound holds
// whenever delta(G) >= (r-1)|G|/r + C.
DegreeBoundResult neighborhood_degree_bound(const ColoredGraph& g, const VertexSet& K, int r,
                                            long long C);

// --- bowties ----------------------------------------------------------------

// Two triangles {v,x1,y1}, {v,x2,y2} sharing exactly the vertex v.
struct Bowtie {
    int v;
    std::array<int, 2> wing1; // x1, y1
    std::array<int, 2> wing2; // x2, y2
};

struct BowtieCheck {
    bool holds;
    std::array<int, 3> lhs; // sorted {f(x1y1), f(vx2), f(vy2)}
    std::array<int, 3> rhs; // sorted {f(x2y2), f(vx1), f(vy1)}
};

// Multiset identity {f(x1y1), f(vx2), f(vy2)} = {f(x2y2), f(vx1), f(vy1)};
// in a template-free graph with delta >= (r-1)n/r + 3 it always holds.
BowtieCheck check_bowtie(const ColoredGraph& g, int r, const VertexSet& center, const Bowtie& b);

struct ReportItem {
    std::string name;
    bool applicable;
    bool pass;
    std::string detail;
};

// Items (a)-(c): which wing-1 color patterns force which wing-2 conclusions.
std::vector<ReportItem> bowtie_consequences(const ColoredGraph& g, const VertexSet& center,
                                            const Bowtie& b);

// --- clique chains ----------------------------------------------------------

struct ChainResult {
    std::vector<VertexSet> cliques; // K_1..K_m, r-cliques in N(v)
    int anchor;                     // x, contained in K_1..K_{m-2}
};

// Constructive chain lemma: K_1 = K, u,w in K_m, |K_i ∩ K_{i+1}| = r-2,
// anchor in all but the last two cliques. r is |K|; requires
// delta(g) >= (r-1)n/r + 2. Ties broken by lowest vertex index throughout.
ChainResult build_chain(const ColoredGraph& g, int v, const VertexSet& K, int x, int u, int w);

void validate_chain(const ColoredGraph& g, int v, const VertexSet& K, int x, int u, int w,
                    const ChainResult& chain); // throws on any invariant violation

// --- color transfer ---------------------------------------------------------

enum class TripleVerdict { Excellent, Good, Neither };

struct TripleClass {
    TripleVerdict verdict;
    ColorProfile profile1, profile2;
    int main_color = 0;    // of (v,K1) when centered, else 0
    int neither_color = 0; // first color whose counts differ, for Neither
};

// Setting: K1, K2 r-cliques in N(v) with |K1 ∩ K2| = r-2. Good iff the
// profiles agree; Excellent additionally needs (v,K1) centered and all v-K2
// edges in its main color.
TripleClass classify_triple(const ColoredGraph& g, int v, const VertexSet& K1,
                            const VertexSet& K2);

// main color of the centered clique (v,K), or 0 when not centered
int centered_main_color(const ColoredGraph& g, int v, const VertexSet& K);
// t in K is isolated when no K-edge at t carries the main color
bool is_isolated_vertex(const ColoredGraph& g, int v, const VertexSet& K, int t);

// Checks, against recomputation, everything the monochromatic-vertex transfer
// lemma asserts for the triple: items 1-4 when not excellent, the
// except-c2 color containment always, isolated-vertex propagation when
// excellent. (v,K1) must be centered.
std::vector<ReportItem> check_transfer_lemmas(const ColoredGraph& g, int v, const VertexSet& K1,
                                              const VertexSet& K2);

// --- cliques of r+1 and r+2 vertices ----------------------------------------

enum class CliqueClass { Monochromatic, TwoColoredStar, Other };

struct R2CliqueClass {
    CliqueClass kind;
    int center = -1;     // star center
    int star_color = 0;  // c, on edges at the center
    int base_color = 0;  // c', inside the rest
};

// Template-free graphs admit only the first two kinds for (r+2)-cliques.
R2CliqueClass classify_r2clique(const ColoredGraph& g, const VertexSet& M);

// M is an (r+1)-clique with >= C(r,2)+1 colors; returns an r-subclique with
// >= C(r-1,2)+2 colors via the repeated-color vertex deletion recursion.
VertexSet rich_subclique(const ColoredGraph& g, const VertexSet& M, int r);

// --- large few-color sets ---------------------------------------------------

struct ExtractResult {
    VertexSet U;
    std::vector<int> colors;          // sorted colors of K (= colors of G[U])
    std::vector<VertexSet> U_parts;   // U_1..U_{r+1}
};

// U = {v : v has >= r neighbors in K} for an (r+1)-clique K with no
// monochromatic vertex, <= C(r,2) colors, not inside any (r+2)-clique;
// verifies the U_i structure edge by edge.
ExtractResult extract_U_from_clique(const ColoredGraph& g, int r, const VertexSet& K);

struct FewColorResult {
    VertexSet U;
    std::vector<int> colors;
    std::string case_name;
    int v = -1;      // neighborhood vertex for the N(v) cases
    VertexSet K;     // the clique driving the case
};

// delta >= (r-1)n/r + 3, template-free host: a set U with |U| >= delta(G)
// and at most C(r,2) colors, produced by the proof's case split with every
// chain-transfer step executed and checked.
FewColorResult find_few_color_set(const ColoredGraph& g, int r);

struct MonoResult {
    VertexSet U;
    int color = 0;
    std::string case_name;
    int v = -1;
};

// delta >= rn/(r+1) + 3, template-free host: a monochromatic U with
// |U| >= delta(G).
MonoResult find_monochromatic_set(const ColoredGraph& g, int r);

} // namespace tilescope
