#pragma once
#include <optional>
#include <string>
#include <vector>

#include "tilescope/graph.hpp"
#include "tilescope/rational.hpp"

namespace tilescope {

// The two extremal families: complete (r+1)-partite graphs V_1..V_{r+1} with
// |V_i| = (1-alpha)n/r for i <= r, V_{r+1} split into Y_1..Y_q with
// |Y_k| = alpha_k * n; pair colors between V_i,V_j come from g_map, every edge
// meeting Y_k has color k. All parameter arithmetic is exact rational.
enum class Variant { C1, C2 };

struct ConstructionParams {
    int r = 0;
    int q = 0;
    std::vector<Rational> alphas; // length q, all >= 0, sum <= 1
    Variant variant = Variant::C1;

    Rational alpha() const;
    void validate() const; // C1 needs q >= C(r,2), C2 needs q <= C(r,2)
};

struct ConstructedGraph {
    ColoredGraph graph;
    std::vector<VertexSet> parts;   // V_1..V_{r+1}
    std::vector<VertexSet> y_parts; // Y_1..Y_q (partition of V_{r+1})
    // g_map[k] lists the pairs {i,j} of [r] (1-based) colored k+1
    std::vector<std::vector<std::pair<int, int>>> g_map;
};

long long binom2(long long m); // C(m,2)

// Smallest n > floor with alpha_i * n and (1-alpha)n/r integral and r | n.
long long minimal_admissible_n(const ConstructionParams& p, long long floor_n);
bool is_admissible(const ConstructionParams& p, long long n);

ConstructedGraph build_construction(const ConstructionParams& p, long long n);

// C(r,2) <= q <= C(r+1,2): alpha_i = 1/(2q) - 1/(r(r+1)) then 1/(2q); sum = 1/(r+1).
ConstructionParams preset_mid_q(int r, int q);
// q >= C(r+1,2): alpha_i = 0 then 1/(2q); built graph has delta = (1/2 + r(r-1)/(4q))n.
ConstructionParams preset_large_q(int r, int q);
// q <= C(r,2) with C(r,2) = aq+b and (b = 0 or r+b >= q).
ConstructionParams preset_small_q(int r, int q);

ConstructionParams preset_by_name(const std::string& name, int r, int q); // "mid"|"large"|"small"

// Per-color tiling edge counts every K_r-tiling of the built graph attains.
ColorProfile expected_color_counts(const ConstructionParams& p, long long n);

// Min degree of the built graph as an exact fraction of n.
Rational construction_degree_fraction(const ConstructionParams& p);

// delta_{r,q} from the theorems; nullopt = the open problem
// (q < C(r,2), b != 0 and r+b < q).
std::optional<Rational> threshold(int r, int q);

} // namespace tilescope
