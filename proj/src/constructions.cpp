#include "tilescope/constructions.hpp"

#include <numeric>
#include <stdexcept>

namespace tilescope {

long long binom2(long long m) { return m * (m - 1) / 2; }

Rational ConstructionParams::alpha() const {
    Rational a(0);
    for (const auto& x : alphas) a = a + x;
    return a;
}

void ConstructionParams::validate() const {
    if (r < 3) throw std::invalid_argument("construction: r must be >= 3");
    if (q < 1) throw std::invalid_argument("construction: q must be >= 1");
    if ((int)alphas.size() != q)
        throw std::invalid_argument("construction: expected q alpha values");
    for (const auto& a : alphas)
        if (a < Rational(0)) throw std::invalid_argument("construction: alpha_i must be >= 0");
    if (alpha() > Rational(1)) throw std::invalid_argument("construction: sum of alphas exceeds 1");
    long long c2 = binom2(r);
    if (variant == Variant::C1 && q < c2)
        throw std::invalid_argument("construction 1 requires q >= C(r,2)");
    if (variant == Variant::C2 && q > c2)
        throw std::invalid_argument("construction 2 requires q <= C(r,2)");
}

bool is_admissible(const ConstructionParams& p, long long n) {
    if (n <= 0 || n % p.r != 0) return false;
    for (const auto& a : p.alphas)
        if (!(a * Rational(n)).is_integer()) return false;
    Rational rest = (Rational(1) - p.alpha()) * Rational(n) / Rational(p.r);
    return rest.is_integer();
}

long long minimal_admissible_n(const ConstructionParams& p, long long floor_n) {
    p.validate();
    long long m = p.r;
    for (const auto& a : p.alphas) m = std::lcm(m, a.den());
    Rational rest = Rational(1) - p.alpha();
    if (rest.num() != 0) {
        // (P/D)*n/r integral with gcd(P,D)=1  <=>  (D*r/gcd(P,r)) | n
        long long need = rest.den() * p.r / std::gcd(rest.num(), (long long)p.r);
        m = std::lcm(m, need);
    }
    long long k = floor_n / m + 1;
    return k * m;
}

namespace {

// pairs {i,j} of [r], 1-based, lexicographic
std::vector<std::pair<int, int>> lex_pairs(int r) {
    std::vector<std::pair<int, int>> ps;
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) ps.emplace_back(i, j);
    return ps;
}

// color of the t-th pair (1-based) under the canonical g
int pair_color(const ConstructionParams& p, int t) {
    if (p.variant == Variant::C1) return t;
    long long c2 = binom2(p.r);
    long long a = c2 / p.q, b = c2 % p.q;
    if (t <= b * (a + 1)) return (int)((t - 1) / (a + 1)) + 1;
    return (int)(b + (t - b * (a + 1) - 1) / a + 1);
}

} // namespace

ConstructedGraph build_construction(const ConstructionParams& p, long long n) {
    p.validate();
    if (!is_admissible(p, n))
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " is not admissible for these parameters");

    long long m = ((Rational(1) - p.alpha()) * Rational(n) / Rational(p.r)).to_integer();

    std::vector<VertexSet> parts(p.r + 1);
    std::vector<VertexSet> y_parts(p.q);
    long long next = 0;
    for (int i = 0; i < p.r; ++i)
        for (long long t = 0; t < m; ++t) parts[i].push_back((int)next++);
    for (int k = 0; k < p.q; ++k) {
        long long yk = (p.alphas[k] * Rational(n)).to_integer();
        for (long long t = 0; t < yk; ++t) {
            parts[p.r].push_back((int)next);
            y_parts[k].push_back((int)next++);
        }
    }

    ColoredGraph g((int)n, p.q);
    auto ps = lex_pairs(p.r);
    std::vector<std::vector<std::pair<int, int>>> g_map(p.q);
    for (size_t t = 0; t < ps.size(); ++t) {
        int c = pair_color(p, (int)t + 1);
        g_map[c - 1].push_back(ps[t]);
        for (int u : parts[ps[t].first - 1])
            for (int v : parts[ps[t].second - 1]) g.add_edge(u, v, c);
    }
    for (int k = 0; k < p.q; ++k)
        for (int y : y_parts[k])
            for (int i = 0; i < p.r; ++i)
                for (int u : parts[i]) g.add_edge(u, y, k + 1);

    return ConstructedGraph{std::move(g), std::move(parts), std::move(y_parts), std::move(g_map)};
}

ConstructionParams preset_mid_q(int r, int q) {
    if (r < 3) throw std::invalid_argument("preset_mid_q: r must be >= 3");
    long long c2 = binom2(r), c2next = binom2(r + 1);
    if (q < c2 || q > c2next)
        throw std::invalid_argument("preset_mid_q requires C(r,2) <= q <= C(r+1,2)");
    ConstructionParams p;
    p.r = r;
    p.q = q;
    p.variant = Variant::C1;
    Rational low = Rational(1, 2 * (long long)q) - Rational(1, (long long)r * (r + 1));
    for (int i = 1; i <= q; ++i) p.alphas.push_back(i <= c2 ? low : Rational(1, 2 * (long long)q));
    p.validate();
    return p;
}

ConstructionParams preset_large_q(int r, int q) {
    if (r < 3) throw std::invalid_argument("preset_large_q: r must be >= 3");
    if (q < binom2(r + 1))
        throw std::invalid_argument("preset_large_q requires q >= C(r+1,2)");
    ConstructionParams p;
    p.r = r;
    p.q = q;
    p.variant = Variant::C1;
    for (int i = 1; i <= q; ++i)
        p.alphas.push_back(i <= binom2(r) ? Rational(0) : Rational(1, 2 * (long long)q));
    p.validate();
    return p;
}

ConstructionParams preset_small_q(int r, int q) {
    if (r < 3) throw std::invalid_argument("preset_small_q: r must be >= 3");
    long long c2 = binom2(r);
    if (q < 2 || q > c2) throw std::invalid_argument("preset_small_q requires 2 <= q <= C(r,2)");
    long long b = c2 % q;
    if (b != 0 && r + b < q)
        throw std::invalid_argument("preset_small_q requires b = 0 or r + b >= q (b = " +
                                    std::to_string(b) + ")");
    ConstructionParams p;
    p.r = r;
    p.q = q;
    p.variant = Variant::C2;
    long long denom = (long long)q * r * (r + 1);
    for (int i = 1; i <= q; ++i)
        p.alphas.push_back(i <= b ? Rational(r + b - q, denom) : Rational(r + b, denom));
    p.validate();
    return p;
}

ConstructionParams preset_by_name(const std::string& name, int r, int q) {
    if (name == "mid") return preset_mid_q(r, q);
    if (name == "large") return preset_large_q(r, q);
    if (name == "small") return preset_small_q(r, q);
    throw std::invalid_argument("unknown preset: " + name);
}

ColorProfile expected_color_counts(const ConstructionParams& p, long long n) {
    p.validate();
    if (!is_admissible(p, n))
        throw std::invalid_argument("expected_color_counts: inadmissible n");
    Rational alpha = p.alpha();
    Rational base = Rational(n, p.r) * (Rational(1) - Rational(2) * alpha);
    long long c2 = binom2(p.r);
    ColorProfile e(p.q, 0);
    for (int i = 1; i <= p.q; ++i) {
        Rational crossing = p.alphas[i - 1] * Rational(n) * Rational(p.r - 1);
        Rational inner(0);
        if (p.variant == Variant::C1) {
            if (i <= c2) inner = base;
        } else {
            long long a = c2 / p.q, b = c2 % p.q;
            inner = Rational(i <= b ? a + 1 : a) * base;
        }
        e[i - 1] = (inner + crossing).to_integer();
    }
    return e;
}

Rational construction_degree_fraction(const ConstructionParams& p) {
    p.validate();
    Rational alpha = p.alpha();
    Rational small_part = (Rational(1) - alpha) / Rational(p.r);
    Rational max_part = alpha > small_part ? alpha : small_part;
    return Rational(1) - max_part;
}

std::optional<Rational> threshold(int r, int q) {
    if (r < 3 || q < 2) throw std::invalid_argument("threshold requires r >= 3 and q >= 2");
    if (r == 3) {
        if (q <= 6) return Rational(3, 4);
        if (q == 7) return Rational(5, 7);
        if (q == 8) return Rational(11, 16);
        return Rational(2, 3);
    }
    long long c2 = binom2(r), c2next = binom2(r + 1);
    if (q < c2) {
        long long b = c2 % q;
        if (b == 0 || r + b >= q) return Rational(r, r + 1);
        return std::nullopt; // open problem
    }
    if (q <= c2next) return Rational(r, r + 1);
    if (q == c2next + 1)
        return Rational((long long)r * r + 1, (long long)r * r + r + 2);
    return Rational(r - 1, r);
}

} // namespace tilescope
