#pragma once

// Explicit lower-bound colorings: the step-down coloring built from a
// lower-uniformity coloring phi, its one-factor special case for triples vs
// cliques, and the two half-graph-free colorings (regular tournaments for odd
// k, perfect-matching pair colorings for even k).

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/coloring.hpp"

namespace ramsey {

// ---------------------------------------------------------------------------
// Step-down coloring.  Given phi on (k-1)-subsets with a product palette of
// factors q_1, ..., q_t, color each k-tuple v_1 < ... < v_k by comparing the
// phi tuples a = phi(v_1..v_{k-1}) and b = phi(v_2..v_k): the color is the
// first index i with a_i < b_i, or t when no component increases.
//
// Two separate guarantees.  Unconditionally, color i carries no tight path of
// length q_i (the i-th components along such a path would increase strictly
// through q_i + 1 values drawn from a q_i-element range).  Conditionally, if
// phi has no monochromatic clique of size m then color t has no clique of
// size m either, since a color-t clique is phi-nonincreasing on every chain
// and hence phi-constant on all its (k-1)-subsets.

struct StepDownSpec {
    int k = 0;
    std::vector<int> path_sizes;

    int t() const { return int(path_sizes.size()); }

    std::vector<int> factors() const {
        std::vector<int> fs;
        fs.reserve(path_sizes.size());
        for (int s : path_sizes) fs.push_back(s - k + 1);
        return fs;
    }

    int q() const {
        auto fs = factors();
        return std::accumulate(fs.begin(), fs.end(), 1, std::multiplies<int>());
    }

    ProductPalette palette() const { return ProductPalette(factors()); }

    bool valid() const {
        if (k < 2 || path_sizes.empty()) return false;
        for (int s : path_sizes)
            if (s < k + 1) return false;
        long long p = 1;
        for (int s : path_sizes) {
            p *= s - k + 1;
            if (p > kMaxPalette) return false;
        }
        return t() + 1 <= kMaxPalette;
    }
};

inline KSubsetColoring step_down(const KSubsetColoring& phi, const StepDownSpec& spec) {
    if (!spec.valid()) throw InputError("step_down: bad spec (need k >= 2, sizes >= k+1)");
    require_valid(phi, "step_down");
    if (phi.k != spec.k - 1) throw InputError("step_down: phi uniformity must be k-1");
    if (phi.N < spec.k) throw InputError("step_down: phi has fewer than k vertices");
    auto pal = spec.palette();
    if (phi.q != pal.product())
        throw InputError("step_down: phi palette does not match the path-size factors");

    const int k = spec.k;
    const int t = spec.t();
    std::vector<std::vector<int>> tuples(phi.cells());
    for (std::uint64_t r = 0; r < phi.cells(); ++r) tuples[r] = pal.unflatten(phi.colors[r]);

    KSubsetColoring chi{phi.N, k, t + 1, {}};
    chi.colors.reserve(binom(phi.N, k));
    KSubset prefix(k - 1), suffix(k - 1);
    for_each_ksubset(phi.N, k, [&](const KSubset& e) {
        std::copy(e.begin(), e.end() - 1, prefix.begin());
        std::copy(e.begin() + 1, e.end(), suffix.begin());
        const auto& a = tuples[colex_rank(prefix)];
        const auto& b = tuples[colex_rank(suffix)];
        int color = t;
        for (int i = 0; i < t; ++i)
            if (a[i] < b[i]) {
                color = i;
                break;
            }
        chi.colors.push_back(std::uint8_t(color));
    });
    return chi;
}

// ---------------------------------------------------------------------------
// Triples vs cliques: one-factor step-down with s = 4.  A triple is red when
// the pair labels strictly increase along it; red tight paths then have
// length at most 1, so no red P4 regardless of phi.

inline KSubsetColoring p4_vs_clique_coloring(const KSubsetColoring& phi) {
    if (phi.k != 2 || phi.q != 2)
        throw InputError("p4_vs_clique_coloring: phi must be a 2-coloring of pairs");
    return step_down(phi, StepDownSpec{3, {4}});
}

inline KSubsetColoring p4_vs_clique_coloring(int N, std::uint64_t seed) {
    if (N < 3) throw InputError("p4_vs_clique_coloring: need N >= 3");
    return p4_vs_clique_coloring(random_coloring(N, 2, 2, seed));
}

// ---------------------------------------------------------------------------
// Tournaments: one orientation bit per pair, indexed by the pair's colex
// rank.  Bit 1 points the edge from the smaller endpoint to the larger.
// Explicit tables make degenerate tournaments (transitive, rotational)
// injectable in tests.

struct Tournament {
    int N = 0;
    std::vector<std::uint8_t> toward_max;

    bool valid() const {
        if (N < 0 || N > 64) return false;
        if (toward_max.size() != (N < 2 ? 0 : binom(N, 2))) return false;
        for (auto b : toward_max)
            if (b > 1) return false;
        return true;
    }

    // true when the edge between u and v points at the larger endpoint
    bool points_to_max(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        return toward_max[colex_rank({u, v})] != 0;
    }
};

inline Tournament random_tournament(int N, std::uint64_t seed) {
    if (N < 0 || N > 64) throw InputError("random_tournament: N out of range");
    Tournament t{N, {}};
    if (N >= 2) {
        t.toward_max.reserve(binom(N, 2));
        SplitMix64 rng(seed);
        for (std::uint64_t r = 0; r < binom(N, 2); ++r)
            t.toward_max.push_back(std::uint8_t(rng.below(2)));
    }
    return t;
}

// every vertex of s has indegree (|s|-1)/2 inside s
inline bool induces_regular_tournament(const Tournament& t, const KSubset& s) {
    const int k = int(s.size());
    std::vector<int> indeg(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            ++indeg[t.points_to_max(s[i], s[j]) ? j : i];
    for (int d : indeg)
        if (d != (k - 1) / 2) return false;
    return true;
}

inline KSubsetColoring tournament_halfgraph_coloring(const Tournament& t, int k) {
    if (!t.valid()) throw InputError("tournament_halfgraph_coloring: bad tournament");
    if (k < 3 || k % 2 == 0)
        throw InputError("tournament_halfgraph_coloring: k must be odd and >= 3");
    if (t.N < k) throw InputError("tournament_halfgraph_coloring: need N >= k");
    return make_coloring(t.N, k, 2, [&](const KSubset& s) {
        return induces_regular_tournament(t, s) ? 0 : 1;
    });
}

inline KSubsetColoring tournament_halfgraph_coloring(int N, int k, std::uint64_t seed) {
    return tournament_halfgraph_coloring(random_tournament(N, seed), k);
}

// ---------------------------------------------------------------------------
// Even k: color pairs with k-1 colors; a k-set is red when every pair color
// classes into a perfect matching on its vertices.

inline bool induces_one_factorization(const KSubsetColoring& pairs, const KSubset& s) {
    const int k = int(s.size());
    // each color must touch every vertex exactly once within s
    std::vector<int> seen(std::size_t(pairs.q) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int c = pairs.color_of({s[i], s[j]});
            if (seen[std::size_t(c) * k + i]++ || seen[std::size_t(c) * k + j]++) return false;
        }
    return true;
}

inline KSubsetColoring matching_halfgraph_coloring(const KSubsetColoring& pairs, int k) {
    if (k < 4 || k % 2 == 1)
        throw InputError("matching_halfgraph_coloring: k must be even and >= 4");
    if (pairs.k != 2 || pairs.q != k - 1)
        throw InputError("matching_halfgraph_coloring: pair coloring must use k-1 colors");
    if (pairs.N < k) throw InputError("matching_halfgraph_coloring: need N >= k");
    return make_coloring(pairs.N, k, 2, [&](const KSubset& s) {
        return induces_one_factorization(pairs, s) ? 0 : 1;
    });
}

inline KSubsetColoring matching_halfgraph_coloring(int N, int k, std::uint64_t seed) {
    if (k < 4 || k % 2 == 1)
        throw InputError("matching_halfgraph_coloring: k must be even and >= 4");
    return matching_halfgraph_coloring(random_coloring(N, 2, k - 1, seed), k);
}

// ---------------------------------------------------------------------------
// Certificate emission.  Claims carry only the deterministic halves of the
// guarantees; conditional clique claims depend on the supplied phi and are
// the caller's to add once checked.

inline std::string join_path_sizes(const std::vector<int>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(sizes[i]);
    }
    return out;
}

inline Certificate step_down_certificate(const KSubsetColoring& phi, const StepDownSpec& spec,
                                         std::optional<std::uint64_t> phi_seed = std::nullopt) {
    Certificate cert;
    cert.coloring = step_down(phi, spec);
    cert.provenance.name = "stepdown";
    cert.provenance.params = {{"N", std::to_string(phi.N)},
                              {"k", std::to_string(spec.k)},
                              {"paths", join_path_sizes(spec.path_sizes)}};
    cert.provenance.seed = phi_seed;
    for (int i = 0; i < spec.t(); ++i)
        cert.claims.push_back({Claim::NoPath, i, spec.path_sizes[i]});
    return cert;
}

inline Certificate p4_vs_clique_certificate(int N, std::uint64_t seed) {
    Certificate cert;
    cert.coloring = p4_vs_clique_coloring(N, seed);
    cert.provenance.name = "p4clique";
    cert.provenance.params = {{"N", std::to_string(N)}};
    cert.provenance.seed = seed;
    cert.claims = {{Claim::NoPath, 0, 4}};
    return cert;
}

inline Certificate tournament_halfgraph_certificate(int N, int k, std::uint64_t seed) {
    Certificate cert;
    cert.coloring = tournament_halfgraph_coloring(N, k, seed);
    cert.provenance.name = "tournament";
    cert.provenance.params = {{"N", std::to_string(N)}, {"k", std::to_string(k)}};
    cert.provenance.seed = seed;
    cert.claims = {{Claim::NoHalfGraph, 0, k}};
    return cert;
}

inline Certificate matching_halfgraph_certificate(int N, int k, std::uint64_t seed) {
    Certificate cert;
    cert.coloring = matching_halfgraph_coloring(N, k, seed);
    cert.provenance.name = "matching";
    cert.provenance.params = {{"N", std::to_string(N)}, {"k", std::to_string(k)}};
    cert.provenance.seed = seed;
    cert.claims = {{Claim::NoHalfGraph, 0, k}};
    return cert;
}

}  // namespace ramsey
