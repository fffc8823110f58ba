#pragma once

// Constructive extraction procedures: the recursive monochromatic-set
// extraction that pairs with step_down, the nonincreasing-set algorithm with
// its exact (2 + sqrt 2)^n thresholds, and independent sets in sparse
// hypergraphs by random sampling plus deletion.

#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/constructions.hpp"
#include "ramsey/detectors.hpp"
#include "ramsey/quadratic.hpp"

namespace ramsey {

// thrown when a randomized procedure exceeds its round cap; never used to
// paper over an undersized result
struct RetryExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Monochromatic-set extraction.  Input: chi = step_down(phi, spec) and a
// vertex set S all of whose k-subsets carry the last color t.  Output: a
// subset T with |T| >= floor(|S| / l) whose (k-1)-subsets all share one phi
// color, where l counts the distinct phi colors on (k-1)-subsets of S.
//
// The recursion follows the proof shape: with a* the lexicographically
// smallest color present (numeric order of flattened colors, since tuples
// flatten most-significant-first), split S into the first |S| - floor(|S|/l)
// vertices S1 and the rest S2.  If a* appears inside S1, the shift chain
// through color-t k-subsets forces every (k-1)-subset of S2 down to a*
// pointwise, hence equal to a*; that propagation is re-verified here rather
// than assumed.  Otherwise S1 avoids a* entirely and the recursion continues
// on S1 with one color fewer.

struct ExtractResult {
    KSubset T;
    std::vector<int> color;  // shared phi tuple on (k-1)-subsets of T
};

inline ExtractResult extract_mono_set(const KSubsetColoring& chi, const KSubsetColoring& phi,
                                      const StepDownSpec& spec, const KSubset& S) {
    if (!spec.valid()) throw InputError("extract_mono_set: bad spec");
    require_valid(chi, "extract_mono_set");
    require_valid(phi, "extract_mono_set");
    const int k = spec.k;
    const int t = spec.t();
    if (phi.k != k - 1 || phi.q != spec.q())
        throw InputError("extract_mono_set: phi does not match the spec palette");
    if (chi.k != k || chi.q != t + 1 || chi.N != phi.N)
        throw InputError("extract_mono_set: chi does not match the spec shape");
    if (!is_valid_ksubset(S) || S.empty() || S.back() >= chi.N)
        throw InputError("extract_mono_set: bad vertex set");
    if (int(S.size()) < k - 1) throw InputError("extract_mono_set: S smaller than k-1");
    auto pal = spec.palette();

    // precondition: every k-subset of S is colored t by chi, and chi agrees
    // with the step-down reading of phi there
    KSubset sub(k), head(k - 1), tail(k - 1);
    {
        bool ok = true;
        std::string offender;
        for_each_ksubset(int(S.size()), k, [&](const KSubset& idx) {
            if (!ok) return;
            for (int i = 0; i < k; ++i) sub[i] = S[idx[i]];
            if (chi.color_of(sub) != t) {
                ok = false;
                offender = vertices_to_string(sub) + " has color " +
                           std::to_string(chi.color_of(sub));
                return;
            }
            std::copy(sub.begin(), sub.end() - 1, head.begin());
            std::copy(sub.begin() + 1, sub.end(), tail.begin());
            auto a = pal.unflatten(phi.color_of(head));
            auto b = pal.unflatten(phi.color_of(tail));
            for (int i = 0; i < t; ++i)
                if (a[i] < b[i]) {
                    ok = false;
                    offender = vertices_to_string(sub) + " is not color t under phi";
                    return;
                }
        });
        if (!ok) throw ContractViolation("extract_mono_set: " + offender);
    }

    KSubset W = S;
    while (true) {
        std::vector<int> used;
        KSubset part(k - 1);
        for_each_ksubset(int(W.size()), k - 1, [&](const KSubset& idx) {
            for (int i = 0; i < k - 1; ++i) part[i] = W[idx[i]];
            int c = phi.color_of(part);
            if (std::find(used.begin(), used.end(), c) == used.end()) used.push_back(c);
        });
        if (used.empty()) throw InputError("extract_mono_set: working set lost its colors");
        if (used.size() == 1) return {W, pal.unflatten(used[0])};

        const int l = int(used.size());
        const int target = int(W.size()) / l;
        const int cut = int(W.size()) - target;
        int a_star = *std::min_element(used.begin(), used.end());

        bool in_s1 = false;
        for_each_ksubset(cut, k - 1, [&](const KSubset& idx) {
            if (in_s1) return;
            for (int i = 0; i < k - 1; ++i) part[i] = W[idx[i]];
            if (phi.color_of(part) == a_star) in_s1 = true;
        });

        if (in_s1) {
            KSubset S2(W.begin() + cut, W.end());
            bool ok = true;
            std::string offender;
            for_each_ksubset(target, k - 1, [&](const KSubset& idx) {
                if (!ok) return;
                for (int i = 0; i < k - 1; ++i) part[i] = S2[idx[i]];
                if (phi.color_of(part) != a_star) {
                    ok = false;
                    offender = vertices_to_string(part);
                }
            });
            if (!ok)
                throw ContractViolation("extract_mono_set: propagation failed at " + offender);
            return {S2, pal.unflatten(a_star)};
        }
        W.resize(cut);
    }
}

// ---------------------------------------------------------------------------
// Nonincreasing sets in 2-colorings of pairs.  Colors are ordered 0 < 1; a
// set is nonincreasing when no triple's pair colors strictly increase.  The
// procedure succeeds on every coloring once N reaches ceil((2+sqrt2)^n);
// below that it is best effort and may return nothing.
//
// Shape of the recursion, working inside a vertex pool W: if the first n
// vertices of W already form a nonincreasing set, take them.  Otherwise look
// for a vertex v whose 0-colored back-neighborhood inside W reaches the level
// threshold L = ceil((2+sqrt2)^(n-1)): a nonincreasing (n-1)-set found there
// extends by v, because appending a vertex behind all-0 pairs cannot create
// an increasing triple.  Failing that, take the vertex u with the largest
// 1-colored forward neighborhood (ties to the smallest u) and recurse there;
// prepending u ahead of all-1 pairs is equally safe, and the counting
// argument guarantees the neighborhood is big enough at threshold.

inline std::optional<KSubset> find_nonincreasing_set(const KSubsetColoring& chi, int n) {
    require_valid(chi, "find_nonincreasing_set");
    if (chi.k != 2 || chi.q != 2)
        throw InputError("find_nonincreasing_set: need a 2-coloring of pairs");
    if (n < 1) throw InputError("find_nonincreasing_set: need n >= 1");
    if (chi.N < 1) throw InputError("find_nonincreasing_set: empty vertex set");

    std::function<std::optional<KSubset>(const KSubset&, int)> rec =
        [&](const KSubset& W, int m) -> std::optional<KSubset> {
        if (int(W.size()) < m) return std::nullopt;
        if (m == 1) return KSubset{W[0]};
        KSubset prefix(W.begin(), W.begin() + m);
        if (is_nonincreasing_set(chi, prefix)) return prefix;

        bigint L = ceil_pow_two_plus_sqrt2(m - 1);
        for (std::size_t i = 0; i < W.size(); ++i) {
            KSubset back;
            for (std::size_t j = 0; j < i; ++j)
                if (chi.color_of({W[j], W[i]}) == 0) back.push_back(W[j]);
            if (bigint(back.size()) < L) continue;
            if (auto inner = rec(back, m - 1)) {
                inner->push_back(W[i]);
                return inner;
            }
        }

        std::size_t best = 0;
        KSubset best_fwd;
        for (std::size_t i = 0; i < W.size(); ++i) {
            KSubset fwd;
            for (std::size_t j = i + 1; j < W.size(); ++j)
                if (chi.color_of({W[i], W[j]}) == 1) fwd.push_back(W[j]);
            if (fwd.size() > best_fwd.size()) {
                best = i;
                best_fwd = std::move(fwd);
            }
        }
        if (best_fwd.empty()) return std::nullopt;
        if (auto inner = rec(best_fwd, m - 1)) {
            inner->insert(inner->begin(), W[best]);
            return inner;
        }
        return std::nullopt;
    };

    KSubset all(chi.N);
    std::iota(all.begin(), all.end(), 0);
    return rec(all, n);
}

// ---------------------------------------------------------------------------
// Independent sets by sampling.  For a k-uniform hypergraph with |E| > N/k,
// keep each vertex with probability p = (N / (k|E|))^(1/(k-1)), then delete
// the largest vertex of every edge still fully inside the sample.  A round is
// accepted when the surviving set meets (1 - 1/k) N p; that comparison is
// done in exact integers by raising both sides to the (k-1)-th power, so the
// only floating point is the sampling probability itself, which affects
// round counts but never correctness.

struct Hypergraph {
    int N = 0;
    int k = 0;
    std::vector<KSubset> edges;

    bool valid() const {
        if (N < 0 || k < 2) return false;
        for (const auto& e : edges) {
            if (int(e.size()) != k || !is_valid_ksubset(e)) return false;
            if (e.back() >= N) return false;
        }
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
};

inline bool meets_spencer_bound(std::size_t size, int N, int k, std::size_t edge_count) {
    using boost::multiprecision::pow;
    bigint lhs = pow(bigint(k) * bigint(size), unsigned(k - 1)) * k * bigint(edge_count);
    bigint rhs = pow(bigint(k - 1) * bigint(N), unsigned(k - 1)) * N;
    return lhs >= rhs;
}

inline std::vector<Vertex> spencer_independent_set(const Hypergraph& H, std::uint64_t seed) {
    if (!H.valid()) throw InputError("spencer_independent_set: bad hypergraph");
    if (bigint(H.k) * bigint(H.edges.size()) <= H.N)
        throw InputError(
            "spencer_independent_set: needs |E| > N/k; sparser graphs have trivial large "
            "independent sets");

    const double p =
        std::pow(double(H.N) / (double(H.k) * double(H.edges.size())), 1.0 / (H.k - 1));
    const std::uint64_t threshold = std::uint64_t(p * 9007199254740992.0);  // p * 2^53

    SplitMix64 rng(seed);
    const int cap = 64 * H.k;
    for (int round = 0; round < cap; ++round) {
        std::vector<char> in(H.N, 0);
        for (Vertex v = 0; v < H.N; ++v) in[v] = (rng.next() >> 11) < threshold;
        for (const auto& e : H.edges) {
            bool inside = true;
            for (Vertex v : e)
                if (!in[v]) {
                    inside = false;
                    break;
                }
            if (inside) in[e.back()] = 0;
        }
        std::vector<Vertex> out;
        for (Vertex v = 0; v < H.N; ++v)
            if (in[v]) out.push_back(v);
        if (meets_spencer_bound(out.size(), H.N, H.k, H.edges.size())) return out;
    }
    throw RetryExhausted("spencer_independent_set: bound not met within " + std::to_string(cap) +
                         " rounds");
}

}  // namespace ramsey
