#pragma once

// Structure detectors over k-subset colorings: tight-path profiles, witness
// reconstruction, monochromatic cliques, red half-graphs and nonincreasing
// sets.  Finders return a canonical first witness in a fixed scan order;
// validators re-check witnesses straight from the definitions.

#include <algorithm>
#include <string>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ramsey/coloring.hpp"

namespace ramsey {

inline std::string vertices_to_string(const std::vector<Vertex>& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
        out += (i ? "," : "") + std::to_string(vs[i]);
    return out + "}";
}

struct Witness {
    enum Kind { TightPath, Clique, HalfGraph, NonincreasingSet };
    Kind kind = TightPath;
    int color = 0;
    std::vector<Vertex> vertices;  // path: the ordered traversal; otherwise increasing

    // HalfGraph only: disjoint (k-1)-sets S, T and the S-vertex u with
    // {u} + T red.
    std::vector<Vertex> S, T;
    Vertex u = -1;
};

// ---------------------------------------------------------------------------
// Tight-path profile.  For every (k-1)-subset, the length (in edges) of the
// longest monochromatic tight path ending with exactly those k-1 vertices.
// A bare (k-1)-subset counts as a path of length 0.

struct PathProfile {
    int N = 0;
    int k = 0;
    std::vector<int> tracked;
    std::vector<std::vector<int>> lengths;  // [tracked index][prefix colex rank]

    int tracked_index(int color) const {
        for (std::size_t i = 0; i < tracked.size(); ++i)
            if (tracked[i] == color) return int(i);
        throw InputError("PathProfile: color not tracked");
    }

    int at(const KSubset& prefix, int color) const {
        return lengths[tracked_index(color)][colex_rank(prefix)];
    }

    int max_length(int color) const {
        const auto& row = lengths[tracked_index(color)];
        return *std::max_element(row.begin(), row.end());
    }
};

// One colex scan of all k-subsets.  Scanning in colex order finalizes every
// prefix entry before any edge consumes it, because an edge's prefix has a
// strictly smaller maximum element than the edge's suffix.
inline PathProfile path_profile(const KSubsetColoring& chi, std::vector<int> tracked) {
    require_valid(chi, "path_profile");
    if (chi.k < 2) throw InputError("path_profile: need k >= 2");
    for (int c : tracked)
        if (c < 0 || c >= chi.q) throw InputError("path_profile: tracked color outside palette");
    PathProfile prof{chi.N, chi.k, std::move(tracked), {}};
    prof.lengths.assign(prof.tracked.size(), std::vector<int>(binom(chi.N, chi.k - 1), 0));
    std::vector<int> where(chi.q, -1);
    for (std::size_t i = 0; i < prof.tracked.size(); ++i) where[prof.tracked[i]] = int(i);

    const int k = chi.k;
    KSubset prefix(k - 1), suffix(k - 1);
    std::uint64_t rank = 0;
    for_each_ksubset(chi.N, k, [&](const KSubset& e) {
        int t = where[chi.colors[rank++]];
        if (t < 0) return;
        std::copy(e.begin(), e.end() - 1, prefix.begin());
        std::copy(e.begin() + 1, e.end(), suffix.begin());
        auto& row = prof.lengths[t];
        row[colex_rank(suffix)] =
            std::max(row[colex_rank(suffix)], row[colex_rank(prefix)] + 1);
    });
    return prof;
}

// Longest tight path in one color, with an explicit witness.  Ties break
// toward the smallest suffix rank; a colorless graph yields the length-0
// witness {0, ..., k-2}.
inline std::pair<int, Witness> longest_tight_path(const KSubsetColoring& chi, int color) {
    require_valid(chi, "longest_tight_path");
    if (chi.k < 2) throw InputError("longest_tight_path: need k >= 2");
    if (color < 0 || color >= chi.q) throw InputError("longest_tight_path: color outside palette");

    const int k = chi.k;
    const auto cells = binom(chi.N, k - 1);
    std::vector<int> len(cells, 0);
    std::vector<Vertex> pred(cells, -1);

    KSubset prefix(k - 1), suffix(k - 1);
    std::uint64_t rank = 0;
    for_each_ksubset(chi.N, k, [&](const KSubset& e) {
        bool match = chi.colors[rank++] == color;
        if (!match) return;
        std::copy(e.begin(), e.end() - 1, prefix.begin());
        std::copy(e.begin() + 1, e.end(), suffix.begin());
        auto pr = colex_rank(prefix);
        auto sr = colex_rank(suffix);
        if (len[pr] + 1 > len[sr]) {
            len[sr] = len[pr] + 1;
            pred[sr] = e[0];
        }
    });

    std::uint64_t best = 0;
    for (std::uint64_t r = 1; r < cells; ++r)
        if (len[r] > len[best]) best = r;

    Witness w;
    w.kind = Witness::TightPath;
    w.color = color;
    KSubset cur = colex_unrank(best, k - 1);
    w.vertices.assign(cur.begin(), cur.end());
    int steps = len[best];
    while (steps > 0) {
        Vertex v = pred[colex_rank(cur)];
        w.vertices.insert(w.vertices.begin(), v);
        for (int i = k - 2; i >= 1; --i) cur[i] = cur[i - 1];
        cur[0] = v;
        --steps;
    }
    return {len[best], w};
}

// ---------------------------------------------------------------------------
// Monochromatic clique: first witness in lexicographic vertex-set order.

inline std::optional<Witness> find_mono_clique(const KSubsetColoring& chi, int color, int n) {
    require_valid(chi, "find_mono_clique");
    if (color < 0 || color >= chi.q) throw InputError("find_mono_clique: color outside palette");
    if (n < chi.k) throw InputError("find_mono_clique: clique size below k");
    if (n > chi.N) return std::nullopt;

    const int k = chi.k;
    std::vector<Vertex> cur;
    cur.reserve(n);

    auto compatible = [&](Vertex v) {
        if (int(cur.size()) < k - 1) return true;
        // every k-subset of cur + {v} that contains v must have the color
        KSubset idx = first_ksubset(k - 1);
        KSubset sub(k);
        do {
            for (int i = 0; i < k - 1; ++i) sub[i] = cur[idx[i]];
            sub[k - 1] = v;
            if (chi.color_of(sub) != color) return false;
        } while (next_ksubset_colex(idx, int(cur.size())));
        return true;
    };

    std::function<bool(Vertex)> rec = [&](Vertex start) {
        if (int(cur.size()) == n) return true;
        for (Vertex v = start; v < chi.N; ++v) {
            if (chi.N - v < n - int(cur.size())) break;
            if (!compatible(v)) continue;
            cur.push_back(v);
            if (rec(v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };

    if (!rec(0)) return std::nullopt;
    Witness w;
    w.kind = Witness::Clique;
    w.color = color;
    w.vertices = cur;
    return w;
}

// ---------------------------------------------------------------------------
// Red half-graph: disjoint (k-1)-sets S and T such that S + {v} is red for
// every v in T, and {u} + T is red for some u in S.  Scan order: S in colex
// order, T in colex order over the complement, u ascending.

inline KSubset sorted_union(const KSubset& base, Vertex v) {
    KSubset out(base.size() + 1);
    auto it = std::upper_bound(base.begin(), base.end(), v);
    auto mid = std::copy(base.begin(), it, out.begin());
    *mid++ = v;
    std::copy(it, base.end(), mid);
    return out;
}

inline std::optional<Witness> find_red_half_graph(const KSubsetColoring& chi, int red) {
    require_valid(chi, "find_red_half_graph");
    if (chi.k < 2) throw InputError("find_red_half_graph: need k >= 2");
    if (red < 0 || red >= chi.q) throw InputError("find_red_half_graph: color outside palette");
    if (chi.N < 2 * chi.k - 2) return std::nullopt;

    const int k = chi.k;
    std::optional<Witness> hit;
    for_each_ksubset(chi.N, k - 1, [&](const KSubset& S) {
        if (hit) return;
        std::vector<Vertex> rest;
        rest.reserve(chi.N - (k - 1));
        for (Vertex v = 0; v < chi.N; ++v)
            if (!std::binary_search(S.begin(), S.end(), v)) rest.push_back(v);
        for_each_ksubset(int(rest.size()), k - 1, [&](const KSubset& idx) {
            if (hit) return;
            KSubset T(k - 1);
            for (int i = 0; i < k - 1; ++i) T[i] = rest[idx[i]];
            for (Vertex v : T)
                if (chi.color_of(sorted_union(S, v)) != red) return;
            for (Vertex u : S) {
                if (chi.color_of(sorted_union(T, u)) != red) continue;
                Witness w;
                w.kind = Witness::HalfGraph;
                w.color = red;
                w.S = S;
                w.T = T;
                w.u = u;
                w.vertices = S;
                for (Vertex t : T) w.vertices = sorted_union(w.vertices, t);
                hit = w;
                return;
            }
        });
    });
    return hit;
}

// ---------------------------------------------------------------------------
// Nonincreasing sets: T is nonincreasing when for every k+1 vertices
// v1 < ... < v_{k+1} drawn from T, chi(v1..vk) >= chi(v2..v_{k+1}).

inline bool is_nonincreasing_set(const KSubsetColoring& chi, const KSubset& T) {
    require_valid(chi, "is_nonincreasing_set");
    if (!is_valid_ksubset(T) || T.back() >= chi.N)
        throw InputError("is_nonincreasing_set: bad vertex set");
    if (int(T.size()) < chi.k) throw InputError("is_nonincreasing_set: set smaller than k");

    const int k = chi.k;
    bool ok = true;
    KSubset head(k), tail(k);
    for_each_ksubset(int(T.size()), k + 1, [&](const KSubset& idx) {
        if (!ok) return;
        for (int i = 0; i < k; ++i) {
            head[i] = T[idx[i]];
            tail[i] = T[idx[i + 1]];
        }
        if (chi.color_of(head) < chi.color_of(tail)) ok = false;
    });
    return ok;
}

// Exhaustive existence search (desk scale): first witness in lexicographic
// vertex-set order.  Sound to extend greedily because every subset of a
// nonincreasing set is nonincreasing.
inline std::optional<KSubset> find_nonincreasing_set_exhaustive(const KSubsetColoring& chi,
                                                                int n) {
    require_valid(chi, "find_nonincreasing_set_exhaustive");
    if (n < chi.k) throw InputError("find_nonincreasing_set_exhaustive: size below k");
    if (n > chi.N) return std::nullopt;

    const int k = chi.k;
    std::vector<Vertex> cur;
    cur.reserve(n);

    auto extendable = [&](Vertex w) {
        if (int(cur.size()) < k) return true;
        // new k+1 windows all end at w
        KSubset idx = first_ksubset(k);
        KSubset head(k), tail(k);
        do {
            for (int i = 0; i < k; ++i) head[i] = cur[idx[i]];
            for (int i = 0; i < k - 1; ++i) tail[i] = cur[idx[i + 1]];
            tail[k - 1] = w;
            if (chi.color_of(head) < chi.color_of(tail)) return false;
        } while (next_ksubset_colex(idx, int(cur.size())));
        return true;
    };

    std::function<bool(Vertex)> rec = [&](Vertex start) {
        if (int(cur.size()) == n) return true;
        for (Vertex v = start; v < chi.N; ++v) {
            if (chi.N - v < n - int(cur.size())) break;
            if (!extendable(v)) continue;
            cur.push_back(v);
            if (rec(v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };

    if (!rec(0)) return std::nullopt;
    return KSubset(cur.begin(), cur.end());
}

// ---------------------------------------------------------------------------
// Witness validators.  Straight definition checks, no shared machinery with
// the finders above beyond color lookup.

inline bool validate_witness(const KSubsetColoring& chi, const Witness& w) {
    require_valid(chi, "validate_witness");
    const int k = chi.k;
    auto in_range = [&](const std::vector<Vertex>& vs) {
        for (Vertex v : vs)
            if (v < 0 || v >= chi.N) return false;
        return true;
    };
    switch (w.kind) {
        case Witness::TightPath: {
            if (int(w.vertices.size()) < k - 1) return false;
            if (!in_range(w.vertices)) return false;
            for (std::size_t i = 1; i < w.vertices.size(); ++i)
                if (w.vertices[i - 1] >= w.vertices[i]) return false;
            for (std::size_t i = 0; i + k <= w.vertices.size(); ++i) {
                KSubset win(w.vertices.begin() + i, w.vertices.begin() + i + k);
                if (chi.color_of(win) != w.color) return false;
            }
            return true;
        }
        case Witness::Clique: {
            if (int(w.vertices.size()) < k) return false;
            if (!is_valid_ksubset(w.vertices) || !in_range(w.vertices)) return false;
            bool ok = true;
            for_each_ksubset(int(w.vertices.size()), k, [&](const KSubset& idx) {
                if (!ok) return;
                KSubset sub(k);
                for (int i = 0; i < k; ++i) sub[i] = w.vertices[idx[i]];
                if (chi.color_of(sub) != w.color) ok = false;
            });
            return ok;
        }
        case Witness::HalfGraph: {
            if (int(w.S.size()) != k - 1 || int(w.T.size()) != k - 1) return false;
            if (!is_valid_ksubset(w.S) || !is_valid_ksubset(w.T)) return false;
            if (!in_range(w.S) || !in_range(w.T)) return false;
            for (Vertex v : w.T)
                if (std::binary_search(w.S.begin(), w.S.end(), v)) return false;
            bool u_in_S = std::binary_search(w.S.begin(), w.S.end(), w.u);
            if (!u_in_S) return false;
            for (Vertex v : w.T)
                if (chi.color_of(sorted_union(w.S, v)) != w.color) return false;
            return chi.color_of(sorted_union(w.T, w.u)) == w.color;
        }
        case Witness::NonincreasingSet: {
            if (int(w.vertices.size()) < k) return false;
            if (!is_valid_ksubset(w.vertices) || !in_range(w.vertices)) return false;
            return is_nonincreasing_set(chi, w.vertices);
        }
    }
    return false;
}

}  // namespace ramsey
