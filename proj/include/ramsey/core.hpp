#pragma once

// Core combinatorial kit: binomials, colex subset indexing, tower values,
// greedy partial Steiner systems and the small closed-form path values.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramsey {

using bigint = boost::multiprecision::cpp_int;
using Vertex = int;
using KSubset = std::vector<Vertex>;  // strictly increasing vertex list

// Precondition violations on user-supplied data.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented contract broke mid-run (caller handed data that looked fine
// but cannot be, per the stated preconditions).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

inline constexpr int kMaxBinom = 64;

// C(n, k) for 0 <= n <= 64; every value fits in 64 bits.
inline std::uint64_t binom(int n, int k) {
    static const auto table = [] {
        std::vector<std::uint64_t> t((kMaxBinom + 1) * (kMaxBinom + 1), 0);
        for (int i = 0; i <= kMaxBinom; ++i) {
            t[i * (kMaxBinom + 1)] = 1;
            for (int j = 1; j <= i; ++j) {
                t[i * (kMaxBinom + 1) + j] =
                    t[(i - 1) * (kMaxBinom + 1) + j - 1] +
                    (j <= i - 1 ? t[(i - 1) * (kMaxBinom + 1) + j] : 0);
            }
        }
        return t;
    }();
    if (n < 0 || k < 0 || k > n) return 0;
    if (n > kMaxBinom) throw InputError("binom: n > " + std::to_string(kMaxBinom));
    return table[n * (kMaxBinom + 1) + k];
}

inline bool is_valid_ksubset(const KSubset& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0) return false;
        if (i > 0 && s[i - 1] >= s[i]) return false;
    }
    return !s.empty();
}

// Colex rank: subsets ordered by their largest differing element.
// rank(v1 < ... < vk) = sum_i C(vi, i); independent of any ambient N.
inline std::uint64_t colex_rank(const KSubset& s) {
    if (!is_valid_ksubset(s)) throw InputError("colex_rank: not an increasing vertex list");
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binom(s[i], int(i) + 1);
    return r;
}

inline KSubset colex_unrank(std::uint64_t rank, int k) {
    if (k <= 0) throw InputError("colex_unrank: k must be positive");
    KSubset s(k);
    std::uint64_t rem = rank;
    for (int i = k; i >= 1; --i) {
        int v = i - 1;
        while (v + 1 <= kMaxBinom && binom(v + 1, i) <= rem) ++v;
        if (binom(v, i) > rem) throw InputError("colex_unrank: rank out of range");
        rem -= binom(v, i);
        s[i - 1] = v;
    }
    return s;
}

// Advance s to its colex successor among k-subsets of [0, N); false at the end.
inline bool next_ksubset_colex(KSubset& s, int N) {
    const int k = int(s.size());
    for (int i = 0; i < k; ++i) {
        int cap = (i + 1 < k) ? s[i + 1] : N;
        if (s[i] + 1 < cap) {
            ++s[i];
            for (int j = 0; j < i; ++j) s[j] = j;
            return true;
        }
    }
    return false;
}

inline KSubset first_ksubset(int k) {
    KSubset s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    return s;
}

template <typename F>
inline void for_each_ksubset(int N, int k, F&& f) {
    if (k > N) return;
    KSubset s = first_ksubset(k);
    do {
        f(const_cast<const KSubset&>(s));
    } while (next_ksubset_colex(s, N));
}

// ---------------------------------------------------------------------------
// Tower values: twr_1(x) = x, twr_{i+1}(x) = 2^{twr_i(x)}.
// Values whose binary length would exceed 2^16 bits are reported as an
// explicit overflow marker (value == nullopt) instead of being materialized.

inline constexpr std::uint64_t kTowerBitCap = std::uint64_t(1) << 16;

struct TowerValue {
    int height = 0;
    long long argument = 0;
    std::optional<bigint> value;  // nullopt: longer than kTowerBitCap bits

    bool overflowed() const { return !value.has_value(); }
};

inline TowerValue tower(int height, long long x) {
    if (height < 1) throw InputError("tower: height must be >= 1");
    if (x < 0) throw InputError("tower: argument must be >= 0");
    TowerValue out{height, x, bigint(x)};
    for (int i = 2; i <= height; ++i) {
        const bigint& prev = *out.value;
        // 2^prev has prev+1 bits.
        if (prev + 1 > kTowerBitCap) {
            out.value.reset();
            return out;
        }
        out.value = bigint(1) << static_cast<unsigned>(prev);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial Steiner systems: k-sets covering every pair at most once.

struct SteinerSystem {
    int n = 0;
    int k = 0;
    std::vector<KSubset> edges;
};

// Greedy scan of k-subsets of [0, n) in colex order, accepting a subset iff it
// shares at most one vertex with everything accepted so far.  The result is
// maximal by construction.
inline SteinerSystem greedy_partial_steiner(int n, int k) {
    if (k < 2 || n < k) throw InputError("greedy_partial_steiner: need n >= k >= 2");
    SteinerSystem sys{n, k, {}};
    std::vector<bool> pair_used(binom(n, 2), false);
    std::vector<std::uint64_t> pr(std::size_t(k) * k, 0);
    for_each_ksubset(n, k, [&](const KSubset& s) {
        std::size_t np = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                pr[np++] = colex_rank({s[i], s[j]});
        for (std::size_t i = 0; i < np; ++i)
            if (pair_used[pr[i]]) return;
        for (std::size_t i = 0; i < np; ++i) pair_used[pr[i]] = true;
        sys.edges.push_back(s);
    });
    return sys;
}

// ---------------------------------------------------------------------------
// Closed-form tight-path values at the bottom of the hierarchy:
//   k=2: (n-1)(s-1)+1, the increasing-path vs clique value;
//   k=3: C(n+s-4, s-2)+1, the path vs path value.

inline std::uint64_t erdos_szekeres_path_value(int k, int s, int n) {
    if (k == 2) {
        if (s < 2 || n < 2) throw InputError("erdos_szekeres_path_value: need s, n >= 2");
        return std::uint64_t(n - 1) * std::uint64_t(s - 1) + 1;
    }
    if (k == 3) {
        if (s < 3 || n < 3) throw InputError("erdos_szekeres_path_value: need s, n >= 3");
        return binom(n + s - 4, s - 2) + 1;
    }
    throw InputError("erdos_szekeres_path_value: closed forms only for k in {2, 3}");
}

}  // namespace ramsey
