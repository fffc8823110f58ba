#pragma once

// Colorings of all k-subsets of [0, N), stored densely in colex rank order,
// plus the mixed-radix product palette used to pack color tuples.

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

// SplitMix64, the only random source in the library.  Fully portable:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform over [0, bound); bound-sized modulo bias is acceptable here
    std::uint32_t below(std::uint32_t bound) {
        return std::uint32_t(next() % bound);
    }
};

inline constexpr int kMaxPalette = 256;

struct KSubsetColoring {
    int N = 0;
    int k = 0;
    int q = 1;                        // palette {0, ..., q-1}
    std::vector<std::uint8_t> colors; // indexed by colex rank

    std::uint64_t cells() const { return binom(N, k); }

    int at(std::uint64_t rank) const { return colors[rank]; }

    int color_of(const KSubset& s) const { return colors[colex_rank(s)]; }

    bool valid() const {
        if (k < 1 || N < k || q < 1 || q > kMaxPalette) return false;
        if (colors.size() != cells()) return false;
        for (auto c : colors)
            if (c >= q) return false;
        return true;
    }
};

inline void require_valid(const KSubsetColoring& c, const char* who) {
    if (!c.valid()) throw InputError(std::string(who) + ": malformed coloring");
}

// Build a coloring from an assignment function over k-subsets.
template <typename F>
inline KSubsetColoring make_coloring(int N, int k, int q, F&& assign) {
    if (k < 1 || N < k) throw InputError("make_coloring: need N >= k >= 1");
    if (q < 1 || q > kMaxPalette) throw InputError("make_coloring: palette out of range");
    KSubsetColoring out{N, k, q, {}};
    out.colors.resize(binom(N, k));
    std::uint64_t r = 0;
    for_each_ksubset(N, k, [&](const KSubset& s) {
        int c = assign(s);
        if (c < 0 || c >= q) {
            std::string err = "make_coloring: assignment " + std::to_string(c) +
                              " out of palette at subset {";
            for (std::size_t i = 0; i < s.size(); ++i)
                err += (i ? "," : "") + std::to_string(s[i]);
            throw InputError(err + "}");
        }
        out.colors[r++] = std::uint8_t(c);
    });
    return out;
}

// Seeded uniform coloring: cell at colex rank r gets the r-th SplitMix64
// output mod q.  A pure function of (N, k, q, seed).
inline KSubsetColoring random_coloring(int N, int k, int q, std::uint64_t seed) {
    if (k < 1 || N < k) throw InputError("random_coloring: need N >= k >= 1");
    if (q < 1 || q > kMaxPalette) throw InputError("random_coloring: palette out of range");
    KSubsetColoring out{N, k, q, {}};
    out.colors.resize(binom(N, k));
    SplitMix64 rng(seed);
    for (auto& c : out.colors) c = std::uint8_t(rng.below(std::uint32_t(q)));
    return out;
}

// ---------------------------------------------------------------------------
// Product palette: tuples (a_1, ..., a_t) with a_i in [0, q_i), flattened in
// mixed radix with factor 1 most significant, so tuple lex order equals
// numeric order of the flattened value.

struct ProductPalette {
    std::vector<int> factors;

    explicit ProductPalette(std::vector<int> fs) : factors(std::move(fs)) {
        if (factors.empty()) throw InputError("ProductPalette: no factors");
        long long p = 1;
        for (int f : factors) {
            if (f < 1) throw InputError("ProductPalette: factors must be >= 1");
            p *= f;
            if (p > kMaxPalette) throw InputError("ProductPalette: product exceeds palette cap");
        }
    }

    int size() const { return int(factors.size()); }

    int product() const {
        int p = 1;
        for (int f : factors) p *= f;
        return p;
    }

    int flatten(const std::vector<int>& tuple) const {
        if (int(tuple.size()) != size()) throw InputError("flatten: tuple arity mismatch");
        int c = 0;
        for (int i = 0; i < size(); ++i) {
            if (tuple[i] < 0 || tuple[i] >= factors[i])
                throw InputError("flatten: component out of range");
            c = c * factors[i] + tuple[i];
        }
        return c;
    }

    std::vector<int> unflatten(int color) const {
        if (color < 0 || color >= product()) throw InputError("unflatten: color out of range");
        std::vector<int> tuple(size());
        for (int i = size() - 1; i >= 0; --i) {
            tuple[i] = color % factors[i];
            color /= factors[i];
        }
        return tuple;
    }
};

}  // namespace ramsey
