#pragma once

// Canonical forms for small vertex-labeled edge-colored complete graphs.
// Two graphs get the same code exactly when some vertex bijection preserves
// every vertex label and every edge color.  Individualization-refinement
// with twin skipping; sized for search states (<= 20 vertices, <= 4 edge
// colors, labels < 256).  Codes pack into 320 bits so they can key a flat
// hash set without heap traffic.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

inline constexpr int kCanonMaxV = 20;
inline constexpr int kCanonWords = 5;

struct CanonCode {
    std::array<std::uint64_t, kCanonWords> w{};

    friend bool operator==(const CanonCode&, const CanonCode&) = default;
    friend bool operator<(const CanonCode& a, const CanonCode& b) { return a.w < b.w; }

    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : w) {
            h ^= x;
            h *= 0xbf58476d1ce4e5b9ull;
            h ^= h >> 27;
        }
        return h;
    }
};

struct CanonGraph {
    int n = 0;
    std::array<std::uint8_t, kCanonMaxV> label{};
    std::array<std::array<std::uint8_t, kCanonMaxV>, kCanonMaxV> edge{};  // symmetric, diag 0
};

namespace detail {

struct BitWriter {
    CanonCode code{};
    int word = 0;
    int free_bits = 64;

    void push(std::uint64_t value, int bits) {
        while (bits > 0) {
            if (word >= kCanonWords) throw ContractViolation("canonical code overflow");
            int take = bits < free_bits ? bits : free_bits;
            std::uint64_t chunk = (value >> (bits - take)) & (~0ull >> (64 - take));
            code.w[word] |= chunk << (free_bits - take);
            free_bits -= take;
            bits -= take;
            if (free_bits == 0) {
                ++word;
                free_bits = 64;
            }
        }
    }
};

}  // namespace detail

// Reusable canonizer: label_bits/edge_bits fix the packing layout, so codes
// are only comparable between graphs coded by equally configured instances.
class Canonizer {
public:
    Canonizer(int label_bits, int edge_bits, int edge_colors)
        : label_bits_(label_bits), edge_bits_(edge_bits), edge_colors_(edge_colors) {
        if (label_bits < 0 || label_bits > 8 || edge_bits < 0 || edge_bits > 2 ||
            edge_colors < 1 || edge_colors > 4)
            throw InputError("Canonizer: unsupported layout");
    }

    static int bits_for(int distinct_values) {
        int bits = 0;
        while ((1 << bits) < distinct_values) ++bits;
        return bits;
    }

    bool fits(int n) const {
        return n <= kCanonMaxV &&
               6 + n * label_bits_ + n * (n - 1) / 2 * edge_bits_ <= 64 * kCanonWords;
    }

    CanonCode code(const CanonGraph& g) {
        if (!fits(g.n)) throw InputError("Canonizer: graph too large for the layout");
        graph_ = &g;
        best_set_ = false;
        int cls[kCanonMaxV];
        seed_classes(cls);
        search(cls);
        return best_;
    }

private:
    const CanonGraph* graph_ = nullptr;
    int label_bits_, edge_bits_, edge_colors_;
    CanonCode best_{};
    bool best_set_ = false;

    // initial partition: classes by label value, ascending
    void seed_classes(int* cls) {
        const auto& g = *graph_;
        int order[kCanonMaxV];
        for (int i = 0; i < g.n; ++i) order[i] = i;
        std::sort(order, order + g.n,
                  [&](int a, int b) { return g.label[a] < g.label[b]; });
        int next = -1;
        for (int i = 0; i < g.n; ++i) {
            if (i == 0 || g.label[order[i]] != g.label[order[i - 1]]) ++next;
            cls[order[i]] = next;
        }
    }

    // stable refinement: split classes by per-class edge-color counts until
    // the partition stops changing
    void refine(int* cls) {
        const auto& g = *graph_;
        const int n = g.n;
        // row[u] = (cls[u], counts towards each class for each color >= 1)
        std::uint16_t row[kCanonMaxV][1 + kCanonMaxV * 3];
        int order[kCanonMaxV];
        while (true) {
            int classes = 0;
            for (int u = 0; u < n; ++u) classes = std::max(classes, cls[u] + 1);
            const int width = 1 + classes * (edge_colors_ - 1);
            for (int u = 0; u < n; ++u) {
                std::memset(row[u], 0, sizeof(std::uint16_t) * std::size_t(width));
                row[u][0] = std::uint16_t(cls[u]);
                for (int w = 0; w < n; ++w) {
                    if (w == u) continue;
                    int e = g.edge[u][w];
                    if (e > 0) ++row[u][1 + cls[w] * (edge_colors_ - 1) + (e - 1)];
                }
            }
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order, order + n, [&](int a, int b) {
                return std::memcmp(row[a], row[b],
                                   sizeof(std::uint16_t) * std::size_t(width)) < 0;
            });
            int next = -1;
            int newcls[kCanonMaxV];
            for (int i = 0; i < n; ++i) {
                if (i == 0 || std::memcmp(row[order[i]], row[order[i - 1]],
                                          sizeof(std::uint16_t) * std::size_t(width)) != 0)
                    ++next;
                newcls[order[i]] = next;
            }
            bool changed = false;
            for (int u = 0; u < n; ++u) {
                if (newcls[u] != cls[u]) changed = true;
                cls[u] = newcls[u];
            }
            if (!changed || next + 1 == n) return;
        }
    }

    // true twins within one class: swapping u,w is an automorphism
    bool twins(int u, int w) const {
        const auto& g = *graph_;
        for (int x = 0; x < g.n; ++x) {
            if (x == u || x == w) continue;
            if (g.edge[u][x] != g.edge[w][x]) return false;
        }
        return true;
    }

    void search(int* cls) {
        refine(cls);
        const auto& g = *graph_;
        const int n = g.n;
        int target = -1;
        for (int c = 0;; ++c) {
            int count = 0;
            for (int u = 0; u < n; ++u) count += (cls[u] == c);
            if (count == 0) break;
            if (count > 1) {
                target = c;
                break;
            }
        }
        if (target < 0) {
            emit(cls);
            return;
        }
        int members[kCanonMaxV];
        int m = 0;
        for (int u = 0; u < n; ++u)
            if (cls[u] == target) members[m++] = u;
        bool skip[kCanonMaxV] = {};
        for (int i = 0; i < m; ++i) {
            if (skip[i]) continue;
            for (int j = i + 1; j < m; ++j)
                if (!skip[j] && twins(members[i], members[j])) skip[j] = true;
            int child[kCanonMaxV];
            for (int u = 0; u < n; ++u)
                child[u] = 2 * cls[u] + (cls[u] == target && u != members[i] ? 1 : 0);
            compact(child, n);
            search(child);
        }
    }

    static void compact(int* cls, int n) {
        int seen[2 * kCanonMaxV];
        std::memset(seen, -1, sizeof(seen));
        int sorted[kCanonMaxV];
        for (int i = 0; i < n; ++i) sorted[i] = cls[i];
        std::sort(sorted, sorted + n);
        int next = -1;
        for (int i = 0; i < n; ++i) {
            if (i == 0 || sorted[i] != sorted[i - 1]) ++next;
            seen[sorted[i]] = next;
        }
        for (int i = 0; i < n; ++i) cls[i] = seen[cls[i]];
    }

    void emit(const int* cls) {
        const auto& g = *graph_;
        const int n = g.n;
        int perm[kCanonMaxV];
        for (int u = 0; u < n; ++u) perm[cls[u]] = u;
        detail::BitWriter bw;
        bw.push(std::uint64_t(n), 6);
        for (int i = 0; i < n; ++i)
            if (label_bits_ > 0) bw.push(g.label[perm[i]], label_bits_);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if (edge_bits_ > 0) bw.push(g.edge[perm[i]][perm[j]], edge_bits_);
        if (!best_set_ || bw.code < best_) {
            best_ = bw.code;
            best_set_ = true;
        }
    }
};

// Open-addressing set of canonical codes; insert-only, linear probing.
class CodeSet {
public:
    explicit CodeSet(std::size_t initial_slots = 1 << 16) { reset(initial_slots); }

    std::size_t size() const { return count_; }

    bool contains(const CanonCode& c) const {
        std::size_t i = c.hash() & mask_;
        while (used_[i]) {
            if (keys_[i] == c) return true;
            i = (i + 1) & mask_;
        }
        return false;
    }

    void insert(const CanonCode& c) {
        if (count_ * 5 >= mask_ * 3) grow();
        std::size_t i = c.hash() & mask_;
        while (used_[i]) {
            if (keys_[i] == c) return;
            i = (i + 1) & mask_;
        }
        used_[i] = 1;
        keys_[i] = c;
        ++count_;
    }

    void clear() { reset(1 << 16); }

private:
    std::vector<CanonCode> keys_;
    std::vector<std::uint8_t> used_;
    std::size_t count_ = 0;
    std::size_t mask_ = 0;

    void reset(std::size_t slots) {
        keys_.assign(slots, CanonCode{});
        used_.assign(slots, 0);
        count_ = 0;
        mask_ = slots - 1;
    }

    void grow() {
        std::vector<CanonCode> old_keys = std::move(keys_);
        std::vector<std::uint8_t> old_used = std::move(used_);
        reset((mask_ + 1) * 4);
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (!old_used[i]) continue;
            std::size_t j = old_keys[i].hash() & mask_;
            while (used_[j]) j = (j + 1) & mask_;
            used_[j] = 1;
            keys_[j] = old_keys[i];
            ++count_;
        }
    }
};

}  // namespace ramsey
