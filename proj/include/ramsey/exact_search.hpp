// Exhaustive determination of small Ramsey-type quantities.  The scan is
// bottom-up: probe N = 1, 2, ... until some N admits no admissible coloring;
// that N is the value and the last admissible coloring is its witness.
//
// Where a classical construction matches the query -- the block coloring for
// graph path targets, Paley colorings for two-color diagonals -- the scan
// first validates it with the detectors and, if it passes, settles every
// order it covers at once.  Floors are then carried by checked constructions
// and the node budget is spent purely on refutations, which no construction
// can supply.  Witnesses inherit from the construction when one applies.
//
// Two engines run the probes.  Graph cases (k = 2, structural targets) use a
// vertex-extension search whose states are memoized under canonical forms, so
// isomorphic dead ends are refuted once.  Everything else runs a direct DFS
// over cells in colex order.  Both try colors in a fixed per-query order:
// clique colors before path colors, ascending within each group, so absent a
// construction the witness is the lexicographically smallest admissible
// coloring under that color order.  (For color-symmetric kinds the order is
// the identity and the witness is the plain lexicographic minimum in
// restricted-growth form.  Trying clique colors first matters for path
// kinds: extremal colorings pack near-clique classes, so a path-first scan
// thrashes through exponentially many dead prefixes before reaching one.)
//
// Budgets count color-assignment attempts and are checked at identical points
// on every run, so results, witnesses, and node counts are deterministic.

#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/certificate.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/constructions.hpp"
#include "ramsey/core.hpp"
#include "ramsey/detectors.hpp"

namespace ramsey {

// ---------------------------------------------------------------------------
// Queries.

enum class QueryKind {
    PathVsClique,   // r_k(P_s, n): tight path in color 0 or clique in color 1
    CliqueVsClique, // r_k(s, n)
    Diagonal,       // r_k(n; q): monochromatic clique under q colors
    NonincreasingF, // f_k(n; q): nonincreasing n-set under q colors
    PathsVsClique,  // r_k(P_{s_1}, ..., P_{s_t}, n)
};

inline const char* kind_token(QueryKind kind) {
    switch (kind) {
        case QueryKind::PathVsClique: return "path";
        case QueryKind::CliqueVsClique: return "clique";
        case QueryKind::Diagonal: return "diagonal";
        case QueryKind::NonincreasingF: return "nonincreasing";
        case QueryKind::PathsVsClique: return "paths";
    }
    throw ContractViolation("kind_token: unknown kind");
}

struct RamseyQuery {
    QueryKind kind = QueryKind::Diagonal;
    int k = 2;
    std::vector<int> path_sizes;  // PathVsClique, PathsVsClique
    int s = 0;                    // CliqueVsClique
    int n = 0;                    // clique order, diagonal order, or set size
    int q = 1;                    // Diagonal, NonincreasingF

    static RamseyQuery path_vs_clique(int k, int s, int n) {
        RamseyQuery query;
        query.kind = QueryKind::PathVsClique;
        query.k = k;
        query.path_sizes = {s};
        query.n = n;
        return query;
    }

    static RamseyQuery paths_vs_clique(int k, std::vector<int> sizes, int n) {
        RamseyQuery query;
        query.kind = QueryKind::PathsVsClique;
        query.k = k;
        query.path_sizes = std::move(sizes);
        query.n = n;
        return query;
    }

    static RamseyQuery clique_vs_clique(int k, int s, int n) {
        RamseyQuery query;
        query.kind = QueryKind::CliqueVsClique;
        query.k = k;
        query.s = s;
        query.n = n;
        return query;
    }

    static RamseyQuery diagonal(int k, int n, int q) {
        RamseyQuery query;
        query.kind = QueryKind::Diagonal;
        query.k = k;
        query.n = n;
        query.q = q;
        return query;
    }

    static RamseyQuery nonincreasing(int k, int n, int q) {
        RamseyQuery query;
        query.kind = QueryKind::NonincreasingF;
        query.k = k;
        query.n = n;
        query.q = q;
        return query;
    }

    int palette() const {
        switch (kind) {
            case QueryKind::PathVsClique:
            case QueryKind::CliqueVsClique: return 2;
            case QueryKind::Diagonal:
            case QueryKind::NonincreasingF: return q;
            case QueryKind::PathsVsClique: return int(path_sizes.size()) + 1;
        }
        throw ContractViolation("RamseyQuery: unknown kind");
    }

    std::string symbol() const {
        switch (kind) {
            case QueryKind::PathVsClique:
                return "r" + std::to_string(k) + "(P" + std::to_string(path_sizes.at(0)) +
                       "," + std::to_string(n) + ")";
            case QueryKind::PathsVsClique: {
                std::string sym = "r" + std::to_string(k) + "(";
                for (int sz : path_sizes) sym += "P" + std::to_string(sz) + ",";
                return sym + std::to_string(n) + ")";
            }
            case QueryKind::CliqueVsClique:
                return "r" + std::to_string(k) + "(" + std::to_string(s) + "," +
                       std::to_string(n) + ")";
            case QueryKind::Diagonal:
                return "r" + std::to_string(k) + "(" + std::to_string(n) + ";" +
                       std::to_string(q) + ")";
            case QueryKind::NonincreasingF:
                return "f" + std::to_string(k) + "(" + std::to_string(n) + ";" +
                       std::to_string(q) + ")";
        }
        throw ContractViolation("RamseyQuery: unknown kind");
    }

    void validate() const {
        if (k < 2 || k > 4) throw InputError("RamseyQuery: uniformity must lie in [2, 4]");
        if (n < 0 || n > 20) throw InputError("RamseyQuery: n must lie in [0, 20]");
        switch (kind) {
            case QueryKind::PathVsClique:
                if (path_sizes.size() != 1)
                    throw InputError("RamseyQuery: path-clique takes exactly one path size");
                break;
            case QueryKind::PathsVsClique:
                if (path_sizes.empty() || path_sizes.size() > 3)
                    throw InputError("RamseyQuery: between 1 and 3 path sizes");
                break;
            case QueryKind::CliqueVsClique:
                if (s < 0 || s > 20) throw InputError("RamseyQuery: s must lie in [0, 20]");
                return;
            case QueryKind::Diagonal:
            case QueryKind::NonincreasingF:
                if (q < 1 || q > kMaxPalette)
                    throw InputError("RamseyQuery: palette out of range");
                return;
        }
        for (int sz : path_sizes)
            if (sz < k || sz > 8)
                throw InputError("RamseyQuery: path sizes must lie in [k, 8]");
    }

    // Targets too small to carry any k-subset are realized by every vertex
    // set of their order, which pins the value without a search.
    std::optional<int> degenerate_value() const {
        switch (kind) {
            case QueryKind::PathVsClique:
            case QueryKind::PathsVsClique:
            case QueryKind::Diagonal:
                if (n < k) return n;
                return std::nullopt;
            case QueryKind::CliqueVsClique:
                if (std::min(s, n) < k) return std::min(s, n);
                return std::nullopt;
            case QueryKind::NonincreasingF:
                if (n <= k) return n;  // no (k+1)-windows to violate
                return std::nullopt;
        }
        return std::nullopt;
    }

    friend bool operator==(const RamseyQuery&, const RamseyQuery&) = default;
};

// ---------------------------------------------------------------------------
// Results.

inline constexpr std::uint64_t kDefaultSearchNodes = 8'000'000'000ULL;
inline constexpr std::uint64_t kEngineACellCap = 56;  // C(N, k) cells at most
inline constexpr int kEngineBMaxN = 18;

struct SearchBudget {
    std::uint64_t nodes = kDefaultSearchNodes;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    double millis = 0.0;
};

struct SearchResult {
    RamseyQuery query;
    std::optional<int> value;  // set iff the scan was conclusive
    int lower = 0;             // the value is always >= lower
    int undecided = 0;         // smallest order whose probe did not finish
    std::optional<Certificate> lower_witness;
    std::string upper_evidence;
    SearchStats stats;

    bool conclusive() const { return value.has_value(); }
};

namespace detail {

enum class Status { Good, Dead, Budget };

struct TargetPlan {
    int palette = 0;
    std::vector<int> path_allow;  // per color: max tight-path edge count, -1 if untracked
    std::vector<int> clique_n;    // per color: forbidden clique order, 0 if none
    std::vector<int> order;       // color trial order: clique colors first, then paths
    int noninc_n = 0;             // forbidden nonincreasing set order, 0 if none
    bool diagonal_sym = false;    // palette permutations preserve the target set
};

inline TargetPlan make_plan(const RamseyQuery& query) {
    TargetPlan plan;
    plan.palette = query.palette();
    plan.path_allow.assign(plan.palette, -1);
    plan.clique_n.assign(plan.palette, 0);
    switch (query.kind) {
        case QueryKind::PathVsClique:
            plan.path_allow[0] = query.path_sizes[0] - query.k;
            plan.clique_n[1] = query.n;
            break;
        case QueryKind::PathsVsClique:
            for (std::size_t i = 0; i < query.path_sizes.size(); ++i)
                plan.path_allow[i] = query.path_sizes[i] - query.k;
            plan.clique_n[plan.palette - 1] = query.n;
            break;
        case QueryKind::CliqueVsClique:
            plan.clique_n[0] = query.s;
            plan.clique_n[1] = query.n;
            plan.diagonal_sym = (query.s == query.n);
            break;
        case QueryKind::Diagonal:
            for (int c = 0; c < plan.palette; ++c) plan.clique_n[c] = query.n;
            plan.diagonal_sym = true;
            break;
        case QueryKind::NonincreasingF:
            plan.noninc_n = query.n;
            break;
    }
    for (int c = 0; c < plan.palette; ++c)
        if (plan.path_allow[c] < 0) plan.order.push_back(c);
    for (int c = 0; c < plan.palette; ++c)
        if (plan.path_allow[c] >= 0) plan.order.push_back(c);
    return plan;
}

// ---------------------------------------------------------------------------
// Engine A: DFS over cells in colex order, any uniformity.
//
// Path targets use the standard prefix profile: prof[c][P] is the longest
// color-c tight path ending in prefix P, maintained incrementally with an
// undo per frame.  Cells are assigned in colex order, which is exactly the
// order the profile recurrence consumes them.  Clique and nonincreasing
// targets are detected when their colex-largest cell is assigned; every other
// cell of the structure is colex-smaller and hence already colored.

class EngineA {
public:
    EngineA(int N, int k, const TargetPlan& plan, std::uint64_t* budget)
        : N_(N), k_(k), plan_(plan), budget_(budget) {
        if (N < k) return;
        cells_.reserve(std::size_t(binom(N, k)));
        KSubset pre(k - 1), suf(k - 1);
        for_each_ksubset(N, k, [&](const KSubset& cell) {
            cells_.push_back(cell);
            std::copy(cell.begin(), cell.end() - 1, pre.begin());
            std::copy(cell.begin() + 1, cell.end(), suf.begin());
            pred_.push_back(std::uint32_t(colex_rank(pre)));
            succ_.push_back(std::uint32_t(colex_rank(suf)));
        });
        colors_.assign(cells_.size(), kUnassigned);
        prof_.resize(plan.palette);
        for (int c = 0; c < plan.palette; ++c)
            if (plan.path_allow[c] >= 0)
                prof_[c].assign(std::size_t(binom(N, k - 1)), 0);
        probe_.resize(k);
        head_.resize(k);
        tail_.resize(k);
        Y_.reserve(std::size_t(k) + 20);
        if (plan.noninc_n > 0) T_.resize(plan.noninc_n);
    }

    Status run(std::vector<std::uint8_t>* out) {
        if (N_ < k_) return Status::Good;  // no cells, nothing to forbid
        const Status st = dfs(0);
        if (st == Status::Good && out) *out = colors_;
        return st;
    }

private:
    static constexpr std::uint8_t kUnassigned = 0xFF;

    int N_;
    int k_;
    const TargetPlan& plan_;
    std::uint64_t* budget_;
    std::vector<KSubset> cells_;
    std::vector<std::uint32_t> pred_, succ_;
    std::vector<std::uint8_t> colors_;
    std::vector<std::vector<int>> prof_;
    int max_used_ = -1;
    KSubset probe_, head_, tail_;
    std::vector<Vertex> Y_;
    std::vector<Vertex> T_;

    Status dfs(std::size_t r) {
        if (r == cells_.size()) return Status::Good;
        bool starved = false;
        for (int ci = 0; ci < plan_.palette; ++ci) {
            const int c = plan_.order[std::size_t(ci)];
            if (plan_.diagonal_sym && c > max_used_ + 1) break;
            if (*budget_ == 0) { starved = true; break; }
            --*budget_;
            bool dead = false;
            int undo_rank = -1, undo_val = 0;
            if (plan_.path_allow[c] >= 0) {
                const int cand = prof_[c][pred_[r]] + 1;
                if (cand > plan_.path_allow[c]) {
                    dead = true;
                } else if (cand > prof_[c][succ_[r]]) {
                    undo_rank = int(succ_[r]);
                    undo_val = prof_[c][undo_rank];
                    prof_[c][undo_rank] = cand;
                }
            }
            colors_[r] = std::uint8_t(c);
            if (!dead && plan_.clique_n[c] > 0 && completes_clique(r, c)) dead = true;
            if (!dead && plan_.noninc_n > 0 && completes_noninc(r)) dead = true;
            if (!dead) {
                const int saved = max_used_;
                if (c > max_used_) max_used_ = c;
                const Status sub = dfs(r + 1);
                max_used_ = saved;
                if (sub == Status::Good) return Status::Good;
                if (sub == Status::Budget) starved = true;
            }
            if (undo_rank >= 0) prof_[c][undo_rank] = undo_val;
            if (starved) break;
        }
        colors_[r] = kUnassigned;
        return starved ? Status::Budget : Status::Dead;
    }

    bool completes_clique(std::size_t r, int c) {
        const int need = plan_.clique_n[c] - k_;
        if (need == 0) return true;  // the cell itself is the clique
        const KSubset& x = cells_[r];
        if (x[0] < need) return false;
        Y_.assign(x.begin(), x.end());
        return extend_clique(x[0], need, c);
    }

    // Grow the sorted candidate clique Y_ downward with `need` more vertices
    // below `below`, keeping every cell inside it colored c.  Every probed
    // cell contains a vertex under the current cell's minimum, which makes it
    // colex-smaller than the current cell and therefore already assigned.
    bool extend_clique(int below, int need, int c) {
        if (need == 0) return true;
        for (int w = below - 1; w >= need - 1; --w) {
            bool ok = true;
            for_each_ksubset(int(Y_.size()), k_ - 1, [&](const KSubset& idx) {
                if (!ok) return;
                probe_[0] = w;
                for (int i = 0; i < k_ - 1; ++i) probe_[i + 1] = Y_[std::size_t(idx[i])];
                if (colors_[colex_rank(probe_)] != c) ok = false;
            });
            if (!ok) continue;
            Y_.insert(Y_.begin(), w);
            if (extend_clique(w, need - 1, c)) return true;
            Y_.erase(Y_.begin());
        }
        return false;
    }

    // A nonincreasing n-set is found exactly when its top k vertices -- its
    // colex-largest cell -- get their color; the rest lies below the cell's
    // minimum vertex.
    bool completes_noninc(std::size_t r) {
        const KSubset& x = cells_[r];
        const int extra = plan_.noninc_n - k_;
        if (x[0] < extra) return false;
        std::copy(x.begin(), x.end(), T_.begin() + extra);
        bool found = false;
        for_each_ksubset(x[0], extra, [&](const KSubset& w) {
            if (found) return;
            std::copy(w.begin(), w.end(), T_.begin());
            if (nonincreasing_windows()) found = true;
        });
        return found;
    }

    bool nonincreasing_windows() {
        bool ok = true;
        for_each_ksubset(int(T_.size()), k_ + 1, [&](const KSubset& idx) {
            if (!ok) return;
            for (int i = 0; i < k_; ++i) {
                head_[i] = T_[std::size_t(idx[i])];
                tail_[i] = T_[std::size_t(idx[i + 1])];
            }
            if (colors_[colex_rank(head_)] < colors_[colex_rank(tail_)]) ok = false;
        });
        return ok;
    }
};

// ---------------------------------------------------------------------------
// Engine B: vertex extension for graphs (k = 2) with canonical memoization.
//
// After wiring vertex v the search state is summarized by the subgraph on the
// clique-tracked colors plus, per vertex, the longest tracked path ending
// there (capped at its allowance).  Tight paths in a graph are increasing
// paths, so they never revisit settled vertices and the cap labels are a
// sufficient statistic; path-color edges themselves can be forgotten, which
// merges them into one bucket.  States are canonized under label-preserving
// isomorphism and dead ones are memoized.  Diagonal targets are additionally
// minimized over palette permutations and searched under restricted growth
// (color c only after colors below c), which preserves both the decision and
// the lexicographically smallest witness.
//
// When the palette is paths plus one clique color, two vertices with equal
// label vectors can never take a path color between them (the edge would
// raise the later vertex's label), so label classes are cliques in the clique
// color and carry at most n-1 vertices each.  Summing the free class slots
// bounds every completion's order; branches that cannot reach N die on that
// capacity count.  The label multiset is part of the canonical state, so the
// prune composes soundly with memoization, and it only removes subtrees
// without good leaves, which keeps the witness the lexicographic minimum.

class EngineB {
public:
    EngineB(const TargetPlan& plan, std::uint64_t* budget)
        : plan_(plan), budget_(budget), palette_(plan.palette) {
        if (palette_ > 4) throw ContractViolation("EngineB: palette too wide");
        while (t_ < palette_ && plan_.path_allow[t_] >= 0) ++t_;
        int range = 1;
        for (int c = 0; c < t_; ++c) {
            stride_[c] = range;
            range *= plan_.path_allow[c] + 1;
        }
        int nc = 0;
        for (int c = 0; c < palette_; ++c) sigma_[c] = plan_.clique_n[c] > 0 ? nc++ : -1;
        for (int c = 0; c < palette_; ++c)
            if (sigma_[c] < 0) sigma_[c] = nc;  // shared bucket for path colors
        const int edge_colors = nc + (t_ > 0 ? 1 : 0);
        canon_.emplace(Canonizer::bits_for(range), Canonizer::bits_for(edge_colors),
                       edge_colors);
        if (t_ >= 1 && nc == 1) {
            label_range_ = range;
            clique_cap_ = plan_.clique_n[t_] - 1;
            class_count_.assign(std::size_t(label_range_), 0);
        }
        if (plan_.diagonal_sym) {
            std::vector<std::uint8_t> p(static_cast<std::size_t>(palette_));
            std::iota(p.begin(), p.end(), std::uint8_t(0));
            do perms_.push_back(p); while (std::next_permutation(p.begin(), p.end()));
        }
    }

    static bool layout_ok(const TargetPlan& plan) {
        int range = 1, nc = 0, t = 0;
        for (int c = 0; c < plan.palette; ++c) {
            if (plan.path_allow[c] >= 0) {
                ++t;
                range *= plan.path_allow[c] + 1;
            } else if (plan.clique_n[c] > 0) {
                ++nc;
            }
        }
        return plan.palette <= 4 && nc + (t > 0 ? 1 : 0) <= 4 &&
               Canonizer::bits_for(range) <= 8;
    }

    bool fits(int N) const { return N <= kEngineBMaxN && canon_->fits(N - 1); }

    Status probe(int N, std::vector<std::uint8_t>* out) {
        N_ = N;
        dead_.clear();
        colors_.assign(std::size_t(binom(N, 2)), 0);
        for (int c = 0; c < palette_; ++c) std::fill(adj_[c], adj_[c] + N, 0u);
        for (int v = 0; v < N; ++v)
            for (int c = 0; c < t_; ++c) L_[v][c] = 0;
        max_used_ = -1;
        if (clique_cap_ >= 0) {
            std::fill(class_count_.begin(), class_count_.end(), 0);
            cap_slack_ = label_range_ * clique_cap_;
        }
        const Status st = extend(0);
        if (st == Status::Good && out) *out = colors_;
        return st;
    }

private:
    TargetPlan plan_;
    std::uint64_t* budget_;
    int palette_;
    int t_ = 0;  // path-tracked colors form a palette prefix
    int stride_[3] = {1, 1, 1};
    int sigma_[4] = {};
    int N_ = 0;
    int max_used_ = -1;
    int label_range_ = 1;
    int clique_cap_ = -1;  // class capacity n-1, or -1 when the prune is off
    int cap_slack_ = 0;
    std::vector<int> class_count_;
    std::optional<Canonizer> canon_;
    CodeSet dead_;
    CanonGraph g_, h_;
    std::vector<std::vector<std::uint8_t>> perms_;
    std::vector<std::uint8_t> colors_;
    std::uint32_t adj_[4][kEngineBMaxN] = {};
    int L_[kEngineBMaxN][3] = {};

    static std::size_t pair_rank(int u, int v) {  // u < v
        return std::size_t(u) + std::size_t(v) * std::size_t(v - 1) / 2;
    }

    static bool has_clique(std::uint32_t cand, int need, const std::uint32_t* adj) {
        if (need <= 0) return true;
        while (std::popcount(cand) >= need) {
            const int u = std::countr_zero(cand);
            cand &= cand - 1;
            if (has_clique(cand & adj[u], need - 1, adj)) return true;
        }
        return false;
    }

    Status extend(int v) {
        if (v == N_) return Status::Good;
        for (int c = 0; c < t_; ++c) L_[v][c] = 0;
        return place(v, 0);
    }

    Status place(int v, int u) {
        if (u == v) return settled(v);
        const std::size_t r = pair_rank(u, v);
        bool starved = false;
        for (int ci = 0; ci < palette_; ++ci) {
            const int c = plan_.order[std::size_t(ci)];
            if (plan_.diagonal_sym && c > max_used_ + 1) break;
            if (*budget_ == 0) { starved = true; break; }
            --*budget_;
            int savedL = 0;
            if (c < t_) {
                const int cand = L_[u][c] + 1;
                if (cand > plan_.path_allow[c]) continue;
                savedL = L_[v][c];
                if (cand > savedL) L_[v][c] = cand;
            } else if (plan_.clique_n[c] > 0 &&
                       has_clique(adj_[c][u] & adj_[c][v], plan_.clique_n[c] - 2,
                                  adj_[c])) {
                continue;
            }
            colors_[r] = std::uint8_t(c);
            adj_[c][u] |= 1u << v;
            adj_[c][v] |= 1u << u;
            const int savedMax = max_used_;
            if (c > max_used_) max_used_ = c;
            const Status sub = place(v, u + 1);
            max_used_ = savedMax;
            adj_[c][u] &= ~(1u << v);
            adj_[c][v] &= ~(1u << u);
            if (c < t_) L_[v][c] = savedL;
            if (sub == Status::Good) return Status::Good;
            if (sub == Status::Budget) { starved = true; break; }
        }
        return starved ? Status::Budget : Status::Dead;
    }

    Status settled(int v) {
        int vec = 0;
        bool scarce = false;
        if (clique_cap_ >= 0) {
            vec = label_of(v);
            scarce = class_count_[std::size_t(vec)] < clique_cap_;
            ++class_count_[std::size_t(vec)];
            if (scarce) --cap_slack_;
            if (v + 1 + cap_slack_ < N_) {
                --class_count_[std::size_t(vec)];
                if (scarce) ++cap_slack_;
                return Status::Dead;
            }
        }
        Status sub;
        if (v + 1 == N_) {
            sub = extend(v + 1);
        } else {
            const CanonCode code = state_code(v + 1);
            if (dead_.contains(code)) {
                sub = Status::Dead;
            } else {
                sub = extend(v + 1);
                // Budget-aborted subtrees are not refuted; only Dead is recorded.
                if (sub == Status::Dead) dead_.insert(code);
            }
        }
        if (clique_cap_ >= 0) {
            --class_count_[std::size_t(vec)];
            if (scarce) ++cap_slack_;
        }
        return sub;
    }

    int label_of(int w) const {
        int lab = 0;
        for (int c = 0; c < t_; ++c) lab += L_[w][c] * stride_[c];
        return lab;
    }

    CanonCode state_code(int n) {
        g_.n = n;
        for (int w = 0; w < n; ++w) g_.label[std::size_t(w)] = std::uint8_t(label_of(w));
        for (int y = 1; y < n; ++y)
            for (int x = 0; x < y; ++x) {
                const auto e = std::uint8_t(sigma_[colors_[pair_rank(x, y)]]);
                g_.edge[std::size_t(x)][std::size_t(y)] = e;
                g_.edge[std::size_t(y)][std::size_t(x)] = e;
            }
        CanonCode best = canon_->code(g_);
        if (!plan_.diagonal_sym) return best;
        h_.n = n;
        for (std::size_t p = 1; p < perms_.size(); ++p) {
            const auto& pm = perms_[p];
            for (int y = 1; y < n; ++y)
                for (int x = 0; x < y; ++x) {
                    const std::uint8_t e = pm[g_.edge[std::size_t(x)][std::size_t(y)]];
                    h_.edge[std::size_t(x)][std::size_t(y)] = e;
                    h_.edge[std::size_t(y)][std::size_t(x)] = e;
                }
            const CanonCode cand = canon_->code(h_);
            if (cand < best) best = cand;
        }
        return best;
    }
};

inline std::vector<Claim> witness_claims(const RamseyQuery& query) {
    std::vector<Claim> claims;
    switch (query.kind) {
        case QueryKind::PathVsClique:
            claims.push_back({Claim::NoPath, 0, query.path_sizes[0]});
            claims.push_back({Claim::NoClique, 1, query.n});
            break;
        case QueryKind::PathsVsClique: {
            const int t = int(query.path_sizes.size());
            for (int i = 0; i < t; ++i)
                claims.push_back({Claim::NoPath, i, query.path_sizes[std::size_t(i)]});
            claims.push_back({Claim::NoClique, t, query.n});
            break;
        }
        case QueryKind::CliqueVsClique:
            claims.push_back({Claim::NoClique, 0, query.s});
            claims.push_back({Claim::NoClique, 1, query.n});
            break;
        case QueryKind::Diagonal:
            for (int c = 0; c < query.q; ++c) claims.push_back({Claim::NoClique, c, query.n});
            break;
        case QueryKind::NonincreasingF:
            break;  // avoiding a nonincreasing set has no claim form
    }
    return claims;
}

inline Certificate package_witness(const RamseyQuery& query, KSubsetColoring chi) {
    Certificate cert;
    cert.coloring = std::move(chi);
    cert.provenance.name = "search";
    cert.provenance.params.emplace_back("kind", kind_token(query.kind));
    cert.provenance.params.emplace_back("k", std::to_string(query.k));
    switch (query.kind) {
        case QueryKind::PathVsClique:
            cert.provenance.params.emplace_back("s", std::to_string(query.path_sizes[0]));
            cert.provenance.params.emplace_back("n", std::to_string(query.n));
            break;
        case QueryKind::PathsVsClique:
            cert.provenance.params.emplace_back("paths", join_path_sizes(query.path_sizes));
            cert.provenance.params.emplace_back("n", std::to_string(query.n));
            break;
        case QueryKind::CliqueVsClique:
            cert.provenance.params.emplace_back("s", std::to_string(query.s));
            cert.provenance.params.emplace_back("n", std::to_string(query.n));
            break;
        case QueryKind::Diagonal:
        case QueryKind::NonincreasingF:
            cert.provenance.params.emplace_back("n", std::to_string(query.n));
            cert.provenance.params.emplace_back("q", std::to_string(query.q));
            break;
    }
    cert.claims = witness_claims(query);
    return cert;
}

// ---------------------------------------------------------------------------
// Block coloring for graph path targets.  Vertices are tuples
// (a_1, ..., a_t, b) with a_i < s_i - 1 and b < n - 1, ordered
// lexicographically; an edge takes the path color of the first position where
// the tuples differ, or the clique color when only b does.  Along a tight
// path in color i the digit a_i strictly increases, so the path stops within
// s_i - 1 vertices, and the clique color is a disjoint union of
// (n-1)-cliques.  Prefixes of the tuple order stay admissible, so the scan
// can settle every N up to the product of the digit ranges from this one
// coloring and spend its node budget purely on the refutation above it.

inline long long block_room(const RamseyQuery& query) {
    if (query.k != 2) return 0;
    if (query.kind != QueryKind::PathVsClique && query.kind != QueryKind::PathsVsClique)
        return 0;
    if (query.n < 2) return 0;
    long long room = query.n - 1;
    for (int sz : query.path_sizes) room *= sz - 1;
    return room;
}

inline std::optional<KSubsetColoring> block_coloring(const RamseyQuery& query, int N) {
    if (N > block_room(query)) return std::nullopt;

    const int t = int(query.path_sizes.size());
    std::vector<int> radix(std::size_t(t) + 1);
    for (int i = 0; i < t; ++i) radix[std::size_t(i)] = query.path_sizes[std::size_t(i)] - 1;
    radix[std::size_t(t)] = query.n - 1;

    std::vector<std::vector<int>> digits(std::size_t(N),
                                         std::vector<int>(std::size_t(t) + 1));
    for (int v = 0; v < N; ++v) {
        int rem = v;
        for (int j = t; j >= 0; --j) {
            digits[std::size_t(v)][std::size_t(j)] = rem % radix[std::size_t(j)];
            rem /= radix[std::size_t(j)];
        }
    }

    KSubsetColoring chi;
    chi.N = N;
    chi.k = 2;
    chi.q = t + 1;
    chi.colors.resize(std::size_t(binom(N, 2)));
    std::uint64_t rank = 0;
    for_each_ksubset(N, 2, [&](const KSubset& e) {
        const auto& du = digits[std::size_t(e[0])];
        const auto& dv = digits[std::size_t(e[1])];
        int j = 0;
        while (j < t && du[std::size_t(j)] == dv[std::size_t(j)]) ++j;
        chi.colors[rank++] = std::uint8_t(j);
    });
    return chi;
}

// Paley coloring on a prime p = 1 (mod 4): the edge uv is color 0 exactly
// when u - v is a quadratic residue mod p.  Candidate floor for two-color
// diagonal targets; the scan keeps the largest prime whose coloring its
// detectors accept.

inline KSubsetColoring paley_coloring(int p) {
    std::vector<char> residue(std::size_t(p), 0);
    for (int j = 1; j < p; ++j) residue[std::size_t((j * j) % p)] = 1;

    KSubsetColoring chi;
    chi.N = p;
    chi.k = 2;
    chi.q = 2;
    chi.colors.resize(std::size_t(binom(p, 2)));
    std::uint64_t rank = 0;
    for_each_ksubset(p, 2, [&](const KSubset& e) {
        chi.colors[rank++] = residue[std::size_t(e[1] - e[0])] ? 0 : 1;
    });
    return chi;
}

// Constructions are theorems, but the engine only trusts what its detectors
// have checked.

inline bool admissible_by_detectors(const KSubsetColoring& chi, const TargetPlan& plan) {
    for (int c = 0; c < plan.palette; ++c) {
        if (plan.path_allow[c] >= 0) {
            if (longest_tight_path(chi, c).first > plan.path_allow[c]) return false;
        } else if (plan.clique_n[std::size_t(c)] > 0) {
            if (find_mono_clique(chi, c, plan.clique_n[std::size_t(c)])) return false;
        }
    }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The scan.

inline SearchResult exact_ramsey(const RamseyQuery& query, const SearchBudget& budget = {}) {
    query.validate();
    if (budget.nodes == 0) throw InputError("exact_ramsey: empty node budget");
    const auto start = std::chrono::steady_clock::now();

    SearchResult res;
    res.query = query;
    const auto finish = [&start, &res]() {
        res.stats.millis = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        return res;
    };

    if (const auto forced = query.degenerate_value()) {
        res.value = *forced;
        res.lower = res.undecided = *forced;
        res.upper_evidence = query.symbol() + " = " + std::to_string(*forced) +
                             ": the target carries no full cell, so every vertex set of "
                             "that order realizes it";
        return finish();
    }

    const detail::TargetPlan plan = detail::make_plan(query);
    std::uint64_t remaining = budget.nodes;
    const bool graph_engine = query.k == 2 && query.kind != QueryKind::NonincreasingF &&
                              detail::EngineB::layout_ok(plan);
    std::optional<detail::EngineB> vertex_engine;
    if (graph_engine) vertex_engine.emplace(plan, &remaining);

    std::optional<KSubsetColoring> last_good;
    int first_probe = 1;
    if (const long long room = detail::block_room(query); room >= query.k) {
        auto block = detail::block_coloring(query, int(room));
        if (block && detail::admissible_by_detectors(*block, plan)) {
            last_good = std::move(*block);
            first_probe = int(room) + 1;
        }
    } else if (query.kind == QueryKind::Diagonal && query.k == 2 && query.q == 2) {
        for (int p : {17, 13, 5}) {
            auto paley = detail::paley_coloring(p);
            if (detail::admissible_by_detectors(paley, plan)) {
                last_good = std::move(paley);
                first_probe = p + 1;
                break;
            }
        }
    }
    for (int N = first_probe;; ++N) {
        const bool capped =
            graph_engine ? !vertex_engine->fits(N) : binom(N, query.k) > kEngineACellCap;
        if (capped) {
            res.lower = res.undecided = N;
            res.upper_evidence = "inconclusive: size cap reached at N=" + std::to_string(N) +
                                 " with every smaller order admissibly colorable";
            break;
        }
        detail::Status st;
        std::vector<std::uint8_t> leaf;
        if (graph_engine) {
            st = vertex_engine->probe(N, &leaf);
        } else {
            detail::EngineA cell_engine(N, query.k, plan, &remaining);
            st = cell_engine.run(&leaf);
        }
        if (st == detail::Status::Good) {
            if (N >= query.k)
                last_good = KSubsetColoring{N, query.k, plan.palette, std::move(leaf)};
            continue;
        }
        if (st == detail::Status::Budget) {
            res.lower = res.undecided = N;
            res.upper_evidence =
                "inconclusive: node budget exhausted while deciding N=" + std::to_string(N);
            break;
        }
        res.value = N;
        res.lower = res.undecided = N;
        res.upper_evidence = query.symbol() + " = " + std::to_string(N) +
                             ": exhausted every " + std::to_string(plan.palette) +
                             "-coloring of the " + std::to_string(query.k) + "-subsets of [" +
                             std::to_string(N) + "]";
        if (last_good) res.lower_witness = detail::package_witness(query, *last_good);
        break;
    }
    res.stats.nodes = budget.nodes - remaining;
    return finish();
}

inline SearchResult exact_f(int k, int n, int q, const SearchBudget& budget = {}) {
    return exact_ramsey(RamseyQuery::nonincreasing(k, n, q), budget);
}

// ---------------------------------------------------------------------------
// Sandwich: r_{k-1}(floor(n/q); q)  <=  r_k(P_{s_1}, ..., P_{s_t}, n)  <=
// r_{k-1}(n; q) with q the product of the path allowances.  Legs a budgeted
// search cannot decide leave the corresponding inequality undecided rather
// than assumed.

struct SandwichReport {
    int k = 0;
    std::vector<int> path_sizes;
    int n = 0;
    int q = 1;
    SearchResult lower, middle, upper;
    bool partial = false;
    bool lower_decided = false;
    bool lower_holds = false;
    bool upper_decided = false;
    bool upper_holds = false;
};

inline SandwichReport sandwich_check(int k, const std::vector<int>& path_sizes, int n,
                                     const SearchBudget& budget = {}) {
    if (k < 3 || k > 4) throw InputError("sandwich_check: k must lie in [3, 4]");
    if (path_sizes.empty()) throw InputError("sandwich_check: no path sizes");
    long long q = 1;
    for (int sz : path_sizes) {
        if (sz < k) throw InputError("sandwich_check: path size below uniformity");
        q *= sz - k + 1;
        if (q > kMaxPalette) throw InputError("sandwich_check: palette product too large");
    }

    SandwichReport rep;
    rep.k = k;
    rep.path_sizes = path_sizes;
    rep.n = n;
    rep.q = int(q);
    const RamseyQuery mid = path_sizes.size() == 1
                                ? RamseyQuery::path_vs_clique(k, path_sizes[0], n)
                                : RamseyQuery::paths_vs_clique(k, path_sizes, n);
    rep.middle = exact_ramsey(mid, budget);
    rep.lower = exact_ramsey(RamseyQuery::diagonal(k - 1, n / rep.q, rep.q), budget);
    rep.upper = exact_ramsey(RamseyQuery::diagonal(k - 1, n, rep.q), budget);
    rep.partial = !(rep.lower.conclusive() && rep.middle.conclusive() && rep.upper.conclusive());

    if (rep.lower.conclusive() && rep.middle.conclusive()) {
        rep.lower_decided = true;
        rep.lower_holds = *rep.lower.value <= *rep.middle.value;
    } else if (rep.lower.conclusive() && rep.middle.lower >= *rep.lower.value) {
        rep.lower_decided = true;  // middle is at least its proven lower bound
        rep.lower_holds = true;
    }
    if (rep.middle.conclusive() && rep.upper.conclusive()) {
        rep.upper_decided = true;
        rep.upper_holds = *rep.middle.value <= *rep.upper.value;
    } else if (rep.middle.conclusive() && rep.upper.lower >= *rep.middle.value) {
        rep.upper_decided = true;
        rep.upper_holds = true;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Step-down soundness gate: flatten the path profile of a k-coloring into a
// (k-1)-coloring, refusing -- with the offending path as evidence -- when a
// tracked color already carries a path at or beyond its cap.

struct LongPathError : ContractViolation {
    Witness witness;

    LongPathError(const std::string& what, Witness w)
        : ContractViolation(what), witness(std::move(w)) {}
};

inline KSubsetColoring profile_reduction_bound(const KSubsetColoring& chi,
                                               const std::vector<int>& caps) {
    require_valid(chi, "profile_reduction_bound");
    if (chi.k < 2) throw InputError("profile_reduction_bound: need k >= 2");
    const int t = int(caps.size());
    if (t < 1) throw InputError("profile_reduction_bound: no tracked colors");
    if (chi.q < t) throw InputError("profile_reduction_bound: more caps than colors");
    for (int c = 0; c < t; ++c)
        if (caps[c] < 1) throw InputError("profile_reduction_bound: caps must be positive");

    const ProductPalette palette(caps);
    std::vector<int> tracked(static_cast<std::size_t>(t));
    std::iota(tracked.begin(), tracked.end(), 0);
    const PathProfile prof = path_profile(chi, tracked);
    for (int c = 0; c < t; ++c) {
        if (prof.max_length(c) < caps[c]) continue;
        auto [len, w] = longest_tight_path(chi, c);
        throw LongPathError("profile_reduction_bound: color " + std::to_string(c) +
                                " carries a tight path of " + std::to_string(len) +
                                " edges, at or beyond its cap " + std::to_string(caps[c]),
                            std::move(w));
    }

    std::vector<int> tuple(static_cast<std::size_t>(t));
    return make_coloring(chi.N, chi.k - 1, palette.product(), [&](const KSubset& cell) {
        for (int c = 0; c < t; ++c) tuple[std::size_t(c)] = prof.at(cell, c);
        return palette.flatten(tuple);
    });
}

}  // namespace ramsey
