#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ramsey/canonical.hpp"
#include "ramsey/exact_search.hpp"
#include "ramsey/quadratic.hpp"
#include "ramsey/verify.hpp"

using namespace ramsey;

// ---------------------------------------------------------------------------
// Canonical codes.

static CanonGraph random_state(int n, int label_vals, int edge_vals, SplitMix64& rng) {
    CanonGraph g;
    g.n = n;
    for (int v = 0; v < n; ++v)
        g.label[std::size_t(v)] = std::uint8_t(rng.below(std::uint32_t(label_vals)));
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            const auto e = std::uint8_t(rng.below(std::uint32_t(edge_vals)));
            g.edge[std::size_t(u)][std::size_t(v)] = e;
            g.edge[std::size_t(v)][std::size_t(u)] = e;
        }
    return g;
}

static CanonGraph permuted(const CanonGraph& g, const std::vector<int>& perm) {
    CanonGraph h;
    h.n = g.n;
    for (int v = 0; v < g.n; ++v) h.label[std::size_t(perm[std::size_t(v)])] = g.label[std::size_t(v)];
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u) {
            const auto e = g.edge[std::size_t(u)][std::size_t(v)];
            h.edge[std::size_t(perm[std::size_t(u)])][std::size_t(perm[std::size_t(v)])] = e;
            h.edge[std::size_t(perm[std::size_t(v)])][std::size_t(perm[std::size_t(u)])] = e;
        }
    return h;
}

TEST_CASE("canonical code is invariant under vertex permutation") {
    SplitMix64 rng(2026);
    Canonizer canon(2, 1, 2);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 4 + int(rng.below(6));
        const CanonGraph g = random_state(n, 4, 2, rng);
        const CanonCode base = canon.code(g);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int rep = 0; rep < 4; ++rep) {
            for (int i = n - 1; i > 0; --i)
                std::swap(perm[std::size_t(i)], perm[rng.below(std::uint32_t(i) + 1)]);
            CHECK(canon.code(permuted(g, perm)) == base);
        }
    }
}

TEST_CASE("canonical code separates structurally distinct graphs") {
    Canonizer canon(2, 1, 2);
    CanonGraph path, triangle, empty;
    path.n = triangle.n = empty.n = 3;
    path.edge[0][1] = path.edge[1][0] = 1;
    path.edge[1][2] = path.edge[2][1] = 1;
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if (u != v) triangle.edge[std::size_t(u)][std::size_t(v)] = 1;
    const CanonCode cp = canon.code(path);
    const CanonCode ct = canon.code(triangle);
    const CanonCode ce = canon.code(empty);
    CHECK(cp != ct);
    CHECK(cp != ce);
    CHECK(ct != ce);

    CanonGraph labeled = path;
    labeled.label[0] = 1;
    CHECK(canon.code(labeled) != cp);

    CanonGraph bigger = triangle;
    bigger.n = 4;  // isolated fourth vertex
    CHECK(canon.code(bigger) != ct);
}

TEST_CASE("canonical code handles twin-heavy graphs") {
    Canonizer canon(0, 1, 2);
    SplitMix64 rng(7);
    CanonGraph k10;
    k10.n = 10;
    for (int u = 0; u < 10; ++u)
        for (int v = 0; v < 10; ++v)
            if (u != v) k10.edge[std::size_t(u)][std::size_t(v)] = 1;
    const CanonCode base = canon.code(k10);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 9; i > 0; --i)
        std::swap(perm[std::size_t(i)], perm[rng.below(std::uint32_t(i) + 1)]);
    CHECK(canon.code(permuted(k10, perm)) == base);

    CanonGraph empty;
    empty.n = 12;
    CHECK(canon.code(empty) == canon.code(empty));
}

TEST_CASE("code set stores and grows") {
    SplitMix64 rng(99);
    Canonizer canon(2, 1, 2);
    CodeSet seen(8);
    std::vector<CanonCode> codes;
    for (int i = 0; i < 300; ++i) {
        const CanonGraph g = random_state(6 + int(rng.below(4)), 4, 2, rng);
        codes.push_back(canon.code(g));
        seen.insert(codes.back());
    }
    for (const CanonCode& c : codes) CHECK(seen.contains(c));
    CanonCode absent;
    absent.w[0] = 0xdeadbeefcafef00dULL;
    absent.w[1] = 42;
    CHECK(!seen.contains(absent));
}

// ---------------------------------------------------------------------------
// Query plumbing.

TEST_CASE("query validation rejects out-of-range parameters") {
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::diagonal(1, 3, 2)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::diagonal(5, 3, 2)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::diagonal(2, 3, 0)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::diagonal(2, 21, 2)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::path_vs_clique(2, 9, 3)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::path_vs_clique(3, 2, 3)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::paths_vs_clique(2, {}, 3)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::paths_vs_clique(2, {3, 3, 3, 3}, 2)), InputError);
    CHECK_THROWS_AS(exact_ramsey(RamseyQuery::path_vs_clique(2, 3, 3), SearchBudget{0}),
                    InputError);
}

TEST_CASE("query symbols") {
    CHECK(RamseyQuery::path_vs_clique(2, 4, 5).symbol() == "r2(P4,5)");
    CHECK(RamseyQuery::paths_vs_clique(3, {4, 4}, 4).symbol() == "r3(P4,P4,4)");
    CHECK(RamseyQuery::clique_vs_clique(2, 4, 4).symbol() == "r2(4,4)");
    CHECK(RamseyQuery::diagonal(2, 4, 2).symbol() == "r2(4;2)");
    CHECK(RamseyQuery::nonincreasing(2, 3, 2).symbol() == "f2(3;2)");
}

TEST_CASE("degenerate targets are forced by definition") {
    struct Case {
        RamseyQuery query;
        int value;
    };
    const Case cases[] = {
        {RamseyQuery::path_vs_clique(2, 4, 1), 1},
        {RamseyQuery::path_vs_clique(2, 4, 0), 0},
        {RamseyQuery::path_vs_clique(3, 4, 2), 2},
        {RamseyQuery::paths_vs_clique(3, {4, 5}, 2), 2},
        {RamseyQuery::clique_vs_clique(2, 1, 5), 1},
        {RamseyQuery::clique_vs_clique(3, 5, 0), 0},
        {RamseyQuery::diagonal(3, 2, 2), 2},
        {RamseyQuery::nonincreasing(2, 2, 2), 2},
        {RamseyQuery::nonincreasing(3, 3, 2), 3},
        {RamseyQuery::nonincreasing(4, 4, 3), 4},
    };
    for (const auto& c : cases) {
        const SearchResult res = exact_ramsey(c.query);
        INFO(c.query.symbol());
        REQUIRE(res.conclusive());
        CHECK(*res.value == c.value);
        CHECK(!res.lower_witness.has_value());
        CHECK(!res.upper_evidence.empty());
        CHECK(res.stats.nodes == 0);
    }
}

// ---------------------------------------------------------------------------
// Independent full-enumeration oracle.  Enumerates every coloring of C([N],k)
// in lexicographic order (first cell most significant), so the first
// admissible coloring found is the lexicographic minimum.

namespace {

struct BruteTargets {
    std::vector<int> path_size;  // per color, 0 = untracked
    std::vector<int> clique_n;   // per color, 0 = untracked
    int noninc_n = 0;
};

BruteTargets brute_targets(const RamseyQuery& query) {
    BruteTargets t;
    const int palette = query.palette();
    t.path_size.assign(std::size_t(palette), 0);
    t.clique_n.assign(std::size_t(palette), 0);
    switch (query.kind) {
        case QueryKind::PathVsClique:
            t.path_size[0] = query.path_sizes[0];
            t.clique_n[1] = query.n;
            break;
        case QueryKind::PathsVsClique:
            for (std::size_t i = 0; i < query.path_sizes.size(); ++i)
                t.path_size[i] = query.path_sizes[i];
            t.clique_n[std::size_t(palette - 1)] = query.n;
            break;
        case QueryKind::CliqueVsClique:
            t.clique_n[0] = query.s;
            t.clique_n[1] = query.n;
            break;
        case QueryKind::Diagonal:
            for (int c = 0; c < palette; ++c) t.clique_n[std::size_t(c)] = query.n;
            break;
        case QueryKind::NonincreasingF:
            t.noninc_n = query.n;
            break;
    }
    return t;
}

bool brute_admissible(const KSubsetColoring& chi, const BruteTargets& t) {
    for (int c = 0; c < chi.q; ++c) {
        if (t.path_size[std::size_t(c)] > 0 &&
            oracle::brute_longest_tight_path(chi, c) > t.path_size[std::size_t(c)] - chi.k)
            return false;
        if (t.clique_n[std::size_t(c)] > 0 &&
            oracle::brute_find_clique(chi, c, t.clique_n[std::size_t(c)]).has_value())
            return false;
    }
    if (t.noninc_n > 0 && oracle::brute_has_nonincreasing(chi, t.noninc_n)) return false;
    return true;
}

std::optional<KSubsetColoring> brute_first_admissible(int N, const RamseyQuery& query) {
    const BruteTargets targets = brute_targets(query);
    const int q = query.palette();
    KSubsetColoring chi{N, query.k, q, {}};
    chi.colors.assign(std::size_t(binom(N, query.k)), 0);
    for (;;) {
        if (brute_admissible(chi, targets)) return chi;
        int i = int(chi.colors.size()) - 1;
        while (i >= 0) {
            if (++chi.colors[std::size_t(i)] < q) break;
            chi.colors[std::size_t(i)] = 0;
            --i;
        }
        if (i < 0) return std::nullopt;
    }
}

// Same odometer over preference ranks: position j carries order[rank_j], so
// the first hit is the smallest admissible coloring when colors are tried in
// the stated order.
std::optional<KSubsetColoring> brute_first_admissible_ordered(int N, const RamseyQuery& query,
                                                              const std::vector<int>& order) {
    const BruteTargets targets = brute_targets(query);
    const int q = query.palette();
    std::vector<std::uint8_t> ranks(std::size_t(binom(N, query.k)), 0);
    KSubsetColoring chi{N, query.k, q, {}};
    chi.colors.resize(ranks.size());
    for (;;) {
        for (std::size_t i = 0; i < ranks.size(); ++i)
            chi.colors[i] = std::uint8_t(order[ranks[i]]);
        if (brute_admissible(chi, targets)) return chi;
        int i = int(ranks.size()) - 1;
        while (i >= 0) {
            if (++ranks[std::size_t(i)] < q) break;
            ranks[std::size_t(i)] = 0;
            --i;
        }
        if (i < 0) return std::nullopt;
    }
}

int brute_value(const RamseyQuery& query, int scan_cap) {
    for (int N = query.k;; ++N) {
        REQUIRE(N <= scan_cap);
        if (!brute_first_admissible(N, query).has_value()) return N;
    }
}

}  // namespace

TEST_CASE("search agrees with full enumeration on tiny graph queries") {
    struct Case {
        RamseyQuery query;
        int scan_cap;
    };
    const Case cases[] = {
        {RamseyQuery::path_vs_clique(2, 3, 3), 6},   // r2(P3,3) = 5
        {RamseyQuery::path_vs_clique(2, 2, 4), 5},   // r2(P2,4) = 4
        {RamseyQuery::path_vs_clique(2, 4, 2), 5},   // r2(P4,2) = 4
        {RamseyQuery::clique_vs_clique(2, 3, 3), 6},  // r(3,3) = 6
        {RamseyQuery::diagonal(2, 3, 2), 6},
        {RamseyQuery::paths_vs_clique(2, {3, 3}, 2), 5},
        {RamseyQuery::paths_vs_clique(2, {2, 2}, 3), 4},
        {RamseyQuery::nonincreasing(2, 3, 2), 5},    // f2(3;2) = 4
    };
    for (const auto& c : cases) {
        INFO(c.query.symbol());
        const int expected = brute_value(c.query, c.scan_cap);
        const SearchResult res = exact_ramsey(c.query);
        REQUIRE(res.conclusive());
        CHECK(*res.value == expected);
    }
}

TEST_CASE("bare search witnesses are the smallest colorings in trial order") {
    // Kinds no construction covers leave the witness to the exploration
    // itself: the first leaf over cells in colex order, colors tried
    // clique-first.
    const RamseyQuery queries[] = {
        RamseyQuery::clique_vs_clique(2, 2, 3),
        RamseyQuery::clique_vs_clique(2, 3, 3),
        RamseyQuery::nonincreasing(2, 3, 2),
        RamseyQuery::path_vs_clique(3, 4, 3),
        RamseyQuery::path_vs_clique(3, 5, 3),
    };
    for (const auto& query : queries) {
        INFO(query.symbol());
        const SearchResult res = exact_ramsey(query);
        REQUIRE(res.conclusive());
        REQUIRE(res.lower_witness.has_value());
        const KSubsetColoring& wit = res.lower_witness->coloring;
        CHECK(wit.N == *res.value - 1);
        const auto first =
            brute_first_admissible_ordered(wit.N, query, detail::make_plan(query).order);
        REQUIRE(first.has_value());
        CHECK(wit.colors == first->colors);
    }
}

TEST_CASE("construction-backed searches hand back the construction") {
    // Graph path targets inherit the block coloring at its full order.
    const RamseyQuery paths = RamseyQuery::paths_vs_clique(2, {3, 4}, 3);
    const SearchResult pres = exact_ramsey(paths);
    REQUIRE(pres.conclusive());
    REQUIRE(pres.lower_witness.has_value());
    const auto block = detail::block_coloring(paths, int(detail::block_room(paths)));
    REQUIRE(block.has_value());
    CHECK(pres.lower_witness->coloring.N == block->N);
    CHECK(pres.lower_witness->coloring.colors == block->colors);

    // Two-color diagonals inherit the largest Paley coloring the detectors
    // accept; for triangle targets that is the pentagon.
    const SearchResult dres = exact_ramsey(RamseyQuery::diagonal(2, 3, 2));
    REQUIRE(dres.lower_witness.has_value());
    const KSubsetColoring paley = detail::paley_coloring(5);
    CHECK(dres.lower_witness->coloring.N == 5);
    CHECK(dres.lower_witness->coloring.colors == paley.colors);
    for (int c = 0; c < 2; ++c)  // the pentagon and its complement
        CHECK(!oracle::brute_find_clique(paley, c, 3).has_value());
}

TEST_CASE("search agrees with full enumeration on three-uniform paths") {
    const RamseyQuery query = RamseyQuery::path_vs_clique(3, 4, 3);
    const SearchResult res = exact_ramsey(query);
    REQUIRE(res.conclusive());
    CHECK(*res.value == brute_value(query, 6));  // = 4
    REQUIRE(res.lower_witness.has_value());
    CHECK(res.lower_witness->coloring.N == *res.value - 1);
    const auto verdicts = verify_certificate(*res.lower_witness);
    for (const auto& v : verdicts) CHECK(v.holds);
}

// ---------------------------------------------------------------------------
// Formula-level checks.

TEST_CASE("path versus clique matches the closed form on the desk grid") {
    for (int s = 2; s <= 5; ++s)
        for (int n = 2; n <= 5; ++n) {
            const SearchResult res = exact_ramsey(RamseyQuery::path_vs_clique(2, s, n));
            INFO("s=" << s << " n=" << n);
            REQUIRE(res.conclusive());
            CHECK(std::uint64_t(*res.value) == erdos_szekeres_path_value(2, s, n));
            CHECK(*res.value == (n - 1) * (s - 1) + 1);
            if (*res.value - 1 >= 2) {
                REQUIRE(res.lower_witness.has_value());
                const auto verdicts = verify_certificate(*res.lower_witness);
                for (const auto& v : verdicts) CHECK(v.holds);
            }
        }
}

TEST_CASE("diagonal graph case r2(3;2) = 6 with a validated witness") {
    const SearchResult res = exact_ramsey(RamseyQuery::diagonal(2, 3, 2));
    REQUIRE(res.conclusive());
    CHECK(*res.value == 6);
    REQUIRE(res.lower_witness.has_value());
    const Certificate& cert = *res.lower_witness;
    CHECK(cert.coloring.N == 5);
    CHECK(cert.provenance.name == "search");
    REQUIRE(cert.claims.size() == 2);
    const auto verdicts = verify_certificate(cert);
    for (const auto& v : verdicts) CHECK(v.holds);
    for (int c = 0; c < 2; ++c) CHECK(!oracle::brute_find_clique(cert.coloring, c, 3).has_value());
    CHECK(res.stats.nodes > 0);

    const std::string text = serialize(cert);
    CHECK(serialize(deserialize(text)) == text);
}

TEST_CASE("off-diagonal clique numbers") {
    const SearchResult r34 = exact_ramsey(RamseyQuery::clique_vs_clique(2, 3, 4));
    REQUIRE(r34.conclusive());
    CHECK(*r34.value == 9);
    REQUIRE(r34.lower_witness.has_value());
    for (const auto& v : verify_certificate(*r34.lower_witness)) CHECK(v.holds);

    const SearchResult r35 = exact_ramsey(RamseyQuery::clique_vs_clique(2, 3, 5));
    REQUIRE(r35.conclusive());
    CHECK(*r35.value == 14);

    // The diagonal kind and the equal-order clique kind answer the same
    // question through different palettes.
    const SearchResult diag = exact_ramsey(RamseyQuery::diagonal(2, 3, 2));
    const SearchResult cvc = exact_ramsey(RamseyQuery::clique_vs_clique(2, 3, 3));
    CHECK(*diag.value == *cvc.value);
}

TEST_CASE("three-uniform path versus clique is pinned by its own refutation") {
    // r3(P4, 4) = 8.  The oracles accept the 7-vertex witness below, and the
    // engine exhausts the 56-cell space at N = 8; the value is an output of
    // the search, bracketed by its sandwich 2 <= 8 <= 18 elsewhere.
    const SearchResult res = exact_ramsey(RamseyQuery::path_vs_clique(3, 4, 4));
    REQUIRE(res.conclusive());
    CHECK(*res.value == 8);
    REQUIRE(res.lower_witness.has_value());
    const KSubsetColoring& wit = res.lower_witness->coloring;
    CHECK(wit.N == 7);
    CHECK(oracle::brute_longest_tight_path(wit, 0) <= 1);
    CHECK(!oracle::brute_find_clique(wit, 1, 4).has_value());
    for (const auto& v : verify_certificate(*res.lower_witness)) CHECK(v.holds);
}

TEST_CASE("multi-path queries at the bottom of the hierarchy") {
    for (int n = 2; n <= 4; ++n) {
        const SearchResult res = exact_ramsey(RamseyQuery::paths_vs_clique(2, {2, 2}, n));
        INFO("n=" << n);
        REQUIRE(res.conclusive());
        CHECK(*res.value == n);  // both path colors are unusable
    }
    // r2(P3, P4, 3) = 13.  Tracking the longest monotone path per path color
    // labels each vertex with a pair in [2] x [3]; vertices sharing a label
    // must be joined in the third color, so the label classes are triangle-
    // free cliques of order at most 2 and 12 vertices is the ceiling.  The
    // block coloring on [2] x [3] x [2] meets it.
    const SearchResult res = exact_ramsey(RamseyQuery::paths_vs_clique(2, {3, 4}, 3));
    REQUIRE(res.conclusive());
    CHECK(*res.value == 13);
    REQUIRE(res.lower_witness.has_value());
    const KSubsetColoring& wit = res.lower_witness->coloring;
    CHECK(wit.N == 12);
    CHECK(oracle::brute_longest_tight_path(wit, 0) <= 1);
    CHECK(oracle::brute_longest_tight_path(wit, 1) <= 2);
    CHECK(!oracle::brute_find_clique(wit, 2, 3).has_value());
    for (const auto& v : verify_certificate(*res.lower_witness)) CHECK(v.holds);
}

// ---------------------------------------------------------------------------
// Nonincreasing thresholds.

TEST_CASE("nonincreasing thresholds for one color are the set size") {
    for (int k = 2; k <= 4; ++k)
        for (int n = k + 1; n <= k + 2; ++n) {
            const SearchResult res = exact_f(k, n, 1);
            INFO("k=" << k << " n=" << n);
            REQUIRE(res.conclusive());
            CHECK(*res.value == n);
        }
}

TEST_CASE("f2(3;2) = 4 and sits under its general bounds") {
    const SearchResult res = exact_f(2, 3, 2);
    REQUIRE(res.conclusive());
    CHECK(*res.value == 4);
    REQUIRE(res.lower_witness.has_value());
    const Certificate& cert = *res.lower_witness;
    CHECK(cert.coloring.N == 3);
    CHECK(cert.claims.empty());
    CHECK(!oracle::brute_has_nonincreasing(cert.coloring, 3));
    const std::string text = serialize(cert);
    CHECK(serialize(deserialize(text)) == text);

    const SearchResult diag = exact_ramsey(RamseyQuery::diagonal(2, 3, 2));
    CHECK(*res.value <= *diag.value);                       // f <= r
    CHECK(bigint(*res.value) <= ceil_pow_two_plus_sqrt2(3));  // f2(3;2) <= 40
}

TEST_CASE("f2(4;2) agrees with enumeration order by order") {
    const RamseyQuery query = RamseyQuery::nonincreasing(2, 4, 2);
    const SearchResult res = exact_ramsey(query);
    for (int N = 2; N <= 6; ++N) {
        const bool brute_good = brute_first_admissible(N, query).has_value();
        if (res.conclusive())
            CHECK(brute_good == (N < *res.value));
        else
            CHECK(brute_good);
    }
}

// ---------------------------------------------------------------------------
// Budgets and inconclusive results.

TEST_CASE("tiny budgets yield bracketing intervals, not wrong numbers") {
    const SearchResult res =
        exact_ramsey(RamseyQuery::path_vs_clique(3, 4, 6), SearchBudget{10});
    CHECK(!res.conclusive());
    CHECK(!res.value.has_value());
    CHECK(res.lower >= 1);
    CHECK(res.undecided == res.lower);
    CHECK(res.stats.nodes <= 10);
    CHECK(res.upper_evidence.find("budget") != std::string::npos);
    CHECK(!res.lower_witness.has_value());
}

TEST_CASE("size caps yield inconclusive results beyond the desk scale") {
    // r2(8;2) is far beyond the graph engine's vertex cap; every reachable
    // order is colorable, so the scan must stop at the cap, not fabricate.
    const SearchResult res = exact_ramsey(RamseyQuery::diagonal(2, 8, 2));
    CHECK(!res.conclusive());
    CHECK(res.lower == kEngineBMaxN + 1);
    CHECK(res.upper_evidence.find("cap") != std::string::npos);

    const SearchResult cells = exact_ramsey(RamseyQuery::nonincreasing(3, 8, 2));
    CHECK(!cells.conclusive());
    CHECK(cells.upper_evidence.find("cap") != std::string::npos);
}

TEST_CASE("searches are deterministic") {
    const SearchResult a = exact_ramsey(RamseyQuery::path_vs_clique(2, 4, 4));
    const SearchResult b = exact_ramsey(RamseyQuery::path_vs_clique(2, 4, 4));
    REQUIRE(a.conclusive());
    CHECK(*a.value == *b.value);
    CHECK(a.stats.nodes == b.stats.nodes);
    REQUIRE(a.lower_witness.has_value());
    REQUIRE(b.lower_witness.has_value());
    CHECK(serialize(*a.lower_witness) == serialize(*b.lower_witness));
}

// ---------------------------------------------------------------------------
// Engine cross-validation: the memoized graph engine must agree with the
// plain cell engine probe by probe, witnesses included.

TEST_CASE("graph engine matches the cell engine probe by probe") {
    const RamseyQuery queries[] = {
        RamseyQuery::path_vs_clique(2, 3, 3),
        RamseyQuery::path_vs_clique(2, 4, 3),
        RamseyQuery::clique_vs_clique(2, 3, 4),
        RamseyQuery::diagonal(2, 3, 2),
        RamseyQuery::paths_vs_clique(2, {3, 3}, 2),
    };
    for (const auto& query : queries) {
        INFO(query.symbol());
        const detail::TargetPlan plan = detail::make_plan(query);
        std::uint64_t budget_b = kDefaultSearchNodes;
        detail::EngineB graph_engine(plan, &budget_b);
        for (int N = 2; N <= 9; ++N) {
            std::uint64_t budget_a = kDefaultSearchNodes;
            detail::EngineA cell_engine(N, 2, plan, &budget_a);
            std::vector<std::uint8_t> leaf_a, leaf_b;
            const detail::Status sa = cell_engine.run(&leaf_a);
            const detail::Status sb = graph_engine.probe(N, &leaf_b);
            INFO("N=" << N);
            CHECK(sa == sb);
            if (sa == detail::Status::Good && sb == detail::Status::Good)
                CHECK(leaf_a == leaf_b);
            if (sa == detail::Status::Dead) break;
        }
    }
}

// ---------------------------------------------------------------------------
// Sandwich reports.

TEST_CASE("sandwich holds at desk scale for one tracked path") {
    const SandwichReport rep = sandwich_check(3, {4}, 3);
    CHECK(rep.q == 2);
    CHECK(!rep.partial);
    REQUIRE(rep.lower.conclusive());
    REQUIRE(rep.middle.conclusive());
    REQUIRE(rep.upper.conclusive());
    CHECK(*rep.lower.value == 1);  // r2(1;2)
    CHECK(*rep.middle.value == 4);
    CHECK(*rep.upper.value == 6);  // r2(3;2)
    CHECK(rep.lower_decided);
    CHECK(rep.lower_holds);
    CHECK(rep.upper_decided);
    CHECK(rep.upper_holds);
}

TEST_CASE("sandwich degenerates gracefully at n = 2") {
    const SandwichReport rep = sandwich_check(3, {4}, 2);
    CHECK(!rep.partial);
    CHECK(*rep.lower.value == 1);
    CHECK(*rep.middle.value == 2);
    CHECK(*rep.upper.value == 2);
    CHECK(rep.lower_holds);
    CHECK(rep.upper_holds);
}

TEST_CASE("sandwich marks starved legs partial instead of asserting") {
    const SandwichReport rep = sandwich_check(3, {4}, 6, SearchBudget{10});
    CHECK(rep.partial);
    CHECK(!rep.lower_decided);
    CHECK(!rep.upper_decided);
}

TEST_CASE("sandwich validates its inputs") {
    CHECK_THROWS_AS(sandwich_check(2, {3}, 3), InputError);
    CHECK_THROWS_AS(sandwich_check(5, {6}, 3), InputError);
    CHECK_THROWS_AS(sandwich_check(3, {}, 3), InputError);
    CHECK_THROWS_AS(sandwich_check(3, {2}, 3), InputError);
}

// ---------------------------------------------------------------------------
// Profile reduction.

TEST_CASE("profile reduction flattens the path profile") {
    const auto blue = make_coloring(6, 3, 2, [](const KSubset&) { return 1; });
    const KSubsetColoring phi = profile_reduction_bound(blue, {2});
    CHECK(phi.N == 6);
    CHECK(phi.k == 2);
    CHECK(phi.q == 2);
    for (std::uint64_t r = 0; r < phi.cells(); ++r) CHECK(phi.at(r) == 0);

    // One red cell {0,1,2}: exactly the prefixes that end it move to 1.
    const auto one_red = make_coloring(6, 3, 2, [](const KSubset& s) {
        return (s == KSubset{0, 1, 2}) ? 0 : 1;
    });
    const KSubsetColoring psi = profile_reduction_bound(one_red, {2});
    const PathProfile prof = path_profile(one_red, {0});
    for_each_ksubset(6, 2, [&](const KSubset& cell) {
        CHECK(psi.color_of(cell) == prof.at(cell, 0));
    });
}

TEST_CASE("profile reduction turns nonincreasing sets into red-free windows") {
    // The step-down lemma: when the flattened profile is nonincreasing along
    // T, no consecutive window of T can be a red cell, because a red cell
    // strictly raises the profile from its front pair to its back pair.
    const SearchResult res = exact_ramsey(RamseyQuery::path_vs_clique(3, 4, 4));
    REQUIRE(res.lower_witness.has_value());
    const KSubsetColoring& chi = res.lower_witness->coloring;
    const KSubsetColoring phi = profile_reduction_bound(chi, {2});
    CHECK(phi.q == 2);
    int seen = 0;
    for (int size = 3; size <= 4; ++size) {
        for_each_ksubset(chi.N, size, [&](const KSubset& T) {
            if (!is_nonincreasing_set(phi, T)) return;
            ++seen;
            for (int i = 0; i + 2 < size; ++i) {
                const KSubset cell{T[std::size_t(i)], T[std::size_t(i) + 1],
                                   T[std::size_t(i) + 2]};
                CHECK(chi.color_of(cell) == 1);
            }
        });
    }
    CHECK(seen > 0);
}

TEST_CASE("profile reduction refuses colorings with long tracked paths") {
    const auto red = make_coloring(6, 3, 2, [](const KSubset&) { return 0; });
    try {
        profile_reduction_bound(red, {2});
        FAIL("expected LongPathError");
    } catch (const LongPathError& e) {
        CHECK(e.witness.kind == Witness::TightPath);
        CHECK(validate_witness(red, e.witness));
        CHECK(std::string(e.what()).find("cap") != std::string::npos);
    }

    CHECK_THROWS_AS(profile_reduction_bound(red, {0}), InputError);
    CHECK_THROWS_AS(profile_reduction_bound(red, std::vector<int>{}), InputError);
    const auto pair2 = make_coloring(4, 2, 2, [](const KSubset&) { return 1; });
    CHECK_THROWS_AS(profile_reduction_bound(pair2, {2, 2, 2}), InputError);
    CHECK_THROWS_AS(profile_reduction_bound(red, {17, 17}), InputError);
}

TEST_CASE("profile reduction reaches uniformity one") {
    const auto sparse = make_coloring(5, 2, 2, [](const KSubset& s) {
        return (s[0] == 0 && s[1] == 1) ? 0 : 1;  // single red edge
    });
    const KSubsetColoring phi = profile_reduction_bound(sparse, {2});
    CHECK(phi.k == 1);
    CHECK(phi.color_of({0}) == 0);
    CHECK(phi.color_of({1}) == 1);
    CHECK(phi.color_of({2}) == 0);
}

// ---------------------------------------------------------------------------
// Result invariants.

TEST_CASE("witnesses exist exactly when the extremal order carries cells") {
    // Value 3 with k = 3: the extremal order 2 holds no triple, so there is
    // honest evidence but no certificate.
    const SearchResult res = exact_ramsey(RamseyQuery::diagonal(3, 3, 2));
    REQUIRE(res.conclusive());
    CHECK(*res.value == 3);
    CHECK(!res.lower_witness.has_value());
    CHECK(!res.upper_evidence.empty());
}

TEST_CASE("monotonicity across the computed grid") {
    int prev = 0;
    for (int n = 2; n <= 5; ++n) {
        const SearchResult res = exact_ramsey(RamseyQuery::path_vs_clique(2, 4, n));
        REQUIRE(res.conclusive());
        CHECK(*res.value > prev);
        prev = *res.value;
    }
}
