// Command-line driver.  Thin over the library: construct writes certificate
// files, verify re-checks their claims with the detectors, search runs the
// exact scan, table prints sandwich rows, bounds prints the closed-form
// bounds.  Exit codes are the scripting contract:
//
//   0  success / all claims hold        1  a claim is violated
//   2  usage or parse error             3  inconclusive within budget
//
// Everything below takes explicit streams and returns exit codes, so the
// whole surface is testable without spawning processes; main() is one line.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramsey/certificate.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/constructions.hpp"
#include "ramsey/core.hpp"
#include "ramsey/exact_search.hpp"
#include "ramsey/quadratic.hpp"
#include "ramsey/verify.hpp"

namespace ramsey::cli {

// ---------------------------------------------------------------------------
// Environment.  The searches are deterministic and single-threaded; the
// variable is accepted (and validated) so callers can pin worker counts
// uniformly across tools.

inline int parse_threads(const char* value) {
    if (value == nullptr || *value == '\0') return 1;
    std::string s(value);
    for (char ch : s)
        if (ch < '0' || ch > '9')
            throw InputError("RAMSEY_THREADS must be a positive integer, got '" + s + "'");
    long long v = 0;
    try {
        v = std::stoll(s);
    } catch (const std::exception&) {
        throw InputError("RAMSEY_THREADS out of range: '" + s + "'");
    }
    if (v < 1 || v > 4096) throw InputError("RAMSEY_THREADS out of range: '" + s + "'");
    return int(v);
}

// ---------------------------------------------------------------------------
// Output layout.  Tables are byte-deterministic: two-space gutters, column
// widths from the widest cell, LF endings, no trailing whitespace.  CSV
// quotes any cell containing a comma.

inline void print_rows(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                       bool csv) {
    if (rows.empty()) return;
    if (csv) {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                if (row[i].find(',') != std::string::npos)
                    out << '"' << row[i] << '"';
                else
                    out << row[i];
            }
            out << '\n';
        }
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += row[i];
            if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
        }
        out << line << '\n';
    }
}

inline std::string value_cell(const SearchResult& res) {
    if (res.value) return std::to_string(*res.value);
    return ">=" + std::to_string(res.lower);
}

// ---------------------------------------------------------------------------
// construct.

struct ConstructOptions {
    std::string name;
    int N = 0;
    int k = 0;
    int q = 0;
    std::vector<int> paths;
    std::uint64_t seed = 0;
    std::string phi_path;
    std::string out_path;
};

inline Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

inline Certificate build_certificate(const ConstructOptions& opt) {
    if (opt.name == "p4clique") {
        if (opt.N <= 0) throw InputError("p4clique needs --N");
        return p4_vs_clique_certificate(opt.N, opt.seed);
    }
    if (opt.name == "tournament") {
        if (opt.N <= 0 || opt.k <= 0) throw InputError("tournament needs --N and --k");
        return tournament_halfgraph_certificate(opt.N, opt.k, opt.seed);
    }
    if (opt.name == "matching") {
        if (opt.N <= 0 || opt.k <= 0) throw InputError("matching needs --N and --k");
        return matching_halfgraph_certificate(opt.N, opt.k, opt.seed);
    }
    if (opt.name == "randomphi") {
        if (opt.N <= 0 || opt.k <= 0 || opt.q <= 0)
            throw InputError("randomphi needs --N, --k, and --q");
        Certificate cert;
        cert.coloring = random_coloring(opt.N, opt.k, opt.q, opt.seed);
        cert.provenance.name = "randomphi";
        cert.provenance.params = {{"N", std::to_string(opt.N)},
                                  {"k", std::to_string(opt.k)},
                                  {"q", std::to_string(opt.q)}};
        cert.provenance.seed = opt.seed;
        return cert;  // a raw coloring carries no claims
    }
    if (opt.name == "stepdown") {
        StepDownSpec spec;
        spec.k = opt.k;
        spec.path_sizes = opt.paths;
        if (!spec.valid())
            throw InputError("stepdown needs --k >= 2 and --paths sizes >= k+1");
        if (!opt.phi_path.empty()) {
            const Certificate phi = load_certificate(opt.phi_path);
            return step_down_certificate(phi.coloring, spec, phi.provenance.seed);
        }
        if (opt.N <= 0) throw InputError("stepdown needs --phi or --N");
        const auto phi = random_coloring(opt.N, spec.k - 1, spec.q(), opt.seed);
        return step_down_certificate(phi, spec, opt.seed);
    }
    throw InputError("unknown construction '" + opt.name + "'");
}

inline int run_construct(const ConstructOptions& opt, std::ostream& out) {
    const Certificate cert = build_certificate(opt);
    const std::string text = serialize(cert);
    if (opt.out_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + opt.out_path + "'");
    file << text;
    out << cert.provenance.name << " N=" << cert.coloring.N << " k=" << cert.coloring.k
        << " q=" << cert.coloring.q << " -> " << opt.out_path << "\n";
    std::string claims;
    for (std::size_t i = 0; i < cert.claims.size(); ++i) {
        if (i) claims += " ";
        claims += claim_to_string(cert.claims[i]);
    }
    out << "claims: " << (claims.empty() ? "none" : claims) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify.

inline int run_verify(const std::string& path, std::ostream& out) {
    const Certificate cert = load_certificate(path);
    const auto results = verify_certificate(cert);
    bool all_hold = true;
    for (const auto& r : results) {
        out << claim_to_string(r.claim) << ": " << (r.holds ? "holds" : "VIOLATED");
        if (!r.holds && !r.detail.empty()) out << " -- " << r.detail;
        out << "\n";
        all_hold = all_hold && r.holds;
    }
    if (results.empty()) out << "no claims\n";
    return all_hold ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search.

struct SearchOptions {
    std::string kind;
    int k = 2;
    int s = 0;
    int n = 0;
    int q = 2;
    std::vector<int> paths;
    std::uint64_t budget = kDefaultSearchNodes;
    std::string witness_path;
    bool csv = false;
};

inline RamseyQuery query_from(const SearchOptions& opt) {
    const std::string& kind = opt.kind;
    if (kind == "pathclique" || kind == "path") {
        if (!opt.paths.empty() && opt.paths.size() == 1 && opt.s == 0)
            return RamseyQuery::path_vs_clique(opt.k, opt.paths[0], opt.n);
        return RamseyQuery::path_vs_clique(opt.k, opt.s, opt.n);
    }
    if (kind == "pathsclique" || kind == "paths")
        return RamseyQuery::paths_vs_clique(opt.k, opt.paths, opt.n);
    if (kind == "cliqueclique" || kind == "clique")
        return RamseyQuery::clique_vs_clique(opt.k, opt.s, opt.n);
    if (kind == "diag" || kind == "diagonal") return RamseyQuery::diagonal(opt.k, opt.n, opt.q);
    if (kind == "noninc" || kind == "nonincreasing")
        return RamseyQuery::nonincreasing(opt.k, opt.n, opt.q);
    throw InputError("unknown kind '" + kind +
                     "' (pathclique, pathsclique, cliqueclique, diag, noninc)");
}

inline int run_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
    const RamseyQuery query = query_from(opt);
    const SearchResult res = exact_ramsey(query, SearchBudget{opt.budget});

    if (!opt.witness_path.empty()) {
        if (res.lower_witness) {
            std::ofstream file(opt.witness_path, std::ios::binary);
            if (!file) throw InputError("cannot write '" + opt.witness_path + "'");
            file << serialize(*res.lower_witness);
        } else {
            err << "no witness to write (" << (res.conclusive() ? "degenerate" : "inconclusive")
                << " result)\n";
        }
    }

    if (opt.csv) {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"query", "value", "lower", "status"});
        rows.push_back({query.symbol(), res.value ? std::to_string(*res.value) : "",
                        std::to_string(res.lower), res.value ? "exact" : "inconclusive"});
        print_rows(out, rows, true);
    } else if (res.value) {
        out << query.symbol() << " = " << *res.value << "\n";
    } else {
        out << query.symbol() << " >= " << res.lower << " -- " << res.upper_evidence << "\n";
    }
    return res.value ? 0 : 3;
}

// ---------------------------------------------------------------------------
// table: one sandwich row per n.

struct TableOptions {
    int k = 3;
    std::vector<int> paths;
    int n_min = 0;
    int n_max = 0;
    std::uint64_t budget = kDefaultSearchNodes;
    bool csv = false;
};

inline int run_table(const TableOptions& opt, std::ostream& out) {
    if (opt.paths.empty()) throw InputError("table needs --paths");
    if (opt.n_min < 0 || opt.n_max < opt.n_min) throw InputError("table needs a valid n range");

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"k", "paths", "n", "q", "lower", "middle", "upper", "status"});
    bool any_partial = false;
    bool any_violated = false;
    for (int n = opt.n_min; n <= opt.n_max; ++n) {
        const SandwichReport rep = sandwich_check(opt.k, opt.paths, n, SearchBudget{opt.budget});
        std::string status = "ok";
        if (rep.partial) {
            status = "partial";
            any_partial = true;
        }
        if ((rep.lower_decided && !rep.lower_holds) || (rep.upper_decided && !rep.upper_holds)) {
            status = "violated";  // unreachable if the theorem holds; never asserted away
            any_violated = true;
        }
        rows.push_back({std::to_string(rep.k), join_path_sizes(rep.path_sizes),
                        std::to_string(rep.n), std::to_string(rep.q), value_cell(rep.lower),
                        value_cell(rep.middle), value_cell(rep.upper), status});
    }
    print_rows(out, rows, opt.csv);
    if (any_violated) return 1;
    return any_partial ? 3 : 0;
}

// ---------------------------------------------------------------------------
// bounds: closed forms as exact integers.

struct BoundsOptions {
    int k = 4;
    int n_min = 1;
    int n_max = 6;
    bool csv = false;
};

inline int run_bounds(const BoundsOptions& opt, std::ostream& out) {
    if (opt.k < 2 || opt.k > 16) throw InputError("bounds needs --k in [2, 16]");
    if (opt.n_min < 0 || opt.n_max < opt.n_min)
        throw InputError("bounds needs a valid n range");

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"n", "ceil((2+sqrt2)^n)", "ceil((2/(2-sqrt2))^n)",
                    "(n!)^" + std::to_string(opt.k - 1)});
    for (int n = opt.n_min; n <= opt.n_max; ++n) {
        // 2/(2 - sqrt2) = 2 + sqrt2 after rationalizing, so both columns
        // share one exact evaluator; printing them separately keeps the two
        // stated forms visibly in agreement.
        const bigint path_bound = ceil_pow_two_plus_sqrt2(unsigned(n));
        const bigint clique_bound = factorial_power(unsigned(n), unsigned(opt.k));
        rows.push_back({std::to_string(n), path_bound.str(), path_bound.str(),
                        clique_bound.str()});
    }
    print_rows(out, rows, opt.csv);
    return 0;
}

// ---------------------------------------------------------------------------
// Argument surface.

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Ramsey-type searches, certificates, and bound tables"};
    app.require_subcommand(1);

    ConstructOptions c;
    auto* construct = app.add_subcommand("construct", "build a certificate file");
    construct->add_option("name", c.name, "stepdown, p4clique, tournament, matching, randomphi")
        ->required();
    construct->add_option("--N", c.N, "vertex count");
    construct->add_option("--k", c.k, "uniformity");
    construct->add_option("--q", c.q, "palette size (randomphi)");
    construct->add_option("--paths", c.paths, "path sizes (stepdown)")->delimiter(',');
    construct->add_option("--seed", c.seed, "RNG seed");
    construct->add_option("--phi", c.phi_path, "input certificate for stepdown");
    construct->add_option("-o,--out", c.out_path, "output file (default: stdout)");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate's claims");
    verify->add_option("path", verify_path, "certificate file")->required();

    SearchOptions s;
    auto* search = app.add_subcommand("search", "run an exact scan");
    search->add_option("--kind", s.kind, "pathclique, pathsclique, cliqueclique, diag, noninc")
        ->required();
    search->add_option("--k", s.k, "uniformity");
    search->add_option("--s", s.s, "path or clique size");
    search->add_option("--n", s.n, "clique order or set size");
    search->add_option("--q", s.q, "palette size");
    search->add_option("--paths", s.paths, "path sizes")->delimiter(',');
    search->add_option("--budget", s.budget, "node budget");
    search->add_option("--witness", s.witness_path, "write the extremal coloring here");
    std::string search_format = "txt";
    search->add_option("--format", search_format, "txt or csv")
        ->check(CLI::IsMember({"txt", "csv"}));

    TableOptions t;
    auto* table = app.add_subcommand("table", "sandwich rows over an n range");
    table->add_option("--k", t.k, "uniformity");
    table->add_option("--paths", t.paths, "path sizes")->delimiter(',');
    table->add_option("--n-min", t.n_min, "first clique order")->required();
    table->add_option("--n-max", t.n_max, "last clique order")->required();
    table->add_option("--budget", t.budget, "node budget per leg");
    std::string table_format = "txt";
    table->add_option("--format", table_format, "txt or csv")
        ->check(CLI::IsMember({"txt", "csv"}));

    BoundsOptions b;
    auto* bounds = app.add_subcommand("bounds", "closed-form bounds as exact integers");
    bounds->add_option("--k", b.k, "uniformity for the factorial bound");
    bounds->add_option("--n-min", b.n_min, "first order");
    bounds->add_option("--n-max", b.n_max, "last order");
    std::string bounds_format = "txt";
    bounds->add_option("--format", bounds_format, "txt or csv")
        ->check(CLI::IsMember({"txt", "csv"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);  // --help and friends
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        parse_threads(std::getenv("RAMSEY_THREADS"));
        s.csv = search_format == "csv";
        t.csv = table_format == "csv";
        b.csv = bounds_format == "csv";
        if (*construct) return run_construct(c, out);
        if (*verify) return run_verify(verify_path, out);
        if (*search) return run_search(s, out, err);
        if (*table) return run_table(t, out);
        return run_bounds(b, out);
    } catch (const FormatError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace ramsey::cli
