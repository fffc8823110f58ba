#pragma once

// RAMSEYCERT v1: a line-oriented, byte-canonical text format for colorings
// with provenance and machine-checkable claims.
//
//   RAMSEYCERT v1
//   N=<int> k=<int> q=<int>
//   provenance=<name> params=<key=val,...> seed=<int|none>
//   claims=<term;term;...>        terms: noPath(color,size) noClique(color,size)
//                                        noHalfGraph(color,k) nonincreasing(size)
//   <colors, base 10, space separated, colex order, wrapped at 80 columns>
//   END
//
// LF line endings, no trailing whitespace.  Serialization is canonical:
// equal certificates produce identical bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/coloring.hpp"

namespace ramsey {

struct FormatError : std::runtime_error {
    std::size_t offset;
    FormatError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}
};

struct Claim {
    enum Kind { NoPath, NoClique, NoHalfGraph, Nonincreasing };
    Kind kind = NoPath;
    int color = 0;  // unused for Nonincreasing
    int size = 0;   // path/clique size, half-graph k, or nonincreasing set size

    friend bool operator==(const Claim&, const Claim&) = default;
};

struct Provenance {
    std::string name = "unknown";
    std::vector<std::pair<std::string, std::string>> params;  // serialized in order
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Certificate {
    KSubsetColoring coloring;
    Provenance provenance;
    std::vector<Claim> claims;
};

inline std::string claim_to_string(const Claim& c) {
    switch (c.kind) {
        case Claim::NoPath:
            return "noPath(" + std::to_string(c.color) + "," + std::to_string(c.size) + ")";
        case Claim::NoClique:
            return "noClique(" + std::to_string(c.color) + "," + std::to_string(c.size) + ")";
        case Claim::NoHalfGraph:
            return "noHalfGraph(" + std::to_string(c.color) + "," + std::to_string(c.size) + ")";
        case Claim::Nonincreasing:
            return "nonincreasing(" + std::to_string(c.size) + ")";
    }
    throw ContractViolation("claim_to_string: bad kind");
}

inline std::string serialize(const Certificate& cert) {
    require_valid(cert.coloring, "serialize");
    std::string out = "RAMSEYCERT v1\n";
    out += "N=" + std::to_string(cert.coloring.N) + " k=" + std::to_string(cert.coloring.k) +
           " q=" + std::to_string(cert.coloring.q) + "\n";
    out += "provenance=" + cert.provenance.name + " params=";
    for (std::size_t i = 0; i < cert.provenance.params.size(); ++i) {
        if (i) out += ",";
        out += cert.provenance.params[i].first + "=" + cert.provenance.params[i].second;
    }
    out += " seed=";
    out += cert.provenance.seed ? std::to_string(*cert.provenance.seed) : std::string("none");
    out += "\n";
    out += "claims=";
    for (std::size_t i = 0; i < cert.claims.size(); ++i) {
        if (i) out += ";";
        out += claim_to_string(cert.claims[i]);
    }
    out += "\n";
    std::string line;
    for (auto c : cert.coloring.colors) {
        std::string tok = std::to_string(int(c));
        if (line.empty()) {
            line = tok;
        } else if (line.size() + 1 + tok.size() <= 80) {
            line += " ";
            line += tok;
        } else {
            out += line;
            out += "\n";
            line = tok;
        }
    }
    if (!line.empty()) {
        out += line;
        out += "\n";
    }
    out += "END\n";
    return out;
}

namespace detail {

struct LineReader {
    const std::string& text;
    std::size_t pos = 0;

    // Returns the next line (without the newline); offset receives the byte
    // position of its first character.
    std::optional<std::string> next(std::size_t& offset) {
        if (pos >= text.size()) return std::nullopt;
        offset = pos;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            throw FormatError("unterminated line (LF required)", pos);
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        return line;
    }
};

inline long long parse_int(const std::string& s, std::size_t off) {
    if (s.empty()) throw FormatError("expected integer", off);
    std::size_t used = 0;
    long long v;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw FormatError("expected integer, got '" + s + "'", off);
    }
    if (used != s.size()) throw FormatError("trailing junk after integer '" + s + "'", off);
    return v;
}

inline std::string expect_field(const std::string& token, const std::string& key,
                                std::size_t off) {
    if (token.rfind(key + "=", 0) != 0)
        throw FormatError("expected field '" + key + "='", off);
    return token.substr(key.size() + 1);
}

inline Claim parse_claim(const std::string& term, std::size_t off) {
    auto open = term.find('(');
    if (open == std::string::npos || term.back() != ')')
        throw FormatError("malformed claim '" + term + "'", off);
    std::string name = term.substr(0, open);
    std::string args = term.substr(open + 1, term.size() - open - 2);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = args.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(args.substr(start));
            break;
        }
        parts.push_back(args.substr(start, comma - start));
        start = comma + 1;
    }
    Claim c;
    if (name == "nonincreasing") {
        if (parts.size() != 1) throw FormatError("nonincreasing takes one argument", off);
        c.kind = Claim::Nonincreasing;
        c.size = int(parse_int(parts[0], off));
        return c;
    }
    if (parts.size() != 2) throw FormatError("claim '" + name + "' takes two arguments", off);
    if (name == "noPath") c.kind = Claim::NoPath;
    else if (name == "noClique") c.kind = Claim::NoClique;
    else if (name == "noHalfGraph") c.kind = Claim::NoHalfGraph;
    else throw FormatError("unknown claim '" + name + "'", off);
    c.color = int(parse_int(parts[0], off));
    c.size = int(parse_int(parts[1], off));
    return c;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

}  // namespace detail

inline Certificate deserialize(const std::string& text) {
    detail::LineReader rd{text};
    std::size_t off = 0;

    auto header = rd.next(off);
    if (!header) throw FormatError("empty input", 0);
    if (*header != "RAMSEYCERT v1")
        throw FormatError("bad magic, expected 'RAMSEYCERT v1'", off);

    auto dims = rd.next(off);
    if (!dims) throw FormatError("missing dimension line", rd.pos);
    auto dtoks = detail::split(*dims, ' ');
    if (dtoks.size() != 3) throw FormatError("dimension line needs 'N= k= q='", off);
    int N = int(detail::parse_int(detail::expect_field(dtoks[0], "N", off), off));
    int k = int(detail::parse_int(detail::expect_field(dtoks[1], "k", off), off));
    int q = int(detail::parse_int(detail::expect_field(dtoks[2], "q", off), off));

    auto prov_line = rd.next(off);
    if (!prov_line) throw FormatError("missing provenance line", rd.pos);
    auto ptoks = detail::split(*prov_line, ' ');
    if (ptoks.size() != 3)
        throw FormatError("provenance line needs 'provenance= params= seed='", off);
    Provenance prov;
    prov.name = detail::expect_field(ptoks[0], "provenance", off);
    if (prov.name.empty()) throw FormatError("empty provenance name", off);
    std::string params = detail::expect_field(ptoks[1], "params", off);
    if (!params.empty()) {
        for (const auto& kv : detail::split(params, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw FormatError("malformed param '" + kv + "'", off);
            prov.params.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
    std::string seed = detail::expect_field(ptoks[2], "seed", off);
    if (seed != "none") prov.seed = std::uint64_t(detail::parse_int(seed, off));

    auto claims_line = rd.next(off);
    if (!claims_line) throw FormatError("missing claims line", rd.pos);
    std::string claims = detail::expect_field(*claims_line, "claims", off);
    std::vector<Claim> claim_list;
    if (!claims.empty())
        for (const auto& term : detail::split(claims, ';'))
            claim_list.push_back(detail::parse_claim(term, off));

    KSubsetColoring coloring{N, k, q, {}};
    if (k < 1 || N < k || q < 1 || q > kMaxPalette)
        throw FormatError("dimensions out of range", off);
    const std::uint64_t want = binom(N, k);
    coloring.colors.reserve(want);
    while (true) {
        auto line = rd.next(off);
        if (!line) throw FormatError("missing END", rd.pos);
        if (*line == "END") break;
        if (line->empty() || line->front() == ' ' || line->back() == ' ')
            throw FormatError("stray whitespace in color line", off);
        std::size_t col = 0;
        for (const auto& tok : detail::split(*line, ' ')) {
            long long v = detail::parse_int(tok, off + col);
            if (v < 0 || v >= q)
                throw FormatError("color " + std::to_string(v) + " outside palette", off + col);
            if (coloring.colors.size() == want)
                throw FormatError("more colors than C(N,k) cells", off + col);
            coloring.colors.push_back(std::uint8_t(v));
            col += tok.size() + 1;
        }
    }
    if (coloring.colors.size() != want)
        throw FormatError("expected " + std::to_string(want) + " colors, got " +
                              std::to_string(coloring.colors.size()),
                          off);
    if (rd.pos != text.size()) throw FormatError("trailing bytes after END", rd.pos);
    return Certificate{std::move(coloring), std::move(prov), std::move(claim_list)};
}

}  // namespace ramsey
