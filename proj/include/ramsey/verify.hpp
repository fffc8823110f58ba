#pragma once

// Certificate claim verification: every claim is re-checked against the
// coloring by detector search, never trusted.

#include <string>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/detectors.hpp"

namespace ramsey {

struct ClaimResult {
    Claim claim;
    bool holds = false;
    std::string detail;  // counterexample description on failure
};

inline ClaimResult verify_claim(const KSubsetColoring& chi, const Claim& claim) {
    ClaimResult res{claim, false, ""};
    switch (claim.kind) {
        case Claim::NoPath: {
            if (claim.size < chi.k || claim.color < 0 || claim.color >= chi.q)
                throw InputError("verify_claim: malformed noPath claim");
            auto [len, w] = longest_tight_path(chi, claim.color);
            if (len <= claim.size - chi.k) {
                res.holds = true;
            } else {
                res.detail = "tight path " + vertices_to_string(w.vertices) + " in color " +
                             std::to_string(claim.color);
            }
            return res;
        }
        case Claim::NoClique: {
            if (claim.size < chi.k || claim.color < 0 || claim.color >= chi.q)
                throw InputError("verify_claim: malformed noClique claim");
            auto w = find_mono_clique(chi, claim.color, claim.size);
            if (!w) {
                res.holds = true;
            } else {
                res.detail = "clique " + vertices_to_string(w->vertices) + " in color " +
                             std::to_string(claim.color);
            }
            return res;
        }
        case Claim::NoHalfGraph: {
            if (claim.size != chi.k || claim.color < 0 || claim.color >= chi.q)
                throw InputError("verify_claim: noHalfGraph k must match the coloring");
            auto w = find_red_half_graph(chi, claim.color);
            if (!w) {
                res.holds = true;
            } else {
                res.detail = "half-graph S=" + vertices_to_string(w->S) +
                             " T=" + vertices_to_string(w->T) + " u=" + std::to_string(w->u);
            }
            return res;
        }
        case Claim::Nonincreasing: {
            if (claim.size < chi.k)
                throw InputError("verify_claim: nonincreasing size below k");
            auto t = find_nonincreasing_set_exhaustive(chi, claim.size);
            if (t) {
                res.holds = true;
                res.detail = "witness " + vertices_to_string(*t);
            } else {
                res.detail = "no nonincreasing set of size " + std::to_string(claim.size);
            }
            return res;
        }
    }
    throw ContractViolation("verify_claim: bad claim kind");
}

inline std::vector<ClaimResult> verify_certificate(const Certificate& cert) {
    require_valid(cert.coloring, "verify_certificate");
    std::vector<ClaimResult> out;
    out.reserve(cert.claims.size());
    for (const auto& c : cert.claims) out.push_back(verify_claim(cert.coloring, c));
    return out;
}

}  // namespace ramsey
