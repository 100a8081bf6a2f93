#pragma once

#include "endsum/end_algebra.hpp"
#include "endsum/fin_module.hpp"
#include "endsum/fp_linalg.hpp"
#include "endsum/space.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace endsum {

/// Dimension of the span, inside the top-degree quotient, of all products of
/// classes of degree below the top.  Products with the symbolic summands
/// vanish and cross-node products vanish, so the span is generated by
/// node-local generator products; the finite part injects into the quotient,
/// which makes the computation exact at any truncation.
inline std::size_t gamma_dim(const EndAlgebra& e)
{
    if (!e.ring.is_field())
        throw std::invalid_argument("gamma_dim: prime-field coefficients required");
    const int n = e.n;
    if (n < 2)
        throw std::invalid_argument("gamma_dim: cross-section dimension must be at least 2");

    const std::size_t width = e.node_rings.size();
    std::vector<std::vector<Int>> rows;
    for (std::size_t v = 0; v < e.node_rings.size(); ++v) {
        const GradedRing& ring = e.node_rings[v];
        if (ring.dim(n) != 1)
            throw std::logic_error("gamma_dim: node top degree is not one-dimensional");
        for (int i = 1; i < n; ++i) {
            const int j = n - i;
            for (std::size_t a = 0; a < ring.dim(i); ++a)
                for (std::size_t b = 0; b < ring.dim(j); ++b) {
                    std::vector<Int> p = ring.generator_product(i, a, j, b);
                    if (p.empty() || p[0] == 0)
                        continue;
                    std::vector<Int> row(width, Int(0));
                    row[v] = p[0];
                    rows.push_back(std::move(row));
                }
        }
    }
    return span_dim_mod_p(rows, width, e.ring.prime());
}

/// The proper-homotopy data extracted from a Space: iso classes of the
/// middle-degree groups over Z, the degree-1 finite part, presence flags for
/// the uncountable symbolic summands, and dim Gamma_p per requested prime.
struct InvariantSummary {
    int n = 0;
    std::vector<std::int64_t> primes;
    std::map<int, FinModule> middle; // degrees 2..n-1, integral iso classes
    std::size_t deg1_free_rank = 0;
    std::vector<Int> deg1_torsion;
    bool deg1_uncountable = false;
    bool degn_uncountable = false;
    std::map<std::int64_t, std::size_t> gamma;

    bool operator==(const InvariantSummary& o) const
    {
        return n == o.n && middle == o.middle && deg1_free_rank == o.deg1_free_rank &&
               deg1_torsion == o.deg1_torsion && deg1_uncountable == o.deg1_uncountable &&
               degn_uncountable == o.degn_uncountable && gamma == o.gamma;
    }
};

inline InvariantSummary summarize(const Space& s, const std::vector<std::int64_t>& primes)
{
    InvariantSummary out;
    out.n = static_cast<int>(s.dim());
    out.primes = primes;

    EndAlgebra integral = end_algebra(s, CoefficientRing::integers());
    for (int k = 2; k <= out.n - 1; ++k)
        out.middle.emplace(k, integral.finite_module(k));
    FinModule deg1 = integral.finite_module(1);
    out.deg1_free_rank = deg1.free_rank();
    out.deg1_torsion = deg1.torsion();
    out.deg1_uncountable = integral.tau_count() > 0;
    out.degn_uncountable = integral.sigma_count() > 0;

    for (std::int64_t p : primes)
        out.gamma[p] = gamma_dim(end_algebra(s, CoefficientRing::prime_field(p)));
    return out;
}

struct Verdict {
    bool distinguished = false;
    std::string witness; // empty when not distinguished

    std::string to_string() const
    {
        return distinguished ? "DISTINGUISHED by " + witness
                             : "not distinguished by computed invariants";
    }
};

/// Unequal summaries certify that the underlying spaces are not properly
/// homotopy equivalent; equal summaries decide nothing.  The tau summand
/// count is deliberately not compared, only its presence.
inline Verdict distinguish(const InvariantSummary& a, const InvariantSummary& b)
{
    if (a.n != b.n)
        throw std::invalid_argument("distinguish: incomparable summaries (" +
                                    std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
    for (int k = 2; k <= a.n - 1; ++k)
        if (a.middle.at(k) != b.middle.at(k))
            return {true, "degree-" + std::to_string(k) + " class"};
    if (a.deg1_uncountable != b.deg1_uncountable)
        return {true, "degree-1 uncountable flag"};
    if (a.deg1_free_rank != b.deg1_free_rank)
        return {true, "degree-1 free rank"};
    if (a.deg1_torsion != b.deg1_torsion)
        return {true, "degree-1 torsion"};
    if (a.degn_uncountable != b.degn_uncountable)
        return {true, "degree-" + std::to_string(a.n) + " uncountable flag"};
    for (const auto& [p, g] : a.gamma) {
        auto it = b.gamma.find(p);
        if (it != b.gamma.end() && it->second != g)
            return {true, "gamma[" + std::to_string(p) + "]"};
    }
    return {false, {}};
}

struct CensusRow {
    NodeId u = 0;
    NodeId v = 0;
    std::string label_u;
    std::string label_v;
    InvariantSummary summary;
};

struct CensusTable {
    std::vector<CensusRow> rows;
    std::size_t distinct = 0;
};

/// All self-sums of s: one row per unordered choice of a node in each of two
/// copies.  The distinct count is the number of pairwise-distinguished
/// summary classes among the rows.
inline CensusTable self_csi_census(const Space& s, const std::vector<std::int64_t>& primes)
{
    if (primes.empty())
        throw std::invalid_argument("self_csi_census: prime list must be nonempty");
    CensusTable out;
    for (NodeId u = 0; u < s.node_count(); ++u)
        for (NodeId v = u; v < s.node_count(); ++v) {
            Space merged = csi(s, u, s, v);
            out.rows.push_back(CensusRow{u, v, s.node(u).label.to_string(),
                                         s.node(v).label.to_string(),
                                         summarize(merged, primes)});
        }
    std::vector<const InvariantSummary*> reps;
    for (const CensusRow& row : out.rows) {
        bool fresh = true;
        for (const InvariantSummary* rep : reps)
            if (!distinguish(row.summary, *rep).distinguished) {
                fresh = false;
                break;
            }
        if (fresh)
            reps.push_back(&row.summary);
    }
    out.distinct = reps.size();
    return out;
}

} // namespace endsum
