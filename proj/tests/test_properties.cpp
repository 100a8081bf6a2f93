#include "endsum/invariants.hpp"
#include "endsum/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <random>
#include <vector>

using namespace endsum;

namespace {

const CoefficientRing Z = CoefficientRing::integers();

// Random closed 3-manifold: lens spaces and small connected sums of them.
ManifoldExpr random_3manifold(std::mt19937& rng)
{
    std::uniform_int_distribution<int> shape(0, 3);
    std::uniform_int_distribution<std::int64_t> order(1, 12);
    switch (shape(rng)) {
    case 0: return ManifoldExpr::sphere(3);
    case 1: return ManifoldExpr::lens(order(rng));
    case 2: return ManifoldExpr::conn_sum(ManifoldExpr::lens(order(rng)),
                                          ManifoldExpr::lens(order(rng)));
    default:
        return ManifoldExpr::conn_sum(
            ManifoldExpr::conn_sum(ManifoldExpr::lens(order(rng)), ManifoldExpr::lens(order(rng))),
            ManifoldExpr::lens(order(rng)));
    }
}

ManifoldExpr random_surface(std::mt19937& rng)
{
    std::uniform_int_distribution<std::int64_t> genus(0, 3);
    return ManifoldExpr::surface(genus(rng));
}

// Mixed-dimension sample, including torus products of the 3-dimensional ones.
ManifoldExpr random_manifold(std::mt19937& rng)
{
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
    case 0: return random_3manifold(rng);
    case 1: return random_surface(rng);
    case 2: return ManifoldExpr::product(random_3manifold(rng), ManifoldExpr::torus(1));
    default: {
        std::uniform_int_distribution<std::int64_t> k(1, 3);
        return ManifoldExpr::torus(k(rng) + 1);
    }
    }
}

bool pairing_full_rank(const GradedRing& r)
{
    const int n = r.top();
    if (r.dim(n) != 1)
        return false;
    for (int k = 1; k < n; ++k) {
        if (r.dim(k) != r.dim(n - k))
            return false;
        Matrix pairing(r.dim(k), r.dim(n - k));
        for (std::size_t i = 0; i < r.dim(k); ++i)
            for (std::size_t j = 0; j < r.dim(n - k); ++j) {
                std::vector<Int> p = r.generator_product(k, i, n - k, j);
                pairing(i, j) = p.empty() ? Int(0) : p[0];
            }
        if (rank_mod_p(pairing, r.ring().prime()) != r.dim(k))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("random catalog rings satisfy the ring axioms and duality")
{
    std::mt19937 rng(1123581321);
    for (int trial = 0; trial < 60; ++trial) {
        ManifoldExpr m = random_manifold(rng);
        CAPTURE(m.to_string());
        GradedRing integral = cohomology_ring(m, Z);
        REQUIRE(integral.is_graded_commutative());
        REQUIRE(integral.is_associative());
        REQUIRE(integral.respects_annihilators());
        for (std::int64_t p : {2, 3, 5}) {
            GradedRing field = cohomology_ring(m, CoefficientRing::prime_field(p));
            REQUIRE(field.is_graded_commutative());
            REQUIRE(field.is_associative());
            REQUIRE(pairing_full_rank(field));
            GradedRing reduced = reduce_coefficients(integral, p);
            for (int k = 1; k <= reduced.top(); ++k)
                REQUIRE(reduced.module_at(k) == field.module_at(k));
            if (dimension(m) % 2 == 1) {
                std::int64_t chi = 1;
                for (int k = 1; k <= field.top(); ++k)
                    chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(field.dim(k));
                REQUIRE(chi == 0);
            }
        }
    }
}

TEST_CASE("random module canonical forms")
{
    std::mt19937 rng(65537);
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<std::int64_t> order(0, 24); // 0 = a free summand
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> orders;
        for (int i = count(rng); i > 0; --i)
            orders.emplace_back(order(rng));
        FinModule a = iso_class(Z, 0, orders);
        // canonicalization is idempotent
        std::vector<Int> again = a.torsion();
        REQUIRE(iso_class(Z, a.free_rank(), again) == a);
        // the divisor chain is a chain
        for (std::size_t i = 0; i + 1 < a.torsion().size(); ++i)
            REQUIRE(a.torsion()[i + 1] % a.torsion()[i] == 0);
        // direct sums add ranks and concatenate orders
        FinModule b = iso_class(Z, 1, {Int(6)});
        FinModule sum = a.direct_sum(b);
        REQUIRE(sum.free_rank() == a.free_rank() + 1);
        std::vector<Int> merged = a.torsion();
        merged.emplace_back(6);
        REQUIRE(sum == iso_class(Z, a.free_rank() + 1, merged));
    }
}

TEST_CASE("random ladders respect the gamma bound and graph identities")
{
    std::mt19937 rng(2718281);
    for (int trial = 0; trial < 40; ++trial) {
        ManifoldExpr x = random_3manifold(rng);
        ManifoldExpr y = random_3manifold(rng);
        Space ladder = make_ladder(x, y);
        for (std::int64_t p : {2, 3}) {
            std::size_t g = gamma_dim(end_algebra(ladder, CoefficientRing::prime_field(p)));
            REQUIRE(g <= 2);
        }
        // a stringer sum is a merge with a fresh stringer
        ManifoldExpr z = random_3manifold(rng);
        REQUIRE(canonical_key(stringer_sum(ladder, 0, z)) ==
                canonical_key(csi(ladder, 0, make_stringer(z), 0)));
        // summaries ignore edge orientation
        REQUIRE(summarize(ladder, {2, 3}) == summarize(ladder.with_reversed_edge(0), {2, 3}));
    }
}

TEST_CASE("random ladders agree with the truncated oracle")
{
    std::mt19937 rng(31415926);
    for (int trial = 0; trial < 12; ++trial) {
        ManifoldExpr x = random_3manifold(rng);
        ManifoldExpr y = random_3manifold(rng);
        Space ladder = make_ladder(x, y);
        for (std::int64_t p : {2, 3}) {
            const CoefficientRing f = CoefficientRing::prime_field(p);
            TruncatedSystem sys = oracle_system(ladder, f, 4);
            EndAlgebra closed = end_algebra(ladder, f);
            for (int k = 1; k <= 3; ++k) {
                LimitModule lim = limit_module(sys, k);
                REQUIRE(lim.stabilized);
                REQUIRE(lim.module.free_rank() == closed.finite_dim(k));
            }
            LimitGamma lg = limit_gamma_dim(sys, p);
            REQUIRE(lg.dim == gamma_dim(closed));
            REQUIRE(check_surjectivity(sys));
        }
    }
}

TEST_CASE("random self-merges keep census sizes and gamma bounds")
{
    std::mt19937 rng(8675309);
    std::uniform_int_distribution<std::size_t> pick_count(1, 3);
    const std::vector<std::int64_t> primes{2, 3, 5};
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<std::int64_t> chain;
        std::sample(primes.begin(), primes.end(), std::back_inserter(chain), pick_count(rng), rng);
        Space s = generalized_capped_ladder(chain);
        CensusTable t = self_csi_census(s, primes);
        const std::size_t m = s.node_count();
        REQUIRE(t.rows.size() == m * (m + 1) / 2);
        for (const CensusRow& row : t.rows)
            for (const auto& [p, g] : row.summary.gamma)
                REQUIRE(g <= 2 * m - 1); // merged space node count
        REQUIRE(t.distinct >= 1);
        REQUIRE(t.distinct <= t.rows.size());
    }
}
