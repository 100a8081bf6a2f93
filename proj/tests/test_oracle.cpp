#include "endsum/invariants.hpp"
#include "endsum/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace endsum;

namespace {

const CoefficientRing Z = CoefficientRing::integers();
ManifoldExpr L(std::int64_t k) { return ManifoldExpr::lens(k); }
ManifoldExpr S(std::int64_t n) { return ManifoldExpr::sphere(n); }

void check_against_closed_form(const Space& s, std::int64_t p, int depth)
{
    const CoefficientRing f = CoefficientRing::prime_field(p);
    TruncatedSystem sys = oracle_system(s, f, depth);
    EndAlgebra closed = end_algebra(s, f);
    for (int k = 1; k <= sys.n(); ++k) {
        LimitModule lim = limit_module(sys, k);
        REQUIRE(lim.stabilized);
        REQUIRE(lim.module.free_rank() == closed.finite_dim(k));
    }
    LimitGamma lg = limit_gamma_dim(sys, p);
    REQUIRE(lg.stabilized);
    REQUIRE(lg.dim == gamma_dim(closed));
    REQUIRE(check_surjectivity(sys));
}

} // namespace

TEST_CASE("truncated stage dimensions")
{
    SECTION("sphere ladder window count")
    {
        TruncatedSystem sys = build_truncated_system(S(3), S(3), CoefficientRing::prime_field(2), 3);
        REQUIRE(sys.stage_dim(3, 0) == 5); // 1 + 3 + 1
        REQUIRE(sys.stage_dim(3, 1) == 4);
        REQUIRE(sys.stage_dim(3, 3) == 2);
        REQUIRE(sys.stage_dim(2, 0) == 0);
        REQUIRE(sys.stage_dim(1, 0) == 3); // window only
    }
    SECTION("lens ladder middle degree is constant")
    {
        TruncatedSystem sys = build_truncated_system(L(2), S(3), CoefficientRing::prime_field(2), 1);
        REQUIRE(sys.stage_dim(2, 0) == 1);
        REQUIRE(sys.stage_dim(2, 1) == 1);
        // exactly one transition map per degree at depth 1
        for (int k = 1; k <= 3; ++k) {
            REQUIRE_NOTHROW(sys.map(k, 0));
            REQUIRE_THROWS(sys.map(k, 1));
        }
    }
    SECTION("input validation")
    {
        REQUIRE_THROWS_AS(build_truncated_system(L(2), ManifoldExpr::surface(1), Z, 2),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(build_truncated_system(L(2), S(3), Z, 0), std::invalid_argument);
    }
}

TEST_CASE("limit modules")
{
    SECTION("lens ladder keeps its middle torsion class at every depth")
    {
        for (int depth : {1, 2, 4, 8}) {
            TruncatedSystem sys =
                build_truncated_system(L(5), S(3), CoefficientRing::prime_field(5), depth);
            LimitModule lim = limit_module(sys, 2);
            REQUIRE(lim.module.free_rank() == 1);
            REQUIRE(lim.stabilized);
        }
    }
    SECTION("sphere ladder has nothing in the middle")
    {
        TruncatedSystem sys = build_truncated_system(S(3), S(3), CoefficientRing::prime_field(2), 4);
        LimitModule lim = limit_module(sys, 2);
        REQUIRE(lim.module.is_zero());
        REQUIRE(lim.stabilized);
    }
    SECTION("degree-1 window coordinates die, node classes survive")
    {
        TruncatedSystem sys = build_truncated_system(L(2), L(2), CoefficientRing::prime_field(2), 4);
        LimitModule lim = limit_module(sys, 1);
        REQUIRE(lim.module.free_rank() == 2);
        REQUIRE(lim.stabilized);
        // the composite to the last stage kills the whole window
        Matrix c = sys.composed_to(1, 4);
        REQUIRE(rank_mod_p(c, 2) == 2);
        REQUIRE(sys.stage_dim(1, 0) == 6);
    }
    SECTION("integer coefficients in the middle degrees only")
    {
        TruncatedSystem sys = build_truncated_system(L(6), S(3), Z, 2);
        LimitModule lim = limit_module(sys, 2);
        REQUIRE(lim.module == iso_class(Z, 0, {Int(6)}));
        REQUIRE_THROWS_AS(limit_module(sys, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(limit_module(sys, 3), std::invalid_argument);
    }
}

TEST_CASE("limit gamma dimensions")
{
    SECTION("pinned ladder values")
    {
        for (std::int64_t p : {2, 3}) {
            TruncatedSystem one = build_truncated_system(
                ManifoldExpr::conn_sum(L(p), L(p)), S(3), CoefficientRing::prime_field(p), 4);
            REQUIRE(limit_gamma_dim(one, p).dim == 1);
            TruncatedSystem two =
                build_truncated_system(L(p), L(p), CoefficientRing::prime_field(p), 4);
            REQUIRE(limit_gamma_dim(two, p).dim == 2);
        }
        TruncatedSystem none = build_truncated_system(S(3), S(3), CoefficientRing::prime_field(2), 4);
        REQUIRE(limit_gamma_dim(none, 2).dim == 0);
    }
    SECTION("prime must match the system field")
    {
        TruncatedSystem sys = build_truncated_system(L(2), S(3), CoefficientRing::prime_field(2), 2);
        REQUIRE_THROWS_AS(limit_gamma_dim(sys, 3), std::invalid_argument);
    }
}

TEST_CASE("surjectivity of the stored transition maps")
{
    REQUIRE(check_surjectivity(build_truncated_system(L(2), S(3), CoefficientRing::prime_field(2), 4)));
    REQUIRE(check_surjectivity(build_truncated_system(S(3), S(3), CoefficientRing::prime_field(3), 2)));
    SECTION("a zeroed map is detected")
    {
        TruncatedSystem sys = build_truncated_system(L(2), S(3), CoefficientRing::prime_field(2), 4);
        Matrix& m = sys.mutable_map(2, 1);
        m = Matrix(m.rows(), m.cols());
        REQUIRE_FALSE(check_surjectivity(sys));
    }
}

TEST_CASE("kernel growth is monotone")
{
    TruncatedSystem sys = build_truncated_system(L(2), L(2), CoefficientRing::prime_field(2), 6);
    for (int k = 1; k <= 3; ++k) {
        std::size_t prev_rank = sys.stage_dim(k, 0);
        for (int j = 1; j <= 6; ++j) {
            std::size_t r = rank_mod_p(sys.composed_to(k, j), 2);
            REQUIRE(r <= prev_rank);
            prev_rank = r;
        }
    }
}

TEST_CASE("stored maps are the duals of the homology transitions")
{
    std::vector<TruncatedSystem> systems{
        build_truncated_system(L(2), S(3), CoefficientRing::prime_field(2), 4),
        build_truncated_system(ManifoldExpr::surface(2), S(2), CoefficientRing::prime_field(3), 3),
        build_truncated_path_system({L(2), L(3), L(5)}, CoefficientRing::prime_field(2), 3),
    };
    for (const TruncatedSystem& sys : systems)
        for (int k = 1; k <= sys.n(); ++k)
            for (int j = 0; j < sys.depth(); ++j)
                REQUIRE(sys.map(k, j) == sys.homology_transition(k, j).transposed());
}

TEST_CASE("edge orientation does not change the limits")
{
    TruncatedSystem forward({L(2), L(2)}, {{0, 1}}, CoefficientRing::prime_field(2), 4);
    TruncatedSystem backward({L(2), L(2)}, {{1, 0}}, CoefficientRing::prime_field(2), 4);
    for (int k = 1; k <= 3; ++k)
        REQUIRE(limit_module(forward, k).module == limit_module(backward, k).module);
    REQUIRE(limit_gamma_dim(forward, 2).dim == limit_gamma_dim(backward, 2).dim);
}

TEST_CASE("oracle agrees with the closed form")
{
    SECTION("the four reference ladders")
    {
        for (int depth : {4, 8}) {
            check_against_closed_form(make_ladder(L(2), S(3)), 2, depth);
            check_against_closed_form(make_ladder(L(3), L(3)), 3, depth);
            check_against_closed_form(make_ladder(ManifoldExpr::conn_sum(L(2), L(2)), S(3)), 2, depth);
            check_against_closed_form(make_ladder(ManifoldExpr::surface(2), S(2)), 2, depth);
        }
    }
    SECTION("a three-node path as a secondary check")
    {
        Space path = generalized_capped_ladder({2, 3, 5});
        for (std::int64_t p : {2, 3, 5})
            check_against_closed_form(path, p, 6);
    }
    SECTION("spaces that are not path-shaped are refused")
    {
        Space triangle({SpaceNode{L(2), {}}, SpaceNode{L(3), {}}, SpaceNode{L(5), {}}},
                       {{0, 1}, {1, 2}, {2, 0}});
        REQUIRE_THROWS_AS(oracle_system(triangle, CoefficientRing::prime_field(2), 4),
                          std::invalid_argument);
    }
}
