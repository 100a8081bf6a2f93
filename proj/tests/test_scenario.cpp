#include "endsum/run.hpp"
#include "endsum/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace endsum;

namespace {

Diagnostic diag_of(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e.diagnostic;
    }
    FAIL("expected a diagnostic for: " + text);
    return {};
}

} // namespace

TEST_CASE("declarations elaborate to spaces")
{
    ScenarioDoc doc = parse_scenario(
        "space Yp = ladder(L(2), S(3)) cap E(2) cap D(4)\n"
        "space Zp = stringer(L(2)) cap E(2)\n"
        "space M1 = csi(Yp @ L(2), Zp @ *)\n"
        "space M2 = csi(Yp @ S(3), Zp @ *)\n"
        "space Chain = M(2,3,5)\n");
    REQUIRE(doc.decl_count() == 5);

    const Space& yp = doc.spaces.at("Yp");
    REQUIRE(yp.node_count() == 2);
    REQUIRE(yp.node(0).caps == std::vector<std::string>{"E(2)"});
    REQUIRE(yp.node(1).caps == std::vector<std::string>{"D(4)"});

    const Space& m1 = doc.spaces.at("M1");
    REQUIRE(m1.node(0).label == ManifoldExpr::conn_sum(ManifoldExpr::lens(2), ManifoldExpr::lens(2)));
    REQUIRE(m1.node(1).label == ManifoldExpr::sphere(3));

    const Space& m2 = doc.spaces.at("M2");
    REQUIRE(m2.node(0).label == ManifoldExpr::lens(2));
    REQUIRE(m2.node(1).label == ManifoldExpr::lens(2));

    REQUIRE(doc.spaces.at("Chain").node_count() == 3);
}

TEST_CASE("manifold grammar")
{
    ScenarioDoc doc = parse_scenario(
        "space A = stringer(L(2) x T(1))\n"
        "space B = stringer(L(2) x T(1) # L(2) x T(1) # S(4))\n"
        "space C = stringer((L(2) # L(2)) x T(1))\n");
    // 'x' binds tighter than '#': B is a sum of three product-or-lens pieces
    REQUIRE(doc.spaces.at("A").dim() == 4);
    ManifoldExpr crossed = ManifoldExpr::product(ManifoldExpr::lens(2), ManifoldExpr::torus(1));
    REQUIRE(doc.spaces.at("B").node(0).label == ManifoldExpr::conn_sum(crossed, crossed));
    REQUIRE(doc.spaces.at("C").node(0).label ==
            ManifoldExpr::product(
                ManifoldExpr::conn_sum(ManifoldExpr::lens(2), ManifoldExpr::lens(2)),
                ManifoldExpr::torus(1)));
}

TEST_CASE("node selection")
{
    SECTION("label patterns resolve after normalization")
    {
        // L(1) normalizes to S(3), so the pattern names the sphere node
        ScenarioDoc doc = parse_scenario(
            "space Y = ladder(L(2), S(3))\n"
            "space Z = stringer(L(2))\n"
            "space M = csi(Y @ L(1), Z @ *)\n");
        REQUIRE(doc.spaces.at("M").node(0).label == ManifoldExpr::lens(2));
        REQUIRE(doc.spaces.at("M").node(1).label == ManifoldExpr::lens(2));
    }
    SECTION("ambiguous labels require an index")
    {
        Diagnostic d = diag_of(
            "space Y = ladder(L(2), L(2))\n"
            "space Z = stringer(L(2))\n"
            "space M = csi(Y @ L(2), Z @ *)\n");
        REQUIRE(d.pos.line == 3);
        REQUIRE(d.message.find("ambiguous") != std::string::npos);
        REQUIRE(d.message.find("@#i") != std::string::npos);

        ScenarioDoc ok = parse_scenario(
            "space Y = ladder(L(2), L(2))\n"
            "space Z = stringer(L(2))\n"
            "space M = csi(Y @ #1, Z @ *)\n");
        REQUIRE(ok.spaces.at("M").node_count() == 2);
    }
    SECTION("star requires a single node")
    {
        Diagnostic d = diag_of(
            "space Y = ladder(L(2), S(3))\n"
            "space M = csi(Y @ *, Y @ L(2))\n");
        REQUIRE(d.pos.line == 2);
        REQUIRE(d.message.find("single-node") != std::string::npos);
    }
    SECTION("self-merge uses two copies")
    {
        ScenarioDoc doc = parse_scenario(
            "space M = M(2,3)\n"
            "space R = csi(M @ L(2), M @ L(3))\n");
        REQUIRE(doc.spaces.at("R").node_count() == 3);
    }
}

TEST_CASE("diagnostics carry position and expectations")
{
    SECTION("dimension mismatch reports both dimensions")
    {
        Diagnostic d = diag_of("space B = ladder(L(2), Sigma(1))\n");
        REQUIRE(d.pos.line == 1);
        REQUIRE(d.message.find("(3 vs 2)") != std::string::npos);
    }
    SECTION("non-prime in a prime list")
    {
        Diagnostic d = diag_of("space Y = ladder(L(2), S(3))\ninvariants Y primes 2,9\n");
        REQUIRE(d.pos.line == 2);
        REQUIRE(d.pos.col == 23);
        REQUIRE(d.message == "9 is not prime");
    }
    SECTION("unknown name")
    {
        Diagnostic d = diag_of("census Missing primes 2\n");
        REQUIRE(d.message == "unknown space 'Missing'");
    }
    SECTION("syntax error lists the expected tokens")
    {
        Diagnostic d = diag_of("space Y = ladder(L(2) S(3))\n");
        REQUIRE(d.pos.line == 1);
        REQUIRE_FALSE(d.expected.empty());
    }
    SECTION("unknown item at top level")
    {
        Diagnostic d = diag_of("spcae Y = ladder(L(2), S(3))\n");
        REQUIRE(d.expected.size() == 5);
    }
    SECTION("redeclaration")
    {
        Diagnostic d = diag_of("space Y = stringer(L(2))\nspace Y = stringer(L(3))\n");
        REQUIRE(d.pos.line == 2);
        REQUIRE(d.message.find("already declared") != std::string::npos);
    }
    SECTION("distinguish checks dimensions at elaboration time")
    {
        Diagnostic d = diag_of(
            "space A = stringer(L(2))\n"
            "space B = stringer(Sigma(1))\n"
            "distinguish A B primes 2\n");
        REQUIRE(d.pos.line == 3);
        REQUIRE(d.message.find("(3 vs 2)") != std::string::npos);
    }
    SECTION("oracle-check rejects non-path spaces")
    {
        Diagnostic d = diag_of(
            "space Y = ladder(L(2), S(3))\n"
            "space W = csi(Y @ L(2), Y @ L(2))\n"
            "space V = csi(W @ #0, W @ #0)\n"
            "oracle-check csi(V @ #0, V @ #0) prime 2 depth 4\n");
        REQUIRE(d.pos.line == 4);
        REQUIRE(d.message.find("path-shaped") != std::string::npos);
    }
    SECTION("caps cannot outnumber nodes")
    {
        Diagnostic d = diag_of("space Z = stringer(L(2)) cap E(2) cap D(4)\n");
        REQUIRE(d.message.find("more caps than nodes") != std::string::npos);
    }
}

TEST_CASE("print and reparse round trip")
{
    const std::string sources[] = {
        "space Yp = ladder(L(2), S(3)) cap E(2) cap D(4)\n"
        "space Zp = stringer(L(2)) cap E(2)\n"
        "space M1 = csi(Yp @ L(2), Zp @ *)\n"
        "invariants M1 primes 2,3\n"
        "distinguish M1 M1 primes 2\n",
        "space M = M(2,3)\n"
        "census M primes 2,3\n"
        "oracle-check ladder(L(2) x T(1), S(4)) prime 2 depth 8\n",
        "space A = stringer((L(2) # L(2)) x T(2))\n"
        "space B = csi(A @ #0, A @ #0)\n"
        "invariants B primes 2\n",
    };
    for (const std::string& src : sources) {
        ScenarioDoc doc = parse_scenario(src);
        std::string printed = doc.print();
        ScenarioDoc again = parse_scenario(printed);
        REQUIRE(again.print() == printed);
    }
}

TEST_CASE("oracle-check depth defaults to 8")
{
    ScenarioDoc doc = parse_scenario("oracle-check ladder(L(2), S(3)) prime 2\n");
    const Directive& dir = std::get<Directive>(doc.items[0]);
    REQUIRE(dir.depth == 8);
    REQUIRE(doc.print() == "oracle-check ladder(L(2), S(3)) prime 2 depth 8\n");
}

TEST_CASE("structured output is deterministic")
{
    const std::string src =
        "space M = M(2,3)\n"
        "census M primes 2,3\n"
        "oracle-check ladder(L(2), S(3)) prime 2 depth 4\n";
    ScenarioDoc doc = parse_scenario(src);
    RunOptions opts;
    opts.structured = true;
    RunOutput a = run_scenario(doc, opts);
    RunOutput b = run_scenario(parse_scenario(src), opts);
    REQUIRE(a.ok);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.find("\"distinct\":3") != std::string::npos);
}

TEST_CASE("directive order is preserved and failures stop the stream")
{
    const std::string src =
        "space A = stringer(L(2) x L(3))\n"
        "space B = stringer(L(2))\n"
        "invariants B primes 2\n"
        "invariants A primes 2\n"
        "invariants B primes 3\n";
    // A's integral data needs a torsion-free product factor, so the second
    // directive fails at run time and the third must not emit
    ScenarioDoc doc = parse_scenario(src);
    RunOutput out = run_scenario(doc, {});
    REQUIRE_FALSE(out.ok);
    REQUIRE(out.out.find("invariants B primes 2") != std::string::npos);
    REQUIRE(out.out.find("primes 3") == std::string::npos);
    REQUIRE(out.log.find("error") != std::string::npos);
}
