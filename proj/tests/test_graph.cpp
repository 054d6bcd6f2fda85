#include "sinkless/graph.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace sinkless;
namespace th = sinkless::testing;

TEST_CASE("validate accepts the 1-factorised K4") {
    CHECK(validate(th::k4_coloured()).ok);
}

TEST_CASE("validate rejects a triangle posing as 3-regular") {
    GraphData g = th::cycle(3);
    g.d = 3;
    ValidationResult r = validate(g);
    CHECK_FALSE(r.ok);
    CHECK(r.invariant == "degree = d");
}

TEST_CASE("validate rejects an improper colouring and names the node") {
    GraphData g = th::k4_coloured();
    g.edges[1].colour = 1;         // {2,3} now clashes with {0,2} or {1,3} at a node
    ValidationResult r = validate(g);
    CHECK_FALSE(r.ok);
    CHECK(r.invariant == "proper edge colouring");
    CHECK_FALSE(r.witness.empty());
}

TEST_CASE("validate rejects loops and parallel edges") {
    GraphData g;
    g.n = 2;
    g.d = 2;
    g.edges = {{0, 0, 0}, {0, 1, 1}};
    CHECK(validate(g).invariant == "no loops");
    g.edges = {{0, 1, 0}, {1, 0, 1}};
    CHECK(validate(g).invariant == "no parallel edges");
}

TEST_CASE("girth on the standard small graphs") {
    CHECK(*girth(th::k4_coloured()).girth == 3);
    CHECK(*girth(th::k33()).girth == 4);
    CHECK(*girth(th::petersen()).girth == 5); // matches the brute-force oracle below
    CHECK(th::brute_force_girth(th::petersen()) == 5);

    GraphData path;
    path.n = 3;
    path.d = 1;
    path.edges = {{0, 1, -1}, {1, 2, -1}};
    CHECK_FALSE(girth(path).girth.has_value());
}

TEST_CASE("girth witness is a simple cycle of the reported length") {
    for (const GraphData& g : {th::k4_coloured(), th::k33(), th::petersen(), th::cycle(7)}) {
        GirthReport r = girth(g);
        REQUIRE(r.girth.has_value());
        REQUIRE(static_cast<int>(r.witness_cycle.size()) == *r.girth);
        std::set<int> uniq(r.witness_cycle.begin(), r.witness_cycle.end());
        CHECK(uniq.size() == r.witness_cycle.size());
        std::set<std::pair<int, int>> edges;
        for (const auto& e : g.edges) edges.insert(std::minmax(e.u, e.v));
        for (size_t i = 0; i < r.witness_cycle.size(); ++i) {
            int u = r.witness_cycle[i], v = r.witness_cycle[(i + 1) % r.witness_cycle.size()];
            CHECK(edges.count(std::minmax(u, v)) == 1);
        }
    }
}

TEST_CASE("girth agrees with exhaustive cycle enumeration on random graphs, n <= 10") {
    for (uint64_t seed = 0; seed < 60; ++seed) {
        GraphData g;
        g.n = 4 + static_cast<int>(stream_below(seed, {1}, 7));
        g.d = 0;
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (stream_below(seed, {2, static_cast<uint64_t>(u * 16 + v)}, 100) < 35)
                    g.edges.push_back({u, v, -1});
        int oracle = th::brute_force_girth(g);
        GirthReport r = girth(g);
        if (oracle == -1) CHECK_FALSE(r.girth.has_value());
        else CHECK(*r.girth == oracle);
    }
}

TEST_CASE("bipartite double cover of C5 is C10") {
    GraphData cover = bipartite_double_cover(th::cycle(5));
    CHECK(cover.n == 10);
    CHECK(th::isomorphic(cover, th::cycle(10, 0)));
}

TEST_CASE("bipartite double cover of a bipartite graph is two disjoint copies") {
    GraphData cover = bipartite_double_cover(th::cycle(6));
    // two components, each a 6-cycle
    CHECK(cover.n == 12);
    GirthReport r = girth(cover);
    CHECK(*r.girth == 6);
    SimpleGraph sg(cover.n, [&] {
        std::vector<std::pair<int, int>> es;
        for (const auto& e : cover.edges) es.emplace_back(e.u, e.v);
        return es;
    }());
    CHECK(sg.is_regular(2));
}

TEST_CASE("bipartite double cover of K4 is the 3-cube") {
    GraphData q3;
    q3.n = 8;
    q3.d = 3;
    for (int u = 0; u < 8; ++u)
        for (int b = 0; b < 3; ++b) {
            int v = u ^ (1 << b);
            if (u < v) q3.edges.push_back({u, v, -1});
        }
    GraphData cover = bipartite_double_cover(th::k4_coloured());
    CHECK(th::isomorphic(cover, q3));
}

TEST_CASE("double cover keeps regularity, bipartiteness and girth") {
    for (const GraphData& g : {th::k4_coloured(), th::petersen(), th::k33()}) {
        GraphData cover = bipartite_double_cover(g);
        CHECK(bipartition(cover).has_value());
        GirthReport before = girth(g), after = girth(cover);
        REQUIRE(after.girth.has_value());
        CHECK(*after.girth >= *before.girth);
    }
}

TEST_CASE("konig_edge_colour colours C6 with two alternating colours") {
    GraphData c6 = th::cycle(6, 0);
    c6.d = 2;
    EdgeColouredGraph g = konig_edge_colour(c6);
    CHECK(validate(g.data()).ok);
}

TEST_CASE("konig_edge_colour handles Q3 and K33; colour classes are perfect matchings") {
    GraphData q3 = bipartite_double_cover(th::k4_coloured());
    for (const GraphData& base : {q3, th::k33()}) {
        EdgeColouredGraph g = konig_edge_colour(base);
        CHECK(validate(g.data()).ok);
        for (int c = 0; c < g.degree(); ++c) {
            std::set<int> covered;
            for (const auto& e : g.edges())
                if (e.colour == c) {
                    CHECK(covered.insert(e.u).second);
                    CHECK(covered.insert(e.v).second);
                }
            CHECK(static_cast<int>(covered.size()) == g.node_count());
        }
    }
}

TEST_CASE("konig_edge_colour rejects non-bipartite and non-regular input") {
    CHECK_THROWS_AS(konig_edge_colour(th::petersen()), PreconditionError);
    GraphData path;
    path.n = 3;
    path.d = 2;
    path.edges = {{0, 1, -1}, {1, 2, -1}};
    CHECK_THROWS_AS(konig_edge_colour(path), PreconditionError);
}

TEST_CASE("generator: n=6 d=2 girth 4 gives the alternating 6-cycle") {
    EdgeColouredGraph g = generate_regular_high_girth(6, 2, 4, 123);
    CHECK(validate(g.data()).ok);
    CHECK(*girth(g).girth == 6);
}

TEST_CASE("generator: n=20 d=3 girth 6 output passes the checkers") {
    EdgeColouredGraph g = generate_regular_high_girth(20, 3, 6, 7);
    CHECK(validate(g.data()).ok);
    CHECK(*girth(g).girth >= 6);
    CHECK(bipartition(g.data()).has_value());
}

TEST_CASE("generator: impossible girth hits the attempt cap") {
    CHECK_THROWS_AS(generate_regular_high_girth(4, 3, 6, 1, 200), ResourceError);
}

TEST_CASE("generator is deterministic given the seed") {
    EdgeColouredGraph a = generate_regular_high_girth(20, 3, 6, 42);
    EdgeColouredGraph b = generate_regular_high_girth(20, 3, 6, 42);
    REQUIRE(a.edge_count() == b.edge_count());
    for (int i = 0; i < a.edge_count(); ++i) {
        CHECK(a.edge(i).u == b.edge(i).u);
        CHECK(a.edge(i).v == b.edge(i).v);
        CHECK(a.edge(i).colour == b.edge(i).colour);
    }
}

TEST_CASE("generator property: accepted outputs validate, are bipartite, meet girth_min") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, seed);
        CHECK(validate(g.data()).ok);
        CHECK(bipartition(g.data()).has_value());
        CHECK(*girth(g).girth >= 6);
    }
}

TEST_CASE("graph text format round-trips and reports parse errors with line numbers") {
    EdgeColouredGraph g = generate_regular_high_girth(12, 3, 4, 5);
    std::ostringstream out;
    write_graph(out, g.data(), "test");
    std::istringstream in(out.str());
    GraphData back = parse_graph(in, "roundtrip");
    CHECK(validate(back).ok);
    CHECK(back.edges.size() == g.data().edges.size());

    std::istringstream bad("4 3\n0 1 0\n0 4 1\n");
    try {
        parse_graph(bad, "bad");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}
