#include "sinkless/problems.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/reduction.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace sinkless;
namespace th = sinkless::testing;

TEST_CASE("verify_orientation: directed cycle has no sinks, all-inward star has one") {
    EdgeColouredGraph c6 = EdgeColouredGraph::from_data(th::cycle(6));
    Orientation around;
    // orient i -> i+1 (mod 6): for the wrap edge {0,5} head is 0
    for (int i = 0; i < c6.edge_count(); ++i) {
        const ColouredEdge& e = c6.edge(i);
        around.toward_max.push_back(e.v == e.u + 1 ? 1 : 0);
    }
    CHECK(verify_orientation(c6, around).empty());

    SimpleGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
    Orientation inward{{0, 0, 0}}; // all heads are node 0
    CHECK(verify_orientation(star, inward) == std::vector<int>{0});
}

TEST_CASE("verify_orientation: tournament on K4 with a dominant loser") {
    SimpleGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    // node 3 loses every incident comparison: edges {0,3},{1,3},{2,3} point to 3... then 3 is NOT a sink.
    // A sink has all incident edges inward: make node 0 the dominant loser.
    Orientation o{{0, 0, 0, 1, 1, 1}}; // {0,x} all head 0; the rest arbitrary
    auto sinks = verify_orientation(k4, o);
    CHECK(sinks == std::vector<int>{0});
}

TEST_CASE("verify_colouring: proper node colourings are sinkless") {
    EdgeColouredGraph g = generate_regular_high_girth(16, 3, 6, 4);
    auto side = bipartition(g.data());
    REQUIRE(side.has_value());
    Colouring proper;
    for (int v = 0; v < g.node_count(); ++v) proper.colour.push_back((*side)[v]);
    CHECK(verify_colouring(g, proper).empty());
}

TEST_CASE("verify_colouring: all-zero colouring flags exactly the colour-0 edges") {
    EdgeColouredGraph g = generate_regular_high_girth(16, 3, 6, 4);
    Colouring zero;
    zero.colour.assign(g.node_count(), 0);
    auto bad = verify_colouring(g, zero);
    std::vector<int> expect;
    for (int i = 0; i < g.edge_count(); ++i)
        if (g.edge(i).colour == 0) expect.push_back(i);
    CHECK(bad == expect);
}

TEST_CASE("verify_colouring agrees with hand enumeration on a 6-node instance") {
    EdgeColouredGraph g = EdgeColouredGraph::from_data(th::k33());
    Colouring c{{0, 1, 2, 2, 1, 0}};
    auto bad = verify_colouring(g, c);
    std::vector<int> expect;
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        if (c.colour[e.u] == e.colour && c.colour[e.v] == e.colour) expect.push_back(i);
    }
    CHECK(bad == expect);
}

TEST_CASE("bridge: sinkless colouring -> orientation -> no sinks (and back)") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, seed);
        Orientation o = th::random_sinkless_orientation(g.node_count(), plain_edges(g), seed);
        REQUIRE(verify_orientation(g, o).empty());
        Colouring c = colouring_from_orientation(g, o);
        CHECK(verify_colouring(g, c).empty());
        Orientation o2 = orientation_from_colouring(g, c);
        CHECK(verify_orientation(g, o2).empty());
    }
}

namespace {

LllInstance two_disjoint_events() {
    std::vector<LllVariable> vars{{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}};
    std::vector<LllEvent> events(2);
    events[0].vars = {0, 1};
    events[0].bad = {0}; // (0,0)
    events[1].vars = {2, 3};
    events[1].bad = {3}; // (1,1)
    return LllInstance(std::move(vars), std::move(events));
}

} // namespace

TEST_CASE("dependency graph: disjoint events are isolated, chains make paths") {
    CHECK(dependency_graph(two_disjoint_events()).edge_count() == 0);

    std::vector<LllVariable> vars{{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}};
    std::vector<LllEvent> events(3);
    events[0].vars = {0, 1};
    events[1].vars = {1, 2};
    events[2].vars = {2, 3};
    LllInstance chain(std::move(vars), std::move(events));
    SimpleGraph dep = dependency_graph(chain);
    CHECK(dep.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("4-regular sinkless-orientation instance: dependency graph equals the source graph") {
    EdgeColouredGraph base = generate_regular_high_girth(16, 4, 4, 6);
    SimpleGraph g4 = strip_colours(base);
    LllInstance inst = build_so_lll_instance(g4);
    SimpleGraph dep = dependency_graph(inst);
    CHECK(dep.edges() == g4.edges()); // events are the nodes, labels preserved
}

TEST_CASE("LLL criteria on the 4-regular instance: p = 1/16, d = 4, p*f(4) = 1") {
    EdgeColouredGraph base = generate_regular_high_girth(16, 4, 4, 6);
    LllInstance inst = build_so_lll_instance(strip_colours(base));
    CriterionReport r = check_lll_criterion(inst, LllCriterion::p_f_d, rat(16));
    CHECK(r.p == rat(1, 16));
    CHECK(r.dependency_degree == 4);
    CHECK(r.lhs == Rational(1));
    CHECK(r.margin == Rational(0));
    CHECK(r.satisfied);
}

TEST_CASE("LLL criteria on the 3-regular instance: e*p*(d+1) > 1") {
    // 3-regular sinkless orientation: p = 1/8, d = 3
    EdgeColouredGraph g = generate_regular_high_girth(16, 3, 6, 1);
    SimpleGraph g3 = strip_colours(g);
    std::vector<LllVariable> vars;
    for (auto [u, v] : g3.edges()) vars.push_back({"x" + std::to_string(u) + "_" + std::to_string(v), 2});
    std::vector<LllEvent> events(g3.node_count());
    for (int v = 0; v < g3.node_count(); ++v) {
        uint64_t packed = 0, mult = 1;
        for (auto [w, e] : g3.adjacent(v)) {
            events[v].vars.push_back(e);
        }
        std::sort(events[v].vars.begin(), events[v].vars.end());
        for (int e : events[v].vars) {
            packed += mult * static_cast<uint64_t>(g3.edges()[e].second == v ? 0 : 1);
            mult *= 2;
        }
        events[v].bad = {packed};
    }
    LllInstance inst(std::move(vars), std::move(events));
    CriterionReport r = check_lll_criterion(inst, LllCriterion::euler_p_d_plus_1);
    CHECK(r.p == rat(1, 8));
    CHECK(r.dependency_degree == 3);
    CHECK_FALSE(r.satisfied);
}

TEST_CASE("LLL criteria: an instance with no bad tuples is trivially accepted") {
    std::vector<LllVariable> vars{{"a", 3}};
    std::vector<LllEvent> events(1);
    events[0].vars = {0};
    LllInstance inst(std::move(vars), std::move(events));
    CriterionReport r = check_lll_criterion(inst, LllCriterion::four_p_d);
    CHECK(r.p == Rational(0));
    CHECK(r.satisfied);
}

TEST_CASE("reported p equals brute-force frequency over full enumeration") {
    LllInstance inst = two_disjoint_events();
    // enumerate all 2^4 global assignments and count occurrences per event
    for (int ev = 0; ev < inst.event_count(); ++ev) {
        int64_t hits = 0, total = 0;
        for (int a = 0; a < 16; ++a) {
            Assignment as{{a & 1, (a >> 1) & 1, (a >> 2) & 1, (a >> 3) & 1}};
            std::vector<int> values;
            for (int x : inst.event(ev).vars) values.push_back(as.value[x]);
            hits += inst.event_occurs(ev, values);
            ++total;
        }
        CHECK(inst.event_probability(ev) == Rational(BigInt(hits), BigInt(total)));
    }
}

TEST_CASE("check_assignment accepts consistency and rejects disagreement or bad tuples") {
    std::vector<LllVariable> vars{{"a", 2}, {"b", 2}, {"c", 2}};
    std::vector<LllEvent> events(2);
    events[0].vars = {0, 1};
    events[0].bad = {0}; // (a,b) = (0,0)
    events[1].vars = {1, 2};
    events[1].bad = {3}; // (b,c) = (1,1)
    LllInstance inst(std::move(vars), std::move(events));

    std::vector<EventAssignment> good{{{1, 0}}, {{0, 1}}};
    CHECK(check_assignment(inst, good).ok);

    std::vector<EventAssignment> disagree{{{1, 0}}, {{1, 1}}};
    AssignmentCheck r = check_assignment(inst, disagree);
    CHECK_FALSE(r.ok);
    CHECK(r.variable == 1);
    CHECK(r.event_a != r.event_b);

    std::vector<EventAssignment> hits_bad{{{0, 0}}, {{0, 1}}};
    AssignmentCheck r2 = check_assignment(inst, hits_bad);
    CHECK_FALSE(r2.ok);
    CHECK(r2.event_a == 0);
}

TEST_CASE("instance files round-trip") {
    EdgeColouredGraph base = generate_regular_high_girth(12, 4, 4, 2);
    LllInstance inst = build_so_lll_instance(strip_colours(base));
    std::ostringstream out;
    write_instance(out, inst, "roundtrip");
    std::istringstream in(out.str());
    LllInstance back = parse_instance(in, "mem");
    REQUIRE(back.variable_count() == inst.variable_count());
    REQUIRE(back.event_count() == inst.event_count());
    for (int ev = 0; ev < inst.event_count(); ++ev) {
        CHECK(back.event(ev).vars == inst.event(ev).vars);
        CHECK(back.event(ev).bad == inst.event(ev).bad);
    }
    CHECK(back.max_event_probability() == rat(1, 16));
}

TEST_CASE("orientation and colouring files round-trip") {
    EdgeColouredGraph g = generate_regular_high_girth(12, 3, 4, 8);
    auto edges = plain_edges(g);
    Orientation o = th::random_sinkless_orientation(g.node_count(), edges, 5);
    std::ostringstream out;
    write_orientation(out, edges, o, "t");
    std::istringstream in(out.str());
    Orientation back = parse_orientation(in, g.node_count(), edges, "mem");
    CHECK(back.toward_max == o.toward_max);

    Colouring c = colouring_from_orientation(g, o);
    std::ostringstream cout_;
    write_colouring(cout_, c);
    std::istringstream cin_(cout_.str());
    Colouring cback = parse_colouring(cin_, g.node_count(), "mem");
    CHECK(cback.colour == c.colour);
}
