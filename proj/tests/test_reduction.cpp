#include "sinkless/reduction.hpp"

#include "sinkless/errors.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <queue>
#include <sstream>

using namespace sinkless;
namespace th = sinkless::testing;

namespace {

// Desargues graph: bipartite double cover of Petersen, Konig-coloured.
EdgeColouredGraph desargues() {
    return konig_edge_colour(bipartite_double_cover(th::petersen()));
}

std::vector<int> bfs_dist(const EdgeColouredGraph& g, int from) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<int> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int c = 0; c < g.degree(); ++c) {
            int y = g.neighbour(x, c);
            if (dist[y] == -1) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }
    return dist;
}

} // namespace

TEST_CASE("contracting Desargues gives a simple 4-regular graph on 10 nodes") {
    EdgeColouredGraph g = desargues();
    REQUIRE(*girth(g).girth >= 5);
    ContractionMap map = contract_colour2(g);
    CHECK(map.contracted.node_count() == 10);
    CHECK(map.contracted.is_regular(4));
    CHECK(map.contracted.edge_count() == 20);
}

TEST_CASE("contracting K4 fails the girth precondition") {
    EdgeColouredGraph k4 = EdgeColouredGraph::from_data(th::k4_coloured());
    CHECK_THROWS_AS(contract_colour2(k4), PreconditionError);
}

TEST_CASE("the edge bijection round-trips") {
    EdgeColouredGraph g = generate_regular_high_girth(32, 3, 6, 15);
    ContractionMap map = contract_colour2(g);
    for (int j = 0; j < map.contracted.edge_count(); ++j)
        CHECK(map.contracted_edge_of[map.lifted_edge_of[j]] == j);
    for (int i = 0; i < g.edge_count(); ++i) {
        if (g.edge(i).colour == 2) CHECK(map.contracted_edge_of[i] == -1);
        else CHECK(map.lifted_edge_of[map.contracted_edge_of[i]] == i);
    }
    CHECK(map.contracted.node_count() == g.node_count() / 2);
}

TEST_CASE("structural contraction suite over generated instances") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, seed);
        ContractionMap map = contract_colour2(g);
        CHECK(map.contracted.is_regular(4));
        // the bijection respects the pairs: l({a,b}) = {u,v} with u in a, v in b
        for (int j = 0; j < map.contracted.edge_count(); ++j) {
            auto [a, b] = map.contracted.edges()[j];
            const ColouredEdge& e = g.edge(map.lifted_edge_of[j]);
            CHECK(e.colour < 2);
            std::set<int> pairs{map.pair_of_node[e.u], map.pair_of_node[e.v]};
            CHECK(pairs == std::set<int>{a, b});
        }
    }
}

TEST_CASE("leader election follows the y-substream and flags ties") {
    EdgeColouredGraph g = generate_regular_high_girth(12, 3, 4, 2);
    // R = 2: y is bit 1; craft tapes so edge endpoints differ in bit 1
    std::vector<uint64_t> words(g.node_count(), 0b00);
    LeaderAssignment all_tie = elect_leaders(g, RandomTape(g.node_count(), 2, std::vector<uint64_t>(words)));
    CHECK(all_tie.tie_assisted);
    for (size_t r = 0; r < all_tie.pair_edge.size(); ++r) {
        CHECK(all_tie.tie[r]);
        const ColouredEdge& e = g.edge(all_tie.pair_edge[r]);
        CHECK(all_tie.leader[r] == std::min(e.u, e.v)); // ties resolve to the smaller id
    }

    for (size_t r = 0; r < all_tie.pair_edge.size(); ++r) {
        const ColouredEdge& e = g.edge(all_tie.pair_edge[r]);
        words[e.u] = 0b10; // y bit set
        words[e.v] = 0b00;
    }
    LeaderAssignment led = elect_leaders(g, RandomTape(g.node_count(), 2, std::vector<uint64_t>(words)));
    CHECK_FALSE(led.tie_assisted);
    for (size_t r = 0; r < led.pair_edge.size(); ++r) {
        const ColouredEdge& e = g.edge(led.pair_edge[r]);
        CHECK(led.leader[r] == e.u);
        CHECK(led.relay[r] == e.v);
    }
}

TEST_CASE("leader side is balanced over 1000 sampled tapes") {
    EdgeColouredGraph g = generate_regular_high_girth(20, 3, 6, 5);
    int64_t smaller_side = 0, total = 0;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        RandomTape tape = sample_tape(g.node_count(), 16, seed);
        LeaderAssignment led = elect_leaders(g, tape);
        for (size_t r = 0; r < led.pair_edge.size(); ++r) {
            const ColouredEdge& e = g.edge(led.pair_edge[r]);
            smaller_side += led.leader[r] == std::min(e.u, e.v);
            ++total;
        }
    }
    double frac = static_cast<double>(smaller_side) / total;
    CHECK(frac >= 0.45);
    CHECK(frac <= 0.55);
}

TEST_CASE("adjacent contracted nodes have leaders within distance 3") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, 3);
        ContractionMap map = contract_colour2(g);
        RandomTape tape = sample_tape(g.node_count(), 8, seed);
        LeaderAssignment led = elect_leaders(g, tape);
        for (auto [a, b] : map.contracted.edges()) {
            auto dist = bfs_dist(g, led.leader[a]);
            CHECK(dist[led.leader[b]] <= 3);
        }
    }
}

namespace {

MessageAlgorithm constant_output_algorithm() {
    MessageAlgorithm alg;
    alg.round_bound = 0;
    alg.init = [](const NodeContext& ctx) { return std::any(static_cast<int>(ctx.tape_word)); };
    alg.send = [](const std::any&, int) { return std::vector<std::optional<Message>>(4); };
    alg.receive = [](std::any&, int, const std::vector<std::optional<Message>>&) {};
    alg.output = [](const std::any& st) {
        return std::optional<std::vector<int>>{{std::any_cast<int>(st)}};
    };
    return alg;
}

// two rounds of neighbourhood sums: enough structure to catch routing bugs
MessageAlgorithm sum_algorithm(int rounds) {
    struct S {
        int64_t acc = 0;
        int done = 0;
        int degree = 0;
    };
    MessageAlgorithm alg;
    alg.round_bound = rounds;
    alg.init = [](const NodeContext& ctx) {
        return std::any(S{static_cast<int64_t>(ctx.tape_word) + ctx.node, 0, ctx.degree});
    };
    alg.send = [](const std::any& st, int) {
        const auto& s = std::any_cast<const S&>(st);
        return std::vector<std::optional<Message>>(s.degree, Message{s.acc});
    };
    alg.receive = [](std::any& st, int r, const std::vector<std::optional<Message>>& in) {
        auto& s = std::any_cast<S&>(st);
        for (const auto& m : in)
            if (m) s.acc += (*m)[0];
        s.done = r;
    };
    alg.output = [rounds](const std::any& st) -> std::optional<std::vector<int>> {
        const auto& s = std::any_cast<const S&>(st);
        if (s.done < rounds) return std::nullopt;
        return std::vector<int>{static_cast<int>(s.acc & 0x7fffffff)};
    };
    return alg;
}

} // namespace

TEST_CASE("simulating a 0-round algorithm costs only the setup rounds") {
    EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, 3);
    ContractionMap map = contract_colour2(g);
    RandomTape tape = sample_tape(g.node_count(), 4, 9);
    SimulationResult r = simulate_in_contracted(constant_output_algorithm(), g, map, tape, 100);
    CHECK(r.g_rounds == 2);
    CHECK(r.simulated_rounds == 0);
}

TEST_CASE("simulation agrees with direct execution on the contracted graph") {
    EdgeColouredGraph g = generate_regular_high_girth(24, 3, 6, 3);
    ContractionMap map = contract_colour2(g);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        RandomTape tape = sample_tape(g.node_count(), 8, seed);
        MessageAlgorithm alg = sum_algorithm(2);
        SimulationResult sim = simulate_in_contracted(alg, g, map, tape, 100);
        CHECK(sim.g_rounds == 2 + 3 * 2);

        // direct run with the leaders' z-substreams
        std::vector<uint64_t> z_words;
        for (int a = 0; a < map.contracted.node_count(); ++a)
            z_words.push_back(tape.z_word(sim.leaders.leader[a]));
        RandomTape z_tape(map.contracted.node_count(), tape.z_bits(), std::move(z_words));
        RunResult direct =
            run_message_passing(alg, PortNetwork::from(map.contracted), z_tape, 10);
        CHECK(direct.rounds_used == 2);
        CHECK(direct.outputs == sim.outputs);
    }
}

TEST_CASE("lifting a sinkless orientation of the contracted graph is sink-free") {
    EdgeColouredGraph g = desargues();
    ContractionMap map = contract_colour2(g);
    RandomTape tape = sample_tape(g.node_count(), 8, 77);
    LeaderAssignment led = elect_leaders(g, tape);
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Orientation sp = th::random_sinkless_orientation(map.contracted.node_count(),
                                                         map.contracted.edges(), seed);
        REQUIRE(verify_orientation(map.contracted, sp).empty());
        Orientation lifted = lift_orientation(g, map, led, sp);
        CHECK(verify_orientation(g, lifted).empty());
    }
}

TEST_CASE("a contracted sink lifts to a sink at one of its two constituents") {
    EdgeColouredGraph g = desargues();
    ContractionMap map = contract_colour2(g);
    RandomTape tape = sample_tape(g.node_count(), 8, 78);
    LeaderAssignment led = elect_leaders(g, tape);
    // make node a = 0 of G' a sink, everything else oriented away where possible
    Orientation sp;
    sp.toward_max.assign(map.contracted.edge_count(), 0);
    for (int j = 0; j < map.contracted.edge_count(); ++j) {
        auto [a, b] = map.contracted.edges()[j];
        sp.toward_max[j] = b == 0 ? 1 : 0; // head = 0 where incident, else head = min
    }
    REQUIRE(std::find(verify_orientation(map.contracted, sp).begin(),
                      verify_orientation(map.contracted, sp).end(), 0) !=
            verify_orientation(map.contracted, sp).end());
    Orientation lifted = lift_orientation(g, map, led, sp);
    auto sinks = verify_orientation(g, lifted);
    REQUIRE_FALSE(sinks.empty());
    const ColouredEdge& pair0 = g.edge(map.pair_edge_of[0]);
    bool hits_pair = false;
    for (int s : sinks) hits_pair = hits_pair || s == pair0.u || s == pair0.v;
    CHECK(hits_pair);
}

TEST_CASE("the colour-2 edge flips exactly with the relay's low-colour out-edges") {
    EdgeColouredGraph g = desargues();
    ContractionMap map = contract_colour2(g);
    LeaderAssignment led = elect_leaders(g, sample_tape(g.node_count(), 8, 79));
    int rank = 0;
    int relay = led.relay[rank];
    int pair_edge = led.pair_edge[rank];

    // orientation A: both low-colour edges of the relay point into the relay
    Orientation sp;
    sp.toward_max.assign(map.contracted.edge_count(), 0);
    for (int c = 0; c < 2; ++c) {
        int j = map.contracted_edge_of[g.incident_edge(relay, c)];
        auto [pa, pb] = map.contracted.edges()[j];
        (void)pa;
        sp.toward_max[j] = map.pair_of_node[relay] == pb ? 1 : 0;
    }
    Orientation inward_lift = lift_orientation(g, map, led, sp);
    const ColouredEdge& pe = g.edge(pair_edge);
    CHECK((inward_lift.toward_max[pair_edge] ? pe.v : pe.u) == led.leader[rank]);

    // orientation B: one relay edge flips outward, so the colour-2 edge flips too
    int j0 = map.contracted_edge_of[g.incident_edge(relay, 0)];
    sp.toward_max[j0] ^= 1;
    Orientation outward_lift = lift_orientation(g, map, led, sp);
    CHECK((outward_lift.toward_max[pair_edge] ? pe.v : pe.u) == relay);
}

TEST_CASE("solve_so_via_lll produces verified sinkless orientations") {
    EdgeColouredGraph g = generate_regular_high_girth(64, 3, 6, 33);
    ContractionMap check_map = contract_colour2(g);
    for (uint64_t seed = 0; seed < 25; ++seed) {
        SolveSoResult r = solve_so_via_lll(g, seed);
        REQUIRE(r.stats.success);
        CHECK(verify_orientation(g, r.orientation).empty());
        CHECK(r.map.contracted.node_count() == g.node_count() / 2);
    }
    (void)check_map;
}

TEST_CASE("solve_so_via_lll rejects girth-4 input") {
    EdgeColouredGraph k33 = EdgeColouredGraph::from_data(th::k33());
    CHECK_THROWS_AS(solve_so_via_lll(k33, 1), PreconditionError);
}

TEST_CASE("the instance built from the contraction has n/2 events") {
    EdgeColouredGraph g = generate_regular_high_girth(32, 3, 6, 8);
    ContractionMap map = contract_colour2(g);
    LllInstance inst = build_so_lll_instance(map.contracted);
    CHECK(inst.event_count() == g.node_count() / 2);
}
