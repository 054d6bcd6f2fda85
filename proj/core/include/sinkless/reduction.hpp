#pragma once

#include "sinkless/graph.hpp"
#include "sinkless/message.hpp"
#include "sinkless/mt_solver.hpp"
#include "sinkless/problems.hpp"
#include "sinkless/tape.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sinkless {

// Contraction of the colour-2 perfect matching of a 3-regular properly
// edge-3-coloured graph of girth >= 5. G' nodes are the colour-2 edges
// (ranked in edge order); G' is simple and 4-regular, and its edges are in
// bijection with the colour-0/1 edges of G.
struct ContractionMap {
    SimpleGraph contracted;              // G'
    std::vector<int> node_of;            // G colour-2 edge index -> G' node, -1 elsewhere
    std::vector<int> pair_edge_of;       // G' node -> its colour-2 edge index in G
    std::vector<int> pair_of_node;       // G node -> G' node containing it
    std::vector<int> lifted_edge_of;     // G' edge index -> G edge index (the bijection)
    std::vector<int> contracted_edge_of; // G edge index -> G' edge index, -1 for colour 2
};

// Requires 3-regular input with girth >= 5 (otherwise the contraction could
// create loops or parallel edges); the error names a short cycle.
ContractionMap contract_colour2(const EdgeColouredGraph& g);

// Sinkless orientation as an explicit LLL instance on a plain 4-regular
// graph: one binary variable per edge (0 = toward the larger endpoint), one
// event per node whose single bad tuple is "all incident edges inward".
// p = 1/16 and dependency degree 4 by construction.
LllInstance build_so_lll_instance(const SimpleGraph& g4);

// Leader/relay election on the colour-2 matching: the endpoint with the
// lexicographically larger y-substream leads; equal substreams are flagged
// and resolved toward the smaller node id.
struct LeaderAssignment {
    std::vector<int> pair_edge; // G'-node rank -> G colour-2 edge index
    std::vector<int> leader;    // per rank
    std::vector<int> relay;     // per rank
    std::vector<char> tie;      // per rank
    bool tie_assisted = false;
};

LeaderAssignment elect_leaders(const EdgeColouredGraph& g, const RandomTape& tape);

// Run a message algorithm written for G' on G: each leader simulates its
// pair, relays forward, one simulated round costs 3 G-rounds, plus 2 setup
// G-rounds for the election. Virtual node a computes with the z-substream of
// its leader. max_g_rounds bounds the G-round total.
struct SimulationResult {
    std::vector<std::vector<int>> outputs; // per G' node
    int g_rounds = 0;                      // 2 + 3 * simulated rounds
    int simulated_rounds = 0;
    LeaderAssignment leaders;
};

SimulationResult simulate_in_contracted(const MessageAlgorithm& alg, const EdgeColouredGraph& g,
                                        const ContractionMap& map, const RandomTape& tape,
                                        int max_g_rounds);

// Lift a sinkless orientation of G' back to G: colour-0/1 edges copy their
// G'-edge's direction through the bijection; the colour-2 edge e points
// leader -> relay exactly when the relay already has an outgoing colour-0/1
// edge. Sinkless input gives sinkless output.
Orientation lift_orientation(const EdgeColouredGraph& g, const ContractionMap& map,
                             const LeaderAssignment& leaders, const Orientation& sigma_prime);

// The full pipeline: contract, build the LLL instance, solve by resampling,
// read sigma' off the assignment, elect leaders and lift. total_rounds gains
// the documented constant (2 election + 1 lift).
struct SolveSoResult {
    Orientation orientation;
    Orientation sigma_prime;
    SolveStats stats;
    LeaderAssignment leaders;
    ContractionMap map;
};

SolveSoResult solve_so_via_lll(const EdgeColouredGraph& g, uint64_t seed, int tape_bits = 2,
                               std::optional<int> phase_cap = std::nullopt);

// sigma' from an MT assignment over the instance built by
// build_so_lll_instance (variable i belongs to G' edge i; value 0 means
// toward the larger endpoint).
Orientation orientation_from_assignment(const Assignment& a);

} // namespace sinkless
