#pragma once

#include "sinkless/errors.hpp"
#include "sinkless/graph.hpp"
#include "sinkless/table.hpp"

#include <any>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace sinkless {

// LOCAL-model messages are unbounded; a vector of 64-bit words is enough for
// everything simulated here.
using Message = std::vector<int64_t>;

// Port-numbered communication structure. On edge-coloured graphs ports are
// the edge colours; on plain graphs they follow sorted adjacency order.
class PortNetwork {
public:
    static PortNetwork from(const EdgeColouredGraph& g);
    static PortNetwork from(const SimpleGraph& g);

    int node_count() const { return static_cast<int>(links_.size()); }
    int ports(int v) const { return static_cast<int>(links_[v].size()); }
    // (neighbour, port at the neighbour leading back here)
    std::pair<int, int> link(int v, int port) const { return links_[v][port]; }

private:
    std::vector<std::vector<std::pair<int, int>>> links_;
};

struct NodeContext {
    int node = 0;       // task-specific local input; tapes are the model's randomness
    int node_count = 0; // nodes know n
    int degree = 0;     // and Delta (= d on regular instances)
    uint64_t tape_word = 0;
    int tape_bits = 0;
};

// A synchronous message-passing algorithm: per-round behaviour plus an output
// extractor. Each round every node sends along every port (nullopt = silent),
// receives, and updates its state; the extractor may announce at any round.
// Deterministic given state, messages and the tape.
struct MessageAlgorithm {
    int round_bound = 0;
    std::function<std::any(const NodeContext&)> init;
    // Messages to send in round r (1-based), computed from the state after
    // round r-1.
    std::function<std::vector<std::optional<Message>>(const std::any& state, int r)> send;
    std::function<void(std::any& state, int r, const std::vector<std::optional<Message>>& received)> receive;
    // nullopt until the node announces; announcing nodes keep participating
    // (relays must keep forwarding).
    std::function<std::optional<std::vector<int>>(const std::any& state)> output;
};

struct RunResult {
    std::vector<std::vector<int>> outputs; // per node
    int rounds_used = 0;                   // max announce round over nodes
};

// Round budget exhausted before every node announced.
class RoundBudgetError : public ResourceError {
public:
    RoundBudgetError(int rounds, int announced, int total)
        : ResourceError("round budget exhausted after " + std::to_string(rounds) + " rounds (" +
                        std::to_string(announced) + "/" + std::to_string(total) + " nodes announced)"),
          rounds(rounds), announced(announced), total(total) {}
    int rounds, announced, total;
};

// Lock-step synchronous execution; stops as soon as every node has announced.
RunResult run_message_passing(const MessageAlgorithm& alg, const PortNetwork& net, const RandomTape& tape,
                              int max_rounds);

// The canonical gather-then-decide form of a table: spend t rounds collecting
// the radius-t ball (addressing by colour sequences), then evaluate the table.
// Announces exactly at round t; output = {colour}.
MessageAlgorithm gather_node_algorithm(const AlgorithmTable& table);

// Same for an edge algorithm: each node announces one direction per incident
// colour, encoded 0 = inward, 1 = outward, 2 = tie.
MessageAlgorithm gather_edge_algorithm(const EdgeAlgorithm& alg);

// Assemble an orientation from gather_edge_algorithm outputs: takes the
// smaller endpoint's verdict, checks the larger endpoint is consistent,
// resolves ties toward the smaller endpoint and flags them.
OrientationEval assemble_orientation(const EdgeColouredGraph& g, const std::vector<std::vector<int>>& outputs);

} // namespace sinkless
