#include "sinkless/message.hpp"

#include <algorithm>
#include <map>

namespace sinkless {

PortNetwork PortNetwork::from(const EdgeColouredGraph& g) {
    PortNetwork net;
    net.links_.assign(g.node_count(), {});
    for (int v = 0; v < g.node_count(); ++v) {
        net.links_[v].resize(g.degree());
        for (int c = 0; c < g.degree(); ++c) net.links_[v][c] = {g.neighbour(v, c), c};
    }
    return net;
}

PortNetwork PortNetwork::from(const SimpleGraph& g) {
    PortNetwork net;
    net.links_.assign(g.node_count(), {});
    for (int v = 0; v < g.node_count(); ++v) {
        const auto& adj = g.adjacent(v);
        net.links_[v].resize(adj.size());
        for (size_t p = 0; p < adj.size(); ++p) {
            int w = adj[p].first;
            const auto& back = g.adjacent(w);
            int back_port = static_cast<int>(std::lower_bound(back.begin(), back.end(),
                                                              std::make_pair(v, 0)) -
                                             back.begin());
            net.links_[v][p] = {w, back_port};
        }
    }
    return net;
}

RunResult run_message_passing(const MessageAlgorithm& alg, const PortNetwork& net, const RandomTape& tape,
                              int max_rounds) {
    if (max_rounds < 0) throw PreconditionError("run_message_passing: max_rounds must be >= 0");
    const int n = net.node_count();
    std::vector<std::any> state(n);
    std::vector<std::optional<std::vector<int>>> announced(n);
    std::vector<int> announce_round(n, -1);
    int outstanding = n;

    for (int v = 0; v < n; ++v) {
        NodeContext ctx{v, n, net.ports(v), tape.word(v), tape.bits_per_node()};
        state[v] = alg.init(ctx);
    }
    auto poll = [&](int round) {
        for (int v = 0; v < n; ++v) {
            if (announced[v]) continue;
            if (auto out = alg.output(state[v])) {
                announced[v] = std::move(out);
                announce_round[v] = round;
                --outstanding;
            }
        }
    };
    poll(0);
    std::vector<std::vector<std::optional<Message>>> inbox(n);
    for (int r = 1; outstanding > 0 && r <= max_rounds; ++r) {
        for (int v = 0; v < n; ++v) inbox[v].assign(net.ports(v), std::nullopt);
        for (int v = 0; v < n; ++v) {
            auto out = alg.send(state[v], r);
            if (static_cast<int>(out.size()) != net.ports(v))
                throw PreconditionError("run_message_passing: send must produce one slot per port");
            for (int p = 0; p < net.ports(v); ++p) {
                if (!out[p]) continue;
                auto [w, back] = net.link(v, p);
                inbox[w][back] = std::move(out[p]);
            }
        }
        for (int v = 0; v < n; ++v) alg.receive(state[v], r, inbox[v]);
        poll(r);
    }
    if (outstanding > 0) throw RoundBudgetError(max_rounds, n - outstanding, n);

    RunResult result;
    result.outputs.resize(n);
    for (int v = 0; v < n; ++v) {
        result.outputs[v] = std::move(*announced[v]);
        result.rounds_used = std::max(result.rounds_used, announce_round[v]);
    }
    return result;
}

// --- gather-then-decide ------------------------------------------------------

namespace {

// Knowledge map: colour path (from this node, non-backtracking) -> tape word.
// Paths encode base-(d+1), first colour in the least significant digit.
struct GatherState {
    NodeContext ctx;
    int rounds_done = 0;
    std::map<uint64_t, uint64_t> know;
};

uint64_t path_append(uint64_t enc, int first_colour, int d) {
    return static_cast<uint64_t>(first_colour + 1) + enc * static_cast<uint64_t>(d + 1);
}

int path_depth(uint64_t enc, int d) {
    int depth = 0;
    while (enc) {
        ++depth;
        enc /= static_cast<uint64_t>(d + 1);
    }
    return depth;
}

int path_first(uint64_t enc, int d) { return static_cast<int>(enc % static_cast<uint64_t>(d + 1)) - 1; }

uint64_t encode_seq(const std::vector<int>& seq, int d) {
    uint64_t enc = 0;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) enc = path_append(enc, *it, d);
    return enc;
}

GatherState make_gather_state(const NodeContext& ctx) {
    GatherState s;
    s.ctx = ctx;
    s.know[0] = ctx.tape_word;
    return s;
}

std::vector<std::optional<Message>> gather_send(const GatherState& s, int r, int radius) {
    std::vector<std::optional<Message>> out(s.ctx.degree);
    if (r > radius) return out;
    Message frontier;
    for (auto [enc, word] : s.know) {
        if (path_depth(enc, s.ctx.degree) == r - 1) {
            frontier.push_back(static_cast<int64_t>(enc));
            frontier.push_back(static_cast<int64_t>(word));
        }
    }
    for (int p = 0; p < s.ctx.degree; ++p) out[p] = frontier;
    return out;
}

void gather_receive(GatherState& s, int r, const std::vector<std::optional<Message>>& received, int radius) {
    if (r <= radius) {
        int d = s.ctx.degree;
        for (int c = 0; c < d; ++c) {
            if (!received[c]) continue;
            const Message& m = *received[c];
            for (size_t i = 0; i + 1 < m.size(); i += 2) {
                uint64_t enc = static_cast<uint64_t>(m[i]);
                uint64_t word = static_cast<uint64_t>(m[i + 1]);
                if (path_first(enc, d) == c) continue; // that branch is me
                s.know.emplace(path_append(enc, c, d), word);
            }
        }
    }
    s.rounds_done = r;
}

uint64_t key_from_knowledge(const GatherState& s, const CanonicalBall& ball, int R, int root_colour_port) {
    // Node-rooted balls read addresses directly; edge-rooted balls are read
    // from the side-0 endpoint: side-1 sequences live across the root colour.
    uint64_t key = 0;
    int d = s.ctx.degree;
    for (int i = 0; i < ball.address_count(); ++i) {
        const BallAddress& a = ball.address(i);
        uint64_t enc = encode_seq(a.seq, d);
        if (a.side == 1) enc = path_append(enc, root_colour_port, d);
        key |= s.know.at(enc) << (static_cast<uint64_t>(i) * R);
    }
    return key;
}

} // namespace

MessageAlgorithm gather_node_algorithm(const AlgorithmTable& table) {
    int radius = table.radius();
    MessageAlgorithm alg;
    alg.round_bound = radius;
    alg.init = [](const NodeContext& ctx) { return std::any(make_gather_state(ctx)); };
    alg.send = [radius](const std::any& st, int r) {
        return gather_send(std::any_cast<const GatherState&>(st), r, radius);
    };
    alg.receive = [radius](std::any& st, int r, const std::vector<std::optional<Message>>& recv) {
        gather_receive(std::any_cast<GatherState&>(st), r, recv, radius);
    };
    alg.output = [table, radius](const std::any& st) -> std::optional<std::vector<int>> {
        const auto& s = std::any_cast<const GatherState&>(st);
        if (s.rounds_done < radius) return std::nullopt;
        uint64_t key = key_from_knowledge(s, table.ball(), table.bits_per_node(), -1);
        return std::vector<int>{static_cast<int>(table.entry(key))};
    };
    return alg;
}

MessageAlgorithm gather_edge_algorithm(const EdgeAlgorithm& ea) {
    int radius = ea.radius();
    MessageAlgorithm alg;
    alg.round_bound = radius;
    alg.init = [](const NodeContext& ctx) { return std::any(make_gather_state(ctx)); };
    alg.send = [radius](const std::any& st, int r) {
        return gather_send(std::any_cast<const GatherState&>(st), r, radius);
    };
    alg.receive = [radius](std::any& st, int r, const std::vector<std::optional<Message>>& recv) {
        gather_receive(std::any_cast<GatherState&>(st), r, recv, radius);
    };
    alg.output = [ea, radius](const std::any& st) -> std::optional<std::vector<int>> {
        const auto& s = std::any_cast<const GatherState&>(st);
        if (s.rounds_done < radius) return std::nullopt;
        std::vector<int> verdicts(s.ctx.degree);
        for (int c = 0; c < s.ctx.degree; ++c) {
            const AlgorithmTable& table = ea.by_colour.at(c);
            uint64_t key = key_from_knowledge(s, table.ball(), ea.bits_per_node(), c);
            EdgeOut dir = table.direction(key); // side 0 = this node
            verdicts[c] = dir == EdgeOut::tie ? 2 : dir == EdgeOut::to_side1 ? 1 : 0;
        }
        return verdicts;
    };
    return alg;
}

OrientationEval assemble_orientation(const EdgeColouredGraph& g, const std::vector<std::vector<int>>& outputs) {
    OrientationEval out;
    out.orientation.toward_max.resize(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        int at_u = outputs[e.u][e.colour];
        int at_v = outputs[e.v][e.colour];
        bool consistent = (at_u == 2 && at_v == 2) || (at_u == 1 && at_v == 0) || (at_u == 0 && at_v == 1);
        if (!consistent)
            throw PreconditionError("assemble_orientation: endpoints disagree on edge " + std::to_string(i));
        if (at_u == 2) {
            out.tie_edges.push_back(i);
            out.orientation.toward_max[i] = 0;
        } else {
            out.orientation.toward_max[i] = at_u == 1 ? 1 : 0;
        }
    }
    return out;
}

} // namespace sinkless
