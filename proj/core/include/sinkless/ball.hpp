#pragma once

#include "sinkless/graph.hpp"

#include <string>
#include <vector>

namespace sinkless {

// A position in a canonical ball: which root side it hangs off (always 0 for
// node-rooted balls) and the edge-colour sequence from that root. Proper edge
// colours double as ports, so "no two consecutive colours equal" is exactly
// "non-backtracking walk".
struct BallAddress {
    int side = 0;
    std::vector<int> seq;

    auto operator<=>(const BallAddress&) const = default;
};

// The canonical radius-t neighbourhood of a node (or edge) in the coloured
// d-regular tree. Every node/edge of a sufficiently high-girth host has a
// unique colour-respecting isomorphism onto it, which is what makes table
// algorithms well-defined.
//
// Addresses are kept in a fixed canonical order, sorted by (side, depth,
// colour sequence); tapes and table keys are packed in this order.
//
// An edge-rooted ball of radius t is the union of the two endpoint balls of
// radius t-1 (N^t(e) = N^{t-1}(u) u N^{t-1}(v)); consequently a side-s
// sequence never starts with the root edge colour and has length <= t-1.
class CanonicalBall {
public:
    CanonicalBall() = default; // empty; assign from node_rooted/edge_rooted
    static CanonicalBall node_rooted(int d, int radius);
    static CanonicalBall edge_rooted(int d, int radius, int root_colour); // radius >= 1

    int d() const { return d_; }
    int radius() const { return radius_; }
    bool is_edge_rooted() const { return edge_rooted_; }
    int root_colour() const { return root_colour_; }

    int address_count() const { return static_cast<int>(addrs_.size()); }
    const std::vector<BallAddress>& addresses() const { return addrs_; }
    const BallAddress& address(int i) const { return addrs_[i]; }
    int depth(int i) const { return static_cast<int>(addrs_[i].seq.size()); }

    // Address index of the side-s root.
    int root(int side = 0) const;
    // Neighbouring address across colour c, or -1 if outside the ball.
    int step(int addr, int colour) const { return step_[static_cast<size_t>(addr) * d_ + colour]; }
    // Index of an address, or -1.
    int find(const BallAddress& a) const;

    // For edge-rooted balls: the index of the mirror address (1-side, seq).
    int mirror(int addr) const;

    bool operator==(const CanonicalBall& o) const {
        return d_ == o.d_ && radius_ == o.radius_ && edge_rooted_ == o.edge_rooted_ &&
               root_colour_ == o.root_colour_;
    }

private:
    void index_addresses();

    int d_ = 0;
    int radius_ = 0;
    bool edge_rooted_ = false;
    int root_colour_ = -1;
    std::vector<BallAddress> addrs_;
    std::vector<int> step_;
};

// Map each address of `sub` to an address of `host` by walking colour
// sequences. Node-rooted subs anchor at host address anchor0; edge-rooted
// subs anchor at the host edge (anchor0, anchor1), which must be joined by
// sub.root_colour(). Throws PreconditionError if sub pokes outside host.
std::vector<int> ball_lens(const CanonicalBall& host, const CanonicalBall& sub, int anchor0,
                           int anchor1 = -1);

// A canonical ball placed onto a concrete graph: placement[i] is the graph
// node realising address i. Colour-respecting and injective.
struct BallEmbedding {
    CanonicalBall ball;
    int source = -1; // node id, or edge index for edge-rooted balls
    std::vector<int> placement;
};

// Spec preconditions: node-rooted radius t needs girth > 2t, edge-rooted
// radius t needs girth > 2t+1 (the paper's tree-neighbourhood requirement).
// Violations raise PreconditionError naming a shortest cycle.
BallEmbedding embed_node(const EdgeColouredGraph& g, int node, int radius);
BallEmbedding embed_edge(const EdgeColouredGraph& g, int edge_index, int radius);

// Placement walk without the girth gate, for callers that have already
// checked it once for a whole evaluation. side0 of edge-rooted balls is the
// given anchor node (embed_edge uses the smaller endpoint).
std::vector<int> place_addresses(const EdgeColouredGraph& g, const CanonicalBall& ball, int anchor0,
                                 int anchor1 = -1);

// Girth gate shared by the embed/eval entry points: throws PreconditionError
// naming a witness cycle when g's girth is <= the bound.
void require_girth_above(const EdgeColouredGraph& g, int bound, const std::string& context);

} // namespace sinkless
