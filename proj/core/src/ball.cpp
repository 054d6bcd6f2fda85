#include "sinkless/ball.hpp"

#include "sinkless/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sinkless {

namespace {

bool addr_less(const BallAddress& a, const BallAddress& b) {
    if (a.side != b.side) return a.side < b.side;
    if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
    return a.seq < b.seq;
}

// All non-backtracking colour sequences of length <= depth whose first colour
// avoids `banned_first` (-1 = nothing banned).
void collect_seqs(int d, int depth, int banned_first, int side, std::vector<BallAddress>& out) {
    out.push_back({side, {}});
    std::vector<int> seq;
    auto rec = [&](auto&& self, int last) -> void {
        if (static_cast<int>(seq.size()) == depth) return;
        for (int c = 0; c < d; ++c) {
            if (c == last) continue;
            if (seq.empty() && c == banned_first) continue;
            seq.push_back(c);
            out.push_back({side, seq});
            self(self, c);
            seq.pop_back();
        }
    };
    rec(rec, -1);
}

} // namespace

CanonicalBall CanonicalBall::node_rooted(int d, int radius) {
    if (d < 2) throw PreconditionError("CanonicalBall: d must be >= 2");
    if (radius < 0) throw PreconditionError("CanonicalBall: radius must be >= 0");
    CanonicalBall b;
    b.d_ = d;
    b.radius_ = radius;
    collect_seqs(d, radius, -1, 0, b.addrs_);
    std::sort(b.addrs_.begin(), b.addrs_.end(), addr_less);
    b.index_addresses();
    return b;
}

CanonicalBall CanonicalBall::edge_rooted(int d, int radius, int root_colour) {
    if (d < 2) throw PreconditionError("CanonicalBall: d must be >= 2");
    if (radius < 1) throw PreconditionError("CanonicalBall: edge-rooted radius must be >= 1");
    if (root_colour < 0 || root_colour >= d) throw PreconditionError("CanonicalBall: root colour out of range");
    CanonicalBall b;
    b.d_ = d;
    b.radius_ = radius;
    b.edge_rooted_ = true;
    b.root_colour_ = root_colour;
    collect_seqs(d, radius - 1, root_colour, 0, b.addrs_);
    collect_seqs(d, radius - 1, root_colour, 1, b.addrs_);
    std::sort(b.addrs_.begin(), b.addrs_.end(), addr_less);
    b.index_addresses();
    return b;
}

void CanonicalBall::index_addresses() {
    std::map<BallAddress, int> index;
    for (int i = 0; i < static_cast<int>(addrs_.size()); ++i) index[addrs_[i]] = i;
    int max_len = edge_rooted_ ? radius_ - 1 : radius_;
    step_.assign(addrs_.size() * static_cast<size_t>(d_), -1);
    for (int i = 0; i < static_cast<int>(addrs_.size()); ++i) {
        const BallAddress& a = addrs_[i];
        for (int c = 0; c < d_; ++c) {
            BallAddress target;
            if (!a.seq.empty() && a.seq.back() == c) {
                target = {a.side, {a.seq.begin(), a.seq.end() - 1}}; // backtrack
            } else if (a.seq.empty() && edge_rooted_ && c == root_colour_) {
                target = {1 - a.side, {}}; // cross the root edge
            } else if (static_cast<int>(a.seq.size()) < max_len) {
                target = a;
                target.seq.push_back(c);
            } else {
                continue;
            }
            auto it = index.find(target);
            if (it != index.end()) step_[static_cast<size_t>(i) * d_ + c] = it->second;
        }
    }
}

int CanonicalBall::root(int side) const {
    for (int i = 0; i < static_cast<int>(addrs_.size()); ++i)
        if (addrs_[i].seq.empty() && addrs_[i].side == side) return i;
    throw PreconditionError("CanonicalBall: no such root side");
}

int CanonicalBall::find(const BallAddress& a) const {
    auto it = std::lower_bound(addrs_.begin(), addrs_.end(), a, addr_less);
    if (it != addrs_.end() && *it == a) return static_cast<int>(it - addrs_.begin());
    return -1;
}

int CanonicalBall::mirror(int addr) const {
    if (!edge_rooted_) throw PreconditionError("CanonicalBall: mirror needs an edge-rooted ball");
    BallAddress m = addrs_[addr];
    m.side = 1 - m.side;
    return find(m);
}

std::vector<int> ball_lens(const CanonicalBall& host, const CanonicalBall& sub, int anchor0, int anchor1) {
    if (sub.is_edge_rooted() && anchor1 < 0)
        throw PreconditionError("ball_lens: edge-rooted sub needs both anchors");
    std::vector<int> out(sub.address_count(), -1);
    for (int i = 0; i < sub.address_count(); ++i) {
        const BallAddress& a = sub.address(i);
        int cur = (a.side == 0) ? anchor0 : anchor1;
        for (int c : a.seq) {
            cur = host.step(cur, c);
            if (cur < 0) throw PreconditionError("ball_lens: sub ball leaves the host ball");
        }
        out[i] = cur;
    }
    return out;
}

void require_girth_above(const EdgeColouredGraph& g, int bound, const std::string& context) {
    GirthReport r = girth(g);
    if (r.girth && *r.girth <= bound) {
        std::ostringstream msg;
        msg << context << ": needs girth > " << bound << " but found a " << *r.girth << "-cycle:";
        for (int v : r.witness_cycle) msg << " " << v;
        throw PreconditionError(msg.str());
    }
}

std::vector<int> place_addresses(const EdgeColouredGraph& g, const CanonicalBall& ball, int anchor0,
                                 int anchor1) {
    std::vector<int> out(ball.address_count(), -1);
    for (int i = 0; i < ball.address_count(); ++i) {
        const BallAddress& a = ball.address(i);
        int cur = (a.side == 0) ? anchor0 : anchor1;
        for (int c : a.seq) cur = g.neighbour(cur, c);
        out[i] = cur;
    }
    // Injectivity is implied by the girth gates the callers run; keep a cheap
    // structural check so a bad caller fails loudly.
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (out[i] == out[j])
                throw PreconditionError("place_addresses: placement not injective (girth too small)");
    return out;
}

BallEmbedding embed_node(const EdgeColouredGraph& g, int node, int radius) {
    if (node < 0 || node >= g.node_count()) throw PreconditionError("embed_node: node out of range");
    require_girth_above(g, 2 * radius, "embed_node radius " + std::to_string(radius));
    CanonicalBall ball = CanonicalBall::node_rooted(g.degree(), radius);
    std::vector<int> placement = place_addresses(g, ball, node);
    return {std::move(ball), node, std::move(placement)};
}

BallEmbedding embed_edge(const EdgeColouredGraph& g, int edge_index, int radius) {
    if (edge_index < 0 || edge_index >= g.edge_count())
        throw PreconditionError("embed_edge: edge out of range");
    require_girth_above(g, 2 * radius + 1, "embed_edge radius " + std::to_string(radius));
    const ColouredEdge& e = g.edge(edge_index);
    CanonicalBall ball = CanonicalBall::edge_rooted(g.degree(), radius, e.colour);
    std::vector<int> placement = place_addresses(g, ball, e.u, e.v);
    return {std::move(ball), edge_index, std::move(placement)};
}

} // namespace sinkless
