#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sinkless {

// One undirected edge with an edge colour in [d]; colour -1 means uncoloured.
struct ColouredEdge {
    int u = 0;
    int v = 0;
    int colour = -1;
};

// Raw graph description as read from a file or assembled by hand. May violate
// every invariant; validate() is the gatekeeper.
struct GraphData {
    int n = 0;
    int d = 0;
    std::vector<ColouredEdge> edges;
};

struct ValidationResult {
    bool ok = false;
    std::string invariant; // first violated invariant, empty when ok
    std::string witness;   // offending node/edge, empty when ok
};

// Accepts iff the data is a simple d-regular graph with a proper edge
// d-colouring (exactly one incident edge of each colour at every node).
ValidationResult validate(const GraphData& g);

// Validated simple d-regular properly edge-d-coloured graph. Immutable after
// construction; all lookups are O(1) through the (node, colour) table.
class EdgeColouredGraph {
public:
    // Throws PreconditionError when validate() rejects.
    static EdgeColouredGraph from_data(GraphData data);

    int node_count() const { return n_; }
    int degree() const { return d_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<ColouredEdge>& edges() const { return edges_; }
    const ColouredEdge& edge(int index) const { return edges_[index]; }

    // Node across the colour-c edge at v.
    int neighbour(int v, int c) const { return nbr_[static_cast<size_t>(v) * d_ + c]; }
    // Index of the colour-c edge at v.
    int incident_edge(int v, int c) const { return edge_of_[static_cast<size_t>(v) * d_ + c]; }

    GraphData data() const { return GraphData{n_, d_, edges_}; }

private:
    EdgeColouredGraph() = default;
    int n_ = 0;
    int d_ = 0;
    std::vector<ColouredEdge> edges_;
    std::vector<int> nbr_;
    std::vector<int> edge_of_;
};

// Plain simple graph, not necessarily regular or coloured. Used for
// dependency graphs, contracted graphs and MIS.
class SimpleGraph {
public:
    SimpleGraph() = default;
    // Normalises edges to u < v and sorts; throws PreconditionError on loops,
    // parallel edges or out-of-range endpoints.
    SimpleGraph(int n, std::vector<std::pair<int, int>> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool is_regular(int d) const;
    // Neighbours of v as (neighbour, edge index), sorted by neighbour id.
    const std::vector<std::pair<int, int>>& adjacent(int v) const { return adj_[v]; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

struct GirthReport {
    std::optional<int> girth;       // nullopt = acyclic (infinite girth)
    std::vector<int> witness_cycle; // simple cycle of length girth, empty if acyclic
};

// Shortest-cycle length via per-root BFS; exact (oracle-tested against
// exhaustive cycle enumeration). Requires a simple graph.
GirthReport girth(const GraphData& g);
GirthReport girth(const EdgeColouredGraph& g);
GirthReport girth(const SimpleGraph& g);

// 2-colourability check; returns a side in {0,1} per node, or nullopt.
std::optional<std::vector<int>> bipartition(const GraphData& g);

// Nodes (v,0),(v,1) -> ids v and v+n; each input edge {u,v} becomes
// {(u,0),(v,1)} and {(u,1),(v,0)}. Output is bipartite, keeps d-regularity
// and never decreases girth. Colours are dropped (deferred to
// konig_edge_colour). Requires simple d-regular input.
GraphData bipartite_double_cover(const GraphData& g);

// Proper edge d-colouring of a bipartite d-regular graph by repeated
// perfect-matching extraction; colour i is the i-th matching. Rejects
// non-bipartite or non-regular input.
EdgeColouredGraph konig_edge_colour(const GraphData& g);

// Union of d uniformly random perfect matchings between two parts of size
// n/2; matching i is colour i, so the colouring is proper by construction.
// Resamples until the graph is simple and girth(g) >= girth_min. Deterministic
// given seed; throws ResourceError after attempt_cap failed attempts.
EdgeColouredGraph generate_regular_high_girth(int n, int d, int girth_min, uint64_t seed,
                                              int attempt_cap = 10000);

// Forget the colouring (for consumers that work on plain graphs).
SimpleGraph strip_colours(const EdgeColouredGraph& g);

// --- text format ---------------------------------------------------------
// Line-oriented, '#' starts a comment. Header "n d", then one "u v c" line
// per edge with 0 <= u < v < n and c in [d]. Writers emit edges sorted by
// (u, v).

GraphData parse_graph(std::istream& in, const std::string& name = "<graph>");
GraphData read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const GraphData& g, const std::string& comment = "");
void write_graph_file(const std::string& path, const GraphData& g, const std::string& comment = "");

} // namespace sinkless
