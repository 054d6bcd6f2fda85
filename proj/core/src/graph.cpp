#include "sinkless/graph.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace sinkless {

namespace {

std::string edge_str(int u, int v) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

// Adjacency from possibly-unvalidated data; loops kept, duplicates kept.
std::vector<std::vector<int>> raw_adjacency(const GraphData& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

void require_simple(const GraphData& g, const char* op) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
            throw PreconditionError(std::string(op) + ": edge endpoint out of range " + edge_str(e.u, e.v));
        if (e.u == e.v)
            throw PreconditionError(std::string(op) + ": loop at node " + std::to_string(e.u));
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw PreconditionError(std::string(op) + ": parallel edge " + edge_str(key.first, key.second));
    }
}

void require_regular(const GraphData& g, const char* op) {
    std::vector<int> deg(g.n, 0);
    for (const auto& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int v = 0; v < g.n; ++v)
        if (deg[v] != g.d)
            throw PreconditionError(std::string(op) + ": node " + std::to_string(v) + " has degree " +
                                    std::to_string(deg[v]) + ", expected " + std::to_string(g.d));
}

} // namespace

ValidationResult validate(const GraphData& g) {
    if (g.n < 0 || g.d < 0) return {false, "shape", "negative n or d"};
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
            return {false, "endpoint range", edge_str(e.u, e.v)};
        if (e.u == e.v) return {false, "no loops", "node " + std::to_string(e.u)};
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            return {false, "no parallel edges", edge_str(key.first, key.second)};
        if (e.colour < 0 || e.colour >= g.d)
            return {false, "colour range", edge_str(e.u, e.v) + " colour " + std::to_string(e.colour)};
    }
    std::vector<int> deg(g.n, 0);
    for (const auto& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int v = 0; v < g.n; ++v)
        if (deg[v] != g.d)
            return {false, "degree = d", "node " + std::to_string(v) + " has degree " + std::to_string(deg[v])};
    // Proper edge colouring: one incident edge per colour per node. Combined
    // with degree d this is exactly "adjacent edges differ in colour".
    std::vector<char> used(static_cast<size_t>(g.n) * std::max(g.d, 1), 0);
    for (const auto& e : g.edges) {
        for (int w : {e.u, e.v}) {
            char& slot = used[static_cast<size_t>(w) * g.d + e.colour];
            if (slot)
                return {false, "proper edge colouring",
                        "node " + std::to_string(w) + " has two edges of colour " + std::to_string(e.colour)};
            slot = 1;
        }
    }
    return {true, "", ""};
}

EdgeColouredGraph EdgeColouredGraph::from_data(GraphData data) {
    for (auto& e : data.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(data.edges.begin(), data.edges.end(),
              [](const ColouredEdge& a, const ColouredEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    ValidationResult r = validate(data);
    if (!r.ok) throw PreconditionError("invalid graph: " + r.invariant + " (" + r.witness + ")");
    EdgeColouredGraph g;
    g.n_ = data.n;
    g.d_ = data.d;
    g.edges_ = std::move(data.edges);
    g.nbr_.assign(static_cast<size_t>(g.n_) * g.d_, -1);
    g.edge_of_.assign(static_cast<size_t>(g.n_) * g.d_, -1);
    for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
        const auto& e = g.edges_[i];
        g.nbr_[static_cast<size_t>(e.u) * g.d_ + e.colour] = e.v;
        g.nbr_[static_cast<size_t>(e.v) * g.d_ + e.colour] = e.u;
        g.edge_of_[static_cast<size_t>(e.u) * g.d_ + e.colour] = i;
        g.edge_of_[static_cast<size_t>(e.v) * g.d_ + e.colour] = i;
    }
    return g;
}

SimpleGraph::SimpleGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || v >= n_) throw PreconditionError("SimpleGraph: endpoint out of range " + edge_str(u, v));
        if (u == v) throw PreconditionError("SimpleGraph: loop at node " + std::to_string(u));
        if (i > 0 && edges[i] == edges[i - 1])
            throw PreconditionError("SimpleGraph: parallel edge " + edge_str(u, v));
    }
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        auto [u, v] = edges_[i];
        adj_[u].emplace_back(v, i);
        adj_[v].emplace_back(u, i);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool SimpleGraph::is_regular(int d) const {
    for (int v = 0; v < n_; ++v)
        if (degree(v) != d) return false;
    return true;
}

namespace {

GirthReport girth_impl(int n, const std::vector<std::vector<int>>& adj) {
    int best = -1;
    std::vector<int> best_cycle;
    std::vector<int> depth(n), parent(n);
    for (int r = 0; r < n; ++r) {
        std::fill(depth.begin(), depth.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        depth[r] = 0;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (depth[y] == -1) {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (y != parent[x] && depth[y] >= depth[x]) {
                    // Non-tree edge; extract the simple cycle through the
                    // deepest common ancestor of x and y.
                    std::vector<int> px{x}, py{y};
                    int a = x, b = y;
                    while (depth[a] > depth[b]) px.push_back(a = parent[a]);
                    while (depth[b] > depth[a]) py.push_back(b = parent[b]);
                    while (a != b) {
                        px.push_back(a = parent[a]);
                        py.push_back(b = parent[b]);
                    }
                    // px ends at the meet point, py ends just before it.
                    int len = static_cast<int>(px.size() + py.size()) - 1;
                    if (best == -1 || len < best) {
                        best = len;
                        best_cycle.assign(px.begin(), px.end());
                        for (size_t i = py.size() - 1; i-- > 0;) best_cycle.push_back(py[i]);
                    }
                }
            }
        }
    }
    if (best == -1) return {std::nullopt, {}};
    return {best, best_cycle};
}

} // namespace

GirthReport girth(const GraphData& g) {
    require_simple(g, "girth");
    return girth_impl(g.n, raw_adjacency(g));
}

GirthReport girth(const EdgeColouredGraph& g) { return girth(g.data()); }

GirthReport girth(const SimpleGraph& g) {
    std::vector<std::vector<int>> adj(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        for (auto [w, e] : g.adjacent(v)) adj[v].push_back(w);
    return girth_impl(g.node_count(), adj);
}

std::optional<std::vector<int>> bipartition(const GraphData& g) {
    auto adj = raw_adjacency(g);
    std::vector<int> side(g.n, -1);
    for (int r = 0; r < g.n; ++r) {
        if (side[r] != -1) continue;
        side[r] = 0;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (side[y] == -1) {
                    side[y] = 1 - side[x];
                    q.push(y);
                } else if (side[y] == side[x]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

GraphData bipartite_double_cover(const GraphData& g) {
    require_simple(g, "bipartite_double_cover");
    require_regular(g, "bipartite_double_cover");
    GraphData out;
    out.n = 2 * g.n;
    out.d = g.d;
    out.edges.reserve(2 * g.edges.size());
    for (const auto& e : g.edges) {
        out.edges.push_back({e.u, e.v + g.n, -1});
        out.edges.push_back({e.v, e.u + g.n, -1});
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const ColouredEdge& a, const ColouredEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    return out;
}

namespace {

// Maximum bipartite matching by augmenting paths (Kuhn). left/right are index
// lists into the node set; adjacency restricted to the still-uncoloured edges.
struct Matcher {
    const std::vector<std::vector<std::pair<int, int>>>& adj; // node -> (nbr, edge idx)
    const std::vector<char>& edge_free;
    std::vector<int> match_of; // node -> matched neighbour, -1 if exposed
    std::vector<char> visited;

    bool augment(int u) {
        for (auto [w, e] : adj[u]) {
            if (!edge_free[e] || visited[w]) continue;
            visited[w] = 1;
            if (match_of[w] == -1 || augment(match_of[w])) {
                match_of[w] = u;
                match_of[u] = w;
                return true;
            }
        }
        return false;
    }
};

} // namespace

EdgeColouredGraph konig_edge_colour(const GraphData& g) {
    require_simple(g, "konig_edge_colour");
    require_regular(g, "konig_edge_colour");
    auto side = bipartition(g);
    if (!side) throw PreconditionError("konig_edge_colour: graph is not bipartite");

    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        adj[g.edges[i].u].emplace_back(g.edges[i].v, i);
        adj[g.edges[i].v].emplace_back(g.edges[i].u, i);
    }

    GraphData out;
    out.n = g.n;
    out.d = g.d;
    out.edges.reserve(g.edges.size());
    std::vector<char> edge_free(g.edges.size(), 1);
    for (int colour = 0; colour < g.d; ++colour) {
        // The remaining graph is (d - colour)-regular bipartite, so a perfect
        // matching exists; extract one and assign it this colour.
        Matcher m{adj, edge_free, std::vector<int>(g.n, -1), std::vector<char>(g.n, 0)};
        for (int u = 0; u < g.n; ++u) {
            if ((*side)[u] != 0 || m.match_of[u] != -1) continue;
            std::fill(m.visited.begin(), m.visited.end(), 0);
            if (!m.augment(u))
                throw PreconditionError("konig_edge_colour: no perfect matching (input not regular bipartite?)");
        }
        for (int u = 0; u < g.n; ++u) {
            if ((*side)[u] != 0) continue;
            int w = m.match_of[u];
            for (auto [x, e] : adj[u]) {
                if (x == w && edge_free[e]) {
                    edge_free[e] = 0;
                    out.edges.push_back({g.edges[e].u, g.edges[e].v, colour});
                    break;
                }
            }
        }
    }
    return EdgeColouredGraph::from_data(std::move(out));
}

EdgeColouredGraph generate_regular_high_girth(int n, int d, int girth_min, uint64_t seed, int attempt_cap) {
    if (n <= 0 || n % 2 != 0) throw PreconditionError("generate: n must be positive and even");
    if (d < 2) throw PreconditionError("generate: d must be >= 2");
    if (girth_min < 3) throw PreconditionError("generate: girth_min must be >= 3");
    if (n / 2 < d) throw PreconditionError("generate: parts of size n/2 cannot host d disjoint matchings");

    const int half = n / 2;
    for (int attempt = 0; attempt < attempt_cap; ++attempt) {
        GraphData g;
        g.n = n;
        g.d = d;
        g.edges.reserve(static_cast<size_t>(half) * d);
        bool simple = true;
        // perm[c][i] = right partner of left node i under matching c.
        std::vector<std::vector<int>> perm(d, std::vector<int>(half));
        for (int c = 0; c < d && simple; ++c) {
            std::iota(perm[c].begin(), perm[c].end(), 0);
            SplitMix rng(stream_u64(seed, {rng_tag::matching, static_cast<uint64_t>(attempt),
                                           static_cast<uint64_t>(c)}));
            deterministic_shuffle(perm[c], rng);
            for (int i = 0; i < half && simple; ++i) {
                for (int c2 = 0; c2 < c; ++c2)
                    if (perm[c2][i] == perm[c][i]) simple = false; // parallel edge
                g.edges.push_back({i, half + perm[c][i], c});
            }
        }
        if (!simple) continue;
        GirthReport gr = girth(g);
        if (gr.girth && *gr.girth < girth_min) continue;
        return EdgeColouredGraph::from_data(std::move(g));
    }
    throw ResourceError("generate: no simple graph with girth >= " + std::to_string(girth_min) + " on n = " +
                        std::to_string(n) + " nodes within " + std::to_string(attempt_cap) + " attempts");
}

SimpleGraph strip_colours(const EdgeColouredGraph& g) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.emplace_back(e.u, e.v);
    return SimpleGraph(g.node_count(), std::move(edges));
}

// --- text format -----------------------------------------------------------

namespace {

// Strip comments and blank lines; returns (line number, payload) pairs.
std::vector<std::pair<int, std::string>> payload_lines(std::istream& in) {
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string tok;
        if (probe >> tok) out.emplace_back(no, line);
    }
    return out;
}

} // namespace

GraphData parse_graph(std::istream& in, const std::string& name) {
    auto lines = payload_lines(in);
    if (lines.empty()) throw ParseError(name, 1, "missing header line 'n d'");
    GraphData g;
    {
        std::istringstream h(lines[0].second);
        if (!(h >> g.n >> g.d)) throw ParseError(name, lines[0].first, "header must be 'n d'");
        std::string trail;
        if (h >> trail) throw ParseError(name, lines[0].first, "trailing token '" + trail + "' in header");
    }
    for (size_t i = 1; i < lines.size(); ++i) {
        std::istringstream s(lines[i].second);
        ColouredEdge e;
        if (!(s >> e.u >> e.v >> e.colour)) throw ParseError(name, lines[i].first, "edge line must be 'u v c'");
        std::string trail;
        if (s >> trail) throw ParseError(name, lines[i].first, "trailing token '" + trail + "'");
        if (!(0 <= e.u && e.u < e.v && e.v < g.n))
            throw ParseError(name, lines[i].first, "edge must satisfy 0 <= u < v < n");
        if (e.colour < 0 || e.colour >= g.d)
            throw ParseError(name, lines[i].first, "colour must be in [0, d)");
        g.edges.push_back(e);
    }
    return g;
}

GraphData read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_graph(in, path);
}

void write_graph(std::ostream& out, const GraphData& g, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << g.n << " " << g.d << "\n";
    auto edges = g.edges;
    for (auto& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(),
              [](const ColouredEdge& a, const ColouredEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (const auto& e : edges) out << e.u << " " << e.v << " " << e.colour << "\n";
}

void write_graph_file(const std::string& path, const GraphData& g, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_graph(out, g, comment);
}

} // namespace sinkless
