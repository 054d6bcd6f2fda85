#pragma once

#include "sinkless/graph.hpp"
#include "sinkless/problems.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace sinkless::testing {

inline GraphData k4_coloured() {
    // The 1-factorisation of K4: opposite edges share a colour.
    GraphData g;
    g.n = 4;
    g.d = 3;
    g.edges = {{0, 1, 0}, {2, 3, 0}, {0, 2, 1}, {1, 3, 1}, {0, 3, 2}, {1, 2, 2}};
    return g;
}

inline GraphData petersen() {
    GraphData g;
    g.n = 10;
    g.d = 3;
    for (int i = 0; i < 5; ++i) {
        g.edges.push_back({i, (i + 1) % 5, -1});             // outer cycle
        g.edges.push_back({i, i + 5, -1});                   // spokes
        g.edges.push_back({i + 5, (i + 2) % 5 + 5, -1});     // pentagram
    }
    for (auto& e : g.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    return g;
}

inline GraphData k33() {
    GraphData g;
    g.n = 6;
    g.d = 3;
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) g.edges.push_back({u, v, (u + v) % 3});
    return g;
}

inline GraphData cycle(int n, int colours = 2) {
    GraphData g;
    g.n = n;
    g.d = 2;
    for (int i = 0; i < n; ++i) {
        int u = i, v = (i + 1) % n;
        g.edges.push_back({std::min(u, v), std::max(u, v), colours > 0 ? i % colours : -1});
    }
    return g;
}

// Exhaustive simple-cycle girth oracle (n <= ~12): DFS paths that start at
// the cycle's smallest node and close back to it.
inline int brute_force_girth(const GraphData& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    int best = -1;
    std::vector<char> on_path(g.n, 0);
    auto dfs = [&](auto&& self, int start, int node, int depth) -> void {
        on_path[node] = 1;
        for (int w : adj[node]) {
            if (w == start && depth >= 3) {
                if (best == -1 || depth < best) best = depth;
            } else if (w > start && !on_path[w]) {
                self(self, start, w, depth + 1);
            }
        }
        on_path[node] = 0;
    };
    for (int s = 0; s < g.n; ++s) dfs(dfs, s, s, 1);
    return best; // -1 = acyclic
}

// Brute-force graph isomorphism for tiny graphs (n <= 8).
inline bool isomorphic(const GraphData& a, const GraphData& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    auto edge_set = [](const GraphData& g, const std::vector<int>& perm) {
        std::vector<std::pair<int, int>> es;
        for (const auto& e : g.edges) {
            int u = perm.empty() ? e.u : perm[e.u];
            int v = perm.empty() ? e.v : perm[e.v];
            es.push_back(std::minmax(u, v));
        }
        std::sort(es.begin(), es.end());
        return es;
    };
    auto target = edge_set(b, {});
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (edge_set(a, perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// A sinkless orientation that always exists on the generator's bipartite
// outputs: colour-0 edges leave side A, colour-1 edges leave side B.
inline Orientation template_sinkless_orientation(const EdgeColouredGraph& g) {
    auto side = bipartition(g.data());
    Orientation o;
    o.toward_max.assign(g.edge_count(), 0);
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        int tail = e.colour == 0 ? ((*side)[e.u] == 0 ? e.u : e.v) : ((*side)[e.u] == 1 ? e.u : e.v);
        o.toward_max[i] = tail == e.u ? 1 : 0;
    }
    return o;
}

// Randomise a sinkless orientation by flip-repair: start random, repeatedly
// flip a random incident edge of a random sink.
inline Orientation random_sinkless_orientation(int n, std::span<const std::pair<int, int>> edges,
                                               uint64_t seed) {
    Orientation o;
    o.toward_max.resize(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) o.toward_max[i] = (seed >> (i % 48)) * 2654435761u >> 31 & 1;
    std::vector<std::vector<int>> incident(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        incident[edges[i].first].push_back(static_cast<int>(i));
        incident[edges[i].second].push_back(static_cast<int>(i));
    }
    uint64_t state = seed * 0x9e3779b97f4a7c15ull + 1;
    auto rnd = [&](uint64_t m) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33) % m;
    };
    for (int guard = 0; guard < 100000; ++guard) {
        auto sinks = find_sinks(n, edges, o);
        if (sinks.empty()) return o;
        int v = sinks[rnd(sinks.size())];
        int e = incident[v][rnd(incident[v].size())];
        o.toward_max[e] ^= 1;
    }
    throw std::runtime_error("random_sinkless_orientation: repair walk did not converge");
}

} // namespace sinkless::testing
