#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "drc/errors.hpp"

namespace drc {

// Undirected simple graph; edges stored as ordered pairs (i < j), sorted.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(n), 0);
        for (auto [i, j] : edges) {
            ++d[static_cast<std::size_t>(i)];
            ++d[static_cast<std::size_t>(j)];
        }
        return d;
    }

    std::vector<std::vector<int>> neighbor_lists() const {
        std::vector<std::vector<int>> nb(static_cast<std::size_t>(n));
        for (auto [i, j] : edges) {
            nb[static_cast<std::size_t>(i)].push_back(j);
            nb[static_cast<std::size_t>(j)].push_back(i);
        }
        for (auto& v : nb) std::sort(v.begin(), v.end());
        return nb;
    }

    bool operator==(const Graph&) const = default;
};

inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw validation_error("graph: node count must be >= 1, got " + std::to_string(n));
    Graph g;
    g.n = n;
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : edges) {
        if (i == j) throw validation_error("graph: self-loop at node " + std::to_string(i));
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw validation_error("graph: edge (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") index out of range [0," + std::to_string(n) + ")");
        auto e = std::minmax(i, j);
        if (!seen.insert(e).second)
            throw validation_error("graph: duplicate edge (" + std::to_string(e.first) + "," +
                                   std::to_string(e.second) + ")");
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

inline bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    auto nb = g.neighbor_lists();
    std::vector<char> vis(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : nb[static_cast<std::size_t>(v)])
            if (!vis[static_cast<std::size_t>(u)]) {
                vis[static_cast<std::size_t>(u)] = 1;
                ++count;
                stack.push_back(u);
            }
    }
    return count == g.n;
}

inline Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    if (n == 2) e.pop_back();  // C2 degenerates to a single edge
    return build_graph(n, e);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, e);
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build_graph(n, e);
}

// splitmix64 with uniform helpers. <random> distributions are not pinned by
// the standard across implementations; these are, so seeds reproduce anywhere.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Random spanning tree (random attachment) plus extra edges; always connected.
inline Graph random_connected_graph(int n, Rng& rng, double extra_edge_prob = 0.3) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(rng.uniform_int(0, i - 1), i);
    std::set<std::pair<int, int>> have(e.begin(), e.end());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!have.count({i, j}) && rng.uniform() < extra_edge_prob) e.emplace_back(i, j);
    return build_graph(n, e);
}

} // namespace drc
