#pragma once

// Shared test fixtures: standard graphs, a brute-force cycle counter, and a
// seeded generator of sparse unions of l-cycles used to stress the colourer.

#include <algorithm>
#include <optional>
#include <vector>

#include "cycles.hpp"
#include "density.hpp"
#include "graph.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace corpus {

inline rbc::Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return rbc::Graph(n, e);
}

inline rbc::Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return rbc::Graph(n, e);
}

inline rbc::Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return rbc::Graph(n, e);
}

inline rbc::Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return rbc::Graph(a + b, e);
}

// Counts l-cycles by checking every ordered vertex tuple; independent of the
// DFS enumerator.
inline long long naive_cycle_count(const rbc::Graph& g, int ell) {
    std::vector<int> verts = g.alive_vertices();
    long long count = 0;
    std::vector<int> tuple;
    std::vector<char> used(g.vertex_space(), 0);
    auto rec = [&](auto&& self) -> void {
        if ((int)tuple.size() == ell) {
            for (int i = 0; i < ell; ++i)
                if (!g.has_edge(tuple[i], tuple[(i + 1) % ell])) return;
            ++count;
            return;
        }
        for (int v : verts) {
            if (used[v]) continue;
            used[v] = 1;
            tuple.push_back(v);
            self(self);
            tuple.pop_back();
            used[v] = 0;
        }
    };
    rec(rec);
    return count / (2 * ell);  // each cycle counted once per rotation and direction
}

// Random union of l-cycles glued along shared paths (and occasionally a
// shared edge plus a revisited vertex, or a closing chord), then filtered by
// the exact density bound m(G) < (l-1)/(l-2). Returns nullopt when the draw
// violates the bound.
inline std::optional<rbc::Graph> random_cycle_union(int ell, int extra_cycles, rbc::Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    int n = ell;
    for (int i = 0; i < ell; ++i) edges.emplace_back(i, (i + 1) % ell);

    auto adjacency = [&]() {
        std::vector<std::vector<int>> adj(n);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    };
    auto random_path = [&](int k) -> std::vector<int> {
        auto adj = adjacency();
        for (int attempt = 0; attempt < 30; ++attempt) {
            std::vector<int> path = {(int)rng.below(n)};
            std::vector<char> used(n, 0);
            used[path[0]] = 1;
            while ((int)path.size() < k) {
                const auto& nb = adj[path.back()];
                std::vector<int> options;
                for (int u : nb)
                    if (!used[u]) options.push_back(u);
                if (options.empty()) break;
                int pick = options[rng.below(options.size())];
                used[pick] = 1;
                path.push_back(pick);
            }
            if ((int)path.size() == k) return path;
        }
        return {};
    };

    for (int c = 0; c < extra_cycles; ++c) {
        std::uint64_t kind = rng.below(10);
        if (kind < 6) {
            // glue a new cycle along a shared k-path, k mostly 2
            int k = 2 + (int)(rng.below(4) == 0 ? rng.below(ell - 2) : 0);
            auto path = random_path(k);
            if (path.empty()) continue;
            int prev = path.back();
            for (int i = 0; i < ell - k; ++i) {
                int fresh = n++;
                edges.emplace_back(prev, fresh);
                prev = fresh;
            }
            edges.emplace_back(prev, path.front());
        } else if (kind < 8) {
            // close an l-path into a cycle if the ends are not yet adjacent
            auto path = random_path(ell);
            if (path.empty()) continue;
            edges.emplace_back(path.front(), path.back());
        } else {
            // shared edge plus one revisited far vertex (B-like shape)
            auto seed_edge = edges[rng.below(edges.size())];
            int w = (int)rng.below(n);
            if (w == seed_edge.first || w == seed_edge.second) continue;
            int j = 3 + (int)rng.below(ell - 3);  // w sits at position j
            int prev = seed_edge.second;
            for (int pos = 3; pos <= ell; ++pos) {
                if (pos == j) {
                    edges.emplace_back(prev, w);
                    prev = w;
                } else {
                    int fresh = n++;
                    edges.emplace_back(prev, fresh);
                    prev = fresh;
                }
            }
            edges.emplace_back(prev, seed_edge.first);
        }
    }
    // dedupe and drop accidental self-loops before constructing
    std::vector<std::pair<int, int>> cleaned;
    for (auto [a, b] : edges) {
        if (a == b) return std::nullopt;
        cleaned.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(cleaned.begin(), cleaned.end());
    cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
    rbc::Graph g(n, cleaned);
    if (!(rbc::max_density(g).value < rbc::Rational(ell - 1, ell - 2))) return std::nullopt;
    return g;
}

}  // namespace corpus
