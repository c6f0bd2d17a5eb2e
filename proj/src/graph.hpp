#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rbc {

// Canonical undirected edge, u < v.
struct Edge {
    int u = 0, v = 0;
    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}
    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
    bool touches(int x) const { return u == x || v == x; }
    bool adjacent_to(const Edge& o) const {
        return touches(o.u) || touches(o.v);
    }
    int other(int x) const { return x == u ? v : u; }
};

using EdgeSet = std::set<Edge>;

// Simple undirected graph over a fixed 0-indexed vertex space.
// Vertex deletion keeps identities: removed vertices are marked dead
// instead of renumbering, so cycles and colourings stay addressable
// across G - H steps. Immutable after construction.
class Graph {
public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& pairs);

    int vertex_space() const { return n_; }
    int num_vertices() const { return alive_count_; }
    int num_edges() const { return (int)edges_.size(); }
    bool alive(int v) const { return v >= 0 && v < n_ && alive_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return (int)adj_[v].size(); }
    bool has_edge(int u, int v) const;
    std::vector<int> alive_vertices() const;

    // G - H: delete the given vertices and all incident edges.
    Graph remove_vertices(const std::vector<int>& verts) const;
    Graph remove_vertices_of(const Graph& h) const;

    // Same vertex set, edge set minus `es`. Every edge of `es` must be present.
    Graph remove_edges(const EdgeSet& es) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.alive_ == b.alive_ && a.edges_ == b.edges_;
    }

private:
    void rebuild_adjacency();

    int n_ = 0;
    int alive_count_ = 0;
    std::vector<char> alive_;
    std::vector<Edge> edges_;  // sorted, unique
    std::vector<std::vector<int>> adj_;
};

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& pairs);

// Each of the C(n,2) pairs appears independently with probability p.
// Pairs are decided in lexicographic order (0,1), (0,2), ..., (n-2,n-1),
// one RNG draw per pair, so output is reproducible from (n, p, seed).
Graph sample_gnp(int n, double p, std::uint64_t seed);

// Text format: first line n, then "u v" per edge, '#' starts a comment line.
Graph parse_edge_list(const std::string& text, std::vector<std::string>* warnings = nullptr);
std::string serialize_edge_list(const Graph& g);

}  // namespace rbc
