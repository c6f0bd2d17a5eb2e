#include "graph.hpp"

#include <sstream>

#include "rng.hpp"

namespace rbc {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (n < 0) throw parse_error("vertex count must be nonnegative");
    n_ = n;
    alive_.assign(n_, 1);
    alive_count_ = n_;
    EdgeSet seen;
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw parse_error("edge endpoint out of range: (" + std::to_string(a) + "," +
                              std::to_string(b) + ") with n=" + std::to_string(n_));
        if (a == b) throw parse_error("self-loop at vertex " + std::to_string(a));
        seen.insert(Edge(a, b));
    }
    edges_.assign(seen.begin(), seen.end());
    rebuild_adjacency();
}

void Graph::rebuild_adjacency() {
    adj_.assign(n_, {});
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> Graph::alive_vertices() const {
    std::vector<int> out;
    out.reserve(alive_count_);
    for (int v = 0; v < n_; ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

Graph Graph::remove_vertices(const std::vector<int>& verts) const {
    Graph out = *this;
    for (int v : verts) {
        if (v < 0 || v >= n_ || !alive_[v])
            throw parse_error("remove_vertices: vertex " + std::to_string(v) +
                              " is not a live vertex");
        if (out.alive_[v]) {
            out.alive_[v] = 0;
            --out.alive_count_;
        }
    }
    std::vector<Edge> kept;
    for (const Edge& e : edges_)
        if (out.alive_[e.u] && out.alive_[e.v]) kept.push_back(e);
    out.edges_ = std::move(kept);
    out.rebuild_adjacency();
    return out;
}

Graph Graph::remove_vertices_of(const Graph& h) const {
    return remove_vertices(h.alive_vertices());
}

Graph Graph::remove_edges(const EdgeSet& es) const {
    for (const Edge& e : es)
        if (!has_edge(e.u, e.v))
            throw parse_error("remove_edges: edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ") not present");
    Graph out = *this;
    std::vector<Edge> kept;
    for (const Edge& e : edges_)
        if (!es.count(e)) kept.push_back(e);
    out.edges_ = std::move(kept);
    out.rebuild_adjacency();
    return out;
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& pairs) {
    return Graph(n, pairs);
}

Graph sample_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0) throw precondition_error("sample_gnp: n must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw precondition_error("sample_gnp: p must lie in [0,1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) pairs.emplace_back(u, v);
    return Graph(n, pairs);
}

Graph parse_edge_list(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    std::string line;
    long long n = -1;
    std::vector<std::pair<int, int>> pairs;
    EdgeSet seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n) || n < 0)
                throw parse_error("line " + std::to_string(lineno) + ": expected vertex count");
            std::string rest;
            if (ls >> rest) throw parse_error("line " + std::to_string(lineno) + ": trailing junk");
            continue;
        }
        long long a, b;
        if (!(ls >> a >> b))
            throw parse_error("line " + std::to_string(lineno) + ": expected 'u v'");
        std::string rest;
        if (ls >> rest) throw parse_error("line " + std::to_string(lineno) + ": trailing junk");
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw parse_error("line " + std::to_string(lineno) + ": endpoint out of range");
        if (a == b) throw parse_error("line " + std::to_string(lineno) + ": self-loop");
        Edge e((int)a, (int)b);
        if (!seen.insert(e).second && warnings)
            warnings->push_back("line " + std::to_string(lineno) + ": duplicate edge collapsed");
        pairs.emplace_back((int)a, (int)b);
    }
    if (n < 0) throw parse_error("empty input: missing vertex count");
    return Graph((int)n, pairs);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_space() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

}  // namespace rbc
