#include "density.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

namespace rbc {

namespace {

struct Dinic {
    struct Arc {
        int to;
        std::int64_t cap;
        int rev;
    };
    std::vector<std::vector<Arc>> g;
    std::vector<int> level, it;

    explicit Dinic(int n) : g(n), level(n), it(n) {}

    void add_edge(int a, int b, std::int64_t cap) {
        g[a].push_back({b, cap, (int)g[b].size()});
        g[b].push_back({a, 0, (int)g[a].size() - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Arc& a : g[v])
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[v] + 1;
                    q.push(a.to);
                }
        }
        return level[t] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t f) {
        if (v == t) return f;
        for (int& i = it[v]; i < (int)g[v].size(); ++i) {
            Arc& a = g[v][i];
            if (a.cap > 0 && level[a.to] == level[v] + 1) {
                std::int64_t d = dfs(a.to, t, std::min(f, a.cap));
                if (d > 0) {
                    a.cap -= d;
                    g[a.to][a.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    std::int64_t max_flow(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            std::int64_t f;
            while ((f = dfs(s, t, INT64_MAX)) > 0) flow += f;
        }
        return flow;
    }

    std::vector<char> source_side(int s) {
        std::vector<char> seen(g.size(), 0);
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Arc& a : g[v])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = 1;
                    q.push(a.to);
                }
        }
        return seen;
    }
};

long long induced_edges(const Graph& g, const std::vector<char>& in) {
    long long e = 0;
    for (const Edge& ed : g.edges())
        if (in[ed.u] && in[ed.v]) ++e;
    return e;
}

// Is there a nonempty S with e(S)*den - num*|S| > 0? If so return one.
// Min-cut formulation: source -> edge node (den), edge node -> endpoints
// (inf), vertex -> sink (num); max(e(S)*den - num*|S|) = den*m - mincut.
std::optional<std::vector<int>> improving_set(const Graph& g, const std::vector<int>& verts,
                                              std::int64_t num, std::int64_t den) {
    const int m = g.num_edges();
    const int n = (int)verts.size();
    std::vector<int> pos(g.vertex_space(), -1);
    for (int i = 0; i < n; ++i) pos[verts[i]] = i;

    const int S = 0, T = 1 + m + n;
    Dinic net(T + 1);
    const std::int64_t INF = (std::int64_t)1 << 60;
    for (int i = 0; i < m; ++i) {
        const Edge& e = g.edges()[i];
        net.add_edge(S, 1 + i, den);
        net.add_edge(1 + i, 1 + m + pos[e.u], INF);
        net.add_edge(1 + i, 1 + m + pos[e.v], INF);
    }
    for (int i = 0; i < n; ++i) net.add_edge(1 + m + i, T, num);

    std::int64_t cut = net.max_flow(S, T);
    if (cut >= den * (std::int64_t)m) return std::nullopt;
    auto side = net.source_side(S);
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (side[1 + m + i]) out.push_back(verts[i]);
    return out;
}

}  // namespace

DensityWitness max_density(const Graph& g) {
    auto verts = g.alive_vertices();
    if (verts.empty()) throw precondition_error("max_density: graph has no vertices");
    if (g.num_edges() == 0) return {Rational(0, 1), {verts.front()}};

    // Dinkelbach: repeatedly ask for a set beating the current ratio.
    std::vector<char> in(g.vertex_space(), 0);
    for (int v : verts) in[v] = 1;
    std::vector<int> best = verts;
    Rational lambda((long long)g.num_edges(), (long long)verts.size());
    for (;;) {
        auto s = improving_set(g, verts, lambda.num, lambda.den);
        if (!s) break;
        std::fill(in.begin(), in.end(), 0);
        for (int v : *s) in[v] = 1;
        long long e = induced_edges(g, in);
        Rational cand(e, (long long)s->size());
        if (!(lambda < cand))
            throw std::logic_error("max_density: flow returned non-improving set");
        lambda = cand;
        best = std::move(*s);
    }
    return {lambda, best};
}

DensityWitness max_density_bruteforce(const Graph& g) {
    auto verts = g.alive_vertices();
    if (verts.empty()) throw precondition_error("max_density_bruteforce: graph has no vertices");
    const int k = (int)verts.size();
    if (k > 20)
        throw precondition_error("max_density_bruteforce: more than 20 vertices (" +
                                 std::to_string(k) + ")");
    std::vector<std::uint32_t> adj(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (j != i && g.has_edge(verts[i], verts[j])) adj[i] |= 1u << j;

    Rational best(0, 1);
    std::uint32_t best_mask = 1;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        int e2 = 0;
        for (std::uint32_t rest = mask; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            e2 += __builtin_popcount(adj[i] & mask);
        }
        Rational cand(e2 / 2, __builtin_popcount(mask));
        if (best < cand) {
            best = cand;
            best_mask = mask;
        }
    }
    std::vector<int> w;
    for (int i = 0; i < k; ++i)
        if (best_mask & (1u << i)) w.push_back(verts[i]);
    return {best, w};
}

DensityWitness max_2_density(const Graph& g) {
    auto verts = g.alive_vertices();
    const int k = (int)verts.size();
    if (k < 3) throw precondition_error("max_2_density: need at least 3 vertices");
    if (k > 20)
        throw precondition_error("max_2_density: more than 20 vertices (" + std::to_string(k) +
                                 ")");
    std::vector<std::uint32_t> adj(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (j != i && g.has_edge(verts[i], verts[j])) adj[i] |= 1u << j;

    bool found = false;
    Rational best(0, 1);
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        int v = __builtin_popcount(mask);
        if (v < 3) continue;
        int e2 = 0;
        for (std::uint32_t rest = mask; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            e2 += __builtin_popcount(adj[i] & mask);
        }
        Rational cand(e2 / 2 - 1, v - 2);
        if (!found || best < cand) {
            found = true;
            best = cand;
            best_mask = mask;
        }
    }
    std::vector<int> w;
    for (int i = 0; i < k; ++i)
        if (best_mask & (1u << i)) w.push_back(verts[i]);
    return {best, w};
}

namespace {

// Branch and bound over connected vertex sets of the 2-core, rooted at their
// minimum vertex. Returns the first set reaching the bound.
struct DenseSearch {
    const Rational& bound;
    int max_vertices;
    std::vector<std::vector<int>> adj;  // core adjacency, ids 0..k-1
    std::vector<int> label;             // core id -> original vertex
    std::vector<char> in_s, banned;
    std::vector<int> s;
    long long edges_in_s = 0;

    bool found(std::vector<int>& out) {
        for (int root = 0; root < (int)adj.size(); ++root) {
            in_s.assign(adj.size(), 0);
            banned.assign(adj.size(), 0);
            for (int v = 0; v < root; ++v) banned[v] = 1;
            s.clear();
            edges_in_s = 0;
            include(root);
            if (expand()) {
                for (int v : s) out.push_back(label[v]);
                return true;
            }
            pop();
        }
        return false;
    }

    void include(int v) {
        for (int u : adj[v])
            if (in_s[u]) ++edges_in_s;
        in_s[v] = 1;
        s.push_back(v);
    }
    void pop() {
        int v = s.back();
        s.pop_back();
        in_s[v] = 0;
        for (int u : adj[v])
            if (in_s[u]) --edges_in_s;
    }

    bool dense_enough() const {
        return (__int128)edges_in_s * bound.den >= (__int128)bound.num * (__int128)s.size();
    }

    bool expand() {
        if (dense_enough()) return true;
        if ((int)s.size() >= max_vertices) return false;

        // candidate gains: edges a candidate could contribute at most
        std::vector<int> marked;
        for (int v : s)
            for (int u : adj[v])
                if (!in_s[u] && banned[u] == 0) {
                    banned[u] = 2;  // dedupe mark for this scan
                    marked.push_back(u);
                }
        std::vector<std::pair<int, int>> cand;  // (-gain, v)
        for (int u : marked) {
            int gain = 0;
            for (int w : adj[u])
                if (in_s[w] || banned[w] != 1) ++gain;
            cand.push_back({-gain, u});
        }
        for (int u : marked) banned[u] = 0;
        if (cand.empty()) return false;
        std::sort(cand.begin(), cand.end());

        // optimistic density check over extension sizes
        int room = max_vertices - (int)s.size();
        long long acc = edges_in_s;
        bool possible = false;
        for (int r = 1; r <= room && r <= (int)cand.size(); ++r) {
            acc += -cand[r - 1].first;
            if ((__int128)acc * bound.den >= (__int128)bound.num * (__int128)(s.size() + r)) {
                possible = true;
                break;
            }
        }
        if (!possible) return false;

        int u = cand.front().second;
        include(u);
        if (expand()) return true;
        pop();
        banned[u] = 1;
        bool ok = expand();
        banned[u] = 0;
        return ok;
    }
};

}  // namespace

std::optional<DensityWitness> find_small_dense_subgraph(const Graph& g, const Rational& bound,
                                                        int max_vertices) {
    if (max_vertices < 1 || max_vertices > 14)
        throw precondition_error("find_small_dense_subgraph: max_vertices must be in [1,14]");

    // 2-core peel: a minimal witness for bound >= 1 has min degree >= 2.
    std::vector<int> deg(g.vertex_space(), 0);
    std::vector<char> dead(g.vertex_space(), 1);
    for (int v : g.alive_vertices()) {
        dead[v] = 0;
        deg[v] = g.degree(v);
    }
    if (bound >= Rational(1, 1)) {
        std::vector<int> stack;
        for (int v : g.alive_vertices())
            if (deg[v] < 2) stack.push_back(v);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (dead[v]) continue;
            dead[v] = 1;
            for (int u : g.neighbours(v))
                if (!dead[u] && --deg[u] < 2) stack.push_back(u);
        }
    }

    std::vector<int> core;
    for (int v = 0; v < g.vertex_space(); ++v)
        if (!dead[v]) core.push_back(v);
    if (core.empty()) return std::nullopt;

    DenseSearch search{bound, max_vertices, {}, core, {}, {}, {}, 0};
    std::vector<int> id(g.vertex_space(), -1);
    for (int i = 0; i < (int)core.size(); ++i) id[core[i]] = i;
    search.adj.resize(core.size());
    for (int i = 0; i < (int)core.size(); ++i)
        for (int u : g.neighbours(core[i]))
            if (id[u] >= 0) search.adj[i].push_back(id[u]);

    std::vector<int> out;
    if (!search.found(out)) return std::nullopt;
    std::sort(out.begin(), out.end());
    std::vector<char> in(g.vertex_space(), 0);
    for (int v : out) in[v] = 1;
    long long e = 0;
    for (const Edge& ed : g.edges())
        if (in[ed.u] && in[ed.v]) ++e;
    return DensityWitness{Rational(e, (long long)out.size()), out};
}

std::optional<std::vector<int>> find_k24(const Graph& g) {
    auto verts = g.alive_vertices();
    for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
            int a = verts[i], b = verts[j];
            const auto& na = g.neighbours(a);
            const auto& nb = g.neighbours(b);
            std::vector<int> common;
            std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                  std::back_inserter(common));
            if ((int)common.size() >= 4) {
                std::vector<int> out = {a, b};
                out.insert(out.end(), common.begin(), common.begin() + 4);
                return out;
            }
        }
    }
    return std::nullopt;
}

}  // namespace rbc
