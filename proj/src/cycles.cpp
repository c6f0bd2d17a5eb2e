#include "cycles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "errors.hpp"

namespace rbc {

Cycle Cycle::from_vertices(std::vector<int> vs) {
    const int l = (int)vs.size();
    if (l < 3) throw precondition_error("cycle needs at least 3 vertices");
    {
        auto sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw precondition_error("cycle vertices must be distinct");
    }
    int mpos = (int)(std::min_element(vs.begin(), vs.end()) - vs.begin());
    auto at = [&](int i) { return vs[((i % l) + l) % l]; };
    std::vector<int> out(l);
    bool forward = at(mpos + 1) < at(mpos - 1);
    for (int i = 0; i < l; ++i) out[i] = forward ? at(mpos + i) : at(mpos - i);
    Cycle c;
    c.verts = std::move(out);
    return c;
}

EdgeSet Cycle::edge_set() const {
    EdgeSet es;
    for (int i = 0; i < length(); ++i) es.insert(edge(i));
    return es;
}

bool Cycle::contains_edge(const Edge& e) const {
    for (int i = 0; i < length(); ++i)
        if (edge(i) == e) return true;
    return false;
}

bool Cycle::contains_vertex(int v) const {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
}

void Sub::add_cycle(const Cycle& c) {
    for (int v : c.verts) vin[v] = 1;
    for (int i = 0; i < c.length(); ++i) edges.insert(c.edge(i));
}

bool Sub::contains_cycle(const Cycle& c) const {
    for (int i = 0; i < c.length(); ++i)
        if (!has_edge(c.edge(i))) return false;
    return true;
}

bool Sub::shares_edge(const Cycle& c) const {
    for (int i = 0; i < c.length(); ++i)
        if (has_edge(c.edge(i))) return true;
    return false;
}

int Sub::vertex_count() const {
    return (int)std::count(vin.begin(), vin.end(), (char)1);
}

std::vector<Cycle> enumerate_cycles(const Graph& g, int ell) {
    if (ell < 3) throw precondition_error("enumerate_cycles: ell must be >= 3");
    std::vector<Cycle> out;
    std::vector<int> path;
    std::vector<char> on_path(g.vertex_space(), 0);

    // DFS path extension from each minimal start vertex; intermediate
    // vertices are kept above the start so each cycle appears once.
    auto dfs = [&](auto&& self, int v, int start) -> void {
        if ((int)path.size() == ell) {
            if (g.has_edge(v, start) && path[1] < path.back())
                out.push_back(Cycle::from_vertices(path));
            return;
        }
        for (int u : g.neighbours(v)) {
            if (u <= start || on_path[u]) continue;
            on_path[u] = 1;
            path.push_back(u);
            self(self, u, start);
            path.pop_back();
            on_path[u] = 0;
        }
    };

    for (int s : g.alive_vertices()) {
        if (g.degree(s) < 2) continue;
        path.assign(1, s);
        on_path[s] = 1;
        dfs(dfs, s, s);
        on_path[s] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph edge_intersection_graph(const std::vector<Cycle>& cycles) {
    const int k = (int)cycles.size();
    std::vector<EdgeSet> sets(k);
    for (int i = 0; i < k; ++i) sets[i] = cycles[i].edge_set();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool share = std::any_of(sets[i].begin(), sets[i].end(),
                                     [&](const Edge& e) { return sets[j].count(e) > 0; });
            if (share) pairs.emplace_back(i, j);
        }
    return Graph(k, pairs);
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> new_vertex_runs(const Sub& h, const Cycle& c) {
    // lengths of maximal runs of vertices outside h, cyclically
    const int l = c.length();
    std::vector<int> runs;
    int first_old = -1;
    for (int i = 0; i < l; ++i)
        if (h.has_vertex(c.verts[i])) {
            first_old = i;
            break;
        }
    if (first_old < 0) {
        runs.push_back(l);
        return runs;
    }
    int run = 0;
    for (int k = 1; k <= l; ++k) {
        int v = c.verts[(first_old + k) % l];
        if (!h.has_vertex(v)) {
            ++run;
        } else if (run > 0) {
            runs.push_back(run);
            run = 0;
        }
    }
    return runs;
}

ConstructionStep make_step(const Sub& h, const Cycle& c, int ell) {
    ConstructionStep st;
    st.added_cycle = c;
    for (int i = 0; i < c.length(); ++i)
        if (!h.has_edge(c.edge(i))) ++st.e_new;
    for (int v : c.verts)
        if (!h.has_vertex(v)) ++st.v_new;
    st.c_new = (int)new_vertex_runs(h, c).size();
    if (ell >= 5) st.config = classify_try(h, c, ell);
    return st;
}

}  // namespace

std::vector<ConstructionStep> build_sequence(const std::vector<Cycle>& members, int vertex_space,
                                             const BuildDirective& directive) {
    const int ell = directive.start.length();
    Sub h(vertex_space);
    h.add_cycle(directive.start);
    std::vector<char> used(members.size(), 0);
    std::map<Cycle, int> index;
    for (int i = 0; i < (int)members.size(); ++i) index[members[i]] = i;
    {
        auto it = index.find(directive.start);
        if (it == index.end())
            throw precondition_error("build_sequence: start cycle not in component");
        used[it->second] = 1;
    }
    std::vector<char> postponed(members.size(), 0);
    for (const Cycle& c : directive.postponed) {
        auto it = index.find(c);
        if (it == index.end()) throw precondition_error("build_sequence: unknown postponed cycle");
        postponed[it->second] = 1;
    }

    std::vector<ConstructionStep> steps;
    auto add = [&](int i) {
        steps.push_back(make_step(h, members[i], ell));
        h.add_cycle(members[i]);
        used[i] = 1;
    };
    auto eligible = [&](int i) {
        return !used[i] && !h.contains_cycle(members[i]) && h.shares_edge(members[i]);
    };
    auto greedy_pass = [&](const std::vector<char>* allow, bool skip_postponed) {
        for (;;) {
            int pick = -1;
            for (int i = 0; i < (int)members.size(); ++i) {
                if (allow && !(*allow)[i]) continue;
                if (skip_postponed && postponed[i]) continue;
                if (eligible(i)) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) return;
            add(pick);
        }
    };

    if (directive.stage1) {
        std::vector<char> allow(members.size(), 0);
        for (const Cycle& c : *directive.stage1) {
            auto it = index.find(c);
            if (it == index.end())
                throw precondition_error("build_sequence: unknown stage1 cycle");
            allow[it->second] = 1;
        }
        greedy_pass(&allow, false);
        for (int i = 0; i < (int)members.size(); ++i)
            if (allow[i] && !used[i] && !h.contains_cycle(members[i]))
                throw dead_end_error("build_sequence: stage1 set not connected");
    }
    for (const Cycle& c : directive.forced) {
        auto it = index.find(c);
        if (it == index.end()) throw precondition_error("build_sequence: unknown forced cycle");
        int i = it->second;
        if (used[i] || h.contains_cycle(members[i])) continue;
        if (!h.shares_edge(members[i]))
            throw dead_end_error("build_sequence: forced cycle not eligible");
        add(i);
    }
    for (;;) {
        greedy_pass(nullptr, true);
        int pick = -1;
        for (const Cycle& c : directive.postponed) {  // defer in the listed order
            int i = index.at(c);
            if (eligible(i)) {
                pick = i;
                break;
            }
        }
        if (pick < 0) break;
        add(pick);
    }
    for (int i = 0; i < (int)members.size(); ++i)
        if (!used[i] && !h.contains_cycle(members[i]))
            throw dead_end_error("build_sequence: member unreachable from start");
    return steps;
}

std::vector<ConstructionStep> construction_sequence(const std::vector<Cycle>& members,
                                                    int vertex_space, const Cycle& start) {
    BuildDirective d;
    d.start = start;
    return build_sequence(members, vertex_space, d);
}

Graph union_graph_of(const std::vector<Cycle>& members, int vertex_space) {
    EdgeSet es;
    std::vector<char> touched(vertex_space, 0);
    for (const Cycle& c : members) {
        for (int v : c.verts) touched[v] = 1;
        for (int i = 0; i < c.length(); ++i) es.insert(c.edge(i));
    }
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : es) pairs.emplace_back(e.u, e.v);
    Graph g(vertex_space, pairs);
    std::vector<int> dead;
    for (int v = 0; v < vertex_space; ++v)
        if (!touched[v]) dead.push_back(v);
    return g.remove_vertices(dead);
}

std::vector<CLComponent> cl_components(const Graph& g, int ell) {
    auto cycles = enumerate_cycles(g, ell);
    UnionFind uf((int)cycles.size());
    std::map<Edge, int> owner;
    for (int i = 0; i < (int)cycles.size(); ++i)
        for (int k = 0; k < cycles[i].length(); ++k) {
            Edge e = cycles[i].edge(k);
            auto [it, fresh] = owner.try_emplace(e, i);
            if (!fresh) uf.unite(i, it->second);
        }
    std::map<int, std::vector<Cycle>> groups;
    for (int i = 0; i < (int)cycles.size(); ++i) groups[uf.find(i)].push_back(cycles[i]);

    std::vector<CLComponent> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        CLComponent comp;
        comp.member_cycles = members;
        comp.union_graph = union_graph_of(members, g.vertex_space());
        comp.sequence = construction_sequence(members, g.vertex_space(), members.front());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(), [](const CLComponent& a, const CLComponent& b) {
        return a.member_cycles.front() < b.member_cycles.front();
    });
    return out;
}

namespace {

bool matches_a(const Sub& h, const std::vector<int>& lab, int k) {
    const int l = (int)lab.size();
    for (int i = 0; i + 1 < k; ++i)
        if (!h.has_edge(Edge(lab[i], lab[i + 1]))) return false;
    for (int i = k; i < l; ++i)
        if (h.has_vertex(lab[i])) return false;
    // the added cycle is not contained in h, so for k = l the closing edge
    // is new automatically; for k < l new vertices make the rest new
    return true;
}

bool matches_b(const Sub& h, const std::vector<int>& lab, int j) {
    const int l = (int)lab.size();
    if (!h.has_edge(Edge(lab[0], lab[1]))) return false;
    if (h.has_edge(Edge(lab[1], lab[2]))) return false;
    if (!h.has_vertex(lab[j - 1])) return false;
    for (int i = 2; i < l; ++i)
        if (i != j - 1 && h.has_vertex(lab[i])) return false;
    return true;
}

std::vector<std::vector<int>> all_labellings(const Cycle& c) {
    const int l = c.length();
    std::vector<std::vector<int>> labs;
    for (int dir = 0; dir < 2; ++dir)
        for (int s = 0; s < l; ++s) {
            std::vector<int> lab(l);
            for (int i = 0; i < l; ++i)
                lab[i] = c.verts[((dir ? s - i : s + i) % l + l) % l];
            labs.push_back(std::move(lab));
        }
    std::sort(labs.begin(), labs.end());
    return labs;
}

}  // namespace

std::optional<Configuration> classify_try(const Sub& h, const Cycle& c, int ell) {
    if (ell < 5 || c.length() != ell) return std::nullopt;
    if (h.contains_cycle(c) || !h.shares_edge(c)) return std::nullopt;
    auto labs = all_labellings(c);
    for (int k = 2; k <= ell; ++k)
        for (const auto& lab : labs)
            if (matches_a(h, lab, k)) return Configuration{Configuration::Kind::A, k, lab};
    for (int j = 3; j <= ell - 1; ++j)
        for (const auto& lab : labs)
            if (matches_b(h, lab, j)) return Configuration{Configuration::Kind::B, j, lab};
    return std::nullopt;
}

Configuration classify_step(const Sub& h, const Cycle& c, int ell) {
    if (ell < 5) throw precondition_error("classify_step: ell must be >= 5");
    if (c.length() != ell) throw precondition_error("classify_step: cycle has wrong length");
    if (h.contains_cycle(c))
        throw precondition_error("classify_step: cycle already contained in H_i");
    if (!h.shares_edge(c)) throw precondition_error("classify_step: cycle shares no edge with H_i");

    auto labs = all_labellings(c);
    std::vector<std::pair<char, int>> classes;
    for (int k = 2; k <= ell; ++k)
        if (std::any_of(labs.begin(), labs.end(),
                        [&](const auto& lab) { return matches_a(h, lab, k); }))
            classes.push_back({'A', k});
    for (int j = 3; j <= ell - 1; ++j)
        if (std::any_of(labs.begin(), labs.end(),
                        [&](const auto& lab) { return matches_b(h, lab, j); }))
            classes.push_back({'B', j});

    if (classes.empty())
        throw dead_end_error("classify_step: no configuration matches",
                             "{\"cycle\":" + cycles_to_json({c}) + "}");
    bool ok = classes.size() == 1;
    if (classes.size() == 2 && classes[0].first == 'B' && classes[1].first == 'B')
        ok = classes[0].second + classes[1].second == ell + 3;  // mirrored reading
    if (!ok) {
        std::string tags;
        for (auto [t, i] : classes) tags += std::string(1, t) + std::to_string(i) + " ";
        throw dead_end_error("classify_step: multiple configuration classes match: " + tags,
                             "{\"cycle\":" + cycles_to_json({c}) + "}");
    }
    auto cfg = classify_try(h, c, ell);
    return *cfg;
}

Configuration classify_step(const Graph& h_i, const Cycle& c, int ell) {
    Sub h(std::max(h_i.vertex_space(),
                   1 + *std::max_element(c.verts.begin(), c.verts.end())));
    for (int v = 0; v < h_i.vertex_space(); ++v)
        if (h_i.alive(v)) h.vin[v] = 1;
    for (const Edge& e : h_i.edges()) h.edges.insert(e);
    return classify_step(h, c, ell);
}

std::string cycles_to_json(const std::vector<Cycle>& cycles) {
    nlohmann::json j = nlohmann::json::array();
    for (const Cycle& c : cycles) j.push_back(c.verts);
    return j.dump();
}

std::string component_to_json(const CLComponent& comp) {
    nlohmann::json j;
    j["cycles"] = nlohmann::json::array();
    for (const Cycle& c : comp.member_cycles) j["cycles"].push_back(c.verts);
    j["steps"] = nlohmann::json::array();
    for (const ConstructionStep& st : comp.sequence) {
        nlohmann::json s;
        s["cycle"] = st.added_cycle.verts;
        s["e_new"] = st.e_new;
        s["v_new"] = st.v_new;
        s["c_new"] = st.c_new;
        s["config"] = st.config ? nlohmann::json(st.config->tag()) : nlohmann::json(nullptr);
        if (st.config) s["labelling"] = st.config->labelling;
        j["steps"].push_back(std::move(s));
    }
    return j.dump();
}

}  // namespace rbc
