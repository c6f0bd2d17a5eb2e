#include "colouring.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

#include "colour_internal.hpp"
#include "density.hpp"

namespace rbc {

namespace {

// Backtracking over partitions of `edges` into matchings (restricted-growth
// enumeration, so colourings are visited once up to colour renaming).
// Returns a proper colouring in which no listed cycle is rainbow, if any.
std::optional<std::vector<int>> search_nonrainbow(const std::vector<Edge>& edges,
                                                  const std::vector<std::vector<int>>& cycles) {
    const int m = (int)edges.size();
    std::vector<int> assign(m, -1);
    std::vector<std::vector<int>> by_edge(m);
    for (int c = 0; c < (int)cycles.size(); ++c)
        for (int e : cycles[c]) by_edge[e].push_back(c);

    auto all_killed = [&]() {
        for (const auto& cyc : cycles) {
            bool killed = false;
            std::set<int> seen;
            for (int e : cyc) {
                if (assign[e] < 0) continue;
                if (!seen.insert(assign[e]).second) {
                    killed = true;
                    break;
                }
            }
            if (!killed) return false;
        }
        return true;
    };
    auto cycle_fully_rainbow = [&](const std::vector<int>& cyc) {
        std::set<int> seen;
        for (int e : cyc) {
            if (assign[e] < 0) return false;
            if (!seen.insert(assign[e]).second) return false;
        }
        return true;  // assigned everywhere, all colours distinct
    };

    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self, int i, int used) -> bool {
        if (all_killed()) {
            // remaining edges get fresh singleton colours
            std::vector<int> out(assign);
            int next = used;
            for (int k = 0; k < m; ++k)
                if (out[k] < 0) out[k] = next++;
            found = std::move(out);
            return true;
        }
        if (i == m) return false;
        for (int c = 0; c <= used && c <= i; ++c) {
            bool clash = false;
            for (int k = 0; k < i && !clash; ++k)
                if (assign[k] == c && edges[k].adjacent_to(edges[i])) clash = true;
            if (clash) continue;
            assign[i] = c;
            bool dead = false;
            for (int cyc : by_edge[i])
                if (cycle_fully_rainbow(cycles[cyc])) dead = true;
            if (!dead && self(self, i + 1, std::max(used, c + 1))) return true;
            assign[i] = -1;
        }
        return false;
    };
    rec(rec, 0, 0);
    return found;
}

}  // namespace

bool forces_rainbow_bruteforce(const Graph& g, int ell) {
    if (ell < 3) throw precondition_error("forces_rainbow_bruteforce: ell must be >= 3");
    if (g.num_edges() > 12)
        throw precondition_error("forces_rainbow_bruteforce: more than 12 edges (" +
                                 std::to_string(g.num_edges()) + ")");
    std::vector<Edge> edges = g.edges();
    std::map<Edge, int> id;
    for (int i = 0; i < (int)edges.size(); ++i) id[edges[i]] = i;
    std::vector<std::vector<int>> cycles;
    for (const Cycle& c : enumerate_cycles(g, ell)) {
        std::vector<int> es;
        for (int i = 0; i < c.length(); ++i) es.push_back(id.at(c.edge(i)));
        cycles.push_back(std::move(es));
    }
    if (cycles.empty()) return false;
    return !search_nonrainbow(edges, cycles).has_value();
}

EdgeColouring extend_to_proper(const Graph& g, EdgeColouring partial) {
    for (const auto& [e, c] : partial.assignment)
        if (!g.has_edge(e.u, e.v))
            throw precondition_error("extend_to_proper: coloured edge not in graph");
    for (int v : g.alive_vertices()) {
        std::map<int, int> seen;  // colour -> other endpoint
        for (int u : g.neighbours(v)) {
            Edge e(v, u);
            if (!partial.has(e)) continue;
            int c = partial.at(e);
            auto [it, fresh] = seen.try_emplace(c, u);
            if (!fresh)
                throw precondition_error("extend_to_proper: improper partial colouring at vertex " +
                                         std::to_string(v) + ", colour " + std::to_string(c));
        }
    }
    for (const Edge& e : g.edges())
        if (!partial.has(e)) partial.set(e, partial.fresh());
    return partial;
}

Certificate verify_certificate(const Graph& g, int ell, const EdgeColouring& col) {
    for (const Edge& e : g.edges())
        if (!col.has(e))
            throw precondition_error("verify_certificate: colouring is not total on E(G)");

    Certificate cert;
    cert.graph = g;
    cert.ell = ell;
    cert.colouring = col;
    cert.proper = true;
    for (int v : g.alive_vertices()) {
        std::set<int> seen;
        for (int u : g.neighbours(v))
            if (!seen.insert(col.at(Edge(v, u))).second) cert.proper = false;
    }
    for (const Cycle& c : enumerate_cycles(g, ell)) {
        std::set<int> seen;
        bool rainbow = true;
        for (int i = 0; i < c.length(); ++i)
            if (!seen.insert(col.at(c.edge(i))).second) rainbow = false;
        if (rainbow) {
            cert.rainbow_cycle = c;
            break;
        }
    }
    return cert;
}

namespace {

std::map<Edge, int> colour_c4_component(const CLComponent& comp) {
    const auto& members = comp.member_cycles;
    std::map<Edge, int> local;
    int next = 0;
    if (members.size() == 1) {
        const Cycle& c = members.front();
        local[c.edge(0)] = 0;
        local[c.edge(2)] = 0;
        return local;
    }
    bool plain = true;
    for (const ConstructionStep& st : comp.sequence)
        if (st.v_new != 2) plain = false;

    if (plain) {
        // opposite edges of the first 4-cycle, then a fresh pair on the
        // three new edges of every added 4-cycle
        const Cycle& h1 = members.front();
        {
            int c = next++;
            local[h1.edge(0)] = c;
            local[h1.edge(2)] = c;
        }
        Sub h((int)comp.union_graph.vertex_space());
        h.add_cycle(h1);
        for (const ConstructionStep& st : comp.sequence) {
            const Cycle& c = st.added_cycle;
            int old_pos = -1;
            int count_new = 0;
            for (int i = 0; i < 4; ++i) {
                if (h.has_edge(c.edge(i)))
                    old_pos = i;
                else
                    ++count_new;
            }
            if (count_new != 3 || old_pos < 0)
                throw dead_end_error("C4 chain step does not add exactly three edges",
                                     component_to_json(comp));
            int col_id = next++;
            local[c.edge((old_pos + 1) % 4)] = col_id;
            local[c.edge((old_pos + 3) % 4)] = col_id;
            h.add_cycle(c);
        }
    } else {
        // a step reuses an old vertex; density forces the chain to stay tiny,
        // so search proper colourings of the whole chain directly
        if (comp.union_graph.num_edges() > 16)
            throw precondition_error("colour_c4_rainbow_free: exhaustive fallback bound exceeded");
        std::vector<Edge> edges = comp.union_graph.edges();
        std::map<Edge, int> id;
        for (int i = 0; i < (int)edges.size(); ++i) id[edges[i]] = i;
        std::vector<std::vector<int>> cyc;
        for (const Cycle& c : members) {
            std::vector<int> es;
            for (int i = 0; i < 4; ++i) es.push_back(id.at(c.edge(i)));
            cyc.push_back(std::move(es));
        }
        auto sol = search_nonrainbow(edges, cyc);
        if (!sol)
            throw dead_end_error("C4 chain admits no rainbow-free proper colouring",
                                 component_to_json(comp));
        for (int i = 0; i < (int)edges.size(); ++i) local[edges[i]] = (*sol)[i];
    }
    if (!detail::colour_classes_are_matchings(local) || !detail::component_killed(members, local))
        throw dead_end_error("C4 chain colouring failed verification", component_to_json(comp));
    return local;
}

}  // namespace

EdgeColouring colour_c4_rainbow_free(const Graph& g) {
    EdgeColouring col;
    Rational bound(4, 3);
    for (const CLComponent& comp : cl_components(g, 4)) {
        DensityWitness dw = max_density(comp.union_graph);
        if (!(dw.value < bound)) {
            nlohmann::json j;
            j["m"] = dw.value.str();
            j["bound"] = bound.str();
            j["witness"] = dw.vertices;
            throw precondition_error("colour_c4_rainbow_free: C4-chain with m = " + dw.value.str() +
                                         " not below 4/3",
                                     j.dump());
        }
        auto local = colour_c4_component(comp);
        std::map<int, int> remap;
        for (const auto& [e, c] : local) {
            auto [it, fresh] = remap.try_emplace(c, -1);
            if (fresh) it->second = col.fresh();
            col.set(e, it->second);
        }
    }
    return extend_to_proper(g, std::move(col));
}

std::string certificate_to_json(const Certificate& cert) {
    nlohmann::json j;
    j["n"] = cert.graph.vertex_space();
    j["ell"] = cert.ell;
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : cert.graph.edges())
        j["edges"].push_back({e.u, e.v, cert.colouring.at(e)});
    j["proper"] = cert.proper;
    j["rainbow"] = cert.rainbow_cycle ? nlohmann::json(cert.rainbow_cycle->verts)
                                      : nlohmann::json(nullptr);
    return j.dump();
}

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("certificate: invalid JSON: ") + e.what());
    }
    Certificate cert;
    try {
        int n = j.at("n").get<int>();
        cert.ell = j.at("ell").get<int>();
        std::vector<std::pair<int, int>> pairs;
        for (const auto& row : j.at("edges")) {
            pairs.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
        }
        cert.graph = Graph(n, pairs);
        for (const auto& row : j.at("edges"))
            cert.colouring.set(Edge(row.at(0).get<int>(), row.at(1).get<int>()),
                               row.at(2).get<int>());
        cert.proper = j.value("proper", false);
        if (j.contains("rainbow") && !j.at("rainbow").is_null()) {
            std::vector<int> verts = j.at("rainbow").get<std::vector<int>>();
            cert.rainbow_cycle = Cycle::from_vertices(verts);
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("certificate: missing or malformed field: ") + e.what());
    }
    return cert;
}

}  // namespace rbc
