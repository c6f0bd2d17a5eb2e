#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace rbc {

// Fixed-length cycle in canonical form: starts at its minimum vertex and
// runs toward the smaller of that vertex's two cycle neighbours, which
// kills rotation and reflection duplicates.
struct Cycle {
    std::vector<int> verts;

    static Cycle from_vertices(std::vector<int> vs);
    int length() const { return (int)verts.size(); }
    Edge edge(int i) const { return Edge(verts[i], verts[(i + 1) % verts.size()]); }
    EdgeSet edge_set() const;
    bool contains_edge(const Edge& e) const;
    bool contains_vertex(int v) const;

    friend bool operator==(const Cycle& a, const Cycle& b) { return a.verts == b.verts; }
    friend bool operator!=(const Cycle& a, const Cycle& b) { return !(a == b); }
    friend bool operator<(const Cycle& a, const Cycle& b) { return a.verts < b.verts; }
};

// Vertex+edge set of a partially built component, over the ambient graph's
// vertex space.
struct Sub {
    std::vector<char> vin;
    EdgeSet edges;

    explicit Sub(int n) : vin(n, 0) {}
    bool has_vertex(int v) const { return vin[v]; }
    bool has_edge(const Edge& e) const { return edges.count(e) > 0; }
    void add_cycle(const Cycle& c);
    bool contains_cycle(const Cycle& c) const;
    bool shares_edge(const Cycle& c) const;
    int vertex_count() const;
};

// How a newly added cycle meets the current partial component:
//   A_k: u_1..u_k is a k-path of H_i, u_{k+1}..u_l are new vertices
//   B_j: u_1u_2 in H_i, u_2u_3 not an H_i edge, u_j in H_i, rest new
struct Configuration {
    enum class Kind { A, B };
    Kind kind = Kind::A;
    int index = 0;
    std::vector<int> labelling;  // u_1..u_l realizing the configuration

    std::string tag() const {
        return (kind == Kind::A ? "A" : "B") + std::to_string(index);
    }
};

struct ConstructionStep {
    Cycle added_cycle;
    int e_new = 0;  // |E(H_{i+1}) \ E(H_i)|
    int v_new = 0;  // |V(H_{i+1}) \ V(H_i)|
    int c_new = 0;  // components of H_{i+1} - H_i
    std::optional<Configuration> config;
};

struct CLComponent {
    Graph union_graph;
    std::vector<Cycle> member_cycles;        // sorted canonical
    std::vector<ConstructionStep> sequence;  // greedy from lex-min member
};

// All distinct l-cycles of g, canonical, lexicographically sorted.
std::vector<Cycle> enumerate_cycles(const Graph& g, int ell);

// Vertex i per cycle; edge {i,j} iff the cycles share at least one edge.
Graph edge_intersection_graph(const std::vector<Cycle>& cycles);

// One component per connected part of the edge intersection graph, each
// with a construction sequence. Components are pairwise edge-disjoint.
std::vector<CLComponent> cl_components(const Graph& g, int ell);

// Greedy construction sequence of the component from `start`: each step
// adds the lexicographically smallest member cycle that shares an edge
// with the current union and is not yet contained in it.
std::vector<ConstructionStep> construction_sequence(const std::vector<Cycle>& members,
                                                    int vertex_space, const Cycle& start);

// Sequence builder for the colouring procedure's reorderings: start, then
// greedy restricted to `stage1` until exhausted, then `forced` in order,
// then greedy over the rest with `postponed` cycles deferred for as long as
// any other cycle is eligible.
struct BuildDirective {
    Cycle start;
    std::optional<std::vector<Cycle>> stage1;
    std::vector<Cycle> forced;
    std::vector<Cycle> postponed;
};
std::vector<ConstructionStep> build_sequence(const std::vector<Cycle>& members, int vertex_space,
                                             const BuildDirective& directive);

// Configuration search: tries the 2l labellings of c for one realizing some
// A_k or B_j against h (classes in order A_2..A_l, B_3..B_{l-1};
// lexicographically smallest labelling within a class). Returns nullopt when
// nothing matches.
std::optional<Configuration> classify_try(const Sub& h, const Cycle& c, int ell);

// Strict variant: throws dead_end_error when no configuration matches or
// when two distinct classes match (mirrored B_j / B_{l+3-j} pairs are the
// same configuration read in both directions and are allowed).
Configuration classify_step(const Sub& h, const Cycle& c, int ell);
Configuration classify_step(const Graph& h_i, const Cycle& c, int ell);

// Union of the members' edges as a Graph (dead vertices removed).
Graph union_graph_of(const std::vector<Cycle>& members, int vertex_space);

std::string cycles_to_json(const std::vector<Cycle>& cycles);
std::string component_to_json(const CLComponent& comp);

}  // namespace rbc
