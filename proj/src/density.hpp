#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace rbc {

struct DensityWitness {
    Rational value;
    std::vector<int> vertices;  // live vertex set attaining `value` exactly
};

// Maximum density m(G) = max { e(J)/v(J) : J induced on a nonempty vertex
// set }. Exact: Dinkelbach iteration over a min-cut subproblem, so it stays
// feasible on graphs with hundreds of vertices.
DensityWitness max_density(const Graph& g);

// Same contract, exhaustive over all nonempty vertex subsets. Oracle for
// max_density; capped at 20 live vertices.
DensityWitness max_density_bruteforce(const Graph& g);

// Maximum 2-density m_2(H) = max { (e(J)-1)/(v(J)-2) : v(J) >= 3 }.
// Brute force; intended for small fixed pattern graphs.
DensityWitness max_2_density(const Graph& g);

// Some vertex set S with |S| <= max_vertices and induced density >= bound,
// or nullopt. max_vertices is capped at 14 (search is exponential in it).
std::optional<DensityWitness> find_small_dense_subgraph(const Graph& g, const Rational& bound,
                                                        int max_vertices);

// True iff G contains K_{2,4} as a subgraph (some vertex pair with four
// common neighbours).
std::optional<std::vector<int>> find_k24(const Graph& g);

}  // namespace rbc
