#pragma once

#include <map>
#include <optional>
#include <string>

#include "cycles.hpp"
#include "graph.hpp"

namespace rbc {

// Edge -> colour id map built up during construction. Colour ids have no
// meaning beyond equality; fresh ids come from a per-invocation counter.
struct EdgeColouring {
    std::map<Edge, int> assignment;
    int next_fresh = 0;

    int fresh() { return next_fresh++; }
    bool has(const Edge& e) const { return assignment.count(e) > 0; }
    int at(const Edge& e) const { return assignment.at(e); }
    void set(const Edge& e, int colour) {
        if (has(e))
            throw dead_end_error("edge coloured twice: (" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + ")");
        assignment[e] = colour;
        next_fresh = std::max(next_fresh, colour + 1);
    }
};

struct Certificate {
    Graph graph;
    int ell = 0;
    EdgeColouring colouring;
    bool proper = false;
    std::optional<Cycle> rainbow_cycle;
};

// Proper edge colouring of g with no rainbow l-cycle, built by the
// construction-sequence case analysis. Requires l >= 5 and
// m(g) < (l-1)/(l-2), checked exactly; rejected inputs carry the densest
// subgraph witness.
EdgeColouring colour_rainbow_free(const Graph& g, int ell);

// Proper colouring of g with no rainbow 4-cycle via maximal C_4-chains.
// Requires every chain F to satisfy m(F) < 4/3.
EdgeColouring colour_c4_rainbow_free(const Graph& g);

// Definitional check, independent of the constructors: properness by
// scanning incident colours, rainbow by enumerating l-cycles.
Certificate verify_certificate(const Graph& g, int ell, const EdgeColouring& col);

// True iff every proper edge colouring of g contains a rainbow l-cycle.
// Exhaustive over partitions of E(g) into matchings; e(g) <= 12.
bool forces_rainbow_bruteforce(const Graph& g, int ell);

// Assign globally fresh, pairwise distinct colours to all uncoloured edges.
// Errors if the partial colouring is already improper.
EdgeColouring extend_to_proper(const Graph& g, EdgeColouring partial);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace rbc
