#pragma once

#include <map>
#include <set>
#include <vector>

#include "colouring.hpp"
#include "cycles.hpp"

namespace rbc::detail {

// One candidate partial colouring of a component, produced by a case
// handler and validated wholesale afterwards.
struct Plan {
    // each group receives one fresh colour; edges must form a matching
    std::vector<std::vector<Edge>> groups;
    // steps whose new cycles the groups already kill; no pair is assigned
    std::set<int> no_assign;
    // edges default steps must not colour (kept for a later group)
    EdgeSet reserved;
    // groups already kill H_1, skip its opening pair
    bool skip_h1 = false;
    // edges the H_1 opening pair must avoid
    EdgeSet h1_avoid;
};

// Colour one C_l-component's edges into `local` (colour ids local, dense
// from 0). Throws dead_end_error when the case analysis cannot complete.
std::map<Edge, int> colour_component(const std::vector<Cycle>& members, int vertex_space, int ell);

// Simple paths from a to b with exactly k vertices, all edges inside h,
// lexicographic order.
std::vector<std::vector<int>> k_vertex_paths(const Sub& h, int a, int b, int k);

// Members fully contained in h, sorted.
std::vector<Cycle> members_in(const std::vector<Cycle>& members, const Sub& h);

bool component_killed(const std::vector<Cycle>& members, const std::map<Edge, int>& col);
bool colour_classes_are_matchings(const std::map<Edge, int>& col);

}  // namespace rbc::detail
