#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace rbc {

// One Monte Carlo sample. `seed` is the per-trial substream seed derived
// from (master seed, running trial index); p is recomputed from (c, n) and
// the documented exponent, never stored independently.
struct TrialRecord {
    int ell = 0;
    int n = 0;
    double p = 0.0;
    double c = 0.0;
    std::uint64_t seed = 0;
    bool obstruction_found = false;
    std::string colourer_outcome = "none";  // success | precondition_fail | dead_end | none
    std::optional<Rational> densest_small_density;
    std::int64_t elapsed_ms = 0;
};

struct ScanParams {
    std::vector<int> n_list;
    std::vector<double> c_list;
    int trials = 200;
    std::uint64_t seed = 0;
    int threads = 1;        // record order and content independent of this
    bool keep_timings = false;  // zero elapsed_ms so equal seeds give equal bytes
};

// p = c * n^(-3/4): K_{2,4} subgraph appearance.
std::vector<TrialRecord> k24_presence_scan(const ScanParams& params);

// p = c * n^(-1/m_2(C_ell)); looks for any subgraph on <= 12 vertices with
// density >= m_2(C_ell) = (ell-1)/(ell-2).
std::vector<TrialRecord> obstruction_scan(int ell, const ScanParams& params);

// p = c * n^(-1/m_2(C_ell)); when m(G) < (ell-1)/(ell-2) runs the rainbow-free
// colourer and verifies the certificate.
std::vector<TrialRecord> colourability_scan(int ell, const ScanParams& params);

std::string emit_csv(const std::vector<TrialRecord>& records);

double scan_probability(double c, int n, double exponent);
double m2_exponent(int ell);  // -(ell-2)/(ell-1)

}  // namespace rbc
