#include "experiments.hpp"

#include <atomic>
#include <iostream>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "colouring.hpp"
#include "density.hpp"
#include "rng.hpp"

namespace rbc {

double scan_probability(double c, int n, double exponent) {
    double p = c * std::pow((double)n, exponent);
    return std::min(1.0, std::max(0.0, p));
}

double m2_exponent(int ell) { return -(double)(ell - 2) / (double)(ell - 1); }

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Runs fn(i) for i in [0, count); slot-indexed output keeps results identical
// to a sequential run whatever the interleaving.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                int i = cursor.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

struct TrialSpec {
    int n = 0;
    double c = 0.0;
    std::uint64_t sub_seed = 0;
};

std::vector<TrialSpec> layout(const ScanParams& params) {
    std::vector<TrialSpec> specs;
    std::uint64_t index = 0;
    for (int n : params.n_list)
        for (double c : params.c_list)
            for (int t = 0; t < params.trials; ++t) {
                std::uint64_t sm = index++;
                specs.push_back({n, c, params.seed ^ splitmix64(sm)});
            }
    return specs;
}

std::vector<TrialRecord> run_scan(const ScanParams& params, int ell, double exponent,
                                  const std::function<void(const Graph&, TrialRecord&)>& body) {
    auto specs = layout(params);
    std::vector<TrialRecord> records(specs.size());
    // one block per (n, c) pair, trials inside a block in parallel; progress
    // goes to stderr per block so long scans stay observable
    const int block = params.trials;
    const int blocks = block > 0 ? (int)specs.size() / block : 0;
    for (int b = 0; b < blocks; ++b) {
        parallel_for(block, params.threads, [&](int k) {
            int i = b * block + k;
            const TrialSpec& ts = specs[i];
            TrialRecord r;
            r.ell = ell;
            r.n = ts.n;
            r.c = ts.c;
            r.p = scan_probability(ts.c, ts.n, exponent);
            r.seed = ts.sub_seed;
            std::int64_t t0 = now_ms();
            Graph g = sample_gnp(ts.n, r.p, ts.sub_seed);
            body(g, r);
            r.elapsed_ms = params.keep_timings ? (now_ms() - t0) : 0;
            records[i] = std::move(r);
        });
        std::cerr << "[scan] block " << (b + 1) << "/" << blocks << " n=" << specs[b * block].n
                  << " c=" << specs[b * block].c << " done\n";
    }
    return records;
}

}  // namespace

std::vector<TrialRecord> k24_presence_scan(const ScanParams& params) {
    if (params.trials < 1) throw precondition_error("scan: trials must be >= 1");
    return run_scan(params, 4, -0.75, [](const Graph& g, TrialRecord& r) {
        r.obstruction_found = find_k24(g).has_value();
    });
}

std::vector<TrialRecord> obstruction_scan(int ell, const ScanParams& params) {
    if (params.trials < 1) throw precondition_error("scan: trials must be >= 1");
    if (ell < 4 || ell > 7)
        throw precondition_error("obstruction_scan: ell must be in {4,5,6,7}");
    Rational bound(ell - 1, ell - 2);
    return run_scan(params, ell, m2_exponent(ell), [bound](const Graph& g, TrialRecord& r) {
        auto found = find_small_dense_subgraph(g, bound, 12);
        r.obstruction_found = found.has_value();
        if (found) r.densest_small_density = found->value;
    });
}

std::vector<TrialRecord> colourability_scan(int ell, const ScanParams& params) {
    if (params.trials < 1) throw precondition_error("scan: trials must be >= 1");
    if (ell < 5) throw precondition_error("colourability_scan: ell must be >= 5");
    for (int n : params.n_list)
        if (n > 60)
            throw precondition_error(
                "colourability_scan: n above the exact-density cap of 60");
    Rational bound(ell - 1, ell - 2);
    return run_scan(params, ell, m2_exponent(ell), [bound, ell](const Graph& g, TrialRecord& r) {
        DensityWitness dw = max_density(g);
        if (!(dw.value < bound)) {
            r.obstruction_found = true;
            r.colourer_outcome = "precondition_fail";
            return;
        }
        try {
            EdgeColouring col = colour_rainbow_free(g, ell);
            Certificate cert = verify_certificate(g, ell, col);
            r.colourer_outcome =
                (cert.proper && !cert.rainbow_cycle) ? "success" : "dead_end";
        } catch (const dead_end_error&) {
            r.colourer_outcome = "dead_end";
        }
    });
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string emit_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "ell,n,p,c,seed,obstruction_found,colourer_outcome,densest_small_density,elapsed_ms\n";
    for (const TrialRecord& r : records) {
        out << r.ell << ',' << r.n << ',' << fmt_double(r.p) << ',' << fmt_double(r.c) << ','
            << r.seed << ',' << (r.obstruction_found ? "true" : "false") << ','
            << r.colourer_outcome << ','
            << (r.densest_small_density ? r.densest_small_density->str() : "") << ','
            << r.elapsed_ms << "\n";
    }
    return out.str();
}

}  // namespace rbc
