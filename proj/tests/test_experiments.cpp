#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "experiments.hpp"

using namespace rbc;

namespace {

ScanParams tiny(std::uint64_t seed) {
    ScanParams p;
    p.n_list = {24};
    p.c_list = {0.0, 0.5, 4.0};
    p.trials = 12;
    p.seed = seed;
    return p;
}

double found_fraction(const std::vector<TrialRecord>& rs, double c) {
    int num = 0, den = 0;
    for (const auto& r : rs)
        if (r.c == c) {
            ++den;
            num += r.obstruction_found ? 1 : 0;
        }
    return den ? (double)num / den : 0.0;
}

}  // namespace

TEST_CASE("zero multiplier means empty graphs and nothing found") {
    auto rs = k24_presence_scan(tiny(7));
    CHECK(found_fraction(rs, 0.0) == 0.0);
    auto ro = obstruction_scan(5, tiny(7));
    CHECK(found_fraction(ro, 0.0) == 0.0);
    for (const auto& r : ro)
        if (r.c == 0.0) CHECK_FALSE(r.densest_small_density.has_value());
}

TEST_CASE("k24 detector feeds the scan") {
    // at large c the samples are dense enough that K_{2,4} shows up
    auto rs = k24_presence_scan(tiny(3));
    CHECK(found_fraction(rs, 4.0) > 0.5);
}

TEST_CASE("records recompute p from (c, n) as documented") {
    auto rs = obstruction_scan(5, tiny(11));
    for (const auto& r : rs) {
        CHECK(r.p == scan_probability(r.c, r.n, m2_exponent(5)));
        CHECK(r.ell == 5);
        CHECK(r.elapsed_ms == 0);  // timings off by default
    }
}

TEST_CASE("same seed gives byte-identical csv; different seed does not") {
    auto a = emit_csv(k24_presence_scan(tiny(99)));
    auto b = emit_csv(k24_presence_scan(tiny(99)));
    CHECK(a == b);
    auto c = emit_csv(k24_presence_scan(tiny(100)));
    CHECK(a != c);
}

TEST_CASE("threads do not change results") {
    ScanParams seq = tiny(42);
    ScanParams par = tiny(42);
    par.threads = 4;
    CHECK(emit_csv(obstruction_scan(5, seq)) == emit_csv(obstruction_scan(5, par)));
}

TEST_CASE("colourability scan verifies every precondition-passing sample") {
    ScanParams p;
    p.n_list = {18, 30};
    p.c_list = {0.3, 0.8};
    p.trials = 15;
    p.seed = 5;
    auto rs = colourability_scan(5, p);
    int success = 0, fail = 0;
    for (const auto& r : rs) {
        CHECK(r.colourer_outcome != "dead_end");
        if (r.colourer_outcome == "success") ++success;
        if (r.colourer_outcome == "precondition_fail") {
            CHECK(r.obstruction_found);
            ++fail;
        }
    }
    CHECK(success > 0);
    CHECK(success + fail == (int)rs.size());

    ScanParams big = tiny(1);
    big.n_list = {70};
    CHECK_THROWS_AS(colourability_scan(5, big), precondition_error);
}

TEST_CASE("csv shape") {
    CHECK(emit_csv({}) ==
          "ell,n,p,c,seed,obstruction_found,colourer_outcome,densest_small_density,elapsed_ms\n");
    TrialRecord r;
    r.ell = 5;
    r.n = 10;
    r.p = 0.25;
    r.c = 1.0;
    r.seed = 7;
    r.obstruction_found = true;
    r.colourer_outcome = "none";
    r.densest_small_density = Rational(4, 3);
    auto text = emit_csv({r});
    CHECK(text.find("5,10,0.25,1,7,true,none,4/3,0\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("record order is n-major, then c, then trial") {
    ScanParams p;
    p.n_list = {10, 20};
    p.c_list = {0.1, 0.2};
    p.trials = 2;
    p.seed = 1;
    auto rs = k24_presence_scan(p);
    REQUIRE(rs.size() == 8);
    CHECK(rs[0].n == 10);
    CHECK(rs[3].n == 10);
    CHECK(rs[4].n == 20);
    CHECK(rs[0].c == 0.1);
    CHECK(rs[2].c == 0.2);
}
