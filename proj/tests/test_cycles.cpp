#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "cycles.hpp"
#include "rng.hpp"

using namespace rbc;

namespace {

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// n!/(2l (n-l)!) distinct l-cycles in K_n
long long kn_cycle_count(int n, int ell) {
    return factorial(n) / (2 * ell * factorial(n - ell));
}

Sub sub_of(const Graph& g) {
    Sub s(g.vertex_space());
    for (int v : g.alive_vertices()) s.vin[v] = 1;
    for (const Edge& e : g.edges()) s.edges.insert(e);
    return s;
}

}  // namespace

TEST_CASE("canonical form kills rotations and reflections") {
    Cycle a = Cycle::from_vertices({2, 3, 4, 0, 1});
    Cycle b = Cycle::from_vertices({1, 0, 4, 3, 2});
    CHECK(a == b);
    CHECK(a.verts[0] == 0);
    CHECK(a.verts[1] < a.verts.back());
    CHECK_THROWS_AS(Cycle::from_vertices({0, 1}), precondition_error);
    CHECK_THROWS_AS(Cycle::from_vertices({0, 1, 1}), precondition_error);
}

TEST_CASE("enumeration matches the closed formula and the naive count") {
    CHECK(enumerate_cycles(corpus::cycle_graph(5), 5).size() == 1);
    CHECK(enumerate_cycles(corpus::complete_graph(5), 5).size() == 12);
    CHECK(enumerate_cycles(corpus::complete_graph(4), 4).size() == 3);
    for (int n = 4; n <= 7; ++n)
        for (int ell = 4; ell <= n; ++ell) {
            Graph kn = corpus::complete_graph(n);
            long long got = (long long)enumerate_cycles(kn, ell).size();
            CHECK(got == kn_cycle_count(n, ell));
            CHECK(got == corpus::naive_cycle_count(kn, ell));
        }
    CHECK_THROWS_AS(enumerate_cycles(corpus::cycle_graph(5), 2), precondition_error);
}

TEST_CASE("enumeration agrees with naive count on random graphs") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        Graph g = sample_gnp(9, 0.35, 42 + s);
        for (int ell : {4, 5, 6})
            CHECK((long long)enumerate_cycles(g, ell).size() == corpus::naive_cycle_count(g, ell));
    }
}

TEST_CASE("edge intersection graph") {
    // two pentagons sharing only a vertex: no intersection edge
    Graph shared_vertex(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                            {0, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 0}});
    auto cs = enumerate_cycles(shared_vertex, 5);
    REQUIRE(cs.size() == 2);
    Graph ig = edge_intersection_graph(cs);
    CHECK(ig.num_vertices() == 2);
    CHECK(ig.num_edges() == 0);

    // two pentagons sharing one edge: connected
    Graph shared_edge(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                          {0, 5}, {5, 6}, {6, 7}, {7, 1}});
    auto cs2 = enumerate_cycles(shared_edge, 5);
    REQUIRE(cs2.size() == 2);
    CHECK(edge_intersection_graph(cs2).num_edges() == 1);

    // the 12 pentagons of K_5 all overlap somewhere: one component
    auto k5cs = enumerate_cycles(corpus::complete_graph(5), 5);
    Graph k5ig = edge_intersection_graph(k5cs);
    CHECK(cl_components(corpus::complete_graph(5), 5).size() == 1);
    CHECK(k5ig.num_vertices() == 12);
}

TEST_CASE("cl_components splits and covers") {
    Graph shared_vertex(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                            {0, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 0}});
    auto comps = cl_components(shared_vertex, 5);
    CHECK(comps.size() == 2);

    Graph shared_edge(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                          {0, 5}, {5, 6}, {6, 7}, {7, 1}});
    auto comps2 = cl_components(shared_edge, 5);
    REQUIRE(comps2.size() == 1);
    CHECK(comps2.front().member_cycles.size() == 2);
    CHECK(comps2.front().sequence.size() == 1);
    CHECK(comps2.front().sequence.front().e_new == 4);
    CHECK(comps2.front().sequence.front().v_new == 3);

    auto single = cl_components(corpus::cycle_graph(5), 5);
    REQUIRE(single.size() == 1);
    CHECK(single.front().sequence.empty());
}

TEST_CASE("components are edge-disjoint and every cycle appears once") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        Graph g = sample_gnp(20, 0.12, 900 + s);
        auto comps = cl_components(g, 5);
        EdgeSet seen;
        size_t total_cycles = 0;
        for (const auto& comp : comps) {
            total_cycles += comp.member_cycles.size();
            for (const Edge& e : comp.union_graph.edges())
                CHECK(seen.insert(e).second);  // edge-disjoint
            EdgeSet u;
            for (const Cycle& c : comp.member_cycles)
                for (int i = 0; i < c.length(); ++i) u.insert(c.edge(i));
            CHECK(u.size() == (size_t)comp.union_graph.num_edges());
        }
        CHECK(total_cycles == enumerate_cycles(g, 5).size());
    }
}

TEST_CASE("reconstruction from any member cycle reaches the same union") {
    Graph shared_edge(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                          {0, 5}, {5, 6}, {6, 7}, {7, 1}});
    auto comp = cl_components(shared_edge, 5).front();
    for (const Cycle& start : comp.member_cycles) {
        auto seq = construction_sequence(comp.member_cycles, 8, start);
        EdgeSet u = start.edge_set();
        for (const auto& st : seq)
            for (int i = 0; i < st.added_cycle.length(); ++i) u.insert(st.added_cycle.edge(i));
        EdgeSet expect;
        for (const Edge& e : comp.union_graph.edges()) expect.insert(e);
        CHECK(u == expect);
    }
    CHECK_THROWS_AS(
        construction_sequence(comp.member_cycles, 8, Cycle::from_vertices({0, 1, 2, 3, 6})),
        precondition_error);
}

TEST_CASE("step parameters satisfy the density-argument bounds") {
    Rng rng(5);
    int built = 0;
    for (std::uint64_t s = 0; s < 200 && built < 60; ++s) {
        Rng gen = Rng::stream(31337, s);
        auto maybe = corpus::random_cycle_union(5, 1 + (int)gen.below(5), gen);
        if (!maybe) continue;
        ++built;
        for (const auto& comp : cl_components(*maybe, 5)) {
            for (const auto& st : comp.sequence) {
                CHECK(st.v_new <= 3);  // l - 2
                if (st.v_new >= 1) CHECK(st.e_new >= st.v_new + 1);
                if (st.v_new == 0) CHECK(st.e_new >= 1);
                REQUIRE(st.config.has_value());
            }
        }
    }
    CHECK(built >= 30);
}

TEST_CASE("classification examples") {
    // new pentagon sharing exactly one edge: A_2
    Graph h1 = corpus::cycle_graph(5);
    Sub h = sub_of(h1);
    Configuration a2 = classify_step(h, Cycle::from_vertices({0, 1, 5, 6, 7}), 5);
    CHECK(a2.tag() == "A2");

    // C = v1 v2 x v4 y over H_1 = v1..v5: B with the revisited vertex at
    // position 4 (mirror reading B4/B4 for l=5)
    Configuration b = classify_step(h, Cycle::from_vertices({0, 1, 5, 3, 6}), 5);
    CHECK(b.kind == Configuration::Kind::B);
    CHECK(b.tag() == "B4");

    // C = a b c y x: shares the 3-path a-b-c
    Configuration a3 = classify_step(h, Cycle::from_vertices({0, 1, 2, 5, 6}), 5);
    CHECK(a3.tag() == "A3");

    // closing chord over an l-path: A_l
    Graph theta(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                    {0, 5}, {5, 6}, {6, 7}, {7, 1}});
    Sub th = sub_of(theta);
    Configuration atop = classify_step(th, Cycle::from_vertices({2, 3, 4, 0, 5}), 5);
    // path 2-3-4-0-5 exists in theta; the closing edge 5-2 is outside
    CHECK(atop.tag() == "A5");

    // labelling must satisfy the configuration against the pre-step graph
    for (const auto& cfg : {a2, a3}) {
        for (int i = 0; i + 1 < cfg.index; ++i)
            CHECK(h.has_edge(Edge(cfg.labelling[i], cfg.labelling[i + 1])));
        for (int i = cfg.index; i < 5; ++i)
            CHECK_FALSE(h.has_vertex(cfg.labelling[i]));
    }

    CHECK_THROWS_AS(classify_step(h, Cycle::from_vertices({0, 1, 2, 3, 4}), 5),
                    precondition_error);  // contained
    CHECK_THROWS_AS(classify_step(h, Cycle::from_vertices({5, 6, 7, 8, 9}), 5),
                    precondition_error);  // shares nothing
}

TEST_CASE("relabelling invariance of component shape") {
    Rng gen = Rng::stream(777, 3);
    auto maybe = corpus::random_cycle_union(5, 4, gen);
    REQUIRE(maybe.has_value());
    Graph g = *maybe;
    // permute labels
    int n = g.vertex_space();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rng shuf(12);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[shuf.below(i + 1)]);
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges()) pairs.emplace_back(perm[e.u], perm[e.v]);
    Graph h(n, pairs);

    auto ca = cl_components(g, 5);
    auto cb = cl_components(h, 5);
    REQUIRE(ca.size() == cb.size());
    std::multiset<size_t> sa, sb;
    std::multiset<int> ea, eb;
    for (const auto& c : ca) {
        sa.insert(c.member_cycles.size());
        ea.insert(c.union_graph.num_edges());
    }
    for (const auto& c : cb) {
        sb.insert(c.member_cycles.size());
        eb.insert(c.union_graph.num_edges());
    }
    CHECK(sa == sb);
    CHECK(ea == eb);
}
