#include <numeric>
#include <sstream>

#include "doctest.h"
#include "mimlab/cnf.hpp"
#include "mimlab/generators.hpp"
#include "mimlab/obdd.hpp"
#include "mimlab/traces.hpp"
#include "mimlab/width.hpp"
#include "oracles.hpp"

using namespace mimlab;

namespace {

std::vector<bool> bits(int n, std::uint64_t t) {
    std::vector<bool> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = (t >> i) & 1U;
    return a;
}

Graph two_k2() { return Graph(4, {{0, 1}, {2, 3}}); }

}  // namespace

TEST_CASE("formula of a graph") {
    Graph c4 = fixture("c4");
    MonotoneCnf f = cnf_of_graph(c4);
    CHECK(f.num_vars() == 4);
    REQUIRE(f.clauses().size() == 4);
    std::ostringstream os;
    f.write_dimacs(os);
    CHECK(os.str() == "p cnf 4 4\n1 2 0\n1 3 0\n2 4 0\n3 4 0\n");
    CHECK(cnf_of_graph(fixture("k2")).clauses().size() == 1);
    CHECK_THROWS_AS(cnf_of_graph(Graph(3, {{0, 1}})), PreconditionError);
    CHECK_THROWS_AS(f.eval({true, false}), std::invalid_argument);
    for (std::uint64_t t = 0; t < 16; ++t) CHECK(f.eval(bits(4, t)) == f.eval_bits(t));
}

TEST_CASE("subfunction counts") {
    Graph c4 = fixture("c4");
    CHECK(subfunction_count(c4, c4.make_set({0, 1})) == 3);
    CHECK(subfunction_count(c4, c4.empty_set()) == 1);
    CHECK(subfunction_count(c4, c4.all()) == 1);
    // a prefix covering a whole component sees no trace; one endpoint sees two
    CHECK(traces(two_k2(), VertexSet(4, {0, 1})).size() == 1);
    CHECK(traces(two_k2(), VertexSet(4, {0})).size() == 2);
    CHECK(subfunction_count(two_k2(), VertexSet(4, {0, 1})) == 1);
    for (std::uint64_t s = 0; s < 15; ++s) {
        Graph g = erdos_renyi(7, 0.45, s);
        if (g.has_isolated_vertex()) continue;
        oracle::Adj a(g);
        for (oracle::Mask p = 0; p < 128; p += 3)
            CHECK(subfunction_count(g, VertexSet::from_mask(7, p)) == oracle::subfunctions(a, p));
    }
}

TEST_CASE("model counts") {
    CHECK(count_satisfying(fixture("k2")) == 3);
    CHECK(count_satisfying(fixture("c4")) == 7);
    Graph ce = matching_counterexample(3);
    CHECK(count_satisfying(ce) == oracle::models(oracle::Adj(ce)));
}

TEST_CASE("building the diagram for a single edge") {
    Graph k2 = fixture("k2");
    Obdd z = build_obdd(k2, VertexOrdering({0, 1}, 2));
    CHECK(z.size_total() == 4);
    CHECK(z.size_internal() == 2);
    CHECK(z.size_quasi_reduced() == 5);
    CHECK(eval_obdd(z, {true, false}));
    CHECK_FALSE(eval_obdd(z, {false, false}));
    CHECK(count_accepting(z) == 3);
    CHECK(exhaustive_equiv_check(z, k2));
    CHECK_FALSE(exhaustive_equiv_check(z.with_swapped_sinks(), k2));
    CHECK_THROWS_AS(build_obdd(k2, VertexOrdering({0, 1, 2}, 3)), PreconditionError);
}

TEST_CASE("every ordering of the 4-cycle compiles correctly") {
    Graph c4 = fixture("c4");
    std::vector<int> perm = {0, 1, 2, 3};
    do {
        Obdd z = build_obdd(c4, VertexOrdering(perm, 4));
        CHECK(exhaustive_equiv_check(z, c4));
        CHECK(count_accepting(z) == 7);
        CHECK(eval_obdd(z, {true, true, true, true}));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("diagram sizes agree with truth-table subfunction counting") {
    std::vector<Graph> graphs = {fixture("c4"), fixture("k2"), two_k2(), skew(3), matching_counterexample(3)};
    for (std::uint64_t s = 0; s < 20; ++s) {
        Graph g = erdos_renyi(6, 0.5, s);
        if (!g.has_isolated_vertex()) graphs.push_back(g);
    }
    for (const Graph& g : graphs) {
        oracle::Adj a(g);
        std::vector<int> perm(static_cast<std::size_t>(g.n()));
        std::iota(perm.begin(), perm.end(), 0);
        int tried = 0;
        do {
            Obdd z = build_obdd(g, VertexOrdering(perm, g.n()));
            auto want = oracle::obdd_sizes(a, perm);
            CHECK(z.size_total() == want.reduced);
            CHECK(z.size_quasi_reduced() == want.quasi);
            CHECK(count_accepting(z) == oracle::models(a));
        } while (std::next_permutation(perm.begin(), perm.end()) && ++tried < 60);
    }
}

TEST_CASE("reduced diagrams have no redundant or duplicate nodes") {
    Graph g = fixture("fig1");
    Obdd z = build_obdd(g, VertexOrdering::identity(8));
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t id = 2; id < z.nodes().size(); ++id) {
        const auto& nd = z.node(static_cast<int>(id));
        CHECK(nd.lo != nd.hi);
        CHECK(seen.insert({nd.var, nd.lo, nd.hi}).second);
    }
    std::ostringstream dot;
    write_dot(dot, z);
    CHECK(dot.str().find("digraph") != std::string::npos);
    CHECK(dot.str().find("doublecircle") != std::string::npos);
    CHECK(dot.str().find("dashed") != std::string::npos);
}

TEST_CASE("minimum diagram size: both routes agree with the oracle") {
    CHECK(to_string(MinimizeMethod::factorial) == "exact");
    CHECK(parse_minimize_method("dp") == MinimizeMethod::dp);
    CHECK(parse_minimize_method("exact") == MinimizeMethod::factorial);
    CHECK_THROWS_AS(parse_minimize_method("sift"), std::invalid_argument);

    CHECK(min_obdd_size_exact(fixture("k2")).size_total == 4);
    std::vector<Graph> graphs = {fixture("c4"), two_k2(), skew(3), skew_path(3, 2).graph};
    for (std::uint64_t s = 0; s < 8; ++s) {
        Graph g = erdos_renyi(6, 0.5, s + 100);
        if (!g.has_isolated_vertex()) graphs.push_back(g);
    }
    for (const Graph& g : graphs) {
        auto want = oracle::min_obdd_sizes(oracle::Adj(g));
        for (auto m : {MinimizeMethod::factorial, MinimizeMethod::dp}) {
            auto got = min_obdd_size_exact(g, m);
            CHECK(got.size_total == want.reduced);
            CHECK(got.size_quasi == want.quasi);
            CHECK(build_obdd(g, got.order_total).size_total() == got.size_total);
            CHECK(build_obdd(g, got.order_quasi).size_quasi_reduced() == got.size_quasi);
        }
    }
    // the two edges of K2 + K2 want their endpoints next to each other
    auto m = min_obdd_size_exact(two_k2(), MinimizeMethod::factorial);
    const auto& p = m.order_total.perm();
    CHECK((p[0] / 2 == p[1] / 2 && p[2] / 2 == p[3] / 2));
}

TEST_CASE("lower bound witness") {
    Graph pm = perfect_matching(3);
    VertexSet u = pm.make_set({0, 1, 2});
    auto w = lower_bound_witness(pm, u);
    CHECK(w.r == 3);
    CHECK(w.distinct_neighbourhoods == 8);
    CHECK(w.ok);
}

TEST_CASE("bounds report") {
    for (const char* name : {"k2", "c4", "fig1"}) {
        Graph g = fixture(name);
        auto rep = obdd_bounds_report(g);
        CHECK(rep.passed());
        CHECK(rep.lu == 1);
        CHECK(rep.lower_bound == 2);
        CHECK(rep.lower_bound <= rep.min_size.size_quasi);
        CHECK(rep.prefix_trace_counts.size() == static_cast<std::size_t>(g.n() + 1));
        CHECK(rep.upper_expression == saturating_pow(static_cast<std::uint64_t>(g.n()), rep.lu + 2));
    }
    auto k2 = obdd_bounds_report(fixture("k2"));
    CHECK(k2.min_size.size_total == 4);
    Graph h3 = h_graph(3);
    auto rep = obdd_bounds_report(h3);
    CHECK(rep.passed());
    CHECK(rep.lower_bound <= rep.min_size.size_quasi);
}
