// Acceptance suite: one PASS/FAIL line per criterion.
//
// A criterion FAILs when any stated value is not observed. Every observed value
// is also recomputed by the brute-force oracles; when the implementation and
// the oracles agree but the stated value differs, the line is marked
// "stated value refuted" and does not count as an implementation failure.
// The exit status is nonzero only for implementation failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mimlab/cnf.hpp"
#include "mimlab/generators.hpp"
#include "mimlab/harness.hpp"
#include "mimlab/obdd.hpp"
#include "mimlab/traces.hpp"
#include "mimlab/width.hpp"
#include "oracles.hpp"

using namespace mimlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    // stated values differ from what both implementation and oracle compute
    bool refuted = false;
    std::ostringstream notes;
    std::ostringstream problems;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            problems << "  - " << what << '\n';
        }
    }
    // a stated value that the oracle contradicts
    void stated(bool matches_statement, bool oracle_agrees, const std::string& what) {
        if (matches_statement) return;
        if (oracle_agrees) {
            refuted = true;
            notes << "  - " << what << '\n';
        } else {
            expect(false, what + " (oracle disagrees with the implementation)");
        }
    }
};

int implementation_failures = 0;
int failed_lines = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        std::ostringstream s;
        s << "took " << secs << " s, limit " << limit_s << " s";
        o.expect(false, s.str());
    }
    const bool green = o.pass && !o.refuted;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %2d  %-52s %8.2f s", green ? "PASS" : "FAIL", id, title.c_str(), secs);
    std::cout << head;
    if (!o.pass) std::cout << "  [implementation]";
    else if (o.refuted) std::cout << "  [stated value refuted by exhaustive check]";
    std::cout << '\n' << o.problems.str() << o.notes.str();
    std::cout.flush();
    if (!green) ++failed_lines;
    if (!o.pass) ++implementation_failures;
}

oracle::Mask full(int n) { return (oracle::Mask{1} << n) - 1; }

std::vector<Graph> iso(int max_n, bool connected_only) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n)
        for (const Graph& g : all_graphs_up_to_isomorphism(n))
            if (!connected_only || (n >= 2 && g.is_connected())) out.push_back(g);
    return out;
}

// corpus for the OBDD bound criteria: connected classes n <= 7, 50 seeded
// connected G(8, 1/2) samples and the fixtures
std::vector<Graph> obdd_corpus() {
    std::vector<Graph> out = iso(7, true);
    for (auto& g : random_connected_graphs(8, 0.5, 50, 0)) out.push_back(std::move(g));
    for (const auto& name : fixture_names()) out.push_back(fixture(name));
    return out;
}

std::vector<Graph> built_graphs;  // graphs whose OBDDs criterion 11 re-checks

}  // namespace

int main() {
    std::cout << "acceptance suite\n";

    criterion(1, "traces and subfunctions of the 4-cycle", 1.0, [](Outcome& o) {
        Graph g = fixture("c4");
        VertexSet u = g.make_set({0, 1});
        TraceSet ts = traces(g, u);
        std::vector<VertexSet> want = {g.empty_set(), g.make_set({2}), g.make_set({3})};
        o.expect(ts.traces == want, "traces(c4, {x1,x2}) should be {}, {x3}, {x4}");
        o.expect(subfunction_count(g, u) == 3, "subfunction_count(c4, {x1,x2}) should be 3");
        oracle::Adj a(g);
        o.expect(oracle::subfunctions(a, 0b0011) == 3, "oracle subfunction count");
        o.expect(oracle::traces(a, 0b0011) == std::set<oracle::Mask>{0, 0b0100, 0b1000}, "oracle traces");
    });

    criterion(2, "two-row fixture widths", 1.0, [](Outcome& o) {
        Graph g = fixture("fig1");
        oracle::Adj a(g);
        const int lu = exact_width(g, WidthVariant::lu).value;
        const int oracle_lu = oracle::exact_width(a, oracle::Kind::lu);
        o.expect(lu == oracle_lu, "exact lu disagrees with the all-orderings oracle");
        o.expect(lu == 1, "exact lu width should be 1, got " + std::to_string(lu));
        VertexSet top = g.make_set({0, 1, 2, 3});
        const int p_lu = prefix_width(g, top, WidthVariant::lu);
        const int p_lmim = prefix_width(g, top, WidthVariant::lmim);
        const int o_lu = oracle::max_matching(a, 0x0F, oracle::Kind::lu);
        const int o_lmim = oracle::max_matching(a, 0x0F, oracle::Kind::lmim);
        o.expect(p_lu == o_lu && p_lmim == o_lmim, "prefix widths disagree with the oracle");
        o.stated(p_lu == 1, p_lu == o_lu,
                 "top-row prefix LU width is stated as 1; observed " + std::to_string(p_lu) +
                     " (oracle " + std::to_string(o_lu) + "; t1-b1, t4-b4 is an induced matching of the upper subgraph)");
        o.stated(p_lmim == 2, p_lmim == o_lmim,
                 "top-row prefix LMIM width is stated as 2; observed " + std::to_string(p_lmim) + " (oracle " +
                     std::to_string(o_lmim) + "; t1-b1, t2-b3, t4-b4 is induced in the cut graph)");
    });

    criterion(3, "trace count equals subfunction count, connected n<=6", 600.0, [](Outcome& o) {
        long long prefixes = 0, graphs = 0;
        for (const Graph& g : iso(6, true)) {
            ++graphs;
            oracle::Adj a(g);
            for (oracle::Mask p = 0; p <= full(g.n()); ++p) {
                VertexSet ps = VertexSet::from_mask(g.n(), p);
                const auto t = traces(g, ps).size();
                const auto bf = subfunction_count(g, ps);
                const auto ob = oracle::subfunctions(a, p);
                ++prefixes;
                if (t != bf || bf != ob) {
                    o.expect(false, "mismatch |traces|=" + std::to_string(t) + " |BF|=" + std::to_string(bf) +
                                        " oracle=" + std::to_string(ob));
                    return;
                }
            }
        }
        o.notes << "  " << graphs << " graphs, " << prefixes << " prefix sets\n";
    });

    criterion(4, "trace count bounds, all graphs n<=7", 600.0, [](Outcome& o) {
        long long sides = 0;
        for (const Graph& g : iso(7, false)) {
            oracle::Adj a(g);
            const oracle::Mask all = full(g.n());
            for (oracle::Mask comp = 0; comp <= all; ++comp) {
                if (!oracle::independent(a, comp)) continue;
                const oracle::Mask u = all & ~comp;
                const auto fam = oracle::traces(a, u);
                const int r = oracle::max_matching(a, u, oracle::Kind::lsim);
                const std::uint64_t binom = binomial_prefix_sum(std::popcount(u), r);
                const std::uint64_t power = saturating_pow(static_cast<std::uint64_t>(g.n()), r + 1);
                // sets of size <= r
                std::set<oracle::Mask> small;
                for (oracle::Mask s = u;; s = (s - 1) & u) {
                    if (std::popcount(s) <= r && oracle::independent(a, s)) small.insert(oracle::nbhd(a, s) & comp);
                    if (s == 0) break;
                }
                TraceBoundReport rep = trace_bound_check(g, VertexSet::from_mask(g.n(), u));
                ++sides;
                o.expect(rep.trace_count == fam.size() && rep.r == r && rep.binomial_bound == binom &&
                             rep.power_bound == power && rep.small_sets_generate == (small == fam),
                         "library report disagrees with the oracle");
                if (!(fam.size() <= binom && binom <= power && small == fam)) {
                    o.expect(false, "bound violated");
                    return;
                }
                if (!o.pass) return;
            }
        }
        o.notes << "  " << sides << " (graph, side) pairs\n";
    });

    criterion(5, "shrinking to an enabling subset, n<=7", 600.0, [](Outcome& o) {
        long long pairs = 0;
        for (const Graph& g : iso(7, false)) {
            oracle::Adj a(g);
            const oracle::Mask all = full(g.n());
            for (oracle::Mask comp = 0; comp <= all; ++comp) {
                if (!oracle::independent(a, comp)) continue;
                const oracle::Mask u = all & ~comp;
                const int r = oracle::max_matching(a, u, oracle::Kind::lsim);
                VertexSet us = VertexSet::from_mask(g.n(), u);
                for (oracle::Mask s = u;; s = (s - 1) & u) {
                    if (oracle::independent(a, s)) {
                        const oracle::Mask t = oracle::nbhd(a, s) & comp;
                        const oracle::Mask out = oracle::to_mask(shrink_to_enabler(g, us, VertexSet::from_mask(g.n(), s)).output_s);
                        // brute-force family of equal-trace enabling subsets
                        bool nonempty = false, member = false;
                        for (oracle::Mask x = s;; x = (x - 1) & s) {
                            if ((oracle::nbhd(a, x) & comp) == t && oracle::enables(a, u, x)) {
                                nonempty = true;
                                member = member || x == out;
                            }
                            if (x == 0) break;
                        }
                        ++pairs;
                        if (!(nonempty && member && std::popcount(out) <= r)) {
                            o.expect(false, "postcondition violated");
                            return;
                        }
                    }
                    if (s == 0) break;
                }
            }
        }
        o.notes << "  " << pairs << " (side, independent set) pairs\n";
    });

    std::vector<Graph> corpus = obdd_corpus();

    criterion(6, "2^lu <= minimum quasi-reduced OBDD size", 0, [&](Outcome& o) {
        long long oracle_checked = 0;
        for (const Graph& g : corpus) {
            auto rep = obdd_bounds_report(g);
            built_graphs.push_back(g);
            o.expect(rep.lower_ok, "2^lu > min quasi size");
            if (g.n() <= 6) {
                oracle::Adj a(g);
                const int lu = oracle::exact_width(a, oracle::Kind::lu);
                const auto sizes = oracle::min_obdd_sizes(a);
                ++oracle_checked;
                o.expect(rep.lu == lu && rep.min_size.size_quasi == sizes.quasi && rep.min_size.size_total == sizes.reduced,
                         "width or minimum size disagrees with the oracle");
            } else {
                // both minimisation routes must agree
                if (g.n() <= 7) {
                    auto f = min_obdd_size_exact(g, MinimizeMethod::factorial);
                    o.expect(f.size_total == rep.min_size.size_total && f.size_quasi == rep.min_size.size_quasi,
                             "factorial and DP minimum sizes differ");
                }
            }
            if (!o.pass) return;
        }
        o.notes << "  " << corpus.size() << " graphs (" << oracle_checked << " cross-checked by brute force)\n";
    });

    criterion(7, "prefix traces <= n^(r_i+1) under lu orders", 0, [&](Outcome& o) {
        long long prefixes = 0;
        for (const Graph& g : corpus) {
            auto lu = exact_width(g, WidthVariant::lu);
            oracle::Adj a(g);
            oracle::Mask w = 0;
            for (int i = 0; i < g.n(); ++i) {
                w |= oracle::Mask{1} << lu.witness[i];
                const auto t = oracle::traces(a, w).size();
                const int r = lu.per_prefix[static_cast<std::size_t>(i)];
                ++prefixes;
                if (t > saturating_pow(static_cast<std::uint64_t>(g.n()), r + 1)) {
                    o.expect(false, "prefix trace count above n^(r+1)");
                    return;
                }
            }
            o.expect(obdd_bounds_report(g).upper_mechanism_ok, "library report disagrees");
        }
        o.notes << "  " << prefixes << " prefixes\n";
    });

    criterion(8, "horizontal subgraph trace counts", 0, [](Outcome& o) {
        for (auto [p, q, r] : {std::tuple{3, 2, 2}, std::tuple{3, 3, 1}}) {
            SkewGrid sg = skew_grid(p, q, r);
            const auto& m = sg.meta;
            const std::uint64_t target = saturating_pow(static_cast<std::uint64_t>(q + 1), r);
            std::vector<std::vector<int>> picks;
            for (int l = 1; l < p; ++l) picks.emplace_back(static_cast<std::size_t>(m.width()), l);
            std::mt19937_64 rng(0);
            for (int s = 0; s < 10; ++s) {
                std::vector<int> pick;
                for (int c = 0; c < m.width(); ++c) pick.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p - 1)));
                picks.push_back(pick);
            }
            std::uint64_t lowest = ~std::uint64_t{0};
            for (const auto& pick : picks) {
                HorizontalSubgraph h = horizontal_subgraph(sg, pick);
                oracle::Adj a(h.sub.graph);
                const auto tu = oracle::traces(a, oracle::to_mask(h.top)).size();
                const auto tv = oracle::traces(a, oracle::to_mask(h.bottom)).size();
                o.expect(tu == traces(h.sub.graph, h.top).size() && tv == traces(h.sub.graph, h.bottom).size(),
                         "library trace count disagrees with the oracle");
                lowest = std::min<std::uint64_t>(lowest, std::min(tu, tv));
                o.expect(tu >= target && tv >= target, "trace count below (q+1)^r");
            }
            o.notes << "  skew_grid(" << p << "," << q << "," << r << "): " << picks.size()
                    << " subgraphs, min trace count " << lowest << " >= " << target << '\n';
        }
    });

    criterion(9, "r <= lu <= r+2 on skew grids", 0, [](Outcome& o) {
        for (auto [q, r] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
            const int p = lower_bound_layer_count(q, r);
            SkewGrid sg = skew_grid(p, q, r);
            const Graph& g = sg.graph;
            VertexOrdering order = skew_grid_layer_order(sg.meta);
            auto w = width_of_ordering(g, order, WidthVariant::lu);
            oracle::Adj a(g);
            int oracle_upper = 0;
            oracle::Mask prefix = 0;
            for (int i = 0; i < g.n(); ++i) {
                prefix |= oracle::Mask{1} << order[i];
                oracle_upper = std::max(oracle_upper, oracle::max_matching(a, prefix, oracle::Kind::lu));
            }
            o.expect(w.value == oracle_upper, "layer-order width disagrees with the oracle");
            o.expect(w.value <= r + 2, "layer-order width above r+2");
            o.notes << "  (q,r)=(" << q << "," << r << ") p=" << p << " n=" << g.n() << ": layer order " << w.value;
            if (g.n() <= 24) {
                const int lu = exact_width(g, WidthVariant::lu).value;
                if (g.n() <= 8) o.expect(lu == oracle::exact_width(a, oracle::Kind::lu), "exact lu disagrees with oracle");
                o.expect(lu >= r, "exact lu below r");
                o.notes << ", exact lu " << lu << " >= " << r << '\n';
            } else {
                o.notes << ", exact lu not computed (n > 24)\n";
            }
        }
    });

    criterion(10, "lu/lmim separation and the clique counterexample", 0, [](Outcome& o) {
        for (int r : {3, 4}) {
            Graph h = h_graph(r);
            built_graphs.push_back(h);
            oracle::Adj a(h);
            const int lu = exact_width(h, WidthVariant::lu).value;
            const int lmim = exact_width(h, WidthVariant::lmim).value;
            // oracle: the row-major ordering bounds lu above, any edge bounds it below
            int row_major = 0;
            for (int i = 1; i <= h.n(); ++i) row_major = std::max(row_major, oracle::max_matching(a, full(i), oracle::Kind::lu));
            const int oracle_lu = row_major <= 1 ? 1 : -1;
            if (r == 3) o.expect(lu == oracle::exact_width(a, oracle::Kind::lu), "exact lu disagrees with oracle");
            o.expect(lu == oracle_lu || oracle_lu < 0, "exact lu disagrees with the row-major oracle bound");
            o.expect(lu <= 2, "lu above 2");
            o.stated(lu == 2, lu == oracle_lu,
                     "lu(H_" + std::to_string(r) + ") is stated as 2; observed " + std::to_string(lu) +
                         " (row-major ordering has every prefix width <= 1)");
            o.expect(2 * lmim >= r - 1, "lmim below (r-1)/2 for r=" + std::to_string(r));
            o.notes << "  H_" << r << ": lu=" << lu << " lmim=" << lmim << '\n';
        }
        for (int k : {3, 4, 5}) {
            Graph ce = matching_counterexample(k);
            built_graphs.push_back(ce);
            oracle::Adj a(ce);
            VertexSet u = VertexSet::from_mask(2 * k, full(k));
            const auto t = traces(ce, u).size();
            const int r = max_induced_cut_matching(ce, u).size;
            o.expect(t == oracle::traces(a, full(k)).size() && r == oracle::max_matching(a, full(k), oracle::Kind::lsim),
                     "counterexample values disagree with the oracle");
            o.expect(t == (std::size_t{1} << k) && r == 1, "counterexample k=" + std::to_string(k));
        }
    });

    criterion(11, "OBDD correctness for the suite graphs", 0, [](Outcome& o) {
        for (auto [q, r] : {std::pair{2, 1}, std::pair{3, 1}}) built_graphs.push_back(skew_grid(lower_bound_layer_count(q, r), q, r).graph);
        long long built = 0;
        for (const Graph& g : built_graphs) {
            if (g.n() > 20) continue;
            VertexOrdering order = exact_width(g, WidthVariant::lu).witness;
            Obdd z = build_obdd(g, order);
            ++built;
            const auto models = oracle::models(oracle::Adj(g));
            o.expect(exhaustive_equiv_check(z, g), "equivalence check failed");
            o.expect(count_accepting(z) == models && count_satisfying(g) == models, "model count mismatch");
            if (!o.pass) return;
        }
        o.notes << "  " << built << " diagrams\n";
    });

    criterion(12, "VC dimension equals induced matching size", 0, [](Outcome& o) {
        std::vector<std::pair<Graph, int>> cases;
        for (int q = 1; q <= 4; ++q) cases.emplace_back(skew(q), q);
        for (int k = 1; k <= 5; ++k) cases.emplace_back(perfect_matching(k), k);
        for (const auto& [g, k] : cases) {
            VertexSet u = VertexSet::from_mask(g.n(), full(k));
            TraceSet ts = traces(g, u);
            const int vc = vc_dimension(ts);
            const int r = max_induced_cut_matching(g, u).size;
            oracle::Adj a(g);
            const int ovc = oracle::vc_dimension(oracle::traces(a, full(k)));
            const int orr = oracle::max_matching(a, full(k), oracle::Kind::lsim);
            o.expect(vc == ovc && r == orr, "library disagrees with oracle");
            o.expect(vc == r, "vc != matching size");
        }
    });

    std::cout << (12 - failed_lines) << " PASS, " << failed_lines << " FAIL (" << implementation_failures
              << " implementation failures)\n";
    return implementation_failures == 0 ? 0 : 1;
}
