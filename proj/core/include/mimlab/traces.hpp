#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mimlab/graph.hpp"

namespace mimlab {

/// Calls fn for every independent subset of u, in no particular order.
/// Throws BudgetExceeded once more than budget.independent_sets sets were seen.
void for_each_independent_set(const Graph& g, const VertexSet& u, const std::function<void(const VertexSet&)>& fn,
                              const Budget& budget = {});

/// Every independent subset of u exactly once, ordered by size then
/// lexicographically.
std::vector<VertexSet> enum_independent_sets(const Graph& g, const VertexSet& u, const Budget& budget = {});

/// The family {N(S) ∩ V : S independent ⊆ U} for V = V(g) \ U.
struct TraceSet {
    VertexSet side_u;
    VertexSet side_v;
    /// Canonical listing: sorted by size then lexicographically, no duplicates.
    std::vector<VertexSet> traces;

    std::size_t size() const { return traces.size(); }
    bool contains(const VertexSet& t) const;
};

TraceSet traces(const Graph& g, const VertexSet& u, const Budget& budget = {});

/// Traces generated by independent subsets of u with at most max_size members.
TraceSet traces_up_to_size(const Graph& g, const VertexSet& u, int max_size, const Budget& budget = {});

/// True iff some induced (u, complement)-matching of g has exactly s as its
/// u-side endpoints. Throws PreconditionError unless s is independent and s ⊆ u.
bool enables_induced_matching(const Graph& g, const VertexSet& u, const VertexSet& s);

struct ShrinkStep {
    enum class Kind {
        /// A vertex with empty individual trace was dropped.
        eliminate,
        /// A maximum enabling subset was chosen and one further vertex joined it.
        recombine,
    };
    Kind kind = Kind::eliminate;
    /// Working set before the step.
    VertexSet before;
    /// Eliminated vertex (eliminate) or the added vertex u (recombine).
    int vertex = -1;
    /// Chosen maximum enabling subset (recombine only).
    VertexSet chosen;
};

struct ShrinkResult {
    VertexSet input_s;
    VertexSet output_s;
    /// N(input_s) ∩ V, equal to N(output_s) ∩ V.
    VertexSet trace;
    std::vector<ShrinkStep> steps;
};

/// Constructive form of the trace-shrinking argument: returns S' ⊆ s that
/// enables an induced (u, V)-matching with N(S') ∩ V = N(s) ∩ V.
/// Requires V = V(g) \ u independent and s an independent subset of u.
ShrinkResult shrink_to_enabler(const Graph& g, const VertexSet& u, const VertexSet& s);

/// Saturating arithmetic helpers for bound expressions.
std::uint64_t saturating_pow(std::uint64_t base, int exp);
std::uint64_t binomial_prefix_sum(int n, int r);

struct TraceBoundReport {
    std::uint64_t trace_count = 0;
    int r = 0;
    int u_size = 0;
    int n = 0;
    /// Σ_{i=0..r} C(|u|, i)
    std::uint64_t binomial_bound = 0;
    /// n^{r+1}, saturating
    std::uint64_t power_bound = 0;
    bool within_binomial = false;
    bool within_power = false;
    bool small_sets_generate = false;
    bool passed() const { return within_binomial && within_power && small_sets_generate; }
};

/// Requires V(g) \ u independent.
TraceBoundReport trace_bound_check(const Graph& g, const VertexSet& u, const Budget& budget = {});

/// Largest k such that some k-subset of side_v is shattered by the family.
int vc_dimension(const TraceSet& ts, const Budget& budget = {});

}  // namespace mimlab
