#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mimlab/cnf.hpp"
#include "mimlab/graph.hpp"
#include "mimlab/width.hpp"

namespace mimlab {

struct ObddNode {
    /// Tested vertex; -1 for sinks.
    int var = -1;
    int lo = -1;
    int hi = -1;
};

/// Reduced ordered BDD for φ(G) under a fixed variable order, together with
/// the per-level state counts of the quasi-reduced diagram it was built from.
class Obdd {
public:
    static constexpr int kFalse = 0;
    static constexpr int kTrue = 1;

    const VertexOrdering& order() const { return order_; }
    int num_vars() const { return order_.size(); }
    int root() const { return root_; }
    const std::vector<ObddNode>& nodes() const { return nodes_; }
    const ObddNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    /// Reduced node ids testing order()[i].
    const std::vector<std::vector<int>>& levels() const { return levels_; }
    /// Distinct residual states testing order()[i] in the quasi-reduced form.
    const std::vector<std::uint64_t>& quasi_level_counts() const { return quasi_levels_; }

    /// Reduced decision nodes plus the two sinks.
    std::uint64_t size_total() const { return nodes_.size(); }
    std::uint64_t size_internal() const { return nodes_.size() - 2; }
    /// Quasi-reduced decision nodes plus the two sinks.
    std::uint64_t size_quasi_reduced() const;

    /// Copy with the true and false sinks exchanged (computes the negation).
    Obdd with_swapped_sinks() const;

    const std::vector<std::string>& labels() const { return labels_; }

private:
    friend Obdd build_obdd(const Graph& g, const VertexOrdering& order);

    VertexOrdering order_;
    std::vector<ObddNode> nodes_;
    int root_ = kTrue;
    std::vector<std::vector<int>> levels_;
    std::vector<std::uint64_t> quasi_levels_;
    std::vector<std::string> labels_;
};

/// Level-by-level construction over residual states: a state is the set of
/// undecided variables forced true, FALSE and TRUE go to the sinks. The
/// quasi-reduced layers are then reduced bottom-up with a unique table.
/// Throws PreconditionError for an invalid order or an isolated vertex.
Obdd build_obdd(const Graph& g, const VertexOrdering& order);

/// Follows the decision path; assignment[v] is the value of vertex v.
bool eval_obdd(const Obdd& z, const std::vector<bool>& assignment);

/// Number of accepted assignments over all num_vars() variables (num_vars < 64).
std::uint64_t count_accepting(const Obdd& z);

/// Compares eval_obdd with clause evaluation of φ(g) on all 2^n assignments.
bool exhaustive_equiv_check(const Obdd& z, const Graph& g, const Budget& budget = {});

/// Graphviz rendering: solid edges for true, dashed for false, double-circled sinks.
void write_dot(std::ostream& out, const Obdd& z);

enum class MinimizeMethod {
    /// Build the diagram for every ordering.
    factorial,
    /// Subset dynamic program over level profiles computed from trace sets.
    dp,
};

std::string_view to_string(MinimizeMethod m);
MinimizeMethod parse_minimize_method(std::string_view text);

struct MinObddSize {
    std::uint64_t size_total = 0;
    VertexOrdering order_total;
    std::uint64_t size_quasi = 0;
    VertexOrdering order_quasi;
};

/// Exact minimum OBDD sizes over all orderings. Factorial search is limited to
/// budget.max_factorial_vertices, the dynamic program to 20 vertices.
MinObddSize min_obdd_size_exact(const Graph& g, MinimizeMethod method = MinimizeMethod::dp,
                                const Budget& budget = {});

/// Literal form of the lower-bound argument for one prefix: take a maximum
/// induced matching M of G^{prefix}, U* its prefix-side ends, and check that
/// the 2^|M| subsets of U* have pairwise distinct neighbourhoods outside the prefix.
struct LowerBoundWitness {
    int r = 0;
    Matching matching;
    std::uint64_t distinct_neighbourhoods = 0;
    bool ok = false;
};
LowerBoundWitness lower_bound_witness(const Graph& g, const VertexSet& prefix, const Budget& budget = {});

struct ObddBoundsReport {
    int n = 0;
    int lu = 0;
    VertexOrdering lu_order;
    std::vector<int> lu_per_prefix;
    MinObddSize min_size;
    std::uint64_t lower_bound = 0;  ///< 2^lu
    /// n * n^{lu+1}, saturating
    std::uint64_t upper_expression = 0;
    /// |traces(V_i)| for i = 0..n under lu_order
    std::vector<std::uint64_t> prefix_trace_counts;
    /// quasi-reduced level counts of the diagram built under lu_order
    std::vector<std::uint64_t> level_counts;
    bool lower_ok = false;
    /// level_counts[i] <= |BF(V_i)| for every level
    bool levels_ok = false;
    /// |traces(V_i)| <= n^{r_i + 1} for every prefix
    bool upper_mechanism_ok = false;
    /// lower_bound_witness holds at the widest prefix
    bool witness_ok = false;

    bool passed() const { return lower_ok && levels_ok && upper_mechanism_ok && witness_ok; }
};

ObddBoundsReport obdd_bounds_report(const Graph& g, const Budget& budget = {});

}  // namespace mimlab
