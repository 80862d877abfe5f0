#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mimlab/graph.hpp"

namespace mimlab {

/// Positive 2-literal clause (x_a ∨ x_b) over vertex-indexed variables.
struct Clause {
    int a = 0;
    int b = 0;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// φ(G): one clause per edge of a graph without isolated vertices.
class MonotoneCnf {
public:
    MonotoneCnf(int num_vars, std::vector<Clause> clauses);

    int num_vars() const { return num_vars_; }
    const std::vector<Clause>& clauses() const { return clauses_; }

    /// Clause-by-clause evaluation. assignment.size() must equal num_vars().
    bool eval(const std::vector<bool>& assignment) const;
    /// Same with bit i of `bits` giving variable i (num_vars <= 64).
    bool eval_bits(std::uint64_t bits) const;

    /// `p cnf <n> <m>` followed by `a b 0` per clause, 1-based.
    void write_dimacs(std::ostream& out) const;

private:
    int num_vars_;
    std::vector<Clause> clauses_;
};

/// Throws PreconditionError when g has an isolated vertex.
MonotoneCnf cnf_of_graph(const Graph& g);

/// |BF(prefix)|: distinct residual functions φ|_A over the remaining variables,
/// A ranging over prefix assignments that extend to a model. Computed from
/// truth tables, independently of the trace machinery. Throws BudgetExceeded
/// beyond budget.max_truth_table_vars variables.
std::uint64_t subfunction_count(const Graph& g, const VertexSet& prefix, const Budget& budget = {});

/// Models of φ(G), counted as the independent sets of g (a model's false-set
/// must be independent).
std::uint64_t count_satisfying(const Graph& g, const Budget& budget = {});

}  // namespace mimlab
