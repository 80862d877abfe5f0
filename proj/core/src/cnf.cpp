#include "mimlab/cnf.hpp"

#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "mimlab/traces.hpp"

namespace mimlab {

MonotoneCnf::MonotoneCnf(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {}

bool MonotoneCnf::eval(const std::vector<bool>& assignment) const {
    if (static_cast<int>(assignment.size()) != num_vars_)
        throw PreconditionError("assignment covers " + std::to_string(assignment.size()) + " variables, expected " +
                                std::to_string(num_vars_));
    for (const Clause& c : clauses_)
        if (!assignment[static_cast<std::size_t>(c.a)] && !assignment[static_cast<std::size_t>(c.b)]) return false;
    return true;
}

bool MonotoneCnf::eval_bits(std::uint64_t bits) const {
    for (const Clause& c : clauses_)
        if (!((bits >> c.a) & 1U) && !((bits >> c.b) & 1U)) return false;
    return true;
}

void MonotoneCnf::write_dimacs(std::ostream& out) const {
    out << "p cnf " << num_vars_ << ' ' << clauses_.size() << '\n';
    for (const Clause& c : clauses_) out << c.a + 1 << ' ' << c.b + 1 << " 0\n";
}

MonotoneCnf cnf_of_graph(const Graph& g) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) throw PreconditionError("vertex " + g.label(v) + " is isolated");
    std::vector<Clause> clauses;
    for (const Edge& e : g.edges()) clauses.push_back({e.u, e.v});
    return MonotoneCnf(g.n(), std::move(clauses));
}

std::uint64_t subfunction_count(const Graph& g, const VertexSet& prefix, const Budget& budget) {
    check_set(g, prefix);
    if (g.n() > budget.max_truth_table_vars || g.n() > 62)
        throw BudgetExceeded("truth-table oracle limited to " + std::to_string(budget.max_truth_table_vars) +
                             " variables");
    std::vector<Clause> clauses;
    for (const Edge& e : g.edges()) clauses.push_back({e.u, e.v});
    const MonotoneCnf phi(g.n(), std::move(clauses));

    const std::vector<int> fixed = prefix.to_vector();
    const std::vector<int> rest = prefix.complement().to_vector();
    const std::uint64_t rows = std::uint64_t{1} << rest.size();
    const std::size_t words = static_cast<std::size_t>((rows + 63) / 64);

    auto spread = [](const std::vector<int>& vars, std::uint64_t bits) {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if ((bits >> i) & 1U) x |= std::uint64_t{1} << vars[i];
        return x;
    };

    std::set<std::vector<std::uint64_t>> functions;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << fixed.size()); ++a) {
        const std::uint64_t base = spread(fixed, a);
        std::vector<std::uint64_t> table(words, 0);
        bool extendable = false;
        for (std::uint64_t b = 0; b < rows; ++b) {
            if (phi.eval_bits(base | spread(rest, b))) {
                table[b / 64] |= std::uint64_t{1} << (b % 64);
                extendable = true;
            }
        }
        if (extendable) functions.insert(std::move(table));
    }
    return functions.size();
}

std::uint64_t count_satisfying(const Graph& g, const Budget& budget) {
    std::uint64_t count = 0;
    for_each_independent_set(g, g.all(), [&](const VertexSet&) { ++count; }, budget);
    return count;
}

}  // namespace mimlab
