#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mimlab {

/// An exact computation would exceed its work or size guard. Never
/// replaced by an approximate answer.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Work limits shared by the exact searches.
struct Budget {
    /// Branch nodes for a single induced-matching search.
    std::uint64_t matching_nodes = 100'000'000;
    /// Independent-set candidates for one trace enumeration.
    std::uint64_t independent_sets = std::uint64_t{1} << 24;
    /// Largest n accepted by the subset dynamic programs.
    int max_dp_vertices = 24;
    /// Largest n accepted by truth-table oracles.
    int max_truth_table_vars = 20;
    /// Largest n accepted by factorial ordering search.
    int max_factorial_vertices = 12;
    /// Subsets examined by the VC-dimension search.
    std::uint64_t vc_subsets = std::uint64_t{1} << 26;

    /// Defaults, with matching_nodes taken from MIMLAB_BUDGET when that
    /// variable holds a positive integer.
    static Budget from_env();
};

}  // namespace mimlab
