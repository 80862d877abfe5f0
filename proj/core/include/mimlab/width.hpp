#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mimlab/graph.hpp"

namespace mimlab {

/// Which derived graph a prefix is measured in.
enum class WidthVariant {
    lu,    ///< upper subgraph G^{V_i}
    lmim,  ///< cut graph G[V_i, V \ V_i]
    lsim,  ///< G itself
};

std::string_view to_string(WidthVariant v);
/// Accepts "lu", "lmim", "lsim"; throws std::invalid_argument otherwise.
WidthVariant parse_width_variant(std::string_view text);

/// A permutation of the vertices of a host graph.
class VertexOrdering {
public:
    VertexOrdering() = default;
    /// Throws PreconditionError unless perm is a permutation of {0..n-1}.
    VertexOrdering(std::vector<int> perm, int n);

    static VertexOrdering identity(int n);

    int size() const { return static_cast<int>(perm_.size()); }
    int operator[](int i) const { return perm_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& perm() const { return perm_; }
    /// Set of the first k vertices.
    VertexSet prefix(int k) const;

    friend bool operator==(const VertexOrdering&, const VertexOrdering&) = default;

private:
    std::vector<int> perm_;
};

struct WidthReport {
    WidthVariant variant = WidthVariant::lu;
    int value = 0;
    VertexOrdering witness;
    /// r_i for the prefixes of length 1..n of the witness.
    std::vector<int> per_prefix;
    bool exact = true;
};

/// The graph a prefix set is measured in for the given variant.
Graph derived_graph(const Graph& g, const VertexSet& w, WidthVariant variant);

/// Largest induced (w, complement)-matching of the variant's derived graph.
int prefix_width(const Graph& g, const VertexSet& w, WidthVariant variant, const Budget& budget = {});

struct OrderingWidth {
    int value = 0;
    std::vector<int> per_prefix;
};

OrderingWidth width_of_ordering(const Graph& g, const VertexOrdering& pi, WidthVariant variant,
                                const Budget& budget = {});

/// Exact width by the min-max subset recurrence
///   f(W) = max(prefix_width(W), min_{v in W} f(W \ {v})),  f(empty) = 0.
/// The witness appends, at each step back from V(g), the smallest-index vertex
/// whose removal attains the minimum. Throws BudgetExceeded when n exceeds
/// budget.max_dp_vertices.
WidthReport exact_width(const Graph& g, WidthVariant variant, const Budget& budget = {});

/// Local search over orderings (adjacent transpositions with random restarts).
/// budget is the number of ordering evaluations. Reproducible for a seed; the
/// result is always an upper bound on the exact width.
WidthReport heuristic_width_upper(const Graph& g, WidthVariant variant, std::uint64_t seed, std::uint64_t budget,
                                  const Budget& limits = {});

}  // namespace mimlab
