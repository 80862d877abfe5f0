#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mimlab/bitset.hpp"
#include "mimlab/errors.hpp"

namespace mimlab {

/// Subset of the vertices of a host graph; the universe is the host's n.
using VertexSet = Bitset;

struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex-disjoint edges. For cut matchings the first endpoint lies on the
/// chosen side and the second on its complement.
using Matching = std::vector<Edge>;

/// Immutable simple undirected graph with bit-vector adjacency rows.
class Graph {
public:
    Graph() = default;
    /// Edgeless graph on n vertices.
    explicit Graph(int n);
    /// Throws std::out_of_range for bad endpoints and std::invalid_argument
    /// for self-loops. Duplicate edges collapse.
    Graph(int n, const std::vector<Edge>& edges, std::vector<std::string> labels = {});

    int n() const { return n_; }
    int edge_count() const { return m_; }
    bool adjacent(int u, int v) const { return rows_[u].test(v); }
    const VertexSet& row(int v) const { return rows_[v]; }
    int degree(int v) const { return rows_[v].count(); }

    /// Edges with u < v, sorted.
    std::vector<Edge> edges() const;

    /// Display name; falls back to the 1-based index.
    std::string label(int v) const;
    const std::vector<std::string>& labels() const { return labels_; }

    VertexSet empty_set() const { return VertexSet(n_); }
    VertexSet all() const { return VertexSet::full(n_); }
    VertexSet make_set(std::initializer_list<int> members) const;
    VertexSet make_set(const std::vector<int>& members) const;

    bool has_isolated_vertex() const;
    bool is_connected() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> rows_;
    std::vector<std::string> labels_;
};

struct InducedSubgraph {
    Graph graph;
    /// to_host[i] is the host vertex of local vertex i (increasing).
    std::vector<int> to_host;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// G^U: spanning subgraph without the edges internal to V(g) \ u.
Graph upper_subgraph(const Graph& g, const VertexSet& u);

/// G[U, V(g) \ U]: spanning subgraph keeping only the edges crossing the cut.
Graph cut_graph(const Graph& g, const VertexSet& u);

/// Union of the neighbourhoods of s, minus s.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

bool is_independent(const Graph& g, const VertexSet& s);

/// Checks an induced (u, complement)-matching. Throws PreconditionError when a
/// pair is not an edge of g or does not cross the cut; returns false when pairs
/// share a vertex or some edge of g joins endpoints of two different pairs.
bool is_induced_cut_matching(const Graph& g, const VertexSet& u, const Matching& m);

struct CutMatching {
    int size = 0;
    /// Edges (u-side, complement-side), sorted; lexicographically least
    /// among all maximum induced cut matchings.
    Matching witness;
    std::uint64_t nodes = 0;
};

/// Exact maximum induced (u, complement)-matching of g by branch and bound
/// over crossing edges. Throws BudgetExceeded after budget.matching_nodes
/// branch nodes.
CutMatching max_induced_cut_matching(const Graph& g, const VertexSet& u, const Budget& budget = {});

void check_set(const Graph& g, const VertexSet& s);

}  // namespace mimlab
