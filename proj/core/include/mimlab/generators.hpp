#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimlab/graph.hpp"
#include "mimlab/width.hpp"

namespace mimlab {

/// SKEW(U, V) on u_1..u_q (vertices 0..q-1) and v_1..v_q (q..2q-1) with
/// edges u_i v_j for i <= j.
Graph skew(int q);

/// Bipartite perfect matching u_i v_i, same numbering as skew().
Graph perfect_matching(int k);

struct SkewPath {
    Graph graph;
    int p = 0;
    int q = 0;
    /// Vertex of layer l (1-based) and position j (1-based): (l-1)*q + (j-1).
    int vertex(int layer, int pos) const { return (layer - 1) * q + (pos - 1); }
};

/// p,q-path of skewed graphs: layers U_1..U_p of q vertices, SKEW(U_i, U_{i+1})
/// between consecutive layers.
SkewPath skew_path(int p, int q);

enum class VertexKind { main, auxiliary };

struct SkewGridMeta {
    int p = 0;
    int q = 0;
    int r = 0;
    /// Per vertex, 1-based layer.
    std::vector<int> layer_of;
    /// Per vertex, 1-based coordinate for main vertices and 0 for auxiliaries.
    std::vector<int> coordinate_of;
    std::vector<VertexKind> kind_of;
    /// Per vertex, 1-based skew-path (main interval) index; 0 for auxiliaries.
    std::vector<int> block_of;

    int main_count() const { return p * q * r; }
    int width() const { return q * r; }
    /// Main vertex at (layer, coordinate), both 1-based.
    int main_vertex(int layer, int coordinate) const { return (layer - 1) * q * r + (coordinate - 1); }
    /// Auxiliary vertex subdividing the layer edge between coordinates c and c+1.
    int aux_vertex(int layer, int coordinate) const {
        return p * q * r + (layer - 1) * (q * r - 1) + (coordinate - 1);
    }
    std::vector<int> layer_vertices(int layer) const;
};

struct SkewGrid {
    Graph graph;
    SkewGridMeta meta;
};

/// p,q,r-grid of skewed graphs. Main vertices are numbered layer-major then by
/// coordinate; auxiliary vertices follow all main vertices, layer-major.
SkewGrid skew_grid(int p, int q, int r);

/// Layer by layer, each layer along its subdivided path from coordinate 1.
VertexOrdering skew_grid_layer_order(const SkewGridMeta& meta);

/// p = 2 r ceil(log2 q), at least 2.
int lower_bound_layer_count(int q, int r);

struct HorizontalSubgraph {
    /// Induced subgraph of the grid on top ∪ bottom.
    InducedSubgraph sub;
    /// Forming sets in local indices of sub.graph.
    VertexSet top;
    VertexSet bottom;
    /// Core matching (top, bottom) in local indices, ordered by coordinate.
    Matching core;
    /// intervals[k] lists local vertices of main interval k+1.
    std::vector<VertexSet> intervals;
    /// Host-grid vertices of top and bottom, by coordinate.
    std::vector<int> host_top;
    std::vector<int> host_bottom;
};

/// top_layers[c-1] is the layer (1..p-1) holding the top vertex of coordinate c.
/// Throws PreconditionError for a wrong count or a layer outside 1..p-1.
HorizontalSubgraph horizontal_subgraph(const SkewGrid& grid, const std::vector<int>& top_layers);

/// r vertex-disjoint r-cliques (rows) threaded by r column paths; vertex
/// v_{i,j} is (i-1)*r + (j-1).
Graph h_graph(int r);

/// Standard p x r grid; vertex (i, j) is (i-1)*r + (j-1).
Graph grid(int p, int r);

/// U = {u_1..u_k} independent (0..k-1), V = {v_1..v_k} a clique (k..2k-1),
/// perfect matching u_i v_i.
Graph matching_counterexample(int k);

/// Named fixtures: "c4", "fig1", "k2".
Graph fixture(const std::string& name);
std::vector<std::string> fixture_names();

/// FNV-1a over the edge-list text of g; pins fixture transcriptions.
std::uint64_t edge_list_checksum(const Graph& g);

/// G(n, p) with a deterministic draw per vertex pair.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Connected G(n, p) samples, retrying the draw until connected.
std::vector<Graph> random_connected_graphs(int n, double p, int count, std::uint64_t seed);

/// One representative per isomorphism class of graphs on exactly n vertices
/// (n <= 7), in a deterministic order. Built by extending the classes on
/// n-1 vertices with a new vertex and deduplicating by canonical form.
std::vector<Graph> all_graphs_up_to_isomorphism(int n);

}  // namespace mimlab
