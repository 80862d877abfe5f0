#include "mimlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "mimlab/graph_io.hpp"

namespace mimlab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

Graph skew(int q) {
    require(q >= 1, "skew needs q >= 1");
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 1; i <= q; ++i) labels.push_back("u" + idx(i));
    for (int j = 1; j <= q; ++j) labels.push_back("v" + idx(j));
    for (int i = 0; i < q; ++i)
        for (int j = i; j < q; ++j) edges.push_back({i, q + j});
    return Graph(2 * q, edges, std::move(labels));
}

Graph perfect_matching(int k) {
    require(k >= 1, "perfect matching needs k >= 1");
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 1; i <= k; ++i) labels.push_back("u" + idx(i));
    for (int i = 1; i <= k; ++i) labels.push_back("v" + idx(i));
    for (int i = 0; i < k; ++i) edges.push_back({i, k + i});
    return Graph(2 * k, edges, std::move(labels));
}

SkewPath skew_path(int p, int q) {
    require(p >= 2 && q >= 1, "skew path needs p >= 2 and q >= 1");
    SkewPath out;
    out.p = p;
    out.q = q;
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int l = 1; l <= p; ++l)
        for (int j = 1; j <= q; ++j) labels.push_back("L" + idx(l) + "_" + idx(j));
    for (int l = 1; l < p; ++l)
        for (int i = 1; i <= q; ++i)
            for (int j = i; j <= q; ++j) edges.push_back({out.vertex(l, i), out.vertex(l + 1, j)});
    out.graph = Graph(p * q, edges, std::move(labels));
    return out;
}

std::vector<int> SkewGridMeta::layer_vertices(int layer) const {
    std::vector<int> out;
    for (int c = 1; c <= width(); ++c) {
        out.push_back(main_vertex(layer, c));
        if (c < width()) out.push_back(aux_vertex(layer, c));
    }
    return out;
}

SkewGrid skew_grid(int p, int q, int r) {
    require(p >= 2 && q >= 1 && r >= 1, "skew grid needs p >= 2, q >= 1, r >= 1");
    SkewGrid out;
    SkewGridMeta& m = out.meta;
    m.p = p;
    m.q = q;
    m.r = r;
    const int w = q * r;
    const int n = p * w + p * (w - 1);
    m.layer_of.assign(static_cast<std::size_t>(n), 0);
    m.coordinate_of.assign(static_cast<std::size_t>(n), 0);
    m.kind_of.assign(static_cast<std::size_t>(n), VertexKind::main);
    m.block_of.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    for (int l = 1; l <= p; ++l) {
        for (int c = 1; c <= w; ++c) {
            const auto v = static_cast<std::size_t>(m.main_vertex(l, c));
            m.layer_of[v] = l;
            m.coordinate_of[v] = c;
            m.block_of[v] = (c - 1) / q + 1;
            labels[v] = "m" + idx(l) + "_" + idx(c);
        }
        for (int c = 1; c < w; ++c) {
            const auto v = static_cast<std::size_t>(m.aux_vertex(l, c));
            m.layer_of[v] = l;
            m.kind_of[v] = VertexKind::auxiliary;
            labels[v] = "a" + idx(l) + "_" + idx(c);
        }
    }
    std::vector<Edge> edges;
    for (int l = 1; l < p; ++l)
        for (int b = 0; b < r; ++b)
            for (int i = 1; i <= q; ++i)
                for (int j = i; j <= q; ++j)
                    edges.push_back({m.main_vertex(l, b * q + i), m.main_vertex(l + 1, b * q + j)});
    for (int l = 1; l <= p; ++l)
        for (int c = 1; c < w; ++c) {
            edges.push_back({m.main_vertex(l, c), m.aux_vertex(l, c)});
            edges.push_back({m.aux_vertex(l, c), m.main_vertex(l, c + 1)});
        }
    out.graph = Graph(n, edges, std::move(labels));
    return out;
}

VertexOrdering skew_grid_layer_order(const SkewGridMeta& meta) {
    std::vector<int> perm;
    for (int l = 1; l <= meta.p; ++l)
        for (int v : meta.layer_vertices(l)) perm.push_back(v);
    return VertexOrdering(std::move(perm), static_cast<int>(meta.layer_of.size()));
}

int lower_bound_layer_count(int q, int r) {
    int ceil_log = 0;
    while ((1 << ceil_log) < q) ++ceil_log;
    return std::max(2, 2 * r * ceil_log);
}

HorizontalSubgraph horizontal_subgraph(const SkewGrid& grid, const std::vector<int>& top_layers) {
    const SkewGridMeta& m = grid.meta;
    require(static_cast<int>(top_layers.size()) == m.width(),
            "horizontal subgraph needs one layer pick per coordinate (" + idx(m.width()) + ")");
    HorizontalSubgraph h;
    VertexSet chosen(grid.graph.n());
    for (int c = 1; c <= m.width(); ++c) {
        const int l = top_layers[static_cast<std::size_t>(c) - 1];
        require(l >= 1 && l < m.p, "top vertex of coordinate " + idx(c) + " must lie on layers 1.." + idx(m.p - 1));
        h.host_top.push_back(m.main_vertex(l, c));
        h.host_bottom.push_back(m.main_vertex(l + 1, c));
        chosen.set(h.host_top.back());
        chosen.set(h.host_bottom.back());
    }
    h.sub = induced_subgraph(grid.graph, chosen);
    const int n = h.sub.graph.n();
    std::vector<int> local(static_cast<std::size_t>(grid.graph.n()), -1);
    for (int i = 0; i < n; ++i) local[static_cast<std::size_t>(h.sub.to_host[static_cast<std::size_t>(i)])] = i;
    h.top = VertexSet(n);
    h.bottom = VertexSet(n);
    h.intervals.assign(static_cast<std::size_t>(m.r), VertexSet(n));
    for (int c = 1; c <= m.width(); ++c) {
        const int t = local[static_cast<std::size_t>(h.host_top[static_cast<std::size_t>(c) - 1])];
        const int b = local[static_cast<std::size_t>(h.host_bottom[static_cast<std::size_t>(c) - 1])];
        h.top.set(t);
        h.bottom.set(b);
        h.core.push_back({t, b});
        auto& interval = h.intervals[static_cast<std::size_t>((c - 1) / m.q)];
        interval.set(t);
        interval.set(b);
    }
    return h;
}

Graph h_graph(int r) {
    require(r >= 2, "H_r needs r >= 2");
    auto v = [r](int i, int j) { return (i - 1) * r + (j - 1); };
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) labels.push_back("v" + idx(i) + "_" + idx(j));
    for (int i = 1; i <= r; ++i)
        for (int a = 1; a <= r; ++a)
            for (int b = a + 1; b <= r; ++b) edges.push_back({v(i, a), v(i, b)});
    for (int j = 1; j <= r; ++j)
        for (int i = 1; i < r; ++i) edges.push_back({v(i, j), v(i + 1, j)});
    return Graph(r * r, edges, std::move(labels));
}

Graph grid(int p, int r) {
    require(p >= 1 && r >= 1, "grid needs p, r >= 1");
    auto v = [r](int i, int j) { return (i - 1) * r + (j - 1); };
    std::vector<Edge> edges;
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= r; ++j) {
            if (j < r) edges.push_back({v(i, j), v(i, j + 1)});
            if (i < p) edges.push_back({v(i, j), v(i + 1, j)});
        }
    return Graph(p * r, edges);
}

Graph matching_counterexample(int k) {
    require(k >= 1, "counterexample needs k >= 1");
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 1; i <= k; ++i) labels.push_back("u" + idx(i));
    for (int i = 1; i <= k; ++i) labels.push_back("v" + idx(i));
    for (int i = 0; i < k; ++i) edges.push_back({i, k + i});
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) edges.push_back({k + a, k + b});
    return Graph(2 * k, edges, std::move(labels));
}

Graph fixture(const std::string& name) {
    if (name == "c4") return Graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"x1", "x2", "x3", "x4"});
    if (name == "k2") return Graph(2, {{0, 1}}, {"u", "v"});
    if (name == "fig1") {
        // t1..t4 = 0..3 (top row), b1..b4 = 4..7 (bottom row)
        std::vector<Edge> e = {
            {0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3},  // top path and skip arcs
            {4, 5}, {5, 6}, {6, 7}, {4, 6}, {5, 7},  // bottom path and skip arcs
            {0, 4}, {1, 5}, {2, 6}, {3, 7},          // verticals
            {0, 5}, {1, 6}, {2, 7},                  // diagonals t_i b_{i+1}
        };
        return Graph(8, e, {"t1", "t2", "t3", "t4", "b1", "b2", "b3", "b4"});
    }
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<std::string> fixture_names() { return {"c4", "fig1", "k2"}; }

std::uint64_t edge_list_checksum(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    require(n >= 0 && p >= 0.0 && p <= 1.0, "erdos_renyi needs n >= 0 and 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 53));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((rng() >> 11) < threshold) edges.push_back({u, v});
    return Graph(n, edges);
}

std::vector<Graph> random_connected_graphs(int n, double p, int count, std::uint64_t seed) {
    std::mt19937_64 seeds(seed);
    std::vector<Graph> out;
    while (static_cast<int>(out.size()) < count) {
        Graph g = erdos_renyi(n, p, seeds());
        if (g.is_connected() && !g.has_isolated_vertex()) out.push_back(std::move(g));
    }
    return out;
}

namespace {

/// Upper-triangle adjacency code under a relabelling, for n <= 11.
std::uint64_t code_under(const std::vector<Edge>& edges, const std::vector<int>& perm) {
    std::uint64_t code = 0;
    for (const Edge& e : edges) {
        int a = perm[static_cast<std::size_t>(e.u)], b = perm[static_cast<std::size_t>(e.v)];
        if (a > b) std::swap(a, b);
        code |= std::uint64_t{1} << (b * (b - 1) / 2 + a);
    }
    return code;
}

Graph from_code(int n, std::uint64_t code) {
    std::vector<Edge> edges;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if ((code >> (b * (b - 1) / 2 + a)) & 1U) edges.push_back({a, b});
    return Graph(n, edges);
}

}  // namespace

std::vector<Graph> all_graphs_up_to_isomorphism(int n) {
    require(n >= 0 && n <= 7, "isomorphism-class enumeration supports n <= 7");
    if (n <= 1) return {Graph(n)};
    const std::vector<Graph> smaller = all_graphs_up_to_isomorphism(n - 1);
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> codes;
    for (const Graph& base : smaller) {
        std::vector<Edge> base_edges = base.edges();
        for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (n - 1)); ++nb) {
            std::vector<Edge> edges = base_edges;
            for (int v = 0; v < n - 1; ++v)
                if ((nb >> v) & 1U) edges.push_back({v, n - 1});
            std::uint64_t best = ~std::uint64_t{0};
            for (const auto& pm : perms) best = std::min(best, code_under(edges, pm));
            if (seen.insert(best).second) codes.push_back(best);
        }
    }
    std::sort(codes.begin(), codes.end());
    std::vector<Graph> out;
    out.reserve(codes.size());
    for (std::uint64_t c : codes) out.push_back(from_code(n, c));
    return out;
}

}  // namespace mimlab
