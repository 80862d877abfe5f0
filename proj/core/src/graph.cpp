#include "mimlab/graph.hpp"

#include "matching_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mimlab {

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("MIMLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) b.matching_nodes = v;
    }
    return b;
}

Graph::Graph(int n) : n_(n), rows_(static_cast<std::size_t>(n), VertexSet(n)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

Graph::Graph(int n, const std::vector<Edge>& edges, std::vector<std::string> labels) : Graph(n) {
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::out_of_range("edge endpoint out of range: " + std::to_string(e.u + 1) + "-" +
                                    std::to_string(e.v + 1));
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u + 1));
        if (!rows_[e.u].test(e.v)) ++m_;
        rows_[e.u].set(e.v);
        rows_[e.v].set(e.u);
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("label count does not match vertex count");
    labels_ = std::move(labels);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v = rows_[u].next(u + 1); v >= 0; v = rows_[u].next(v + 1)) out.push_back({u, v});
    return out;
}

std::string Graph::label(int v) const {
    if (!labels_.empty()) return labels_[static_cast<std::size_t>(v)];
    return std::to_string(v + 1);
}

VertexSet Graph::make_set(std::initializer_list<int> members) const {
    return make_set(std::vector<int>(members));
}

VertexSet Graph::make_set(const std::vector<int>& members) const {
    VertexSet s(n_);
    for (int m : members) {
        if (m < 0 || m >= n_) throw std::out_of_range("vertex index out of range: " + std::to_string(m));
        s.set(m);
    }
    return s;
}

bool Graph::has_isolated_vertex() const {
    return std::any_of(rows_.begin(), rows_.end(), [](const VertexSet& r) { return r.none(); });
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    VertexSet seen(n_), frontier(n_);
    seen.set(0);
    frontier.set(0);
    while (frontier.any()) {
        VertexSet next(n_);
        frontier.for_each([&](int v) { next |= rows_[v]; });
        next -= seen;
        seen |= next;
        frontier = std::move(next);
    }
    return seen.count() == n_;
}

void check_set(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.n()) throw std::out_of_range("vertex set universe does not match graph size");
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    check_set(g, s);
    InducedSubgraph out;
    out.to_host = s.to_vector();
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < out.to_host.size(); ++i) local[static_cast<std::size_t>(out.to_host[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int u : out.to_host) {
        if (!g.labels().empty()) labels.push_back(g.label(u));
        (g.row(u) & s).for_each([&](int v) {
            if (u < v) edges.push_back({local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]});
        });
    }
    out.graph = Graph(static_cast<int>(out.to_host.size()), edges, std::move(labels));
    return out;
}

namespace {

template <typename Keep>
Graph spanning_filter(const Graph& g, Keep keep) {
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (keep(e)) kept.push_back(e);
    return Graph(g.n(), kept, g.labels());
}

}  // namespace

Graph upper_subgraph(const Graph& g, const VertexSet& u) {
    check_set(g, u);
    return spanning_filter(g, [&](const Edge& e) { return u.test(e.u) || u.test(e.v); });
}

Graph cut_graph(const Graph& g, const VertexSet& u) {
    check_set(g, u);
    return spanning_filter(g, [&](const Edge& e) { return u.test(e.u) != u.test(e.v); });
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
    check_set(g, s);
    VertexSet out(g.n());
    s.for_each([&](int v) { out |= g.row(v); });
    return out -= s;
}

bool is_independent(const Graph& g, const VertexSet& s) {
    check_set(g, s);
    bool ok = true;
    s.for_each([&](int v) {
        if (ok && g.row(v).intersects(s)) ok = false;
    });
    return ok;
}

bool is_induced_cut_matching(const Graph& g, const VertexSet& u, const Matching& m) {
    check_set(g, u);
    VertexSet used(g.n());
    for (const Edge& e : m) {
        if (e.u < 0 || e.u >= g.n() || e.v < 0 || e.v >= g.n()) throw std::out_of_range("matching endpoint out of range");
        if (!g.adjacent(e.u, e.v))
            throw PreconditionError("pair " + g.label(e.u) + "-" + g.label(e.v) + " is not an edge");
        if (u.test(e.u) == u.test(e.v))
            throw PreconditionError("pair " + g.label(e.u) + "-" + g.label(e.v) + " does not cross the cut");
    }
    for (const Edge& e : m) {
        if (used.test(e.u) || used.test(e.v)) return false;
        used.set(e.u);
        used.set(e.v);
    }
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            for (int a : {m[i].u, m[i].v})
                for (int b : {m[j].u, m[j].v})
                    if (g.adjacent(a, b)) return false;
    return true;
}

CutMatching max_induced_cut_matching(const Graph& g, const VertexSet& u, const Budget& budget) {
    check_set(g, u);
    std::vector<Edge> cross;
    u.for_each([&](int a) { (g.row(a) - u).for_each([&](int b) { cross.push_back({a, b}); }); });
    auto result = detail::search_induced_matching(
        g.n(), cross, [&g](int a, int b) { return g.adjacent(a, b); }, 0, budget.matching_nodes);
    CutMatching out;
    out.size = static_cast<int>(result.best.size());
    out.nodes = result.nodes;
    for (int i : result.best) out.witness.push_back(cross[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace mimlab
