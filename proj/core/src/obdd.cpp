#include "mimlab/obdd.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

#include "mimlab/traces.hpp"

namespace mimlab {

std::uint64_t Obdd::size_quasi_reduced() const {
    return std::accumulate(quasi_levels_.begin(), quasi_levels_.end(), std::uint64_t{2});
}

Obdd Obdd::with_swapped_sinks() const {
    Obdd out = *this;
    for (auto& nd : out.nodes_) {
        if (nd.var < 0) continue;
        if (nd.lo == kFalse || nd.lo == kTrue) nd.lo = 1 - nd.lo;
        if (nd.hi == kFalse || nd.hi == kTrue) nd.hi = 1 - nd.hi;
    }
    if (out.root_ == kFalse || out.root_ == kTrue) out.root_ = 1 - out.root_;
    return out;
}

Obdd build_obdd(const Graph& g, const VertexOrdering& order) {
    const int n = g.n();
    if (order.size() != n) throw PreconditionError("ordering size does not match graph");
    // validates the permutation
    VertexOrdering checked(order.perm(), n);
    cnf_of_graph(g);

    // Quasi-reduced sweep. A live state is the set of undecided vertices that
    // are forced true; child index -1 denotes the FALSE sink.
    struct State {
        VertexSet forced;
        int lo = -1;
        int hi = -1;
    };
    std::vector<std::vector<State>> layers(static_cast<std::size_t>(n) + 1);
    layers[0].push_back({VertexSet(n)});
    VertexSet remaining = g.all();
    for (int i = 0; i < n; ++i) {
        const int v = order[i];
        remaining.reset(v);
        std::unordered_map<VertexSet, int, BitsetHash> next_index;
        auto& next = layers[static_cast<std::size_t>(i) + 1];
        auto intern = [&](VertexSet f) {
            auto [it, inserted] = next_index.try_emplace(f, static_cast<int>(next.size()));
            if (inserted) next.push_back({std::move(f)});
            return it->second;
        };
        for (State& s : layers[static_cast<std::size_t>(i)]) {
            VertexSet hi = s.forced;
            hi.reset(v);
            s.hi = intern(std::move(hi));
            if (s.forced.test(v)) {
                s.lo = -1;
            } else {
                s.lo = intern((s.forced | g.row(v)) & remaining);
            }
        }
    }

    Obdd z;
    z.order_ = checked;
    z.nodes_ = {ObddNode{}, ObddNode{}};
    z.levels_.assign(static_cast<std::size_t>(n), {});
    z.quasi_levels_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) z.labels_.push_back(g.label(v));

    // The last layer holds only the empty forced set, i.e. the TRUE sink.
    std::vector<int> below(layers[static_cast<std::size_t>(n)].size(), Obdd::kTrue);
    std::map<std::tuple<int, int, int>, int> unique;
    for (int i = n - 1; i >= 0; --i) {
        const auto& layer = layers[static_cast<std::size_t>(i)];
        z.quasi_levels_[static_cast<std::size_t>(i)] = layer.size();
        std::vector<int> ids(layer.size());
        for (std::size_t k = 0; k < layer.size(); ++k) {
            const int lo = layer[k].lo < 0 ? Obdd::kFalse : below[static_cast<std::size_t>(layer[k].lo)];
            const int hi = below[static_cast<std::size_t>(layer[k].hi)];
            if (lo == hi) {
                ids[k] = lo;
                continue;
            }
            auto key = std::make_tuple(order[i], lo, hi);
            auto it = unique.find(key);
            if (it == unique.end()) {
                const int id = static_cast<int>(z.nodes_.size());
                z.nodes_.push_back({order[i], lo, hi});
                z.levels_[static_cast<std::size_t>(i)].push_back(id);
                it = unique.emplace(key, id).first;
            }
            ids[k] = it->second;
        }
        below = std::move(ids);
    }
    z.root_ = below.front();
    return z;
}

bool eval_obdd(const Obdd& z, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != z.num_vars())
        throw PreconditionError("assignment covers " + std::to_string(assignment.size()) + " variables, expected " +
                                std::to_string(z.num_vars()));
    int id = z.root();
    while (id != Obdd::kFalse && id != Obdd::kTrue) {
        const ObddNode& nd = z.node(id);
        id = assignment[static_cast<std::size_t>(nd.var)] ? nd.hi : nd.lo;
    }
    return id == Obdd::kTrue;
}

std::uint64_t count_accepting(const Obdd& z) {
    const int n = z.num_vars();
    if (n >= 64) throw BudgetExceeded("model counting limited to 63 variables");
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(z.order()[i])] = i;
    auto level = [&](int id) { return id <= Obdd::kTrue ? n : pos[static_cast<std::size_t>(z.node(id).var)]; };
    // models of the subfunction at node id over the variables from its level on
    std::vector<std::uint64_t> models(z.nodes().size(), 0);
    models[Obdd::kTrue] = 1;
    for (int i = n - 1; i >= 0; --i)
        for (int id : z.levels()[static_cast<std::size_t>(i)]) {
            const ObddNode& nd = z.node(id);
            models[static_cast<std::size_t>(id)] =
                (models[static_cast<std::size_t>(nd.lo)] << (level(nd.lo) - i - 1)) +
                (models[static_cast<std::size_t>(nd.hi)] << (level(nd.hi) - i - 1));
        }
    return models[static_cast<std::size_t>(z.root())] << level(z.root());
}

bool exhaustive_equiv_check(const Obdd& z, const Graph& g, const Budget& budget) {
    const int n = g.n();
    if (z.num_vars() != n) return false;
    if (n > budget.max_truth_table_vars)
        throw BudgetExceeded("exhaustive check limited to " + std::to_string(budget.max_truth_table_vars) +
                             " variables");
    const MonotoneCnf phi = cnf_of_graph(g);
    std::vector<bool> assignment(static_cast<std::size_t>(n));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        for (int v = 0; v < n; ++v) assignment[static_cast<std::size_t>(v)] = (bits >> v) & 1U;
        if (eval_obdd(z, assignment) != phi.eval(assignment)) return false;
    }
    return true;
}

void write_dot(std::ostream& out, const Obdd& z) {
    out << "digraph obdd {\n";
    out << "  node [shape=doublecircle]; f [label=\"false\"]; t [label=\"true\"];\n";
    out << "  node [shape=circle];\n";
    auto name = [](int id) {
        if (id == Obdd::kFalse) return std::string("f");
        if (id == Obdd::kTrue) return std::string("t");
        return "n" + std::to_string(id);
    };
    for (const auto& level : z.levels())
        for (int id : level) out << "  " << name(id) << " [label=\"" << z.labels()[static_cast<std::size_t>(z.node(id).var)] << "\"];\n";
    for (const auto& level : z.levels())
        for (int id : level) {
            const ObddNode& nd = z.node(id);
            out << "  " << name(id) << " -> " << name(nd.hi) << ";\n";
            out << "  " << name(id) << " -> " << name(nd.lo) << " [style=dashed];\n";
        }
    out << "}\n";
}

std::string_view to_string(MinimizeMethod m) {
    return m == MinimizeMethod::factorial ? "exact" : "dp";
}

MinimizeMethod parse_minimize_method(std::string_view text) {
    if (text == "exact" || text == "factorial") return MinimizeMethod::factorial;
    if (text == "dp") return MinimizeMethod::dp;
    throw std::invalid_argument("unknown minimization method: " + std::string(text));
}

namespace {

MinObddSize min_by_factorial(const Graph& g, const Budget& budget) {
    const int n = g.n();
    if (n > budget.max_factorial_vertices)
        throw BudgetExceeded("factorial ordering search limited to " + std::to_string(budget.max_factorial_vertices) +
                             " vertices");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    MinObddSize best;
    best.size_total = best.size_quasi = std::numeric_limits<std::uint64_t>::max();
    do {
        VertexOrdering pi(perm, n);
        Obdd z = build_obdd(g, pi);
        if (z.size_total() < best.size_total) {
            best.size_total = z.size_total();
            best.order_total = pi;
        }
        if (z.size_quasi_reduced() < best.size_quasi) {
            best.size_quasi = z.size_quasi_reduced();
            best.order_quasi = pi;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Trace masks of a prefix (n <= 32), deduplicated.
std::vector<std::uint32_t> prefix_traces(const std::vector<std::uint32_t>& adj, std::uint32_t prefix,
                                         std::uint32_t full) {
    const std::uint32_t rest = full & ~prefix;
    std::vector<std::uint32_t> out;
    struct Frame {
        std::uint32_t cand, trace;
    };
    std::vector<Frame> stack{{prefix, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        out.push_back(f.trace);
        for (std::uint32_t c = f.cand; c; c &= c - 1) {
            const int v = std::countr_zero(c);
            const std::uint32_t higher = f.cand & ~((std::uint32_t{2} << v) - 1);
            stack.push_back({higher & ~adj[static_cast<std::size_t>(v)], f.trace | (adj[static_cast<std::size_t>(v)] & rest)});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Reduced nodes testing v right after `prefix`: residual functions that
/// essentially depend on v.
std::uint64_t reduced_level_cost(const std::vector<std::uint32_t>& adj, const std::vector<std::uint32_t>& traces,
                                 std::uint32_t prefix, std::uint32_t full, int v) {
    const std::uint32_t rest = full & ~prefix;
    const std::uint32_t bit = std::uint32_t{1} << v;
    std::uint64_t c = 0;
    for (std::uint32_t t : traces)
        if ((t & bit) || (adj[static_cast<std::size_t>(v)] & rest & ~t)) ++c;
    return c;
}

MinObddSize min_by_dp(const Graph& g) {
    const int n = g.n();
    if (n > 20) throw BudgetExceeded("ordering dynamic program limited to 20 vertices");
    cnf_of_graph(g);
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.row(v).mask());
    const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> quasi(std::size_t{1} << n, kInf), reduced(std::size_t{1} << n, kInf);
    quasi[0] = reduced[0] = 0;
    for (std::uint32_t p = 0; p < full; ++p) {
        const auto ts = prefix_traces(adj, p, full);
        for (std::uint32_t c = full & ~p; c; c &= c - 1) {
            const int v = std::countr_zero(c);
            const std::uint32_t w = p | (std::uint32_t{1} << v);
            quasi[w] = std::min(quasi[w], quasi[p] + ts.size());
            reduced[w] = std::min(reduced[w], reduced[p] + reduced_level_cost(adj, ts, p, full, v));
        }
    }
    auto reconstruct = [&](const std::vector<std::uint64_t>& f, bool quasi_cost) {
        std::vector<int> rev;
        std::uint32_t w = full;
        while (w) {
            for (std::uint32_t c = w; c; c &= c - 1) {
                const int v = std::countr_zero(c);
                const std::uint32_t p = w & ~(std::uint32_t{1} << v);
                const auto ts = prefix_traces(adj, p, full);
                const std::uint64_t cost = quasi_cost ? ts.size() : reduced_level_cost(adj, ts, p, full, v);
                if (f[p] + cost == f[w]) {
                    rev.push_back(v);
                    w = p;
                    break;
                }
            }
        }
        std::reverse(rev.begin(), rev.end());
        return VertexOrdering(std::move(rev), n);
    };
    MinObddSize out;
    out.size_quasi = quasi[full] + 2;
    out.size_total = reduced[full] + 2;
    out.order_quasi = reconstruct(quasi, true);
    out.order_total = reconstruct(reduced, false);
    return out;
}

}  // namespace

MinObddSize min_obdd_size_exact(const Graph& g, MinimizeMethod method, const Budget& budget) {
    return method == MinimizeMethod::factorial ? min_by_factorial(g, budget) : min_by_dp(g);
}

LowerBoundWitness lower_bound_witness(const Graph& g, const VertexSet& prefix, const Budget& budget) {
    LowerBoundWitness w;
    auto m = max_induced_cut_matching(upper_subgraph(g, prefix), prefix, budget);
    w.r = m.size;
    w.matching = m.witness;
    const VertexSet outside = prefix.complement();
    std::unordered_map<VertexSet, int, BitsetHash> seen;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << w.r); ++sub) {
        VertexSet s(g.n());
        for (int i = 0; i < w.r; ++i)
            if ((sub >> i) & 1U) s.set(w.matching[static_cast<std::size_t>(i)].u);
        seen.emplace(neighborhood(g, s) & outside, 0);
    }
    w.distinct_neighbourhoods = seen.size();
    w.ok = w.distinct_neighbourhoods == (std::uint64_t{1} << w.r);
    return w;
}

ObddBoundsReport obdd_bounds_report(const Graph& g, const Budget& budget) {
    ObddBoundsReport rep;
    const int n = g.n();
    rep.n = n;
    WidthReport lu = exact_width(g, WidthVariant::lu, budget);
    rep.lu = lu.value;
    rep.lu_order = lu.witness;
    rep.lu_per_prefix = lu.per_prefix;
    rep.min_size = min_obdd_size_exact(g, MinimizeMethod::dp, budget);
    rep.lower_bound = std::uint64_t{1} << rep.lu;
    rep.upper_expression = saturating_pow(static_cast<std::uint64_t>(n), rep.lu + 2);
    rep.lower_ok = rep.lower_bound <= rep.min_size.size_quasi;

    Obdd z = build_obdd(g, rep.lu_order);
    rep.level_counts = z.quasi_level_counts();
    rep.levels_ok = true;
    rep.upper_mechanism_ok = true;
    for (int i = 0; i <= n; ++i) {
        const VertexSet p = rep.lu_order.prefix(i);
        const std::uint64_t t = traces(g, p, budget).size();
        rep.prefix_trace_counts.push_back(t);
        if (i < n) {
            const std::uint64_t bf =
                n <= budget.max_truth_table_vars ? subfunction_count(g, p, budget) : t;
            if (rep.level_counts[static_cast<std::size_t>(i)] > bf) rep.levels_ok = false;
        }
        if (i > 0) {
            const int r = rep.lu_per_prefix[static_cast<std::size_t>(i) - 1];
            if (t > saturating_pow(static_cast<std::uint64_t>(n), r + 1)) rep.upper_mechanism_ok = false;
        }
    }
    const auto widest = std::max_element(rep.lu_per_prefix.begin(), rep.lu_per_prefix.end());
    const int len = widest == rep.lu_per_prefix.end() ? 0 : static_cast<int>(widest - rep.lu_per_prefix.begin()) + 1;
    rep.witness_ok = lower_bound_witness(g, rep.lu_order.prefix(len), budget).ok;
    return rep;
}

}  // namespace mimlab
