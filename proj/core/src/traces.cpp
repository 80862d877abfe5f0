#include "mimlab/traces.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace mimlab {

namespace {

class IndependentSetWalker {
public:
    IndependentSetWalker(const Graph& g, const VertexSet& u, std::uint64_t budget, int max_size)
        : g_(g), v_side_(u.complement()), budget_(budget), max_size_(max_size) {}

    /// fn(S, N(S) ∩ V) for every independent S ⊆ u with |S| <= max_size.
    template <typename Fn>
    void run(const VertexSet& u, Fn&& fn) {
        VertexSet s(g_.n()), trace(g_.n());
        walk(s, u, trace, 0, fn);
    }

private:
    template <typename Fn>
    void walk(VertexSet& s, const VertexSet& cand, const VertexSet& trace, int depth, Fn& fn) {
        if (++seen_ > budget_)
            throw BudgetExceeded("independent set enumeration exceeded " + std::to_string(budget_) + " candidates");
        fn(static_cast<const VertexSet&>(s), trace);
        if (depth == max_size_) return;
        for (int v = cand.first(); v >= 0; v = cand.next(v + 1)) {
            VertexSet next = cand;
            // only larger indices, and never a neighbour of v
            for (int w = next.first(); w >= 0 && w <= v; w = next.next(w + 1)) next.reset(w);
            next -= g_.row(v);
            VertexSet next_trace = trace | (g_.row(v) & v_side_);
            s.set(v);
            walk(s, next, next_trace, depth + 1, fn);
            s.reset(v);
        }
    }

    const Graph& g_;
    VertexSet v_side_;
    std::uint64_t budget_;
    int max_size_;
    std::uint64_t seen_ = 0;
};

TraceSet collect_traces(const Graph& g, const VertexSet& u, int max_size, const Budget& budget) {
    check_set(g, u);
    std::unordered_set<VertexSet, BitsetHash> seen;
    IndependentSetWalker walker(g, u, budget.independent_sets, max_size);
    walker.run(u, [&](const VertexSet&, const VertexSet& trace) { seen.insert(trace); });
    TraceSet ts;
    ts.side_u = u;
    ts.side_v = u.complement();
    ts.traces.assign(seen.begin(), seen.end());
    std::sort(ts.traces.begin(), ts.traces.end(), shortlex_less);
    return ts;
}

void require_independent_subset(const Graph& g, const VertexSet& u, const VertexSet& s) {
    check_set(g, u);
    check_set(g, s);
    if (!s.is_subset_of(u)) throw PreconditionError("S is not a subset of U");
    if (!is_independent(g, s)) throw PreconditionError("S is not independent");
}

VertexSet trace_of(const Graph& g, const VertexSet& s, const VertexSet& v_side) {
    VertexSet t(g.n());
    s.for_each([&](int x) { t |= g.row(x); });
    return t &= v_side;
}

bool assign_partners(const Graph& g, const std::vector<int>& order, std::size_t idx, const VertexSet& s,
                     const VertexSet& v_side, VertexSet& blocked) {
    if (idx == order.size()) return true;
    const int x = order[idx];
    VertexSet others = s;
    others.reset(x);
    VertexSet cand = g.row(x) & v_side;
    others.for_each([&](int y) { cand -= g.row(y); });
    cand -= blocked;
    for (int p = cand.first(); p >= 0; p = cand.next(p + 1)) {
        VertexSet saved = blocked;
        blocked.set(p);
        blocked |= g.row(p);
        if (assign_partners(g, order, idx + 1, s, v_side, blocked)) return true;
        blocked = std::move(saved);
    }
    return false;
}

}  // namespace

void for_each_independent_set(const Graph& g, const VertexSet& u, const std::function<void(const VertexSet&)>& fn,
                              const Budget& budget) {
    check_set(g, u);
    IndependentSetWalker walker(g, u, budget.independent_sets, std::numeric_limits<int>::max());
    walker.run(u, [&](const VertexSet& s, const VertexSet&) { fn(s); });
}

std::vector<VertexSet> enum_independent_sets(const Graph& g, const VertexSet& u, const Budget& budget) {
    std::vector<VertexSet> out;
    for_each_independent_set(g, u, [&](const VertexSet& s) { out.push_back(s); }, budget);
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

bool TraceSet::contains(const VertexSet& t) const {
    return std::binary_search(traces.begin(), traces.end(), t, shortlex_less);
}

TraceSet traces(const Graph& g, const VertexSet& u, const Budget& budget) {
    return collect_traces(g, u, std::numeric_limits<int>::max(), budget);
}

TraceSet traces_up_to_size(const Graph& g, const VertexSet& u, int max_size, const Budget& budget) {
    return collect_traces(g, u, max_size, budget);
}

bool enables_induced_matching(const Graph& g, const VertexSet& u, const VertexSet& s) {
    require_independent_subset(g, u, s);
    VertexSet blocked(g.n());
    return assign_partners(g, s.to_vector(), 0, s, u.complement(), blocked);
}

namespace {

class Shrinker {
public:
    Shrinker(const Graph& g, const VertexSet& u) : g_(g), u_(u), v_side_(u.complement()) {}

    VertexSet shrink(VertexSet s, std::vector<ShrinkStep>& steps) const {
        while (true) {
            const int q = max_enabling_size(s);
            if (q == s.count()) return s;
            VertexSet s0 = least_enabling_subset(s, q);
            const int u = (s - s0).first();
            steps.push_back({ShrinkStep::Kind::recombine, s, u, s0});
            VertexSet grown = s0;
            grown.set(u);
            VertexSet s1 = drop_traceless(grown, steps);
            VertexSet s2 = s - grown;
            s = s1 | s2;
        }
    }

    /// Drops vertices with empty individual trace (smallest index first)
    /// until the set enables an induced matching.
    VertexSet drop_traceless(VertexSet s, std::vector<ShrinkStep>& steps) const {
        while (!enables_induced_matching(g_, u_, s)) {
            int dropped = -1;
            for (int x = s.first(); x >= 0 && dropped < 0; x = s.next(x + 1)) {
                VertexSet rest = s;
                rest.reset(x);
                VertexSet individual = (g_.row(x) & v_side_) - trace_of(g_, rest, v_side_);
                if (individual.none()) dropped = x;
            }
            if (dropped < 0)
                throw std::logic_error("non-enabling set with all individual traces non-empty; complement not independent?");
            steps.push_back({ShrinkStep::Kind::eliminate, s, dropped, VertexSet(g_.n())});
            s.reset(dropped);
        }
        return s;
    }

private:
    int max_enabling_size(const VertexSet& s) const {
        auto sub = induced_subgraph(g_, s | v_side_);
        VertexSet local(sub.graph.n());
        for (std::size_t i = 0; i < sub.to_host.size(); ++i)
            if (s.test(sub.to_host[i])) local.set(static_cast<int>(i));
        return max_induced_cut_matching(sub.graph, local).size;
    }

    VertexSet least_enabling_subset(const VertexSet& s, int q) const {
        const std::vector<int> members = s.to_vector();
        const int k = static_cast<int>(members.size());
        std::vector<int> idx(static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            VertexSet cand(g_.n());
            for (int i : idx) cand.set(members[static_cast<std::size_t>(i)]);
            if (enables_induced_matching(g_, u_, cand)) return cand;
            int pos = q - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - q + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < q; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        throw std::logic_error("no enabling subset of the reported maximum size");
    }

    const Graph& g_;
    const VertexSet& u_;
    VertexSet v_side_;
};

}  // namespace

ShrinkResult shrink_to_enabler(const Graph& g, const VertexSet& u, const VertexSet& s) {
    require_independent_subset(g, u, s);
    if (!is_independent(g, u.complement())) throw PreconditionError("complement of U is not independent");
    ShrinkResult res;
    res.input_s = s;
    res.trace = trace_of(g, s, u.complement());
    res.output_s = Shrinker(g, u).shrink(s, res.steps);
    return res;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && out > kMax / base) return kMax;
        out *= base;
    }
    return out;
}

std::uint64_t binomial_prefix_sum(int n, int r) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t sum = 0;
    unsigned __int128 c = 1;
    for (int i = 0; i <= std::min(n, r); ++i) {
        if (i > 0) c = c * static_cast<unsigned>(n - i + 1) / static_cast<unsigned>(i);
        if (c > kMax - sum) return kMax;
        sum += static_cast<std::uint64_t>(c);
    }
    return sum;
}

TraceBoundReport trace_bound_check(const Graph& g, const VertexSet& u, const Budget& budget) {
    check_set(g, u);
    if (!is_independent(g, u.complement())) throw PreconditionError("complement of U is not independent");
    TraceBoundReport rep;
    TraceSet all = traces(g, u, budget);
    rep.trace_count = all.size();
    rep.r = max_induced_cut_matching(g, u, budget).size;
    rep.u_size = u.count();
    rep.n = g.n();
    rep.binomial_bound = binomial_prefix_sum(rep.u_size, rep.r);
    rep.power_bound = saturating_pow(static_cast<std::uint64_t>(rep.n), rep.r + 1);
    rep.within_binomial = rep.trace_count <= rep.binomial_bound;
    rep.within_power = rep.trace_count <= rep.power_bound;
    rep.small_sets_generate = traces_up_to_size(g, u, rep.r, budget).traces == all.traces;
    return rep;
}

int vc_dimension(const TraceSet& ts, const Budget& budget) {
    if (ts.traces.empty()) return 0;
    VertexSet ground = ts.traces.front();
    for (const auto& t : ts.traces) ground |= t;
    const std::vector<int> elems = ground.to_vector();
    const int g = static_cast<int>(elems.size());
    int k_max = 0;
    while (k_max + 1 < 63 && (std::size_t{1} << (k_max + 1)) <= ts.size()) ++k_max;
    k_max = std::min(k_max, g);

    std::uint64_t examined = 0;
    int best = 0;
    for (int k = 1; k <= k_max; ++k) {
        bool found = false;
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (!found) {
            if (++examined > budget.vc_subsets)
                throw BudgetExceeded("VC-dimension search exceeded " + std::to_string(budget.vc_subsets) + " subsets");
            std::unordered_set<std::uint64_t> patterns;
            for (const auto& t : ts.traces) {
                std::uint64_t p = 0;
                for (int i = 0; i < k; ++i)
                    if (t.test(elems[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])])) p |= std::uint64_t{1} << i;
                patterns.insert(p);
            }
            if (patterns.size() == (std::size_t{1} << k)) {
                found = true;
                break;
            }
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == g - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        // shattering is hereditary: no k-set means no larger set either
        if (!found) break;
        best = k;
    }
    return best;
}

}  // namespace mimlab
