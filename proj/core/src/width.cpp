#include "mimlab/width.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "matching_search.hpp"

namespace mimlab {

std::string_view to_string(WidthVariant v) {
    switch (v) {
        case WidthVariant::lu: return "lu";
        case WidthVariant::lmim: return "lmim";
        case WidthVariant::lsim: return "lsim";
    }
    return "?";
}

WidthVariant parse_width_variant(std::string_view text) {
    if (text == "lu") return WidthVariant::lu;
    if (text == "lmim") return WidthVariant::lmim;
    if (text == "lsim") return WidthVariant::lsim;
    throw std::invalid_argument("unknown width variant: " + std::string(text));
}

VertexOrdering::VertexOrdering(std::vector<int> perm, int n) : perm_(std::move(perm)) {
    if (static_cast<int>(perm_.size()) != n)
        throw PreconditionError("ordering has " + std::to_string(perm_.size()) + " entries, expected " +
                                std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : perm_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw PreconditionError("ordering is not a permutation (bad or repeated vertex " + std::to_string(v + 1) +
                                    ")");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

VertexOrdering VertexOrdering::identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return VertexOrdering(std::move(p), n);
}

VertexSet VertexOrdering::prefix(int k) const {
    VertexSet s(size());
    for (int i = 0; i < k; ++i) s.set(perm_[static_cast<std::size_t>(i)]);
    return s;
}

Graph derived_graph(const Graph& g, const VertexSet& w, WidthVariant variant) {
    switch (variant) {
        case WidthVariant::lu: return upper_subgraph(g, w);
        case WidthVariant::lmim: return cut_graph(g, w);
        case WidthVariant::lsim: check_set(g, w); return g;
    }
    return g;
}

int prefix_width(const Graph& g, const VertexSet& w, WidthVariant variant, const Budget& budget) {
    return max_induced_cut_matching(derived_graph(g, w, variant), w, budget).size;
}

OrderingWidth width_of_ordering(const Graph& g, const VertexOrdering& pi, WidthVariant variant, const Budget& budget) {
    if (pi.size() != g.n()) throw PreconditionError("ordering size does not match graph");
    OrderingWidth out;
    VertexSet w(g.n());
    for (int i = 0; i < g.n(); ++i) {
        w.set(pi[i]);
        int r = prefix_width(g, w, variant, budget);
        out.per_prefix.push_back(r);
        out.value = std::max(out.value, r);
    }
    return out;
}

namespace {

/// Prefix width on mask adjacency (n <= 64) reporting max(floor, width).
int prefix_width_mask(const std::vector<std::uint64_t>& adj, int n, std::uint64_t w, WidthVariant variant, int floor,
                      std::uint64_t budget) {
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t comp = all & ~w;
    std::vector<Edge> cross;
    for (std::uint64_t a = w; a; a &= a - 1) {
        int u = std::countr_zero(a);
        for (std::uint64_t b = adj[static_cast<std::size_t>(u)] & comp; b; b &= b - 1)
            cross.push_back({u, std::countr_zero(b)});
    }
    auto in_w = [w](int x) { return (w >> x) & 1U; };
    auto adjacent = [&](int a, int b) {
        if (!((adj[static_cast<std::size_t>(a)] >> b) & 1U)) return false;
        switch (variant) {
            case WidthVariant::lu: return in_w(a) || in_w(b);
            case WidthVariant::lmim: return in_w(a) != in_w(b);
            case WidthVariant::lsim: return true;
        }
        return true;
    };
    auto result = detail::search_induced_matching(n, cross, adjacent, floor, budget);
    return std::max(floor, static_cast<int>(result.best.size()));
}

WidthReport finish_report(const Graph& g, WidthVariant variant, VertexOrdering witness, const Budget& budget,
                          bool exact) {
    WidthReport rep;
    rep.variant = variant;
    auto w = width_of_ordering(g, witness, variant, budget);
    rep.value = w.value;
    rep.per_prefix = std::move(w.per_prefix);
    rep.witness = std::move(witness);
    rep.exact = exact;
    return rep;
}

}  // namespace

WidthReport exact_width(const Graph& g, WidthVariant variant, const Budget& budget) {
    const int n = g.n();
    if (n > budget.max_dp_vertices)
        throw BudgetExceeded("exact width needs a 2^" + std::to_string(n) + " table; limit is n <= " +
                             std::to_string(budget.max_dp_vertices));
    if (n == 0) return WidthReport{variant, 0, VertexOrdering{}, {}, true};
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = g.row(v).mask();

    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint8_t> f(std::size_t{1} << n, 0);
    // Processing masks in increasing numeric order visits every subset after
    // all of its proper subsets.
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        int best_removal = 255;
        for (std::uint64_t b = mask; b; b &= b - 1) {
            int v = std::countr_zero(b);
            best_removal = std::min<int>(best_removal, f[mask & ~(std::uint64_t{1} << v)]);
        }
        f[mask] = static_cast<std::uint8_t>(
            prefix_width_mask(adj, n, mask, variant, best_removal, budget.matching_nodes));
    }

    std::vector<int> rev;
    std::uint64_t mask = full;
    while (mask) {
        for (std::uint64_t b = mask; b; b &= b - 1) {
            int v = std::countr_zero(b);
            if (f[mask & ~(std::uint64_t{1} << v)] <= f[mask]) {
                rev.push_back(v);
                mask &= ~(std::uint64_t{1} << v);
                break;
            }
        }
    }
    std::reverse(rev.begin(), rev.end());
    WidthReport rep = finish_report(g, variant, VertexOrdering(std::move(rev), n), budget, true);
    if (rep.value != f[full]) throw std::logic_error("exact width witness disagrees with the subset table");
    return rep;
}

WidthReport heuristic_width_upper(const Graph& g, WidthVariant variant, std::uint64_t seed, std::uint64_t budget,
                                  const Budget& limits) {
    const int n = g.n();
    if (n == 0) return WidthReport{variant, 0, VertexOrdering{}, {}, false};
    std::mt19937_64 rng(seed);
    std::uint64_t evaluations = 0;

    auto score = [](const std::vector<int>& widths) {
        int mx = 0;
        long long sum = 0;
        for (int r : widths) {
            mx = std::max(mx, r);
            sum += r;
        }
        return std::pair<int, long long>{mx, sum};
    };

    std::vector<int> best_perm;
    std::pair<int, long long> best_score{n + 1, 0};

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    bool first_round = true;
    while (first_round || evaluations < budget) {
        if (!first_round) {
            // Fisher-Yates with raw engine output keeps restarts identical
            // across standard library implementations.
            for (int i = n - 1; i > 0; --i)
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng() % (i + 1))]);
        }
        first_round = false;
        VertexOrdering pi(perm, n);
        std::vector<int> widths = width_of_ordering(g, pi, variant, limits).per_prefix;
        evaluations += static_cast<std::uint64_t>(n);
        auto cur = score(widths);
        bool improved = true;
        while (improved && evaluations < budget) {
            improved = false;
            for (int i = 0; i + 1 < n && evaluations < budget; ++i) {
                // Swapping positions i and i+1 changes only the prefix of length i+1.
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]);
                VertexSet w(n);
                for (int j = 0; j <= i; ++j) w.set(perm[static_cast<std::size_t>(j)]);
                int old = widths[static_cast<std::size_t>(i)];
                widths[static_cast<std::size_t>(i)] = prefix_width(g, w, variant, limits);
                ++evaluations;
                auto cand = score(widths);
                if (cand < cur) {
                    cur = cand;
                    improved = true;
                } else {
                    widths[static_cast<std::size_t>(i)] = old;
                    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]);
                }
            }
        }
        if (cur < best_score) {
            best_score = cur;
            best_perm = perm;
        }
    }
    return finish_report(g, variant, VertexOrdering(best_perm, n), limits, false);
}

}  // namespace mimlab
