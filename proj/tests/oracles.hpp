// Brute-force reference implementations used by the tests. They work on raw
// bitmasks (n <= 20) and share nothing with the library beyond reading the
// edge list of a Graph.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "mimlab/graph.hpp"

namespace oracle {

using Mask = std::uint32_t;

struct Adj {
    int n = 0;
    std::vector<Mask> nb;
    std::vector<std::pair<int, int>> edges;

    explicit Adj(const mimlab::Graph& g) : n(g.n()), nb(static_cast<std::size_t>(g.n()), 0) {
        for (const auto& e : g.edges()) {
            nb[e.u] |= Mask{1} << e.v;
            nb[e.v] |= Mask{1} << e.u;
            edges.emplace_back(e.u, e.v);
        }
    }
    Mask all() const { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
    bool adj(int a, int b) const { return (nb[a] >> b) & 1U; }
};

inline bool in(Mask m, int v) { return (m >> v) & 1U; }

inline Mask to_mask(const mimlab::VertexSet& s) { return static_cast<Mask>(s.mask()); }

enum class Kind { lu, lmim, lsim };

// edge kept in the derived graph for prefix w
inline bool kept(Kind k, Mask w, int a, int b) {
    const bool ia = in(w, a), ib = in(w, b);
    if (k == Kind::lu) return ia || ib;
    if (k == Kind::lmim) return ia != ib;
    return true;
}

// largest induced (w, rest)-matching in the derived graph, by subsets of crossing edges
inline int max_matching(const Adj& g, Mask w, Kind k) {
    std::vector<std::pair<int, int>> cross;
    for (auto [a, b] : g.edges)
        if (in(w, a) != in(w, b)) cross.emplace_back(in(w, a) ? a : b, in(w, a) ? b : a);
    int best = 0;
    const std::size_t m = cross.size();
    // grow by size so the search stops at the first size with no matching
    std::vector<int> idx;
    for (int size = 1; size <= static_cast<int>(m); ++size) {
        bool found = false;
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::vector<std::pair<int, int>> sel;
            for (std::size_t i = 0; i < m; ++i)
                if (pick[i]) sel.push_back(cross[i]);
            bool ok = true;
            Mask used = 0;
            for (auto [a, b] : sel) {
                if (in(used, a) || in(used, b)) ok = false;
                used |= (Mask{1} << a) | (Mask{1} << b);
            }
            for (std::size_t i = 0; ok && i < sel.size(); ++i)
                for (std::size_t j = i + 1; ok && j < sel.size(); ++j)
                    for (int x : {sel[i].first, sel[i].second})
                        for (int y : {sel[j].first, sel[j].second})
                            if (g.adj(x, y) && kept(k, w, x, y)) ok = false;
            if (ok) {
                found = true;
                break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found) break;
        best = size;
    }
    return best;
}

// minimum over all n! orderings of the maximum prefix matching
inline int exact_width(const Adj& g, Kind k) {
    std::map<Mask, int> memo;
    auto pw = [&](Mask w) {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        return memo[w] = max_matching(g, w, k);
    };
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    int best = g.n;
    do {
        int worst = 0;
        Mask w = 0;
        for (int v : perm) {
            w |= Mask{1} << v;
            worst = std::max(worst, pw(w));
            if (worst >= best) break;
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool independent(const Adj& g, Mask s) {
    for (int v = 0; v < g.n; ++v)
        if (in(s, v) && (g.nb[v] & s)) return false;
    return true;
}

inline Mask nbhd(const Adj& g, Mask s) {
    Mask out = 0;
    for (int v = 0; v < g.n; ++v)
        if (in(s, v)) out |= g.nb[v];
    return out & ~s;
}

inline std::set<Mask> traces(const Adj& g, Mask u) {
    std::set<Mask> out;
    for (Mask s = u;; s = (s - 1) & u) {
        if (independent(g, s)) out.insert(nbhd(g, s) & ~u & g.all());
        if (s == 0) break;
    }
    return out;
}

inline bool phi(const Adj& g, Mask truth) {
    for (auto [a, b] : g.edges)
        if (!in(truth, a) && !in(truth, b)) return false;
    return true;
}

// distinct residual functions over extendable assignments to prefix p
inline std::size_t subfunctions(const Adj& g, Mask p) {
    std::vector<int> rest;
    for (int v = 0; v < g.n; ++v)
        if (!in(p, v)) rest.push_back(v);
    std::set<std::vector<bool>> tables;
    for (Mask a = p;; a = (a - 1) & p) {
        std::vector<bool> table;
        bool sat = false;
        for (Mask c = 0; c < (Mask{1} << rest.size()); ++c) {
            Mask truth = a;
            for (std::size_t i = 0; i < rest.size(); ++i)
                if ((c >> i) & 1U) truth |= Mask{1} << rest[i];
            table.push_back(phi(g, truth));
            sat = sat || table.back();
        }
        if (sat) tables.insert(table);
        if (a == 0) break;
    }
    return tables.size();
}

inline std::uint64_t models(const Adj& g) {
    std::uint64_t c = 0;
    for (Mask t = 0; t <= g.all(); ++t) {
        c += phi(g, t);
        if (t == g.all()) break;
    }
    return c;
}

struct ObddSizes {
    std::size_t reduced = 0;
    std::size_t quasi = 0;
};

// sizes from truth-table subfunctions: level i holds the distinct non-false
// subfunctions after fixing the first i variables; a reduced node exists for
// each distinct subfunction that depends on the variable it tests
inline ObddSizes obdd_sizes(const Adj& g, const std::vector<int>& order) {
    const int n = g.n;
    std::vector<bool> full(std::size_t{1} << n);
    for (Mask t = 0; t < (Mask{1} << n); ++t) {
        Mask truth = 0;
        for (int i = 0; i < n; ++i)
            if ((t >> i) & 1U) truth |= Mask{1} << order[static_cast<std::size_t>(i)];
        full[t] = phi(g, truth);
    }
    // bit i of t is variable order[i]; fixing the first i variables = low i bits
    ObddSizes s;
    for (int i = 0; i < n; ++i) {
        std::set<std::vector<bool>> level, reduced;
        for (Mask a = 0; a < (Mask{1} << i); ++a) {
            std::vector<bool> sub;
            for (Mask c = 0; c < (Mask{1} << (n - i)); ++c) sub.push_back(full[a | (c << i)]);
            if (std::none_of(sub.begin(), sub.end(), [](bool b) { return b; })) continue;
            level.insert(sub);
            bool depends = false;
            for (std::size_t c = 0; c < sub.size() && !depends; c += 2) depends = sub[c] != sub[c + 1];
            if (depends) reduced.insert(sub);
        }
        s.quasi += level.size();
        s.reduced += reduced.size();
    }
    s.quasi += 2;
    s.reduced += 2;
    return s;
}

inline ObddSizes min_obdd_sizes(const Adj& g) {
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    ObddSizes best{~std::size_t{0}, ~std::size_t{0}};
    do {
        auto s = obdd_sizes(g, perm);
        best.reduced = std::min(best.reduced, s.reduced);
        best.quasi = std::min(best.quasi, s.quasi);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// some choice of V-partners makes an induced matching with U-ends exactly s
inline bool enables(const Adj& g, Mask u, Mask s) {
    std::vector<int> members;
    for (int v = 0; v < g.n; ++v)
        if (in(s, v)) members.push_back(v);
    std::vector<int> partner(members.size());
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == members.size()) {
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    if (partner[a] == partner[b]) return false;
                    for (int x : {members[a], partner[a]})
                        for (int y : {members[b], partner[b]})
                            if (g.adj(x, y)) return false;
                }
            return true;
        }
        for (int v = 0; v < g.n; ++v) {
            if (in(u, v) || !g.adj(members[i], v)) continue;
            partner[i] = v;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

inline int vc_dimension(const std::set<Mask>& family) {
    Mask ground = 0;
    for (Mask t : family) ground |= t;
    int best = 0;
    for (Mask x = ground;; x = (x - 1) & ground) {
        const int size = std::popcount(x);
        if (size > best) {
            std::set<Mask> seen;
            for (Mask t : family) seen.insert(t & x);
            if (seen.size() == (std::size_t{1} << size)) best = size;
        }
        if (x == 0) break;
    }
    return best;
}

}  // namespace oracle
