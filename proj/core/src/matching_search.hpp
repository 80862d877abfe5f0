#pragma once

// Branch and bound for maximum induced matchings over a fixed list of
// crossing edges. Shared by graph.cpp and the width dynamic program.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mimlab/bitset.hpp"
#include "mimlab/errors.hpp"
#include "mimlab/graph.hpp"

namespace mimlab::detail {

/// 64-bit set exposing the Bitset member names the search uses.
struct Mask64 {
    std::uint64_t bits = 0;
    bool none() const { return bits == 0; }
    int count() const { return std::popcount(bits); }
    int first() const { return bits ? std::countr_zero(bits) : -1; }
    void set(int i) { bits |= std::uint64_t{1} << i; }
    void reset(int i) { bits &= ~(std::uint64_t{1} << i); }
    Mask64& operator-=(const Mask64& o) {
        bits &= ~o.bits;
        return *this;
    }
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t w = bits; w; w &= w - 1) fn(std::countr_zero(w));
    }
};

struct SearchResult {
    /// Largest matching found that is strictly above the floor; empty when the
    /// maximum does not exceed the floor.
    std::vector<int> best;
    std::uint64_t nodes = 0;
};

template <typename Cand, typename Vert>
class InducedMatchingSearch {
public:
    InducedMatchingSearch(const std::vector<Edge>& cross, std::vector<Cand> conflicts, Vert empty_vertices, int floor,
                          std::uint64_t budget)
        : cross_(cross),
          conflicts_(std::move(conflicts)),
          empty_vertices_(std::move(empty_vertices)),
          floor_(floor),
          budget_(budget) {}

    SearchResult run(Cand all) {
        std::vector<int> chosen;
        dfs(std::move(all), chosen);
        return {best_, nodes_};
    }

private:
    int target() const { return std::max(floor_, static_cast<int>(best_.size())); }

    int bound(const Cand& cand) const {
        int c = cand.count();
        if (c <= 1) return c;
        Vert us = empty_vertices_, vs = empty_vertices_;
        cand.for_each([&](int i) {
            us.set(cross_[static_cast<std::size_t>(i)].u);
            vs.set(cross_[static_cast<std::size_t>(i)].v);
        });
        return std::min({c, us.count(), vs.count()});
    }

    void dfs(Cand cand, std::vector<int>& chosen) {
        if (++nodes_ > budget_)
            throw BudgetExceeded("induced matching search exceeded " + std::to_string(budget_) + " branch nodes");
        const int cur = static_cast<int>(chosen.size());
        if (cand.none()) {
            if (cur > target()) best_ = chosen;
            return;
        }
        if (cur + cand.count() <= target()) return;
        if (cur + bound(cand) <= target()) return;
        const int i = cand.first();
        Cand with = cand;
        with.reset(i);
        with -= conflicts_[static_cast<std::size_t>(i)];
        chosen.push_back(i);
        dfs(std::move(with), chosen);
        chosen.pop_back();
        cand.reset(i);
        dfs(std::move(cand), chosen);
    }

    const std::vector<Edge>& cross_;
    std::vector<Cand> conflicts_;
    Vert empty_vertices_;
    int floor_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> best_;
};

/// Two crossing edges conflict when they share an endpoint or any endpoint
/// of one is adjacent to an endpoint of the other.
template <typename Adjacent>
bool edges_conflict(const Edge& a, const Edge& b, Adjacent&& adjacent) {
    if (a.u == b.u || a.v == b.v || a.u == b.v || a.v == b.u) return true;
    return adjacent(a.u, b.u) || adjacent(a.u, b.v) || adjacent(a.v, b.u) || adjacent(a.v, b.v);
}

template <typename Cand, typename Vert, typename MakeCand, typename Adjacent>
SearchResult search_with(const std::vector<Edge>& cross, MakeCand make_cand, Vert empty_vertices, Adjacent&& adjacent,
                         int floor, std::uint64_t budget) {
    const int k = static_cast<int>(cross.size());
    std::vector<Cand> conflicts(static_cast<std::size_t>(k), make_cand());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (edges_conflict(cross[static_cast<std::size_t>(i)], cross[static_cast<std::size_t>(j)], adjacent)) {
                conflicts[static_cast<std::size_t>(i)].set(j);
                conflicts[static_cast<std::size_t>(j)].set(i);
            }
    Cand all = make_cand();
    for (int i = 0; i < k; ++i) all.set(i);
    InducedMatchingSearch<Cand, Vert> search(cross, std::move(conflicts), std::move(empty_vertices), floor, budget);
    return search.run(std::move(all));
}

/// Maximum induced matching among `cross` (edges sorted lexicographically)
/// in a graph on n vertices given by `adjacent`. Only matchings larger than
/// `floor` are reported.
template <typename Adjacent>
SearchResult search_induced_matching(int n, const std::vector<Edge>& cross, Adjacent&& adjacent, int floor,
                                     std::uint64_t budget) {
    if (static_cast<int>(cross.size()) <= floor) return {};
    const int k = static_cast<int>(cross.size());
    if (n <= 64) {
        if (k <= 64) return search_with<Mask64>(cross, [] { return Mask64{}; }, Mask64{}, adjacent, floor, budget);
        return search_with<Bitset>(cross, [k] { return Bitset(k); }, Mask64{}, adjacent, floor, budget);
    }
    if (k <= 64) return search_with<Mask64>(cross, [] { return Mask64{}; }, Bitset(n), adjacent, floor, budget);
    return search_with<Bitset>(cross, [k] { return Bitset(k); }, Bitset(n), adjacent, floor, budget);
}

}  // namespace mimlab::detail
