#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "divsol/adapters.hpp"
#include "divsol/errors.hpp"
#include "divsol/framework.hpp"
#include "divsol/graph.hpp"
#include "divsol/subset.hpp"

namespace divsol {

// Brute-force ground truth. Everything here enumerates exhaustively and
// fails loudly when an instance is too large; nothing is shared with the
// solvers' search logic, so agreement between the two is evidence.
struct EnumerationBudget {
    std::size_t max_solutions = 5000;
    std::uint64_t max_tuples = 10'000'000;
};

namespace oracle_detail {

inline void record(std::vector<ElementSubset>& out, ElementSubset s,
                   const EnumerationBudget& budget) {
    if (out.size() >= budget.max_solutions)
        throw BudgetExceededError("oracle budget exceeded: more than " +
                                  std::to_string(budget.max_solutions) + " solutions");
    out.push_back(std::move(s));
}

// Is the graph formed by the still-selectable edges (chosen plus all edges
// from `from` on) connected? Cuts off branches that can no longer span.
inline bool can_still_span(const Graph& g, const ElementSubset& chosen, std::size_t from) {
    detail::UnionFind uf(g.vertex_count());
    std::size_t components = g.vertex_count();
    chosen.for_each([&](std::size_t e) {
        if (uf.unite(g.edge(e).u, g.edge(e).v)) --components;
    });
    for (std::size_t e = from; e < g.edge_count(); ++e)
        if (uf.unite(g.edge(e).u, g.edge(e).v)) --components;
    return components <= 1;
}

inline void spanning_tree_rec(const Graph& g, std::size_t from, ElementSubset& chosen,
                              std::vector<ElementSubset>& out,
                              const EnumerationBudget& budget) {
    if (chosen.count() + 1 == g.vertex_count() || g.vertex_count() <= 1) {
        if (is_forest(g, chosen)) record(out, chosen, budget);
        return;
    }
    if (from >= g.edge_count()) return;
    if (g.edge_count() - from < g.vertex_count() - 1 - chosen.count()) return;
    if (!can_still_span(g, chosen, from)) return;
    chosen.set(from);
    if (is_forest(g, chosen)) spanning_tree_rec(g, from + 1, chosen, out, budget);
    chosen.reset(from);
    spanning_tree_rec(g, from + 1, chosen, out, budget);
}

} // namespace oracle_detail

inline std::vector<ElementSubset> enumerate_spanning_trees(const Graph& g,
                                                           const EnumerationBudget& budget = {}) {
    std::vector<ElementSubset> out;
    ElementSubset chosen(g.edge_count());
    oracle_detail::spanning_tree_rec(g, 0, chosen, out, budget);
    return out;
}

inline std::vector<ElementSubset> enumerate_forests(const Graph& g, std::size_t k,
                                                    const EnumerationBudget& budget = {}) {
    std::vector<ElementSubset> out;
    ElementSubset chosen(g.edge_count());
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (chosen.count() == k) {
            oracle_detail::record(out, chosen, budget);
            return;
        }
        if (from >= g.edge_count()) return;
        if (g.edge_count() - from < k - chosen.count()) return;
        chosen.set(from);
        if (is_forest(g, chosen)) self(self, from + 1);
        chosen.reset(from);
        self(self, from + 1);
    };
    rec(rec, 0);
    return out;
}

namespace oracle_detail {

template <typename Record>
inline void path_rec(const Graph& g, std::vector<char>& visited,
                     std::vector<std::size_t>& vertices, std::vector<std::size_t>& edges,
                     std::size_t k, Record&& record_path) {
    if (vertices.size() == k) {
        record_path(vertices, edges);
        return;
    }
    std::size_t v = vertices.back();
    for (const auto& [u, e] : g.neighbors(v)) {
        if (visited[u]) continue;
        visited[u] = 1;
        vertices.push_back(u);
        edges.push_back(e);
        path_rec(g, visited, vertices, edges, k, record_path);
        edges.pop_back();
        vertices.pop_back();
        visited[u] = 0;
    }
}

template <typename Record>
inline void all_k_paths(const Graph& g, std::size_t k, Record&& record_path) {
    if (k == 0) return;
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        visited[v] = 1;
        vertices.push_back(v);
        path_rec(g, visited, vertices, edges, k, record_path);
        vertices.pop_back();
        visited[v] = 0;
    }
}

} // namespace oracle_detail

// Vertex sets of all simple paths on k vertices (each set once).
inline std::vector<ElementSubset> enumerate_k_path_vertex_sets(
    const Graph& g, std::size_t k, const EnumerationBudget& budget = {}) {
    std::set<ElementSubset> seen;
    oracle_detail::all_k_paths(g, k,
                               [&](const std::vector<std::size_t>& vertices,
                                   const std::vector<std::size_t>&) {
                                   ElementSubset s(g.vertex_count());
                                   for (std::size_t v : vertices) s.set(v);
                                   if (seen.insert(std::move(s)).second &&
                                       seen.size() > budget.max_solutions)
                                       throw BudgetExceededError(
                                           "oracle budget exceeded: more than " +
                                           std::to_string(budget.max_solutions) + " solutions");
                               });
    return {seen.begin(), seen.end()};
}

// Edge sets of all simple paths on k vertices (each set once; k = 1 paths
// share the single empty edge set).
inline std::vector<ElementSubset> enumerate_k_path_edge_sets(
    const Graph& g, std::size_t k, const EnumerationBudget& budget = {}) {
    std::set<ElementSubset> seen;
    oracle_detail::all_k_paths(g, k,
                               [&](const std::vector<std::size_t>&,
                                   const std::vector<std::size_t>& edges) {
                                   ElementSubset s(g.edge_count());
                                   for (std::size_t e : edges) s.set(e);
                                   if (seen.insert(std::move(s)).second &&
                                       seen.size() > budget.max_solutions)
                                       throw BudgetExceededError(
                                           "oracle budget exceeded: more than " +
                                           std::to_string(budget.max_solutions) + " solutions");
                               });
    return {seen.begin(), seen.end()};
}

inline std::vector<ElementSubset> enumerate_matchings(const Graph& g, std::size_t k,
                                                      const EnumerationBudget& budget = {}) {
    std::vector<ElementSubset> out;
    ElementSubset chosen(g.edge_count());
    std::vector<char> used(g.vertex_count(), 0);
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (chosen.count() == k) {
            oracle_detail::record(out, chosen, budget);
            return;
        }
        for (std::size_t e = from; e < g.edge_count(); ++e) {
            if (g.edge_count() - e < k - chosen.count()) return;
            const auto& ed = g.edge(e);
            if (used[ed.u] || used[ed.v]) continue;
            used[ed.u] = used[ed.v] = 1;
            chosen.set(e);
            self(self, e + 1);
            chosen.reset(e);
            used[ed.u] = used[ed.v] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<ElementSubset> enumerate_interval_families(
    const IntervalSet& set, std::size_t k, const EnumerationBudget& budget = {}) {
    std::vector<ElementSubset> out;
    const std::size_t n = set.intervals.size();
    ElementSubset chosen(n);
    std::vector<std::size_t> picked;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (picked.size() == k) {
            oracle_detail::record(out, chosen, budget);
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            if (n - i < k - picked.size()) return;
            bool ok = true;
            for (std::size_t j : picked)
                if (!intervals_disjoint(set.intervals[i], set.intervals[j])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            picked.push_back(i);
            chosen.set(i);
            self(self, i + 1);
            chosen.reset(i);
            picked.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Spanning-tree count via the Matrix-Tree theorem: determinant of the
// Laplacian with one row and column removed, computed by fraction-free
// (Bareiss) integer elimination. Second, independent check against the
// enumerator.
inline std::uint64_t spanning_tree_count(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0)
        throw MalformedInputError("spanning trees need at least one vertex");
    if (n == 1) return 1;
    const std::size_t d = n - 1;
    std::vector<std::vector<long long>> a(d, std::vector<long long>(d, 0));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::size_t u = g.edge(e).u, v = g.edge(e).v;
        // drop vertex 0's row and column
        if (u > 0) a[u - 1][u - 1] += 1;
        if (v > 0) a[v - 1][v - 1] += 1;
        if (u > 0 && v > 0) {
            a[u - 1][v - 1] -= 1;
            a[v - 1][u - 1] -= 1;
        }
    }
    long long sign = 1;
    long long prev = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && a[pivot][col] == 0) ++pivot;
        if (pivot == d) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < d; ++i)
            for (std::size_t j = col + 1; j < d; ++j) {
                __int128 num = static_cast<__int128>(a[i][j]) * a[col][col] -
                               static_cast<__int128>(a[i][col]) * a[col][j];
                __int128 q = num / prev; // Bareiss division is exact
                if (q > std::numeric_limits<long long>::max() ||
                    q < std::numeric_limits<long long>::min())
                    throw BudgetExceededError("spanning tree count overflows 64 bits");
                a[i][j] = static_cast<long long>(q);
            }
        prev = a[col][col];
    }
    long long det = sign * a[d - 1][d - 1];
    if (det < 0)
        throw InternalError("Laplacian minor came out negative");
    return static_cast<std::uint64_t>(det);
}

struct OracleOptimum {
    std::uint64_t value = 0;
    std::vector<std::size_t> indices; // non-decreasing positions into the input list
};

// Exact optimum of the measure over all r-multisets of the listed solutions,
// by plain exhaustive recursion (solutions may repeat within a family).
inline OracleOptimum exact_diverse_optimum(const std::vector<ElementSubset>& solutions,
                                           std::size_t r, DiversityMeasure measure,
                                           const EnumerationBudget& budget = {}) {
    if (solutions.empty())
        throw NoSolutionError("no solution of the requested size exists");
    if (r == 0)
        throw MalformedInputError("need at least one solution");
    if (binomial_saturating(solutions.size() + r - 1, r) > budget.max_tuples)
        throw BudgetExceededError("oracle budget exceeded: more than " +
                                  std::to_string(budget.max_tuples) + " candidate families");

    OracleOptimum best;
    bool have_best = false;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from, std::uint64_t sum, std::uint64_t least) -> void {
        if (pick.size() == r) {
            std::uint64_t value =
                r == 1 ? 0 : (measure == DiversityMeasure::Sum ? sum : least);
            if (!have_best || value > best.value) {
                have_best = true;
                best.value = value;
                best.indices = pick;
            }
            return;
        }
        for (std::size_t i = from; i < solutions.size(); ++i) {
            std::uint64_t next_sum = sum;
            std::uint64_t next_least = least;
            for (std::size_t j : pick) {
                std::uint64_t dist = solutions[j].hamming_distance(solutions[i]);
                next_sum += dist;
                next_least = std::min(next_least, dist);
            }
            pick.push_back(i);
            self(self, i, next_sum, next_least);
            pick.pop_back();
        }
    };
    rec(rec, 0, 0, std::numeric_limits<std::uint64_t>::max());
    return best;
}

} // namespace divsol
