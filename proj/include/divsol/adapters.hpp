#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divsol/color_coding.hpp"
#include "divsol/errors.hpp"
#include "divsol/framework.hpp"
#include "divsol/graph.hpp"
#include "divsol/rational.hpp"
#include "divsol/subset.hpp"

namespace divsol {

// ---------------------------------------------------------------------------
// Intervals

struct Interval {
    Rational start;
    Rational end; // closed interval [start, end], start <= end
};

struct IntervalSet {
    std::vector<Interval> intervals; // identity = position in this sequence
};

// One interval per line as "a b" with decimal endpoints; '#' comment lines
// and blank lines are skipped. Identity is line order.
inline IntervalSet parse_intervals(std::istream& in) {
    IntervalSet set;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw MalformedInputError("line " + std::to_string(lineno) +
                                      ": expected 'start end'");
        Interval iv{Rational::parse(tokens[0]), Rational::parse(tokens[1])};
        if (iv.end < iv.start)
            throw MalformedInputError("line " + std::to_string(lineno) +
                                      ": interval ends before it starts");
        set.intervals.push_back(iv);
    }
    return set;
}

// Closed intervals are disjoint only when strictly separated; touching
// endpoints count as a conflict.
inline bool intervals_disjoint(const Interval& a, const Interval& b) {
    return a.end < b.start || b.end < a.start;
}

inline bool is_disjoint_interval_family(const IntervalSet& set, const ElementSubset& s) {
    if (s.universe() != set.intervals.size())
        throw MalformedInputError("subset universe does not match the interval count");
    std::vector<std::size_t> chosen = s.indices();
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            if (!intervals_disjoint(set.intervals[chosen[i]], set.intervals[chosen[j]]))
                return false;
    return true;
}

// Size of a largest pairwise-disjoint subfamily (earliest-finish greedy,
// exact for interval scheduling).
inline std::size_t max_disjoint_intervals(const IntervalSet& set) {
    std::vector<std::size_t> order(set.intervals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return set.intervals[a].end < set.intervals[b].end;
    });
    std::size_t count = 0;
    bool any = false;
    Rational last_end;
    for (std::size_t i : order) {
        if (any && !(set.intervals[i].start > last_end)) continue;
        any = true;
        last_end = set.intervals[i].end;
        ++count;
    }
    return count;
}

// Earliest-finish table of the job-interval-selection DP: for each color set
// C, the least possible maximum right endpoint of a C-colorful pairwise-
// disjoint family, with one chosen interval per entry to rebuild witnesses.
// The empty set acts as a "minus infinity" base handled out of band.
struct JISPTable {
    std::size_t palette = 0;
    std::size_t max_size = 0;
    std::vector<std::size_t> interval_color;
    std::unordered_map<ColorMask, std::size_t> row_of;
    std::vector<int> chosen;      // interval index, -1 when infeasible
    std::vector<Rational> finish; // meaningful only where chosen >= 0

    bool feasible(ColorMask colors) const {
        auto it = row_of.find(colors);
        return it != row_of.end() && chosen[it->second] >= 0;
    }

    std::optional<Rational> finish_time(ColorMask colors) const {
        auto it = row_of.find(colors);
        if (it == row_of.end() || chosen[it->second] < 0) return std::nullopt;
        return finish[it->second];
    }

    ElementSubset witness(ColorMask colors) const {
        ElementSubset family(interval_color.size());
        ColorMask current = colors;
        while (current) {
            auto it = row_of.find(current);
            if (it == row_of.end() || chosen[it->second] < 0)
                throw InternalError("witness requested for an infeasible color set");
            std::size_t idx = static_cast<std::size_t>(chosen[it->second]);
            family.set(idx);
            current &= ~color_bit(interval_color[idx]);
        }
        return family;
    }
};

// table(C) = min over colors l of C and intervals I of color l starting
// strictly after table(C without l) of I's right endpoint. Candidates are
// scanned in (color, interval index) order and replaced only on strictly
// smaller endpoints, so witnesses are deterministic.
inline JISPTable jisp_table(const IntervalSet& set, const Coloring& coloring,
                            std::size_t max_size) {
    detail::check_coloring(coloring, ColorTarget::Element, set.intervals.size());
    if (max_size > coloring.palette)
        throw MalformedInputError("family size exceeds the palette");
    JISPTable table;
    table.palette = coloring.palette;
    table.max_size = max_size;
    table.interval_color = coloring.color;

    std::vector<std::vector<std::size_t>> by_color(coloring.palette);
    for (std::size_t i = 0; i < set.intervals.size(); ++i)
        by_color[coloring.color[i]].push_back(i);

    std::vector<ColorMask> masks;
    for (std::size_t s = 1; s <= max_size; ++s)
        for_each_color_set(coloring.palette, s, [&](ColorMask m) { masks.push_back(m); });
    table.row_of.reserve(masks.size());
    for (std::size_t row = 0; row < masks.size(); ++row) table.row_of.emplace(masks[row], row);
    table.chosen.assign(masks.size(), -1);
    table.finish.assign(masks.size(), Rational());

    for (std::size_t row = 0; row < masks.size(); ++row) {
        ColorMask mask = masks[row];
        int best_interval = -1;
        Rational best_finish;
        for (std::size_t color = 0; color < coloring.palette; ++color) {
            if (!(mask & color_bit(color))) continue;
            ColorMask rest = mask & ~color_bit(color);
            std::optional<Rational> bound;
            if (rest) {
                std::size_t rest_row = table.row_of.at(rest);
                if (table.chosen[rest_row] < 0) continue;
                bound = table.finish[rest_row];
            }
            for (std::size_t i : by_color[color]) {
                if (bound && !(set.intervals[i].start > *bound)) continue;
                if (best_interval < 0 || set.intervals[i].end < best_finish) {
                    best_interval = static_cast<int>(i);
                    best_finish = set.intervals[i].end;
                }
            }
        }
        table.chosen[row] = best_interval;
        if (best_interval >= 0) table.finish[row] = best_finish;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Plain path and matching search (deterministic existence checks)

namespace detail {

inline bool extend_simple_path(const Graph& g, std::vector<char>& visited, std::size_t v,
                               std::size_t remaining) {
    if (remaining == 0) return true;
    for (const auto& [u, e] : g.neighbors(v)) {
        (void)e;
        if (visited[u]) continue;
        visited[u] = 1;
        if (extend_simple_path(g, visited, u, remaining - 1)) return true;
        visited[u] = 0;
    }
    return false;
}

} // namespace detail

// Does g contain a simple path on exactly k vertices?
inline bool has_k_path(const Graph& g, std::size_t k) {
    if (k == 0) return false;
    if (k == 1) return g.vertex_count() >= 1;
    std::vector<char> visited(g.vertex_count(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        visited[v] = 1;
        if (detail::extend_simple_path(g, visited, v, k - 1)) return true;
        visited[v] = 0;
    }
    return false;
}

// Is there a simple path visiting exactly the vertices of X?
inline bool vertex_set_spans_path(const Graph& g, const ElementSubset& X) {
    if (X.universe() != g.vertex_count())
        throw MalformedInputError("subset universe does not match the vertex count");
    std::size_t size = X.count();
    if (size == 0) return false;
    if (size == 1) return true;
    std::vector<char> blocked(g.vertex_count(), 1);
    X.for_each([&](std::size_t v) { blocked[v] = 0; });
    bool found = false;
    X.for_each([&](std::size_t start) {
        if (found) return;
        blocked[start] = 1;
        if (detail::extend_simple_path(g, blocked, start, size - 1)) found = true;
        blocked[start] = 0;
    });
    return found;
}

namespace detail {

inline bool extend_matching(const Graph& g, std::vector<char>& used, std::size_t from,
                            std::size_t remaining) {
    if (remaining == 0) return true;
    for (std::size_t e = from; e < g.edge_count(); ++e) {
        if (g.edge_count() - e < remaining) return false;
        const auto& ed = g.edge(e);
        if (used[ed.u] || used[ed.v]) continue;
        used[ed.u] = used[ed.v] = 1;
        if (extend_matching(g, used, e + 1, remaining - 1)) return true;
        used[ed.u] = used[ed.v] = 0;
    }
    return false;
}

} // namespace detail

inline bool has_k_matching(const Graph& g, std::size_t k) {
    std::vector<char> used(g.vertex_count(), 0);
    return detail::extend_matching(g, used, 0, k);
}

// ---------------------------------------------------------------------------
// Checkers

// Vertex-variant diverse k-paths: solutions are the vertex SETS of k-paths;
// one path table per coloring answers every candidate color set.
inline ColorfulChecker kpath_vertex_checker(const Graph& g, std::size_t k) {
    if (k == 0)
        throw MalformedInputError("paths need at least one vertex");
    ColorfulChecker checker;
    checker.problem_name = std::to_string(k) + "-path";
    checker.universe_size = g.vertex_count();
    checker.target = ColorTarget::Vertex;
    checker.find_colorful = [&g, k](const Coloring& coloring, ColorMask C,
                                    std::uint64_t) -> std::optional<ElementSubset> {
        PathTable table = colorful_path_dp(g, coloring, k);
        auto v = table.first_reachable_vertex(C);
        if (!v) return std::nullopt;
        ElementSubset vertices(g.vertex_count());
        for (std::size_t u : table.witness(C, *v)) vertices.set(u);
        return vertices;
    };
    checker.enumerate_feasible = [&g](const Coloring& coloring, std::size_t size,
                                      std::uint64_t) {
        PathTable table = colorful_path_dp(g, coloring, size);
        std::vector<FeasibleEntry> entries;
        for_each_color_set(coloring.palette, size, [&](ColorMask C) {
            auto v = table.first_reachable_vertex(C);
            if (!v) return;
            ElementSubset vertices(g.vertex_count());
            for (std::size_t u : table.witness(C, *v)) vertices.set(u);
            entries.push_back({C, std::move(vertices)});
        });
        return entries;
    };
    checker.predicate = [&g, k](const ElementSubset& X) {
        return X.count() == k && vertex_set_spans_path(g, X);
    };
    checker.exists_solution = [&g, k]() { return has_k_path(g, k); };
    return checker;
}

// Edge-variant diverse k-paths: solutions are the edge SETS of k-paths
// (k - 1 edges). Feasibility of an edge color set D is decided by nested
// vertex color coding: `inner_trials` random vertex colorings with palette
// k, each answering all D at once through the joint table.
inline ColorfulChecker kpath_edge_checker(const Graph& g, std::size_t k,
                                          std::size_t inner_trials) {
    if (k < 2)
        throw MalformedInputError("edge-variant paths need at least two vertices");
    if (inner_trials == 0)
        throw MalformedInputError("need at least one inner trial");
    ColorfulChecker checker;
    checker.problem_name = std::to_string(k) + "-path";
    checker.universe_size = g.edge_count();
    checker.target = ColorTarget::Edge;
    checker.find_colorful = [&g, k, inner_trials](
                                const Coloring& edge_coloring, ColorMask D,
                                std::uint64_t seed) -> std::optional<ElementSubset> {
        std::vector<int> remap(edge_coloring.palette, -1);
        int dense = 0;
        for (std::size_t col = 0; col < edge_coloring.palette; ++col)
            if (D & color_bit(col)) remap[col] = dense++;
        for (std::size_t t = 0; t < inner_trials; ++t) {
            Coloring vertex_coloring = random_coloring(ColorTarget::Vertex, g.vertex_count(),
                                                       k, trial_seed(seed, t));
            EdgePathTable table =
                edge_colorful_path_table(g, vertex_coloring, edge_coloring, remap, k - 1);
            auto v = table.first_reachable_vertex(full_color_mask(k), full_color_mask(k - 1));
            if (!v) continue;
            ElementSubset edges(g.edge_count());
            for (std::size_t e :
                 table.witness(g, full_color_mask(k), full_color_mask(k - 1), *v).edges)
                edges.set(e);
            return edges;
        }
        return std::nullopt;
    };
    checker.enumerate_feasible = [&g, k, inner_trials](const Coloring& edge_coloring,
                                                       std::size_t size, std::uint64_t seed) {
        if (size + 1 != k)
            throw InternalError("edge-variant solution size must be k - 1");
        std::vector<int> identity(edge_coloring.palette);
        std::iota(identity.begin(), identity.end(), 0);
        std::unordered_map<ColorMask, ElementSubset> found;
        const std::uint64_t total =
            binomial_saturating(edge_coloring.palette, size);
        for (std::size_t t = 0; t < inner_trials && found.size() < total; ++t) {
            Coloring vertex_coloring = random_coloring(ColorTarget::Vertex, g.vertex_count(),
                                                       k, trial_seed(seed, t));
            EdgePathTable table = edge_colorful_path_table(g, vertex_coloring, edge_coloring,
                                                           identity, edge_coloring.palette);
            for_each_color_set(edge_coloring.palette, size, [&](ColorMask D) {
                if (found.count(D)) return;
                auto v = table.first_reachable_vertex(full_color_mask(k), D);
                if (!v) return;
                ElementSubset edges(g.edge_count());
                for (std::size_t e : table.witness(g, full_color_mask(k), D, *v).edges)
                    edges.set(e);
                found.emplace(D, std::move(edges));
            });
        }
        std::vector<FeasibleEntry> entries;
        for_each_color_set(edge_coloring.palette, size, [&](ColorMask D) {
            auto it = found.find(D);
            if (it != found.end()) entries.push_back({D, it->second});
        });
        return entries;
    };
    checker.predicate = [&g, k](const ElementSubset& edges) { return is_k_path(g, edges, k); };
    checker.exists_solution = [&g, k]() { return has_k_path(g, k); };
    return checker;
}

// Matchings with exactly one edge per color of C, by color-ordered
// backtracking with a remaining-color availability prune.
inline ColorfulChecker colorful_matching_checker(const Graph& g, std::size_t k) {
    if (k == 0)
        throw MalformedInputError("matchings need at least one edge");
    ColorfulChecker checker;
    checker.problem_name = "matching of size " + std::to_string(k);
    checker.universe_size = g.edge_count();
    checker.target = ColorTarget::Edge;
    checker.find_colorful = [&g](const Coloring& edge_coloring, ColorMask C,
                                 std::uint64_t) -> std::optional<ElementSubset> {
        std::vector<std::size_t> colors;
        for (std::size_t col = 0; col < edge_coloring.palette; ++col)
            if (C & color_bit(col)) colors.push_back(col);
        std::vector<std::vector<std::size_t>> by_color(edge_coloring.palette);
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            by_color[edge_coloring.color[e]].push_back(e);

        std::vector<char> used(g.vertex_count(), 0);
        ElementSubset matching(g.edge_count());
        auto available = [&](std::size_t color) {
            for (std::size_t e : by_color[color]) {
                const auto& ed = g.edge(e);
                if (!used[ed.u] && !used[ed.v]) return true;
            }
            return false;
        };
        std::function<bool(std::size_t)> search = [&](std::size_t i) {
            for (std::size_t j = i; j < colors.size(); ++j)
                if (!available(colors[j])) return false;
            if (i == colors.size()) return true;
            for (std::size_t e : by_color[colors[i]]) {
                const auto& ed = g.edge(e);
                if (used[ed.u] || used[ed.v]) continue;
                used[ed.u] = used[ed.v] = 1;
                matching.set(e);
                if (search(i + 1)) return true;
                matching.reset(e);
                used[ed.u] = used[ed.v] = 0;
            }
            return false;
        };
        if (!search(0)) return std::nullopt;
        return matching;
    };
    checker.predicate = [&g, k](const ElementSubset& edges) {
        return edges.count() == k && is_matching(g, edges);
    };
    checker.exists_solution = [&g, k]() { return has_k_matching(g, k); };
    return checker;
}

// Pairwise-disjoint interval families with one interval per color of C,
// answered by the earliest-finish table.
inline ColorfulChecker jisp_checker(const IntervalSet& set, std::size_t k) {
    if (k == 0)
        throw MalformedInputError("interval families need at least one interval");
    ColorfulChecker checker;
    checker.problem_name = "family of " + std::to_string(k) + " disjoint intervals";
    checker.universe_size = set.intervals.size();
    checker.target = ColorTarget::Element;
    checker.find_colorful = [&set, k](const Coloring& coloring, ColorMask C,
                                      std::uint64_t) -> std::optional<ElementSubset> {
        JISPTable table = jisp_table(set, coloring, k);
        if (!table.feasible(C)) return std::nullopt;
        return table.witness(C);
    };
    checker.enumerate_feasible = [&set](const Coloring& coloring, std::size_t size,
                                        std::uint64_t) {
        JISPTable table = jisp_table(set, coloring, size);
        std::vector<FeasibleEntry> entries;
        for_each_color_set(coloring.palette, size, [&](ColorMask C) {
            if (table.feasible(C)) entries.push_back({C, table.witness(C)});
        });
        return entries;
    };
    checker.predicate = [&set, k](const ElementSubset& family) {
        return family.count() == k && is_disjoint_interval_family(set, family);
    };
    checker.exists_solution = [&set, k]() { return max_disjoint_intervals(set) >= k; };
    return checker;
}

// ---------------------------------------------------------------------------
// Problem entry points

enum class PathVariant { Vertex, Edge };

// r paths on k vertices maximizing the diversity of their vertex sets
// (Vertex variant) or edge sets (Edge variant).
inline SolutionFamily diverse_kpaths(const Graph& g, std::size_t k, std::size_t r,
                                     DiversityMeasure measure, PathVariant variant,
                                     const TrialPlan& plan) {
    if (k == 0)
        throw MalformedInputError("paths need at least one vertex");
    if (variant == PathVariant::Vertex) {
        ColorfulChecker checker = kpath_vertex_checker(g, k);
        return diverse_solve(checker, k, r, measure, plan);
    }
    if (k == 1) {
        // A 1-path has an empty edge set; every family evaluates to 0.
        if (r == 0)
            throw MalformedInputError("need at least one solution");
        if (g.vertex_count() == 0)
            throw NoSolutionError("no 1-path exists");
        SolutionFamily out;
        out.solutions.assign(r, ElementSubset(g.edge_count()));
        out.measure = measure;
        return out;
    }
    // Nested randomization: split the failure budget between the outer edge
    // colorings and the inner vertex colorings of each feasibility check.
    TrialPlan outer = plan;
    std::size_t inner_trials;
    if (plan.trial_override) {
        inner_trials = trial_count(k, plan.delta / 2);
    } else {
        outer.delta = plan.delta / 2;
        inner_trials = trial_count(k, plan.delta / 2);
    }
    ColorfulChecker checker = kpath_edge_checker(g, k, inner_trials);
    return diverse_solve(checker, k - 1, r, measure, outer);
}

inline SolutionFamily diverse_matchings(const Graph& g, std::size_t k, std::size_t r,
                                        DiversityMeasure measure, const TrialPlan& plan) {
    ColorfulChecker checker = colorful_matching_checker(g, k);
    return diverse_solve(checker, k, r, measure, plan);
}

inline SolutionFamily diverse_intervals(const IntervalSet& set, std::size_t k, std::size_t r,
                                        DiversityMeasure measure, const TrialPlan& plan) {
    ColorfulChecker checker = jisp_checker(set, k);
    return diverse_solve(checker, k, r, measure, plan);
}

} // namespace divsol
