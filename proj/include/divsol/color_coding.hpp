#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divsol/errors.hpp"
#include "divsol/graph.hpp"
#include "divsol/subset.hpp"

namespace divsol {

enum class ColorTarget { Vertex, Edge, Element };

// Color sets live in a 64-bit mask; palettes beyond 64 colors are refused
// up front (they would blow every search budget anyway).
using ColorMask = std::uint64_t;

inline ColorMask color_bit(std::size_t color) { return ColorMask{1} << color; }

inline ColorMask full_color_mask(std::size_t palette) {
    return palette >= 64 ? ~ColorMask{0} : (ColorMask{1} << palette) - 1;
}

struct Coloring {
    ColorTarget target = ColorTarget::Element;
    std::size_t palette = 1;
    std::vector<std::size_t> color; // element index -> color in [0, palette)
};

namespace detail {

inline void check_coloring(const Coloring& c, ColorTarget target, std::size_t element_count) {
    if (c.target != target)
        throw MalformedInputError("coloring targets the wrong element kind");
    if (c.color.size() != element_count)
        throw MalformedInputError("coloring size does not match the element count");
    if (c.palette == 0 || c.palette > 64)
        throw BudgetExceededError("palette size must be between 1 and 64");
    for (std::size_t col : c.color)
        if (col >= c.palette)
            throw MalformedInputError("color outside the palette");
}

} // namespace detail

// splitmix64 finalizer; used to spread trial indices into seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Seed of the t-th trial under a base seed. Also used to derive the inner
// trial seeds of nested randomizations from an outer trial's seed.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) {
    return mix64(base + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(trial) + 1));
}

// Uniform draw from [0, bound) by rejection; avoids the implementation-
// defined std::uniform_int_distribution so identical seeds give identical
// colorings on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0)
        throw InternalError("uniform draw from an empty range");
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

inline Coloring random_coloring(ColorTarget target, std::size_t element_count,
                                std::size_t palette, std::uint64_t seed) {
    if (palette == 0 || palette > 64)
        throw BudgetExceededError("palette size must be between 1 and 64");
    Coloring c{target, palette, std::vector<std::size_t>(element_count)};
    std::mt19937_64 rng(seed);
    for (std::size_t& col : c.color)
        col = static_cast<std::size_t>(uniform_below(rng, palette));
    return c;
}

// Number of independent colorings that drive the miss probability for one
// fixed solution below delta, using the conservative per-trial success bound
// e^{-palette}: ceil(e^palette * ln(1/delta)).
inline std::size_t trial_count(std::size_t palette, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw MalformedInputError("failure budget must lie strictly between 0 and 1");
    double raw = std::ceil(std::exp(static_cast<double>(palette)) * std::log(1.0 / delta));
    if (!(raw >= 1.0)) return 1;
    if (raw >= 9.0e18) return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(raw);
}

struct TrialPlan {
    std::uint64_t seed = 0;
    double delta = 0.01;
    std::optional<std::size_t> trial_override;
    std::size_t threads = 1;                       // 0 behaves as 1
    std::uint64_t budget_sets = 1'000'000;         // cap on candidate color sets
    std::uint64_t budget_tuples = 100'000'000;     // cap on candidate r-multisets

    std::size_t trials_for(std::size_t palette) const {
        return trial_override ? *trial_override : trial_count(palette, delta);
    }
};

// Visit every subset of [palette] with exactly `size` colors in increasing
// numeric order (Gosper's hack).
template <typename F>
void for_each_color_set(std::size_t palette, std::size_t size, F&& f) {
    if (size > palette || palette > 64) return;
    if (size == 0) {
        f(ColorMask{0});
        return;
    }
    const ColorMask top = full_color_mask(palette);
    ColorMask m = full_color_mask(size);
    for (;;) {
        f(m);
        ColorMask low = m & (~m + 1);
        ColorMask carry = m + low;
        if (carry < m || carry > top) break; // wrapped or left the palette
        m = (((m ^ carry) >> 2) / low) | carry;
        if (m > top) break;
    }
}

// Reachability table of the colorful-path dynamic program. Entry (C, v) says
// whether some simple path ends at v using each color of C exactly once;
// one predecessor per entry rebuilds a witness path.
struct PathTable {
    std::size_t palette = 0;
    std::size_t max_size = 0;
    std::size_t vertex_count = 0;
    std::vector<std::size_t> vertex_color;
    std::unordered_map<ColorMask, std::size_t> row_of;
    std::vector<char> reached;      // row * vertex_count + v
    std::vector<int> predecessor;   // -1 unreachable, -2 path start, else neighbor

    bool reachable(ColorMask colors, std::size_t v) const {
        auto it = row_of.find(colors);
        if (it == row_of.end() || v >= vertex_count) return false;
        return reached[it->second * vertex_count + v] != 0;
    }

    std::optional<std::size_t> first_reachable_vertex(ColorMask colors) const {
        auto it = row_of.find(colors);
        if (it == row_of.end()) return std::nullopt;
        std::size_t base = it->second * vertex_count;
        for (std::size_t v = 0; v < vertex_count; ++v)
            if (reached[base + v]) return v;
        return std::nullopt;
    }

    // Vertex sequence of the stored witness path ending at v.
    std::vector<std::size_t> witness(ColorMask colors, std::size_t v) const {
        std::vector<std::size_t> reversed;
        ColorMask current = colors;
        std::size_t at = v;
        for (;;) {
            auto it = row_of.find(current);
            if (it == row_of.end())
                throw InternalError("witness walk left the path table");
            int p = predecessor[it->second * vertex_count + at];
            reversed.push_back(at);
            if (p == -2) break;
            if (p < 0)
                throw InternalError("witness requested for an unreachable entry");
            current &= ~color_bit(vertex_color[at]);
            at = static_cast<std::size_t>(p);
        }
        return {reversed.rbegin(), reversed.rend()};
    }
};

// Fill the table for all color sets of size 1..max_size, smaller sets first.
// Recurrence: a C-colorful path ends at v iff v carries a color of C and a
// (C minus v's color)-colorful path ends at some neighbor; predecessors pick
// the smallest such neighbor.
inline PathTable colorful_path_dp(const Graph& g, const Coloring& coloring,
                                  std::size_t max_size) {
    detail::check_coloring(coloring, ColorTarget::Vertex, g.vertex_count());
    if (max_size > coloring.palette)
        throw MalformedInputError("path size exceeds the palette");
    PathTable table;
    table.palette = coloring.palette;
    table.max_size = max_size;
    table.vertex_count = g.vertex_count();
    table.vertex_color = coloring.color;

    std::vector<ColorMask> masks;
    for (std::size_t s = 1; s <= max_size; ++s)
        for_each_color_set(coloring.palette, s, [&](ColorMask m) { masks.push_back(m); });
    table.row_of.reserve(masks.size());
    for (std::size_t row = 0; row < masks.size(); ++row) table.row_of.emplace(masks[row], row);
    const std::size_t n = g.vertex_count();
    table.reached.assign(masks.size() * n, 0);
    table.predecessor.assign(masks.size() * n, -1);

    for (std::size_t v = 0; v < n; ++v) {
        std::size_t row = table.row_of.at(color_bit(coloring.color[v]));
        table.reached[row * n + v] = 1;
        table.predecessor[row * n + v] = -2;
    }

    for (std::size_t row = 0; row < masks.size(); ++row) {
        ColorMask mask = masks[row];
        if (std::popcount(mask) < 2) continue;
        for (std::size_t v = 0; v < n; ++v) {
            ColorMask vbit = color_bit(coloring.color[v]);
            if (!(mask & vbit)) continue;
            std::size_t prev_row = table.row_of.at(mask & ~vbit);
            int best = -1;
            for (const auto& [u, e] : g.neighbors(v)) {
                (void)e;
                if (!table.reached[prev_row * n + u]) continue;
                if (best < 0 || u < static_cast<std::size_t>(best))
                    best = static_cast<int>(u);
            }
            if (best >= 0) {
                table.reached[row * n + v] = 1;
                table.predecessor[row * n + v] = best;
            }
        }
    }
    return table;
}

// Joint vertex-and-edge colorful path table. Entry (C, D, v): some simple
// path ends at v whose vertices use the vertex colors C exactly once each
// and whose edges use the (remapped) edge colors D exactly once each, so
// |C| = |D| + 1 throughout. Edge colors may be compacted through a remap
// that sends excluded colors to -1; edges carrying excluded colors are
// unusable.
struct EdgePathTable {
    std::size_t vertex_palette = 0;
    std::size_t edge_palette = 0; // size of the remapped (dense) edge palette
    std::size_t vertex_count = 0;
    std::vector<std::size_t> vertex_color;
    std::vector<int> edge_dense_color; // per edge: dense color or -1
    std::unordered_map<std::uint64_t, std::size_t> row_of;
    std::vector<char> reached;
    std::vector<int> predecessor;

    std::uint64_t key(ColorMask vertex_colors, ColorMask edge_colors) const {
        return vertex_colors | (edge_colors << vertex_palette);
    }

    bool reachable(ColorMask vertex_colors, ColorMask edge_colors, std::size_t v) const {
        auto it = row_of.find(key(vertex_colors, edge_colors));
        if (it == row_of.end() || v >= vertex_count) return false;
        return reached[it->second * vertex_count + v] != 0;
    }

    std::optional<std::size_t> first_reachable_vertex(ColorMask vertex_colors,
                                                      ColorMask edge_colors) const {
        auto it = row_of.find(key(vertex_colors, edge_colors));
        if (it == row_of.end()) return std::nullopt;
        std::size_t base = it->second * vertex_count;
        for (std::size_t v = 0; v < vertex_count; ++v)
            if (reached[base + v]) return v;
        return std::nullopt;
    }

    struct Witness {
        std::vector<std::size_t> vertices; // path order
        std::vector<std::size_t> edges;    // edge indices, path order
    };

    // g must be the graph the table was built from.
    Witness witness(const Graph& g, ColorMask vertex_colors, ColorMask edge_colors,
                    std::size_t v) const {
        Witness w;
        ColorMask C = vertex_colors, D = edge_colors;
        std::size_t at = v;
        for (;;) {
            auto it = row_of.find(key(C, D));
            if (it == row_of.end())
                throw InternalError("witness walk left the path table");
            int p = predecessor[it->second * vertex_count + at];
            w.vertices.push_back(at);
            if (p == -2) break;
            if (p < 0)
                throw InternalError("witness requested for an unreachable entry");
            std::size_t u = static_cast<std::size_t>(p);
            auto e = g.edge_index(std::min(u, at), std::max(u, at));
            if (!e || edge_dense_color[*e] < 0)
                throw InternalError("witness walk crossed a missing edge");
            w.edges.push_back(*e);
            C &= ~color_bit(vertex_color[at]);
            D &= ~color_bit(static_cast<std::size_t>(edge_dense_color[*e]));
            at = u;
        }
        std::reverse(w.vertices.begin(), w.vertices.end());
        std::reverse(w.edges.begin(), w.edges.end());
        return w;
    }
};

// Build the joint table for all vertex-color sets up to the full vertex
// palette. edge_remap maps raw edge colors to the dense palette (or -1 to
// exclude); with the identity remap one table answers every candidate edge
// color set of a trial at once.
inline EdgePathTable edge_colorful_path_table(const Graph& g, const Coloring& vertex_coloring,
                                              const Coloring& edge_coloring,
                                              const std::vector<int>& edge_remap,
                                              std::size_t dense_palette) {
    detail::check_coloring(vertex_coloring, ColorTarget::Vertex, g.vertex_count());
    detail::check_coloring(edge_coloring, ColorTarget::Edge, g.edge_count());
    if (edge_remap.size() != edge_coloring.palette)
        throw MalformedInputError("edge color remap does not match the palette");
    if (dense_palette > 64 || vertex_coloring.palette + dense_palette > 64)
        throw BudgetExceededError("combined palettes exceed 64 colors");
    for (int d : edge_remap)
        if (d < -1 || d >= static_cast<int>(dense_palette))
            throw MalformedInputError("edge color remap entry out of range");

    EdgePathTable table;
    const std::size_t k = vertex_coloring.palette;
    const std::size_t n = g.vertex_count();
    table.vertex_palette = k;
    table.edge_palette = dense_palette;
    table.vertex_count = n;
    table.vertex_color = vertex_coloring.color;
    table.edge_dense_color.resize(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        table.edge_dense_color[e] = edge_remap[edge_coloring.color[e]];

    std::vector<std::pair<ColorMask, ColorMask>> states; // (C, D), |C| = |D| + 1
    for (std::size_t s = 1; s <= k; ++s)
        for_each_color_set(k, s, [&](ColorMask c) {
            for_each_color_set(dense_palette, s - 1, [&](ColorMask d) {
                states.emplace_back(c, d);
            });
        });
    table.row_of.reserve(states.size());
    for (std::size_t row = 0; row < states.size(); ++row)
        table.row_of.emplace(table.key(states[row].first, states[row].second), row);
    table.reached.assign(states.size() * n, 0);
    table.predecessor.assign(states.size() * n, -1);

    for (std::size_t v = 0; v < n; ++v) {
        std::size_t row = table.row_of.at(table.key(color_bit(vertex_coloring.color[v]), 0));
        table.reached[row * n + v] = 1;
        table.predecessor[row * n + v] = -2;
    }

    for (std::size_t row = 0; row < states.size(); ++row) {
        auto [C, D] = states[row];
        if (std::popcount(C) < 2) continue;
        for (std::size_t v = 0; v < n; ++v) {
            ColorMask vbit = color_bit(vertex_coloring.color[v]);
            if (!(C & vbit)) continue;
            int best = -1;
            for (const auto& [u, e] : g.neighbors(v)) {
                int d = table.edge_dense_color[e];
                if (d < 0 || !(D & color_bit(static_cast<std::size_t>(d)))) continue;
                std::size_t prev_row = table.row_of.at(
                    table.key(C & ~vbit, D & ~color_bit(static_cast<std::size_t>(d))));
                if (!table.reached[prev_row * n + u]) continue;
                if (best < 0 || u < static_cast<std::size_t>(best))
                    best = static_cast<int>(u);
            }
            if (best >= 0) {
                table.reached[row * n + v] = 1;
                table.predecessor[row * n + v] = best;
            }
        }
    }
    return table;
}

// Decide whether some path's vertex set is colorful over the whole vertex
// palette while its edge set uses exactly the raw edge colors of D.
inline bool edge_colorful_path_dp(const Graph& g, const Coloring& vertex_coloring,
                                  const Coloring& edge_coloring, ColorMask D) {
    const std::size_t k = vertex_coloring.palette;
    if (static_cast<std::size_t>(std::popcount(D)) + 1 != k)
        throw MalformedInputError("edge color set must have one color fewer than vertices");
    if (D & ~full_color_mask(edge_coloring.palette))
        throw MalformedInputError("edge color set outside the palette");
    std::vector<int> remap(edge_coloring.palette, -1);
    int dense = 0;
    for (std::size_t col = 0; col < edge_coloring.palette; ++col)
        if (D & color_bit(col)) remap[col] = dense++;
    EdgePathTable table =
        edge_colorful_path_table(g, vertex_coloring, edge_coloring, remap, k - 1);
    return table.first_reachable_vertex(full_color_mask(k), full_color_mask(k - 1)).has_value();
}

} // namespace divsol
