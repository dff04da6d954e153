#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "divsol/errors.hpp"
#include "divsol/subset.hpp"

namespace divsol {

// Undirected simple graph with dense 0-based vertex and edge indices.
// Immutable once built; all subset arguments are bitsets over the edge (or
// vertex) index space.
class Graph {
public:
    struct Edge {
        std::size_t u, v; // u < v
    };

    explicit Graph(std::size_t n) : n_(n), adjacency_(n) {}

    static Graph from_edges(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        Graph g(n);
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    std::size_t add_edge(std::size_t u, std::size_t v) {
        if (u >= n_ || v >= n_)
            throw MalformedInputError("edge endpoint out of range");
        if (u == v)
            throw MalformedInputError("self-loops are not allowed");
        if (u > v) std::swap(u, v);
        if (edge_index(u, v))
            throw MalformedInputError("duplicate edge {" + std::to_string(u) + "," +
                                      std::to_string(v) + "}");
        std::size_t idx = edges_.size();
        edges_.push_back({u, v});
        adjacency_[u].push_back({v, idx});
        adjacency_[v].push_back({u, idx});
        return idx;
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(std::size_t i) const {
        if (i >= edges_.size())
            throw MalformedInputError("edge index out of range");
        return edges_[i];
    }

    // (neighbor, edge index) pairs in insertion order.
    const std::vector<std::pair<std::size_t, std::size_t>>& neighbors(std::size_t v) const {
        if (v >= n_)
            throw MalformedInputError("vertex index out of range");
        return adjacency_[v];
    }

    std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const {
        if (u >= n_ || v >= n_)
            throw MalformedInputError("vertex index out of range");
        for (const auto& [w, idx] : adjacency_[u])
            if (w == v) return idx;
        return std::nullopt;
    }

    std::size_t component_count() const {
        std::vector<char> seen(n_, 0);
        std::size_t components = 0;
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < n_; ++s) {
            if (seen[s]) continue;
            ++components;
            seen[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                for (const auto& [w, idx] : adjacency_[v]) {
                    (void)idx;
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
        }
        return components;
    }

    bool connected() const { return n_ == 0 || component_count() == 1; }

    // Edge-list text format: optional '#' comment lines, a "n m" header line,
    // then m lines "u v" with 0 <= u < v < n. Whitespace-separated decimal
    // integers, trailing newline optional.
    static Graph parse(std::istream& in) {
        std::vector<std::vector<long long>> rows;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line.front() == '#') continue;
            std::istringstream ls(line);
            std::vector<long long> nums;
            std::string tok;
            while (ls >> tok) {
                try {
                    std::size_t pos = 0;
                    long long val = std::stoll(tok, &pos);
                    if (pos != tok.size()) throw std::invalid_argument(tok);
                    nums.push_back(val);
                } catch (const std::exception&) {
                    throw MalformedInputError("line " + std::to_string(lineno) +
                                              ": expected decimal integer, got '" + tok + "'");
                }
            }
            if (nums.empty()) continue; // blank line
            rows.push_back(std::move(nums));
        }
        if (rows.empty())
            throw MalformedInputError("empty graph input: missing 'n m' header line");
        if (rows[0].size() != 2)
            throw MalformedInputError("header line must be 'n m'");
        long long n = rows[0][0], m = rows[0][1];
        if (n < 0 || m < 0)
            throw MalformedInputError("header counts must be non-negative");
        if (static_cast<long long>(rows.size()) - 1 != m)
            throw MalformedInputError("expected " + std::to_string(m) + " edge lines, found " +
                                      std::to_string(rows.size() - 1));
        Graph g(static_cast<std::size_t>(n));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() != 2)
                throw MalformedInputError("edge line must be 'u v'");
            long long u = rows[i][0], v = rows[i][1];
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw MalformedInputError("edge endpoint out of range: " + std::to_string(u) +
                                          " " + std::to_string(v));
            if (u >= v)
                throw MalformedInputError("edge lines require u < v, got " + std::to_string(u) +
                                          " " + std::to_string(v));
            g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        }
        return g;
    }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

// Multigraph whose edges carry an origin tag (edge index in a parent Graph
// plus a copy index in [1..r]) and a non-negative integer weight. Parallel
// edges are allowed, self-loops are not.
class MultiGraph {
public:
    struct Edge {
        std::size_t u, v;      // u < v
        std::size_t origin;    // edge index in the parent graph
        std::size_t copy;      // copy index, 1-based
        std::uint64_t weight;
    };

    explicit MultiGraph(std::size_t n) : n_(n) {}

    std::size_t add_edge(std::size_t u, std::size_t v, std::size_t origin, std::size_t copy,
                         std::uint64_t weight) {
        if (u >= n_ || v >= n_)
            throw MalformedInputError("edge endpoint out of range");
        if (u == v)
            throw MalformedInputError("self-loops are not allowed");
        if (u > v) std::swap(u, v);
        edges_.push_back({u, v, origin, copy, weight});
        return edges_.size() - 1;
    }

    // The 1-copy special case: one parallel class per input edge, weight 0.
    static MultiGraph single_copy(const Graph& g) {
        MultiGraph mg(g.vertex_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            mg.add_edge(g.edge(e).u, g.edge(e).v, e, 1, 0);
        return mg;
    }

    // Replace every edge by r parallel copies; copy i gets weight i - 1.
    // Copy i of origin e lands at index e * r + (i - 1).
    static MultiGraph parallel_copies(const Graph& g, std::size_t r) {
        MultiGraph mg(g.vertex_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            for (std::size_t i = 1; i <= r; ++i)
                mg.add_edge(g.edge(e).u, g.edge(e).v, e, i, i - 1);
        return mg;
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(std::size_t i) const {
        if (i >= edges_.size())
            throw MalformedInputError("edge index out of range");
        return edges_[i];
    }

    std::vector<std::uint64_t> weights() const {
        std::vector<std::uint64_t> w(edges_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i) w[i] = edges_[i].weight;
        return w;
    }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

namespace detail {

// Union-find over a fixed vertex range, fresh per use.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // false if x and y were already in the same component.
    bool unite(std::size_t x, std::size_t y) {
        std::size_t rx = find(x), ry = find(y);
        if (rx == ry) return false;
        parent_[rx] = ry;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

inline void check_edge_subset(std::size_t edge_count, const ElementSubset& s) {
    if (s.universe() != edge_count)
        throw MalformedInputError("subset universe does not match the graph's edge count");
}

} // namespace detail

// true iff the edge-induced subgraph G[s] is acyclic.
inline bool is_forest(const Graph& g, const ElementSubset& s) {
    detail::check_edge_subset(g.edge_count(), s);
    detail::UnionFind uf(g.vertex_count());
    bool acyclic = true;
    s.for_each([&](std::size_t e) {
        if (!acyclic) return;
        if (!uf.unite(g.edge(e).u, g.edge(e).v)) acyclic = false;
    });
    return acyclic;
}

// true iff s is a spanning tree of g. Rejects disconnected graphs eagerly.
inline bool is_spanning_tree(const Graph& g, const ElementSubset& s) {
    detail::check_edge_subset(g.edge_count(), s);
    if (!g.connected())
        throw NoSolutionError("no spanning tree exists: graph is disconnected");
    if (g.vertex_count() == 0) return s.empty();
    return s.count() == g.vertex_count() - 1 && is_forest(g, s);
}

// true iff the edges in s are pairwise vertex-disjoint.
inline bool is_matching(const Graph& g, const ElementSubset& s) {
    detail::check_edge_subset(g.edge_count(), s);
    std::vector<char> used(g.vertex_count(), 0);
    bool ok = true;
    s.for_each([&](std::size_t e) {
        if (!ok) return;
        const auto& ed = g.edge(e);
        if (used[ed.u] || used[ed.v]) ok = false;
        used[ed.u] = used[ed.v] = 1;
    });
    return ok;
}

// true iff s is the edge set of a simple path on exactly k vertices.
// k = 1 paths have an empty edge set; they are accepted whenever the graph
// has a vertex to carry them.
inline bool is_k_path(const Graph& g, const ElementSubset& s, std::size_t k) {
    detail::check_edge_subset(g.edge_count(), s);
    if (k == 0) return false;
    if (k == 1) return s.empty() && g.vertex_count() >= 1;
    if (s.count() != k - 1) return false;
    std::vector<std::size_t> degree(g.vertex_count(), 0);
    std::size_t touched = 0;
    s.for_each([&](std::size_t e) {
        const auto& ed = g.edge(e);
        if (degree[ed.u]++ == 0) ++touched;
        if (degree[ed.v]++ == 0) ++touched;
    });
    if (touched != k) return false;
    std::size_t deg1 = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (degree[v] > 2) return false;
        if (degree[v] == 1) ++deg1;
    }
    // k vertices, k-1 edges, acyclic => a tree; max degree 2 makes it a path.
    return deg1 == 2 && is_forest(g, s);
}

} // namespace divsol
