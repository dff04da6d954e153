#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "divsol/errors.hpp"
#include "divsol/matroid.hpp"
#include "divsol/subset.hpp"

namespace divsol {

namespace detail {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

inline std::vector<std::size_t> part_owners(const std::vector<ElementSubset>& parts,
                                            std::size_t ground_size) {
    std::vector<std::size_t> owner(ground_size, kNone);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        bool clash = false;
        parts[i].for_each([&](std::size_t e) {
            if (owner[e] != kNone) clash = true;
            owner[e] = i;
        });
        if (clash)
            throw InternalError("disjoint cover invariant broken: parts overlap");
    }
    return owner;
}

} // namespace detail

// One augmentation step for a union of copies of the same matroid.
//
// `parts` is a family of pairwise disjoint independent sets. The routine
// searches the exchange digraph restricted to `allowed` for a shortest path
// from `sources` (uncovered elements) to a sink: an element y with some part
// F_i not containing y such that F_i + y stays independent. Arcs run from y
// to a covered z (owned by F_i, y not in F_i) whenever F_i - z + y stays
// independent. Augmenting along a shortest path keeps every part
// independent and grows the covered set by exactly one source element.
//
// Deterministic: sources are seeded in the given order, arc heads are
// explored in increasing element index, the first sink dequeued wins, and a
// sink picks the smallest admitting part index.
//
// Returns true and mutates `parts` on success; leaves `parts` untouched and
// returns false when no augmenting path exists.
inline bool augment_disjoint_cover(const MatroidOracle& m, std::vector<ElementSubset>& parts,
                                   const ElementSubset& allowed,
                                   const std::vector<std::size_t>& sources) {
    const std::size_t g = m.ground_size();
    if (allowed.universe() != g)
        throw MalformedInputError("subset universe does not match the ground set");
    std::vector<std::size_t> owner = detail::part_owners(parts, g);
    for (std::size_t s : sources) {
        if (s >= g || !allowed.test(s))
            throw InternalError("augmentation source outside the allowed set");
        if (owner[s] != detail::kNone)
            throw InternalError("augmentation source is already covered");
    }

    auto sink_part = [&](std::size_t y) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (owner[y] == i) continue;
            ElementSubset candidate = parts[i];
            candidate.set(y);
            if (m.independent(candidate)) return i;
        }
        return std::nullopt;
    };

    std::vector<char> visited(g, 0);
    std::vector<std::size_t> prev(g, detail::kNone);
    std::queue<std::size_t> frontier;
    for (std::size_t s : sources) {
        if (visited[s]) continue;
        visited[s] = 1;
        frontier.push(s);
    }

    std::size_t found = detail::kNone;
    std::size_t found_part = detail::kNone;
    while (!frontier.empty()) {
        std::size_t y = frontier.front();
        frontier.pop();
        if (auto sp = sink_part(y)) {
            found = y;
            found_part = *sp;
            break;
        }
        for (std::size_t z = 0; z < g; ++z) {
            if (visited[z] || !allowed.test(z)) continue;
            std::size_t i = owner[z];
            if (i == detail::kNone || i == owner[y]) continue;
            ElementSubset candidate = parts[i];
            candidate.reset(z);
            candidate.set(y);
            if (m.independent(candidate)) {
                visited[z] = 1;
                prev[z] = y;
                frontier.push(z);
            }
        }
    }
    if (found == detail::kNone) return false;

    std::vector<std::size_t> path;
    for (std::size_t e = found; e != detail::kNone; e = prev[e]) path.push_back(e);
    std::reverse(path.begin(), path.end());

    // Apply all exchanges of the path at once: each arc tail joins the part
    // that its head leaves. Shortest-path choice is what keeps this valid.
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        std::size_t i = owner[path[j + 1]];
        parts[i].reset(path[j + 1]);
        parts[i].set(path[j]);
    }
    parts[found_part].set(found);

    for (const ElementSubset& part : parts)
        if (!m.independent(part))
            throw InternalError("augmentation produced a dependent part");
    (void)detail::part_owners(parts, g); // throws if parts stopped being disjoint
    return true;
}

// Largest number of elements coverable by r pairwise disjoint independent
// sets (the rank of the r-fold union matroid).
inline std::size_t union_rank(const MatroidOracle& m, std::size_t r) {
    const std::size_t g = m.ground_size();
    std::vector<ElementSubset> parts(r, ElementSubset(g));
    ElementSubset allowed(g);
    for (std::size_t e = 0; e < g; ++e) allowed.set(e);
    std::size_t covered = 0;
    for (;;) {
        std::vector<std::size_t> owner = detail::part_owners(parts, g);
        std::vector<std::size_t> sources;
        for (std::size_t e = 0; e < g; ++e)
            if (owner[e] == detail::kNone) sources.push_back(e);
        if (sources.empty() || !augment_disjoint_cover(m, parts, allowed, sources)) break;
        ++covered;
    }
    return covered;
}

struct DisjointBasesResult {
    std::vector<ElementSubset> bases;
    std::uint64_t total_weight = 0;
};

// r pairwise disjoint bases of m minimizing total element weight.
//
// The sets partitionable into r independent sets form a matroid themselves,
// so greedy in (weight, index) order with an augmentation test per element
// builds a minimum-weight base of that union matroid; when the union rank
// reaches r times the rank of m, the maintained parts are exactly r disjoint
// bases. Throws NoSolutionError when fewer than r disjoint bases exist.
inline DisjointBasesResult min_weight_disjoint_bases(const MatroidOracle& m,
                                                     const std::vector<std::uint64_t>& weights,
                                                     std::size_t r) {
    const std::size_t g = m.ground_size();
    if (weights.size() != g)
        throw MalformedInputError("weight vector does not match the ground set");
    if (r == 0)
        throw MalformedInputError("need at least one base");
    const std::size_t base_size = matroid_rank(m);
    const std::size_t target = r * base_size;

    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });

    std::vector<ElementSubset> parts(r, ElementSubset(g));
    ElementSubset covered(g);
    std::uint64_t total_weight = 0;
    for (std::size_t e : order) {
        if (covered.count() == target) break;
        ElementSubset allowed = covered;
        allowed.set(e);
        if (augment_disjoint_cover(m, parts, allowed, {e})) {
            covered.set(e);
            total_weight += weights[e];
        }
    }
    if (covered.count() != target)
        throw NoSolutionError("the matroid does not have " + std::to_string(r) +
                              " disjoint bases");
    return {std::move(parts), total_weight};
}

} // namespace divsol
