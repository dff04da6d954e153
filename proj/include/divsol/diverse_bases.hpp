#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "divsol/errors.hpp"
#include "divsol/graph.hpp"
#include "divsol/matroid.hpp"
#include "divsol/matroid_union.hpp"
#include "divsol/subset.hpp"

namespace divsol {

// Weighted parallel extension used to price overlap: copy i of an element
// costs i - 1, so a family using an element in m of its r members pays
// 0 + 1 + ... + (m - 1) = C(m, 2), the number of pairs sharing it.
struct BaseGadget {
    std::shared_ptr<const ParallelExtensionMatroid> matroid;
    std::vector<std::uint64_t> weights;
};

inline BaseGadget build_gadget(std::shared_ptr<const MatroidOracle> base, std::size_t r) {
    auto extension = std::make_shared<ParallelExtensionMatroid>(std::move(base), r);
    std::vector<std::uint64_t> weights(extension->ground_size());
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = i % r;
    return {std::move(extension), std::move(weights)};
}

struct DiverseBasesResult {
    std::vector<ElementSubset> bases; // r bases of the input matroid
    std::uint64_t d_sum = 0;          // sum of pairwise Hamming distances
    std::uint64_t overlap = 0;        // sum over pairs of intersection sizes
    std::size_t base_size = 0;        // common size of every base
};

// Project disjoint gadget bases back to bases of the original matroid and
// tally the family's diversity.
inline DiverseBasesResult recover_solutions(const ParallelExtensionMatroid& gadget,
                                            const std::vector<ElementSubset>& gadget_bases,
                                            std::uint64_t gadget_weight) {
    const std::size_t r = gadget.copies();
    const std::size_t original_ground = gadget.ground_size() / r;
    DiverseBasesResult result;
    result.bases.reserve(gadget_bases.size());
    for (const ElementSubset& gb : gadget_bases) {
        ElementSubset projection(original_ground);
        gb.for_each([&](std::size_t i) { projection.set(gadget.origin_of(i)); });
        if (projection.count() != gb.count())
            throw InternalError("gadget base holds two copies of one element");
        result.bases.push_back(std::move(projection));
    }
    result.base_size = result.bases.empty() ? 0 : result.bases.front().count();
    for (std::size_t i = 0; i < result.bases.size(); ++i) {
        if (result.bases[i].count() != result.base_size)
            throw InternalError("recovered bases disagree in size");
        for (std::size_t j = i + 1; j < result.bases.size(); ++j) {
            result.overlap += result.bases[i].intersection_count(result.bases[j]);
            result.d_sum += result.bases[i].hamming_distance(result.bases[j]);
        }
    }
    // Greedy fills each element's cheapest copies first, so the gadget bill
    // must equal the pairwise overlap it was designed to price.
    if (gadget_weight != result.overlap)
        throw InternalError("gadget weight disagrees with recovered overlap");
    return result;
}

// r bases of `base` maximizing the sum of pairwise Hamming distances.
// Exact: minimizing gadget weight minimizes total overlap, and with all
// bases the same size the distance sum is a fixed constant minus twice the
// overlap.
inline DiverseBasesResult diverse_bases(std::shared_ptr<const MatroidOracle> base,
                                        std::size_t r) {
    if (r == 0)
        throw MalformedInputError("need at least one solution");
    BaseGadget gadget = build_gadget(std::move(base), r);
    DisjointBasesResult packed = min_weight_disjoint_bases(*gadget.matroid, gadget.weights, r);
    return recover_solutions(*gadget.matroid, packed.bases, packed.total_weight);
}

// r spanning trees of g with maximum pairwise distance sum; trees are edge
// subsets and may repeat when the graph is too sparse to avoid it.
inline DiverseBasesResult diverse_spanning_trees(const Graph& g, std::size_t r) {
    if (!g.connected())
        throw NoSolutionError("no spanning tree exists: graph is disconnected");
    return diverse_bases(std::make_shared<GraphicMatroid>(g), r);
}

// r forests with exactly k edges each, maximizing the pairwise distance sum.
inline DiverseBasesResult diverse_forests(const Graph& g, std::size_t r, std::size_t k) {
    auto graphic = std::make_shared<GraphicMatroid>(g);
    if (matroid_rank(*graphic) < k)
        throw NoSolutionError("no forest with " + std::to_string(k) + " edges exists");
    return diverse_bases(std::make_shared<TruncatedMatroid>(std::move(graphic), k), r);
}

} // namespace divsol
