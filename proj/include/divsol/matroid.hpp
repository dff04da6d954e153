#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divsol/errors.hpp"
#include "divsol/graph.hpp"
#include "divsol/subset.hpp"

namespace divsol {

// Independence oracle over a ground set {0, ..., ground_size() - 1}.
class MatroidOracle {
public:
    virtual ~MatroidOracle() = default;
    virtual std::size_t ground_size() const = 0;
    virtual bool independent(const ElementSubset& s) const = 0;
};

// Graphic matroid: a set of edges is independent iff it is acyclic.
// Works over parallel edge classes too (two parallel edges form a cycle).
class GraphicMatroid final : public MatroidOracle {
public:
    explicit GraphicMatroid(const Graph& g) : n_(g.vertex_count()) {
        endpoints_.reserve(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            endpoints_.emplace_back(g.edge(e).u, g.edge(e).v);
    }

    explicit GraphicMatroid(const MultiGraph& g) : n_(g.vertex_count()) {
        endpoints_.reserve(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            endpoints_.emplace_back(g.edge(e).u, g.edge(e).v);
    }

    std::size_t ground_size() const override { return endpoints_.size(); }

    bool independent(const ElementSubset& s) const override {
        if (s.universe() != endpoints_.size())
            throw MalformedInputError("subset universe does not match the ground set");
        detail::UnionFind uf(n_);
        bool acyclic = true;
        s.for_each([&](std::size_t e) {
            if (!acyclic) return;
            if (!uf.unite(endpoints_[e].first, endpoints_[e].second)) acyclic = false;
        });
        return acyclic;
    }

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
};

// k-truncation: independent iff independent in the base matroid and of size
// at most k. Bases of the truncation are the size-k independent sets.
class TruncatedMatroid final : public MatroidOracle {
public:
    TruncatedMatroid(std::shared_ptr<const MatroidOracle> base, std::size_t k)
        : base_(std::move(base)), k_(k) {
        if (!base_)
            throw MalformedInputError("truncation of a null matroid");
    }

    std::size_t ground_size() const override { return base_->ground_size(); }

    bool independent(const ElementSubset& s) const override {
        return s.count() <= k_ && base_->independent(s);
    }

private:
    std::shared_ptr<const MatroidOracle> base_;
    std::size_t k_;
};

// r-fold parallel extension: each base element e gains r interchangeable
// copies e_1, ..., e_r; copy i of e sits at index e * r + (i - 1). A set is
// independent iff it takes at most one copy per base element and its
// projection onto base elements is independent.
class ParallelExtensionMatroid final : public MatroidOracle {
public:
    ParallelExtensionMatroid(std::shared_ptr<const MatroidOracle> base, std::size_t r)
        : base_(std::move(base)), r_(r) {
        if (!base_)
            throw MalformedInputError("parallel extension of a null matroid");
        if (r_ == 0)
            throw MalformedInputError("parallel extension needs at least one copy");
    }

    std::size_t ground_size() const override { return base_->ground_size() * r_; }

    std::size_t copies() const { return r_; }
    std::size_t origin_of(std::size_t index) const { return index / r_; }
    std::size_t copy_of(std::size_t index) const { return index % r_ + 1; } // 1-based

    bool independent(const ElementSubset& s) const override {
        if (s.universe() != ground_size())
            throw MalformedInputError("subset universe does not match the ground set");
        ElementSubset projection(base_->ground_size());
        bool single = true;
        s.for_each([&](std::size_t i) {
            if (!single) return;
            std::size_t origin = i / r_;
            if (projection.test(origin)) {
                single = false;
                return;
            }
            projection.set(origin);
        });
        return single && base_->independent(projection);
    }

private:
    std::shared_ptr<const MatroidOracle> base_;
    std::size_t r_;
};

// Arbitrary set system driven by a callback; used to exercise the axiom
// checker against systems that are not matroids.
class CallbackMatroid final : public MatroidOracle {
public:
    CallbackMatroid(std::size_t ground_size,
                    std::function<bool(const ElementSubset&)> independent)
        : ground_size_(ground_size), independent_(std::move(independent)) {}

    std::size_t ground_size() const override { return ground_size_; }

    bool independent(const ElementSubset& s) const override { return independent_(s); }

private:
    std::size_t ground_size_;
    std::function<bool(const ElementSubset&)> independent_;
};

// Rank of the restriction to `candidates` by greedy extension in increasing
// index order. The exchange axiom makes any maximal independent subset
// maximum, so greedy is exact.
inline std::size_t matroid_rank(const MatroidOracle& m, const ElementSubset& candidates) {
    if (candidates.universe() != m.ground_size())
        throw MalformedInputError("subset universe does not match the ground set");
    ElementSubset current(m.ground_size());
    std::size_t rank = 0;
    candidates.for_each([&](std::size_t e) {
        current.set(e);
        if (m.independent(current)) {
            ++rank;
        } else {
            current.reset(e);
        }
    });
    return rank;
}

inline std::size_t matroid_rank(const MatroidOracle& m) {
    ElementSubset all(m.ground_size());
    for (std::size_t i = 0; i < m.ground_size(); ++i) all.set(i);
    return matroid_rank(m, all);
}

// Exhaustive check of the three matroid axioms over every subset of the
// ground set. Returns a description of the first violation, or nullopt if
// the oracle defines a matroid. Ground sets beyond 16 elements are refused.
inline std::optional<std::string> check_matroid_axioms(const MatroidOracle& m) {
    std::size_t g = m.ground_size();
    if (g > 16)
        throw MalformedInputError("axiom check is exhaustive; ground set too large");
    std::size_t total = std::size_t{1} << g;
    std::vector<char> indep(total, 0);
    for (std::size_t mask = 0; mask < total; ++mask)
        indep[mask] = m.independent(ElementSubset::from_mask(g, mask)) ? 1 : 0;

    auto describe = [g](std::size_t mask) {
        return ElementSubset::from_mask(g, mask).to_string();
    };

    if (!indep[0])
        return "M1 violated: the empty set is dependent";

    for (std::size_t mask = 0; mask < total; ++mask) {
        if (!indep[mask]) continue;
        for (std::size_t b = 0; b < g; ++b) {
            std::size_t bit = std::size_t{1} << b;
            if ((mask & bit) && !indep[mask & ~bit])
                return "M2 violated: " + describe(mask) + " is independent but " +
                       describe(mask & ~bit) + " is not";
        }
    }

    for (std::size_t a = 0; a < total; ++a) {
        if (!indep[a]) continue;
        std::size_t ca = static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(a)));
        for (std::size_t b = 0; b < total; ++b) {
            if (!indep[b]) continue;
            std::size_t cb =
                static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(b)));
            if (ca >= cb) continue;
            bool extended = false;
            std::size_t candidates = b & ~a;
            while (candidates) {
                std::size_t bit = candidates & (~candidates + 1);
                candidates &= candidates - 1;
                if (indep[a | bit]) {
                    extended = true;
                    break;
                }
            }
            if (!extended)
                return "M3 violated: " + describe(a) + " cannot be extended from " + describe(b);
        }
    }
    return std::nullopt;
}

} // namespace divsol
