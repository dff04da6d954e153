#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace divsol;

TEST_CASE("union rank") {
    Graph k4 = support::complete_graph(4);
    GraphicMatroid m(k4);
    REQUIRE(union_rank(m, 1) == 3);
    REQUIRE(union_rank(m, 2) == 6); // two disjoint spanning trees
    REQUIRE(union_rank(m, 3) == 6); // only six edges available

    GraphicMatroid tri(support::triangle());
    REQUIRE(union_rank(tri, 2) == 3); // a tree plus a leftover edge
}

TEST_CASE("disjoint bases exist iff the union rank reaches r times the rank") {
    GraphicMatroid tri(support::triangle());
    std::vector<std::uint64_t> w(3, 0);
    REQUIRE_THROWS_AS(min_weight_disjoint_bases(tri, w, 2), NoSolutionError);

    GraphicMatroid k4(support::complete_graph(4));
    std::vector<std::uint64_t> w6(6, 0);
    auto res = min_weight_disjoint_bases(k4, w6, 2);
    REQUIRE(res.bases.size() == 2);
    REQUIRE(res.total_weight == 0);
    REQUIRE(res.bases[0].intersection_count(res.bases[1]) == 0);
    Graph k4g = support::complete_graph(4);
    for (const auto& b : res.bases) REQUIRE(is_spanning_tree(k4g, b));
}

TEST_CASE("argument validation") {
    GraphicMatroid tri(support::triangle());
    std::vector<std::uint64_t> w(2, 0);
    REQUIRE_THROWS_AS(min_weight_disjoint_bases(tri, w, 1), MalformedInputError);
    std::vector<std::uint64_t> w3(3, 0);
    REQUIRE_THROWS_AS(min_weight_disjoint_bases(tri, w3, 0), MalformedInputError);
}

TEST_CASE("weighted truncation picks the cheap spread") {
    auto g = std::make_shared<GraphicMatroid>(support::complete_graph(4));
    TruncatedMatroid t(g, 2);
    std::vector<std::uint64_t> w{0, 1, 2, 3, 4, 5};
    auto res = min_weight_disjoint_bases(t, w, 2);
    REQUIRE(res.total_weight == 6); // edges 0,1,2,3 split into two forests
    ElementSubset used(6);
    for (const auto& b : res.bases) {
        REQUIRE(b.count() == 2);
        used |= b;
    }
    REQUIRE(used == ElementSubset::from_indices(6, {0, 1, 2, 3}));
}

namespace {

// Reference answer: scan all r-tuples of enumerated spanning trees.
std::optional<std::uint64_t> brute_min_weight_trees(const std::vector<ElementSubset>& trees,
                                                    const std::vector<std::uint64_t>& w,
                                                    std::size_t r) {
    std::optional<std::uint64_t> best;
    auto weight_of = [&](const ElementSubset& s) {
        std::uint64_t total = 0;
        s.for_each([&](std::size_t e) { total += w[e]; });
        return total;
    };
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start, std::uint64_t sum,
                   const ElementSubset& used) -> void {
        if (pick.size() == r) {
            if (!best || sum < *best) best = sum;
            return;
        }
        for (std::size_t i = start; i < trees.size(); ++i) {
            if (used.intersection_count(trees[i]) != 0) continue;
            auto next = used;
            next |= trees[i];
            pick.push_back(i);
            self(self, i + 1, sum + weight_of(trees[i]), next);
            pick.pop_back();
        }
    };
    // Disjoint families are unordered, so ascending indices lose nothing.
    ElementSubset none(trees.empty() ? 0 : trees[0].universe());
    rec(rec, 0, 0, none);
    return best;
}

} // namespace

TEST_CASE("min-weight disjoint spanning trees match brute force") {
    std::mt19937_64 rng(2024);
    std::size_t agreements = 0;
    for (int instance = 0; instance < 40; ++instance) {
        std::size_t n = 4 + uniform_below(rng, 2);
        std::size_t extra = 3 + uniform_below(rng, 4);
        Graph g = support::random_connected_graph(rng, n, extra);
        std::vector<std::uint64_t> w(g.edge_count());
        for (auto& x : w) x = uniform_below(rng, 8);
        std::size_t r = 2 + uniform_below(rng, 2);

        std::vector<ElementSubset> trees = enumerate_spanning_trees(g);
        auto expected = brute_min_weight_trees(trees, w, r);

        GraphicMatroid m(g);
        if (!expected) {
            REQUIRE_THROWS_AS(min_weight_disjoint_bases(m, w, r), NoSolutionError);
            continue;
        }
        auto res = min_weight_disjoint_bases(m, w, r);
        REQUIRE(res.total_weight == *expected);
        ElementSubset used(g.edge_count());
        for (const auto& b : res.bases) {
            REQUIRE(is_spanning_tree(g, b));
            REQUIRE(used.intersection_count(b) == 0);
            used |= b;
        }
        ++agreements;
    }
    REQUIRE(agreements >= 10); // the generator must produce solvable instances too
}
