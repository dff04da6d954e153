// Finds maximally diverse spanning trees of K4 and diverse 3-paths of a
// 5-cycle, printing each family with its pairwise-distance value.
#include <iostream>

#include "divsol/divsol.hpp"

namespace {

void print_family(const std::string& label, const std::vector<divsol::ElementSubset>& family,
                  std::uint64_t value) {
    std::cout << label << " (value " << value << ")\n";
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::cout << "  solution " << i << ":";
        for (std::size_t e : family[i].indices()) std::cout << " " << e;
        std::cout << "\n";
    }
}

} // namespace

int main() {
    divsol::Graph k4(4);
    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v) k4.add_edge(u, v);

    auto trees = divsol::diverse_spanning_trees(k4, 2);
    print_family("2 diverse spanning trees of K4", trees.bases, trees.d_sum);

    divsol::Graph c5(5);
    for (std::size_t v = 0; v < 5; ++v) c5.add_edge(std::min(v, (v + 1) % 5), std::max(v, (v + 1) % 5));

    divsol::TrialPlan plan;
    plan.seed = 1;
    auto paths = divsol::diverse_kpaths(c5, 3, 2, divsol::DiversityMeasure::Min,
                                        divsol::PathVariant::Vertex, plan);
    print_family("2 diverse 3-paths of C5 (vertex sets, min measure)", paths.solutions,
                 paths.value);
    return 0;
}
