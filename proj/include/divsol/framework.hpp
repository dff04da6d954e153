#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "divsol/color_coding.hpp"
#include "divsol/errors.hpp"
#include "divsol/subset.hpp"

namespace divsol {

enum class DiversityMeasure { Sum, Min };

inline const char* measure_name(DiversityMeasure m) {
    return m == DiversityMeasure::Sum ? "sum" : "min";
}

// Pairwise-Hamming diversity of a family of sets. A single solution scores 0
// under both measures (empty sum; min over no pairs is pinned to 0).
inline std::uint64_t evaluate(DiversityMeasure measure, const std::vector<ElementSubset>& family) {
    if (family.empty())
        throw MalformedInputError("diversity of an empty family");
    if (family.size() == 1) return 0;
    std::uint64_t sum = 0;
    std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            std::uint64_t d = family[i].hamming_distance(family[j]);
            sum += d;
            least = std::min(least, d);
        }
    return measure == DiversityMeasure::Sum ? sum : least;
}

// Same measures over color sets.
inline std::uint64_t evaluate_masks(DiversityMeasure measure, const std::vector<ColorMask>& family) {
    if (family.empty())
        throw MalformedInputError("diversity of an empty family");
    if (family.size() == 1) return 0;
    std::uint64_t sum = 0;
    std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            std::uint64_t d = static_cast<std::uint64_t>(std::popcount(family[i] ^ family[j]));
            sum += d;
            least = std::min(least, d);
        }
    return measure == DiversityMeasure::Sum ? sum : least;
}

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

struct FeasibleEntry {
    ColorMask colors = 0;
    ElementSubset witness;
};

// A problem plugged into the engine. `find_colorful` answers "is there a
// C-colorful solution" with a witness; everything the engine reports is
// re-validated through `predicate` and exact colorfulness, so a buggy
// checker surfaces as an internal error rather than bad output.
struct ColorfulChecker {
    std::string problem_name;
    std::size_t universe_size = 0;
    ColorTarget target = ColorTarget::Element;

    // (coloring, C, trial seed) -> C-colorful solution; the seed feeds
    // checkers that randomize internally (nested color coding).
    std::function<std::optional<ElementSubset>(const Coloring&, ColorMask, std::uint64_t)>
        find_colorful;

    // Problem predicate on uncolored element sets.
    std::function<bool(const ElementSubset&)> predicate;

    // Deterministic existence check for size-k solutions; gates the
    // "no solution exists" verdict so a missed coloring is never reported
    // as nonexistence.
    std::function<bool()> exists_solution;

    // Optional batch enumeration of all feasible color sets of size k under
    // a coloring (e.g., one dynamic-programming table answering every C).
    // Entries must come back sorted by color mask. When absent the engine
    // falls back to one find_colorful call per candidate C.
    std::function<std::vector<FeasibleEntry>(const Coloring&, std::size_t, std::uint64_t)>
        enumerate_feasible;
};

// All color sets C of exactly `size` colors admitting a C-colorful solution
// under `coloring`, each with a validated witness, sorted by mask value.
inline std::vector<FeasibleEntry> feasible_sets(const ColorfulChecker& checker,
                                                const Coloring& coloring, std::size_t size,
                                                std::uint64_t seed, std::uint64_t budget_sets) {
    if (size > coloring.palette)
        throw MalformedInputError("solution size exceeds the palette");
    if (binomial_saturating(coloring.palette, size) > budget_sets)
        throw BudgetExceededError("color set budget exceeded: C(" +
                                  std::to_string(coloring.palette) + ", " +
                                  std::to_string(size) + ") candidate sets");

    std::vector<FeasibleEntry> entries;
    if (checker.enumerate_feasible) {
        entries = checker.enumerate_feasible(coloring, size, seed);
    } else {
        for_each_color_set(coloring.palette, size, [&](ColorMask c) {
            if (auto w = checker.find_colorful(coloring, c, seed))
                entries.push_back({c, std::move(*w)});
        });
    }

    ColorMask previous = 0;
    bool first = true;
    for (const FeasibleEntry& entry : entries) {
        if (!first && entry.colors <= previous)
            throw InternalError("feasible sets out of order");
        first = false;
        previous = entry.colors;
        if (static_cast<std::size_t>(std::popcount(entry.colors)) != size)
            throw InternalError("feasible color set has the wrong size");
        if (entry.witness.universe() != checker.universe_size ||
            entry.witness.count() != size)
            throw InternalError("witness has the wrong size");
        ColorMask seen = 0;
        bool colorful = true;
        entry.witness.for_each([&](std::size_t e) {
            ColorMask bit = color_bit(coloring.color[e]);
            if (seen & bit) colorful = false;
            seen |= bit;
        });
        if (!colorful || seen != entry.colors)
            throw InternalError("witness is not exactly C-colorful");
        if (!checker.predicate(entry.witness))
            throw InternalError("witness fails the problem predicate");
    }
    return entries;
}

struct BestTuple {
    std::vector<std::size_t> indices; // non-decreasing positions into the family
    std::uint64_t value = 0;          // measure over the chosen color sets
};

// Exhaustive search over r-multisets of feasible color sets (solutions may
// repeat). Multisets are visited in non-decreasing index order and the first
// maximum is kept, so the outcome is deterministic.
inline BestTuple best_tuple(const std::vector<FeasibleEntry>& family, std::size_t r,
                            DiversityMeasure measure, std::uint64_t budget_tuples) {
    if (family.empty())
        throw MalformedInputError("tuple search over an empty family");
    if (r == 0)
        throw MalformedInputError("need at least one solution");
    std::uint64_t tuples = binomial_saturating(family.size() + r - 1, r);
    if (tuples > budget_tuples)
        throw BudgetExceededError("tuple budget exceeded: " + std::to_string(family.size()) +
                                  " feasible sets give too many " + std::to_string(r) +
                                  "-multisets");

    BestTuple best;
    bool have_best = false;
    std::vector<std::size_t> pick(r, 0);
    std::vector<ColorMask> masks(r, 0);

    // depth-first odometer over non-decreasing index tuples with running
    // partial measure values
    struct Frame {
        std::uint64_t sum;
        std::uint64_t least;
    };
    std::vector<Frame> partial(r + 1);
    partial[0] = {0, std::numeric_limits<std::uint64_t>::max()};

    std::size_t depth = 0;
    for (;;) {
        if (depth == r) {
            std::uint64_t value;
            if (r == 1) {
                value = 0;
            } else {
                value = measure == DiversityMeasure::Sum ? partial[r].sum : partial[r].least;
            }
            if (!have_best || value > best.value) {
                have_best = true;
                best.value = value;
                best.indices = pick;
            }
            --depth;
            ++pick[depth];
            continue;
        }
        std::size_t lo = depth == 0 ? 0 : pick[depth - 1];
        if (pick[depth] < lo) pick[depth] = lo;
        if (pick[depth] >= family.size()) {
            if (depth == 0) break;
            --depth;
            ++pick[depth];
            continue;
        }
        ColorMask chosen = family[pick[depth]].colors;
        masks[depth] = chosen;
        Frame f = partial[depth];
        for (std::size_t j = 0; j < depth; ++j) {
            std::uint64_t d = static_cast<std::uint64_t>(std::popcount(masks[j] ^ chosen));
            f.sum += d;
            f.least = std::min(f.least, d);
        }
        partial[depth + 1] = f;
        ++depth;
        if (depth < r) pick[depth] = pick[depth - 1];
    }
    if (!have_best)
        throw InternalError("tuple search found no candidate");
    return best;
}

struct SolutionFamily {
    std::vector<ElementSubset> solutions; // r validated witnesses
    DiversityMeasure measure = DiversityMeasure::Sum;
    std::uint64_t value = 0;       // measure over the witnesses themselves
    std::uint64_t color_value = 0; // measure over the selecting color sets
    std::size_t best_trial = 0;    // trial that produced the winner
    std::size_t trials_run = 0;
    std::size_t nonempty_trials = 0;   // trials with at least one feasible set
    std::size_t soundness_checks = 0;  // witness-vs-color-set comparisons made
};

namespace detail {

struct TrialCandidate {
    bool found = false;
    std::uint64_t value = 0;
    std::uint64_t color_value = 0;
    std::size_t trial = 0;
    std::vector<ElementSubset> solutions;
};

} // namespace detail

// The trial engine: repeat seeded random colorings; per coloring, list the
// feasible color sets, pick the color-set multiset maximizing the measure,
// and re-evaluate the attached witnesses. Across trials the best witness
// value wins, ties to the lowest trial index, independent of thread count.
//
// Witnesses are always at least as diverse as their color sets (an element
// colored inside C_i \ C_j cannot occur in a C_j-colorful set), so the
// color-set optimum is a certified lower bound; the engine enforces the
// inequality on every trial.
inline SolutionFamily diverse_solve(const ColorfulChecker& checker, std::size_t solution_size,
                                    std::size_t r, DiversityMeasure measure,
                                    const TrialPlan& plan) {
    if (solution_size == 0)
        throw MalformedInputError("solution size must be at least 1");
    if (r == 0)
        throw MalformedInputError("need at least one solution");
    const std::size_t palette = solution_size * r;
    if (palette > 64)
        throw BudgetExceededError("palette size must be between 1 and 64");
    if (binomial_saturating(palette, solution_size) > plan.budget_sets)
        throw BudgetExceededError("color set budget exceeded: C(" + std::to_string(palette) +
                                  ", " + std::to_string(solution_size) + ") candidate sets");

    const std::size_t trials = plan.trials_for(palette);
    if (trials == 0)
        throw MalformedInputError("need at least one trial");

    auto run_trial = [&](std::size_t t) -> detail::TrialCandidate {
        detail::TrialCandidate cand;
        cand.trial = t;
        std::uint64_t seed = trial_seed(plan.seed, t);
        Coloring coloring = random_coloring(checker.target, checker.universe_size, palette, seed);
        std::vector<FeasibleEntry> family =
            feasible_sets(checker, coloring, solution_size, seed, plan.budget_sets);
        if (family.empty()) return cand;
        BestTuple chosen = best_tuple(family, r, measure, plan.budget_tuples);
        cand.found = true;
        cand.color_value = chosen.value;
        cand.solutions.reserve(r);
        for (std::size_t idx : chosen.indices) cand.solutions.push_back(family[idx].witness);
        cand.value = evaluate(measure, cand.solutions);
        if (cand.value < cand.color_value)
            throw InternalError("witness diversity fell below the color-set bound");
        return cand;
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(plan.threads == 0
                                                                      ? std::size_t{1}
                                                                      : plan.threads,
                                                                  trials));
    std::vector<detail::TrialCandidate> best_per_worker(workers);
    std::vector<std::size_t> nonempty_per_worker(workers, 0);
    std::vector<std::exception_ptr> errors(workers);

    auto worker_main = [&](std::size_t w, std::size_t lo, std::size_t hi) {
        try {
            detail::TrialCandidate best;
            for (std::size_t t = lo; t < hi; ++t) {
                detail::TrialCandidate cand = run_trial(t);
                if (!cand.found) continue;
                ++nonempty_per_worker[w];
                if (!best.found || cand.value > best.value) best = std::move(cand);
            }
            best_per_worker[w] = std::move(best);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        worker_main(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::size_t chunk = trials / workers;
        std::size_t extra = trials % workers;
        std::size_t start = 0;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t len = chunk + (w < extra ? 1 : 0);
            pool.emplace_back(worker_main, w, start, start + len);
            start += len;
        }
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t w = 0; w < workers; ++w)
        if (errors[w]) std::rethrow_exception(errors[w]);

    detail::TrialCandidate winner;
    std::size_t nonempty = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        nonempty += nonempty_per_worker[w];
        detail::TrialCandidate& cand = best_per_worker[w];
        if (!cand.found) continue;
        // workers cover contiguous ascending trial ranges, so scanning them
        // in order with a strict > keeps the lowest trial index on ties
        if (!winner.found || cand.value > winner.value) winner = std::move(cand);
    }

    if (!winner.found) {
        if (checker.exists_solution && checker.exists_solution())
            throw BudgetExceededError("no solution found within the trial budget");
        throw NoSolutionError("no " + checker.problem_name + " exists");
    }

    SolutionFamily out;
    out.solutions = std::move(winner.solutions);
    out.measure = measure;
    out.value = winner.value;
    out.color_value = winner.color_value;
    out.best_trial = winner.trial;
    out.trials_run = trials;
    out.nonempty_trials = nonempty;
    out.soundness_checks = nonempty;
    return out;
}

} // namespace divsol
