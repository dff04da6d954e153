#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divsol/divsol.hpp"

namespace {

using nlohmann::ordered_json;

enum class Problem { SpanningTrees, Forests, KPath, Matching, Intervals };

struct Options {
    bool oracle = false;
    Problem problem = Problem::SpanningTrees;
    std::string input;
    std::uint64_t r = 0;
    std::uint64_t k = 0;
    std::string measure = "sum";
    std::string variant = "vertex";
    std::uint64_t seed = 0;
    double delta = 0.01;
    std::uint64_t trials = 0;
    bool trials_given = false;
    std::uint64_t threads = 0; // 0: all available cores
    std::uint64_t budget_sets = 1'000'000;
    std::uint64_t budget_tuples = 100'000'000;
    bool text = false;
    bool json = false;
    bool seed_given = false;
    bool delta_given = false;
};

const char* problem_label(Problem p) {
    switch (p) {
        case Problem::SpanningTrees: return "spanning-trees";
        case Problem::Forests: return "forests";
        case Problem::KPath: return "k-path";
        case Problem::Matching: return "matching";
        case Problem::Intervals: return "intervals";
    }
    return "?";
}

void add_leaf(CLI::App* parent, Options& opt, bool oracle, Problem problem, bool needs_k,
              bool has_variant, const std::string& description) {
    CLI::App* leaf = parent->add_subcommand(problem_label(problem), description);
    leaf->add_option("input", opt.input, "input file")->required();
    leaf->add_option("--r", opt.r, "number of solutions in the family")
        ->required()
        ->check(CLI::PositiveNumber);
    if (needs_k)
        leaf->add_option("--k", opt.k, "solution size")->required()->check(CLI::PositiveNumber);
    leaf->add_option("--measure", opt.measure, "diversity measure (default sum)")
        ->check(CLI::IsMember({"sum", "min"}));
    if (has_variant)
        leaf->add_option("--variant", opt.variant,
                         "compare paths by vertex or edge sets (default vertex)")
            ->check(CLI::IsMember({"vertex", "edge"}));
    leaf->add_option("--seed", opt.seed, "base seed for randomized trials (default 0)");
    leaf->add_option("--delta", opt.delta, "failure budget in (0,1) (default 0.01)");
    leaf->add_option("--trials", opt.trials, "override the computed trial count");
    leaf->add_option("--threads", opt.threads, "trial worker threads (default: all cores)");
    leaf->add_option("--budget-sets", opt.budget_sets,
                     "cap on candidate color sets (default 1e6)");
    leaf->add_option("--budget-tuples", opt.budget_tuples,
                     "cap on candidate solution multisets (default 1e8)");
    CLI::Option* json_flag = leaf->add_flag("--json", opt.json, "JSON output (default)");
    leaf->add_flag("--text", opt.text, "plain text output")->excludes(json_flag);
    leaf->callback([&opt, leaf, oracle, problem] {
        opt.oracle = oracle;
        opt.problem = problem;
        opt.trials_given = leaf->count("--trials") > 0;
        opt.seed_given = leaf->count("--seed") > 0;
        opt.delta_given = leaf->count("--delta") > 0;
    });
}

divsol::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw divsol::MalformedInputError("cannot open '" + path + "'");
    return divsol::Graph::parse(in);
}

divsol::IntervalSet load_intervals(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw divsol::MalformedInputError("cannot open '" + path + "'");
    return divsol::parse_intervals(in);
}

ordered_json solutions_json(const std::vector<divsol::ElementSubset>& family) {
    ordered_json arr = ordered_json::array();
    for (const divsol::ElementSubset& s : family) arr.push_back(s.indices());
    return arr;
}

template <typename Pred>
void validate_family(const std::vector<divsol::ElementSubset>& family, Pred&& pred,
                     divsol::DiversityMeasure measure, std::uint64_t value) {
    for (const divsol::ElementSubset& s : family)
        if (!pred(s))
            throw divsol::InternalError("emitted solution fails the problem predicate");
    if (divsol::evaluate(measure, family) != value)
        throw divsol::InternalError("emitted value disagrees with its solutions");
}

ordered_json run_problem(const Options& opt) {
    using namespace divsol;
    DiversityMeasure measure =
        opt.measure == "sum" ? DiversityMeasure::Sum : DiversityMeasure::Min;
    const std::size_t r = static_cast<std::size_t>(opt.r);
    const std::size_t k = static_cast<std::size_t>(opt.k);

    bool exact = opt.oracle || opt.problem == Problem::SpanningTrees ||
                 opt.problem == Problem::Forests;
    if (exact) {
        if (opt.seed_given)
            std::cerr << "warning: --seed has no effect on exact subcommands\n";
        if (opt.delta_given)
            std::cerr << "warning: --delta has no effect on exact subcommands\n";
    }

    TrialPlan plan;
    plan.seed = opt.seed;
    plan.delta = opt.delta;
    if (opt.trials_given) plan.trial_override = static_cast<std::size_t>(opt.trials);
    plan.threads = opt.threads == 0
                       ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                       : static_cast<std::size_t>(opt.threads);
    plan.budget_sets = opt.budget_sets;
    plan.budget_tuples = opt.budget_tuples;

    ordered_json out;
    out["problem"] = problem_label(opt.problem);
    ordered_json params;
    params["r"] = opt.r;
    if (opt.problem != Problem::SpanningTrees) params["k"] = opt.k;
    if (opt.problem == Problem::KPath) params["variant"] = opt.variant;
    out["parameters"] = params;
    out["measure"] = opt.measure;

    auto finish_monte_carlo = [&](const SolutionFamily& family,
                                  const std::function<bool(const ElementSubset&)>& pred) {
        validate_family(family.solutions, pred, measure, family.value);
        out["value"] = family.value;
        out["solutions"] = solutions_json(family.solutions);
        out["mode"] = "monte-carlo";
        out["seed"] = opt.seed;
        out["trials"] = family.trials_run;
    };
    auto finish_oracle = [&](const std::vector<ElementSubset>& all, const OracleOptimum& best,
                             const std::function<bool(const ElementSubset&)>& pred) {
        std::vector<ElementSubset> family;
        family.reserve(best.indices.size());
        for (std::size_t i : best.indices) family.push_back(all[i]);
        validate_family(family, pred, measure, best.value);
        out["value"] = best.value;
        out["solutions"] = solutions_json(family);
        out["mode"] = "oracle";
    };

    switch (opt.problem) {
        case Problem::SpanningTrees: {
            Graph g = load_graph(opt.input);
            auto pred = [&g](const ElementSubset& s) { return is_spanning_tree(g, s); };
            if (opt.oracle) {
                if (!g.connected())
                    throw NoSolutionError("no spanning tree exists: graph is disconnected");
                auto all = enumerate_spanning_trees(g);
                finish_oracle(all, exact_diverse_optimum(all, r, measure), pred);
                break;
            }
            if (measure == DiversityMeasure::Min)
                throw MalformedInputError(
                    "--measure min is not supported for spanning-trees; the exact method "
                    "optimizes the distance sum");
            DiverseBasesResult res = diverse_spanning_trees(g, r);
            validate_family(res.bases, pred, measure, res.d_sum);
            out["value"] = res.d_sum;
            out["overlap"] = res.overlap;
            out["solutions"] = solutions_json(res.bases);
            out["mode"] = "exact";
            break;
        }
        case Problem::Forests: {
            Graph g = load_graph(opt.input);
            auto pred = [&g, k](const ElementSubset& s) {
                return s.count() == k && is_forest(g, s);
            };
            if (opt.oracle) {
                auto all = enumerate_forests(g, k);
                finish_oracle(all, exact_diverse_optimum(all, r, measure), pred);
                break;
            }
            if (measure == DiversityMeasure::Min)
                throw MalformedInputError(
                    "--measure min is not supported for forests; the exact method optimizes "
                    "the distance sum");
            DiverseBasesResult res = diverse_forests(g, r, k);
            validate_family(res.bases, pred, measure, res.d_sum);
            out["value"] = res.d_sum;
            out["overlap"] = res.overlap;
            out["solutions"] = solutions_json(res.bases);
            out["mode"] = "exact";
            break;
        }
        case Problem::KPath: {
            Graph g = load_graph(opt.input);
            bool vertex_variant = opt.variant == "vertex";
            std::function<bool(const ElementSubset&)> pred;
            if (vertex_variant)
                pred = [&g, k](const ElementSubset& s) {
                    return s.count() == k && vertex_set_spans_path(g, s);
                };
            else
                pred = [&g, k](const ElementSubset& s) { return is_k_path(g, s, k); };
            if (opt.oracle) {
                auto all = vertex_variant ? enumerate_k_path_vertex_sets(g, k)
                                          : enumerate_k_path_edge_sets(g, k);
                finish_oracle(all, exact_diverse_optimum(all, r, measure), pred);
                break;
            }
            SolutionFamily family = diverse_kpaths(
                g, k, r, measure,
                vertex_variant ? PathVariant::Vertex : PathVariant::Edge, plan);
            finish_monte_carlo(family, pred);
            break;
        }
        case Problem::Matching: {
            Graph g = load_graph(opt.input);
            auto pred = [&g, k](const ElementSubset& s) {
                return s.count() == k && is_matching(g, s);
            };
            if (opt.oracle) {
                auto all = enumerate_matchings(g, k);
                finish_oracle(all, exact_diverse_optimum(all, r, measure), pred);
                break;
            }
            finish_monte_carlo(diverse_matchings(g, k, r, measure, plan), pred);
            break;
        }
        case Problem::Intervals: {
            IntervalSet set = load_intervals(opt.input);
            auto pred = [&set, k](const ElementSubset& s) {
                return s.count() == k && is_disjoint_interval_family(set, s);
            };
            if (opt.oracle) {
                auto all = enumerate_interval_families(set, k);
                finish_oracle(all, exact_diverse_optimum(all, r, measure), pred);
                break;
            }
            finish_monte_carlo(diverse_intervals(set, k, r, measure, plan), pred);
            break;
        }
    }
    return out;
}

void emit_text(const ordered_json& out, double wall_ms) {
    for (const auto& [key, value] : out.items()) {
        if (key == "parameters") {
            for (const auto& [pk, pv] : value.items())
                std::cout << pk << ": " << (pv.is_string() ? pv.get<std::string>() : pv.dump())
                          << "\n";
            continue;
        }
        if (key == "solutions") {
            std::size_t i = 0;
            for (const auto& sol : value) {
                std::cout << "solution " << i++ << ":";
                for (const auto& idx : sol) std::cout << " " << idx;
                std::cout << "\n";
            }
            continue;
        }
        std::cout << key << ": "
                  << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    std::cout << "wall_ms: " << wall_ms << "\n";
}

int run(int argc, char** argv) {
    Options opt;
    CLI::App app{"maximally diverse combinatorial solutions"};
    app.require_subcommand(1);

    CLI::App* diverse = app.add_subcommand("diverse", "solve for a diverse solution family");
    diverse->require_subcommand(1);
    CLI::App* oracle =
        app.add_subcommand("oracle", "brute-force ground truth for small instances");
    oracle->require_subcommand(1);

    for (bool is_oracle : {false, true}) {
        CLI::App* parent = is_oracle ? oracle : diverse;
        add_leaf(parent, opt, is_oracle, Problem::SpanningTrees, false, false,
                 "r spanning trees maximizing the pairwise distance sum");
        add_leaf(parent, opt, is_oracle, Problem::Forests, true, false,
                 "r forests with k edges maximizing the pairwise distance sum");
        add_leaf(parent, opt, is_oracle, Problem::KPath, true, true,
                 "r paths on k vertices with diverse vertex or edge sets");
        add_leaf(parent, opt, is_oracle, Problem::Matching, true, false,
                 "r matchings of size k with diverse edge sets");
        add_leaf(parent, opt, is_oracle, Problem::Intervals, true, false,
                 "r families of k disjoint intervals with diverse members");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    ordered_json out = run_problem(opt);
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (opt.text)
        emit_text(out, wall_ms);
    else
        std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const divsol::MalformedInputError& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 1;
    } catch (const divsol::NoSolutionError& e) {
        std::cerr << "error: no solution: " << e.what() << "\n";
        return 2;
    } catch (const divsol::BudgetExceededError& e) {
        std::cerr << "error: budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const divsol::InternalError& e) {
        std::cerr << "error: internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal error: " << e.what() << "\n";
        return 4;
    }
}
