#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "divsol/divsol.hpp"

namespace support {

inline divsol::Graph path_graph(std::size_t n) {
    divsol::Graph g(n);
    for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline divsol::Graph cycle_graph(std::size_t n) {
    divsol::Graph g = path_graph(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

inline divsol::Graph complete_graph(std::size_t n) {
    divsol::Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline divsol::Graph triangle() { return cycle_graph(3); }

inline divsol::Graph star_graph(std::size_t leaves) {
    divsol::Graph g(leaves + 1);
    for (std::size_t v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

// Random spanning tree through a shuffled vertex order, then extra edges.
inline divsol::Graph random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                            std::size_t extra) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[divsol::uniform_below(rng, i)]);
    divsol::Graph g(n);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t a = order[i];
        std::size_t b = order[divsol::uniform_below(rng, i)];
        g.add_edge(std::min(a, b), std::max(a, b));
    }
    std::size_t added = 0;
    for (std::size_t attempt = 0; added < extra && attempt < 60; ++attempt) {
        std::size_t u = divsol::uniform_below(rng, n);
        std::size_t v = divsol::uniform_below(rng, n);
        if (u == v) continue;
        if (g.edge_index(std::min(u, v), std::max(u, v))) continue;
        g.add_edge(std::min(u, v), std::max(u, v));
        ++added;
    }
    return g;
}

// Half-integer endpoints so the rational paths get exercised.
inline divsol::IntervalSet random_intervals(std::mt19937_64& rng, std::size_t count,
                                            std::uint64_t span_halves) {
    divsol::IntervalSet set;
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t a = static_cast<std::int64_t>(divsol::uniform_below(rng, span_halves));
        std::int64_t len = 1 + static_cast<std::int64_t>(divsol::uniform_below(rng, 6));
        set.intervals.push_back({divsol::Rational(a, 2), divsol::Rational(a + len, 2)});
    }
    return set;
}

struct ProcResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

// Runs a shell command, capturing stdout/stderr through files in ./cli_tmp.
inline ProcResult run_process(const std::string& cmd) {
    namespace fs = std::filesystem;
    static int counter = 0;
    fs::create_directories("cli_tmp");
    fs::path out = fs::path("cli_tmp") / ("out" + std::to_string(++counter) + ".txt");
    fs::path err = fs::path("cli_tmp") / ("err" + std::to_string(counter) + ".txt");
    std::string full = cmd + " > " + out.string() + " 2> " + err.string();
    int status = std::system(full.c_str());
    ProcResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

inline std::string write_file(const std::string& name, const std::string& content) {
    std::filesystem::create_directories("cli_tmp");
    std::string path = "cli_tmp/" + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace support
