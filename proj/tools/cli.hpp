#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wsqopt/problem.hpp"
#include "wsqopt/variational.hpp"

namespace wsqopt::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

struct Options {
    std::uint64_t seed = 0;
    std::string out;
    std::string instance;
    std::optional<int> n;
    int p = 1;
    std::optional<double> epsilon;
    int depth = 5;
    std::optional<int> n_stop;
    int gw_samples = 10;
    int gw_keep = 5;
    std::string grid = "24x24";
    std::optional<int> multistart;  ///< unset or 0: grid seeding
    std::string mode;
    int threads = 1;
    std::string trace;

    // generate
    std::string kind;
    double p_edge = 0.5;
    std::vector<double> weights{1.0};
    int weight_lo = -10;
    int weight_hi = 10;
    double q = 2.0;
    std::optional<int> budget;
    double lambda = 3.0;

    // solve
    std::string method;

    // experiment
    std::string recipe;
    std::optional<int> instances;
    std::vector<double> epsilons;
    std::vector<int> sample_counts;
    int trajectories = 20'000;
    double dt = 1e-3;
};

json options_json(const Options& o, const std::string& command);

GridSpec parse_grid(const std::string& text);
Seeding make_seeding(const Options& o, std::uint64_t seed);

/// Writes to o.out, or stdout when empty.
void emit(const Options& o, const std::string& text);

int cmd_generate(const Options& o);
int cmd_solve(const Options& o);
int cmd_experiment(const Options& o);

/// Runs fn(0..count-1) on `threads` workers; results come back in index order.
template <class T, class Fn>
std::vector<T> parallel_map(int count, int threads, Fn fn);

}  // namespace wsqopt::cli

#include "parallel.hpp"
