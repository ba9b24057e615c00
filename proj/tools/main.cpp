// wsqopt: generate instances, run solvers, reproduce experiments.

#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "cli.hpp"
#include "wsqopt/errors.hpp"

using namespace wsqopt;
using namespace wsqopt::cli;

namespace {

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
    cmd->add_option("--n", o.n, "Problem size")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

void add_solver_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "QAOA depth")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", o.epsilon, "Warm-start regularisation")->check(CLI::Range(0.0, 0.5));
    cmd->add_option("--depth", o.depth, "Largest depth of a depth sweep")->check(CLI::PositiveNumber);
    cmd->add_option("--n-stop", o.n_stop, "Recursion floor (default n/2)")->check(CLI::PositiveNumber);
    cmd->add_option("--gw-samples", o.gw_samples, "GW roundings N")->check(CLI::PositiveNumber);
    cmd->add_option("--gw-keep", o.gw_keep, "Best unique GW cuts kept, M")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", o.grid, "Depth-one seeding grid, BETAxGAMMA points");
    cmd->add_option("--multistart", o.multistart, "Random starts instead of grid seeding (0 = grid)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--mode", o.mode, "Variant selector (see README)");
    cmd->add_option("--trace", o.trace, "JSON-lines trace file for recursive methods");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Warm-started QAOA toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("generate", "Write a random instance");
    add_common(gen, o);
    gen->add_option("kind", o.kind, "graph-er | graph-complete | portfolio")
        ->required()
        ->check(CLI::IsMember({"graph-er", "graph-complete", "portfolio"}));
    gen->add_option("--p-edge", o.p_edge, "Edge probability (graph-er)")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--weights", o.weights, "Edge weight set (graph-er)");
    gen->add_option("--weight-lo", o.weight_lo, "Lowest integer weight (graph-complete)");
    gen->add_option("--weight-hi", o.weight_hi, "Highest integer weight (graph-complete)");
    gen->add_option("--q", o.q, "Risk factor (portfolio)");
    gen->add_option("--budget", o.budget, "Budget B (portfolio, default n/2)");
    gen->add_option("--lambda", o.lambda, "Penalty weight (portfolio)");

    auto* solve = app.add_subcommand("solve", "Run one method on one instance");
    add_common(solve, o);
    add_solver_options(solve, o);
    solve->add_option("method", o.method, "qp | sdp | gw | qaoa | ws-qaoa | rqaoa | ws-rqaoa | classical-gw | brute")
        ->required()
        ->check(CLI::IsMember({"qp", "sdp", "gw", "qaoa", "ws-qaoa", "rqaoa", "ws-rqaoa", "classical-gw", "brute"}));
    solve->add_option("--instance", o.instance, "Graph file or portfolio JSON")->required();

    auto* exp = app.add_subcommand("experiment", "Run an experiment recipe and write CSV");
    add_common(exp, o);
    add_solver_options(exp, o);
    exp->add_option("recipe", o.recipe, "fig2 | fig4 | fig6 | fig7 | prop2")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig4", "fig6", "fig7", "prop2"}));
    exp->add_option("--instances", o.instances, "Number of random instances")->check(CLI::PositiveNumber);
    exp->add_option("--epsilons", o.epsilons, "Epsilon sweep (fig4)");
    exp->add_option("--samples", o.sample_counts, "Rounding counts N (fig7)");
    exp->add_option("--trajectories", o.trajectories, "Diffusion trajectories (prop2)")->check(CLI::PositiveNumber);
    exp->add_option("--dt", o.dt, "Diffusion time step (prop2)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gen) return cmd_generate(o);
        if (*solve) return cmd_solve(o);
        return cmd_experiment(o);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}
