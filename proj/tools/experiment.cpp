#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cli.hpp"
#include "wsqopt/diffusion.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/io.hpp"
#include "wsqopt/random.hpp"
#include "wsqopt/relaxation.hpp"
#include "wsqopt/rqaoa.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt::cli {

namespace {

/// One CSV row; cells are preformatted.
using Row = std::vector<std::string>;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

std::string csv(const Row& header, const std::vector<std::vector<Row>>& blocks) {
    std::ostringstream s;
    auto line = [&](const Row& r) {
        for (std::size_t c = 0; c < r.size(); ++c) s << (c ? "," : "") << r[c];
        s << '\n';
    };
    line(header);
    for (const auto& block : blocks)
        for (const Row& r : block) line(r);
    return s.str();
}

std::uint64_t cell_seed(const Options& o, std::string_view label, int instance) {
    return derive_seed(o.seed, label, {static_cast<std::uint64_t>(instance)});
}

std::string fig2(const Options& o) {
    const int n = o.n.value_or(6);
    const int count = o.instances.value_or(5);
    const double eps = o.epsilon.value_or(0.0);
    Options seeded = o;
    if (!o.multistart) seeded.multistart = 10;
    auto blocks = parallel_map<std::vector<Row>>(count, o.threads, [&](int inst) {
        GbmConfig cfg;
        cfg.n_assets = n;
        cfg.seed = cell_seed(o, "fig2-instance", inst);
        PortfolioInstance p = gbm_portfolio(cfg);
        p.q = 2.0;
        p.budget = n / 2;
        p.lambda = 3.0;
        const QuboProblem qubo = portfolio_qubo(p);
        const IsingModel ising = qubo_to_ising(qubo);
        const GroundState ground = brute_force(ising);
        const RelaxedSolution relaxed = solve_qp(qubo);
        const std::vector<double> c_star(relaxed.c_star.data(), relaxed.c_star.data() + n);
        std::vector<Row> rows;
        for (int depth = 1; depth <= o.depth; ++depth) {
            for (MixerKind kind : {MixerKind::Standard, MixerKind::WarmStart}) {
                const auto cs = kind == MixerKind::Standard ? std::nullopt : std::optional(c_star);
                const QaoaResult r =
                    run_qaoa(ising, kind, cs, eps, depth, make_seeding(seeded, cell_seed(o, "fig2-starts", inst)));
                rows.push_back({fmt(inst), to_string(kind), fmt(depth), fmt(r.energy), fmt(ground.energy),
                                fmt(probability_of(r.state, index_from_spins(ground.z))), fmt(r.evals),
                                fmt(static_cast<long long>(o.seed))});
            }
        }
        return rows;
    });
    return csv({"instance", "method", "p", "energy", "optimum", "p_opt", "evals", "seed"}, blocks);
}

std::string fig4(const Options& o) {
    const int n = o.n.value_or(12);
    const int count = o.instances.value_or(5);
    const std::vector<double> eps = o.epsilons.empty() ? std::vector<double>{0.0, 0.1, 0.25, 0.4, 0.5} : o.epsilons;
    auto blocks = parallel_map<std::vector<Row>>(count, o.threads, [&](int inst) {
        const WeightedGraph g = complete_graph(n, cell_seed(o, "fig4-graph", inst));
        const MaxCut exact = brute_force_maxcut(g);
        const GwCuts gw = gw_best_cuts(g, o.gw_samples, 1, cell_seed(o, "fig4-gw", inst));
        const Bits x = spins_to_bits(gw.cuts.front().spins());
        const std::vector<double> c_star(x.begin(), x.end());
        const IsingModel ising = maxcut_to_ising(g);
        std::vector<Row> rows;
        for (double e : eps) {
            const QaoaResult r = run_qaoa(ising, MixerKind::WarmStartRounded, c_star, e, o.p,
                                          make_seeding(o, cell_seed(o, "fig4-starts", inst)));
            rows.push_back({fmt(inst), fmt(e), fmt(r.energy), fmt(exact.value), fmt(-r.energy / exact.value),
                            fmt(gw.values.front() / exact.value), fmt(r.params.betas[0]), fmt(r.params.gammas[0]),
                            fmt(static_cast<long long>(o.seed))});
        }
        return rows;
    });
    return csv({"instance", "epsilon", "energy", "max_cut", "energy_ratio", "gw_ratio", "beta1", "gamma1", "seed"},
               blocks);
}

std::string fig6(const Options& o) {
    const int n = o.n.value_or(12);
    const int count = o.instances.value_or(30);
    RqaoaConfig base;
    base.n_stop = o.n_stop.value_or(std::max(1, n / 2));
    base.gw_samples = o.gw_samples;
    base.gw_keep = std::min(o.gw_keep, o.gw_samples);
    base.epsilon = o.epsilon.value_or(0.25);
    base.grid = parse_grid(o.grid);
    auto blocks = parallel_map<std::vector<Row>>(count, o.threads, [&](int inst) {
        const WeightedGraph g = complete_graph(n, cell_seed(o, "fig6-graph", inst));
        const MaxCut exact = brute_force_maxcut(g);
        std::vector<Row> rows;
        for (RqaoaMode mode : {RqaoaMode::Standard, RqaoaMode::WarmStart, RqaoaMode::ClassicalGw}) {
            RqaoaConfig cfg = base;
            cfg.mode = mode;
            const RqaoaResult r = run_rqaoa(g, cfg, cell_seed(o, "fig6-rqaoa", inst));
            const bool optimal = std::abs(r.value - exact.value) <= 1e-9 * (1.0 + std::abs(exact.value));
            rows.push_back({fmt(inst), to_string(mode), fmt(r.value), fmt(exact.value), fmt(r.value / exact.value),
                            optimal ? "1" : "0", fmt(static_cast<long long>(o.seed))});
        }
        return rows;
    });
    return csv({"instance", "method", "value", "max_cut", "ratio", "optimal", "seed"}, blocks);
}

std::string fig7(const Options& o) {
    const int n = o.n.value_or(12);
    const int count = o.instances.value_or(20);
    std::vector<int> counts = o.sample_counts.empty() ? std::vector<int>{1, 10, 100} : o.sample_counts;
    std::sort(counts.begin(), counts.end());
    if (counts.front() < 1) throw InvalidInput("rounding counts must be positive");
    auto blocks = parallel_map<std::vector<Row>>(count, o.threads, [&](int inst) {
        const WeightedGraph g = complete_graph(n, cell_seed(o, "fig7-graph", inst));
        const MaxCut exact = brute_force_maxcut(g);
        const GwCuts gw = gw_best_cuts(g, counts.back(), 1, cell_seed(o, "fig7-gw", inst));
        std::vector<Row> rows;
        for (int big_n : counts) {
            const auto first = gw.all_values.begin();
            const double best = *std::max_element(first, first + big_n);
            double mean = 0.0;
            for (int k = 0; k < big_n; ++k) mean += gw.all_values[k] / big_n;
            rows.push_back({fmt(inst), fmt(big_n), fmt(best), fmt(exact.value), fmt(best / exact.value),
                            fmt(mean / exact.value), fmt(expected_cut_value(g, gw.factor) / exact.value),
                            fmt(static_cast<long long>(o.seed))});
        }
        return rows;
    });
    return csv({"instance", "N", "best_value", "max_cut", "best_ratio", "mean_ratio", "expected_ratio", "seed"},
               blocks);
}

std::string prop2(const Options& o) {
    const int pairs = o.n.value_or(10);
    Rng rng(derive_seed(o.seed, "prop2-dots"));
    std::vector<double> dots(static_cast<std::size_t>(pairs));
    for (double& d : dots) d = rng.uniform(-0.95, 0.95);
    const GramFactor f = paired_factor(dots, 8, derive_seed(o.seed, "prop2-vectors"));
    const std::string speed_name = o.mode.empty() ? "krivine" : o.mode;
    SpeedFunction speed = SpeedFunction::krivine();
    if (speed_name == "poly") speed = SpeedFunction::polynomial(1.0);
    else if (speed_name != "krivine") throw InvalidInput("prop2 speed must be krivine or poly");
    DiffusionConfig cfg;
    cfg.dt = o.dt;
    cfg.trajectories = o.trajectories;
    cfg.seed = derive_seed(o.seed, "prop2-diffusion");
    const SignSamples samples = simulate_signs(f, speed, cfg);
    std::vector<std::pair<int, int>> idx;
    for (int p = 0; p < pairs; ++p) idx.emplace_back(2 * p, 2 * p + 1);
    std::vector<Row> rows;
    for (const CorrelationRow& r : correlation_report(samples, f, idx))
        rows.push_back({fmt(r.i / 2), speed_name, fmt(r.u_dot_v), fmt(r.empirical), fmt(r.predicted), fmt(r.abs_err),
                        fmt(r.std_err), fmt(r.truncated_frac), fmt(static_cast<long long>(o.seed))});
    return csv({"pair", "speed", "u_dot_v", "empirical", "predicted", "abs_err", "stderr", "truncated_frac", "seed"},
               {rows});
}

}  // namespace

int cmd_experiment(const Options& o) {
    std::string text;
    if (o.recipe == "fig2") text = fig2(o);
    else if (o.recipe == "fig4") text = fig4(o);
    else if (o.recipe == "fig6") text = fig6(o);
    else if (o.recipe == "fig7") text = fig7(o);
    else text = prop2(o);
    emit(o, text);
    if (!o.out.empty()) io::write_file(o.out + ".json", options_json(o, "experiment").dump(2) + "\n");
    return kExitOk;
}

}  // namespace wsqopt::cli
