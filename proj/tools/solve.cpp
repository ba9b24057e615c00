#include <chrono>
#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/io.hpp"
#include "wsqopt/relaxation.hpp"
#include "wsqopt/rqaoa.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt::cli {

namespace {

constexpr int kRatioMaxNodes = 20;

struct Instance {
    std::optional<WeightedGraph> graph;
    std::optional<PortfolioInstance> portfolio;
    int n() const { return graph ? graph->n() : static_cast<int>(portfolio->mu.size()); }
};

Instance load_instance(const std::string& path) {
    const std::string text = io::read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    Instance inst;
    if (first != std::string::npos && text[first] == '{') {
        inst.portfolio = io::portfolio_from_json(json::parse(text));
    } else {
        std::istringstream s(text);
        inst.graph = io::read_graph(s);
    }
    return inst;
}

json trace_json(const RqaoaIteration& it) {
    json j{{"iter", it.iter},
           {"n", it.n},
           {"chosen_pair", {it.record.eliminated, it.record.kept}},
           {"sign", it.record.sign},
           {"correlator", it.record.correlator},
           {"offset", it.offset}};
    j["gw_best_value"] = it.gw_best_value ? json(*it.gw_best_value) : json(nullptr);
    return j;
}

std::uint64_t most_likely(const StateVector& s) {
    std::uint64_t best = 0;
    for (std::uint64_t x = 1; x < s.dim(); ++x)
        if (s.probability(x) > s.probability(best)) best = x;
    return best;
}

json solve_graph(const Options& o, const WeightedGraph& g, json& out) {
    const std::string& m = o.method;
    std::optional<MaxCut> exact;
    if (g.n() <= kRatioMaxNodes) exact = brute_force_maxcut(g);
    auto ratio = [&](double v) -> json {
        if (!exact || exact->value <= 0.0) return nullptr;
        return v / exact->value;
    };

    if (m == "brute") {
        const MaxCut c = exact ? *exact : brute_force_maxcut(g);
        out["value"] = c.value;
        out["assignment"] = io::spins_json(c.cut.spins());
        out["optimal"] = true;
    } else if (m == "sdp") {
        const GramFactor f = solve_maxcut_sdp(g, derive_seed(o.seed, "solve-sdp"));
        out["value"] = f.objective;
        out["stationary"] = f.stationary;
        out["sweeps"] = f.sweeps;
        out["expected_cut"] = expected_cut_value(g, f);
        out["factor"] = io::to_json(f);
        out["ratio"] = ratio(f.objective);
    } else if (m == "gw") {
        const GwCuts gw = gw_best_cuts(g, o.gw_samples, std::min(o.gw_keep, o.gw_samples),
                                       derive_seed(o.seed, "solve-gw"));
        double mean = 0.0;
        for (double v : gw.all_values) mean += v / static_cast<double>(gw.all_values.size());
        out["value"] = gw.values.front();
        out["assignment"] = io::spins_json(gw.cuts.front().spins());
        out["cut_values"] = gw.values;
        out["mean_value"] = mean;
        out["sdp_objective"] = gw.factor.objective;
        out["ratio"] = ratio(gw.values.front());
        out["mean_ratio"] = ratio(mean);
    } else if (m == "qaoa" || m == "ws-qaoa") {
        const IsingModel ising = maxcut_to_ising(g);
        std::optional<std::vector<double>> c_star;
        MixerKind kind = MixerKind::Standard;
        if (m == "ws-qaoa") {
            const GwCuts gw = gw_best_cuts(g, o.gw_samples, 1, derive_seed(o.seed, "solve-gw"));
            const Bits x = spins_to_bits(gw.cuts.front().spins());
            c_star = std::vector<double>(x.begin(), x.end());
            kind = o.mode.empty() ? MixerKind::WarmStartRounded : parse_mixer_kind(o.mode);
            if (kind == MixerKind::Standard) throw InvalidInput("ws-qaoa needs a warm-start mixer");
            out["warm_start_cut"] = io::spins_json(gw.cuts.front().spins());
            out["warm_start_value"] = gw.values.front();
        }
        std::optional<Spins> target;
        if (exact) target = exact->cut.spins();
        const QaoaResult r = run_qaoa(ising, kind, c_star, o.epsilon.value_or(0.25), o.p,
                                      make_seeding(o, derive_seed(o.seed, "solve-qaoa")), {}, target);
        out["mixer"] = to_string(kind);
        out["value"] = -r.energy;
        out["qaoa"] = io::to_json(r);
        out["assignment"] = io::spins_json(CutAssignment(spins_from_index(most_likely(r.state), g.n())).canonical().spins());
        out["ratio"] = ratio(-r.energy);
    } else if (m == "rqaoa" || m == "ws-rqaoa" || m == "classical-gw") {
        RqaoaConfig cfg;
        cfg.mode = m == "rqaoa" ? RqaoaMode::Standard : m == "ws-rqaoa" ? RqaoaMode::WarmStart : RqaoaMode::ClassicalGw;
        if (m == "rqaoa" && !o.mode.empty()) cfg.mode = parse_rqaoa_mode(o.mode);
        cfg.n_stop = o.n_stop.value_or(std::max(1, g.n() / 2));
        cfg.gw_samples = o.gw_samples;
        cfg.gw_keep = std::min(o.gw_keep, o.gw_samples);
        cfg.epsilon = o.epsilon.value_or(0.25);
        cfg.grid = parse_grid(o.grid);
        const RqaoaResult r = run_rqaoa(g, cfg, derive_seed(o.seed, "solve-rqaoa"));
        out["recursion_mode"] = to_string(cfg.mode);
        out["n_stop"] = cfg.n_stop;
        out["value"] = r.value;
        out["assignment"] = io::spins_json(r.cut.spins());
        out["cut"] = out["assignment"];
        out["reduced_value"] = r.reduced_value;
        out["offset_total"] = r.offset_total;
        json trace = json::array();
        std::string lines;
        for (const RqaoaIteration& it : r.trace) {
            trace.push_back(trace_json(it));
            lines += trace.back().dump() + "\n";
        }
        out["trace"] = trace;
        if (!o.trace.empty()) io::write_file(o.trace, lines);
        out["ratio"] = ratio(r.value);
        if (exact) out["optimal"] = std::abs(r.value - exact->value) <= 1e-9 * (1.0 + std::abs(exact->value));
    } else {
        throw InvalidInput("method '" + m + "' needs a portfolio instance");
    }
    if (exact) out["max_cut"] = exact->value;
    return out;
}

json solve_portfolio(const Options& o, const PortfolioInstance& p, json& out) {
    const std::string& m = o.method;
    const QuboProblem qubo = portfolio_qubo(p);
    const IsingModel ising = qubo_to_ising(qubo);
    const GroundState ground = brute_force(ising);
    const Bits best = spins_to_bits(ground.z);
    out["optimum"] = ground.energy;
    out["optimal_assignment"] = best;

    if (m == "brute") {
        out["value"] = ground.energy;
        out["assignment"] = best;
    } else if (m == "qp") {
        const RelaxedSolution r = solve_qp(qubo);
        out["value"] = r.objective;
        out["c_star"] = std::vector<double>(r.c_star.data(), r.c_star.data() + r.c_star.size());
        out["iterations"] = r.iterations;
        out["kkt_residual"] = r.kkt_residual;
    } else if (m == "qaoa" || m == "ws-qaoa") {
        std::optional<std::vector<double>> c_star;
        MixerKind kind = MixerKind::Standard;
        if (m == "ws-qaoa") {
            const RelaxedSolution r = solve_qp(qubo);
            c_star = std::vector<double>(r.c_star.data(), r.c_star.data() + r.c_star.size());
            kind = o.mode.empty() ? MixerKind::WarmStart : parse_mixer_kind(o.mode);
            if (kind == MixerKind::Standard) throw InvalidInput("ws-qaoa needs a warm-start mixer");
            out["c_star"] = *c_star;
        }
        QaoaResult r = run_qaoa(ising, kind, c_star, o.epsilon.value_or(0.0), o.p,
                                make_seeding(o, derive_seed(o.seed, "solve-qaoa")));
        r.p_target = probability_of(r.state, index_from_spins(ground.z));
        out["mixer"] = to_string(kind);
        out["value"] = r.energy;
        out["qaoa"] = io::to_json(r);
        out["assignment"] = spins_to_bits(spins_from_index(most_likely(r.state), static_cast<int>(p.mu.size())));
    } else {
        throw InvalidInput("method '" + m + "' needs a graph instance");
    }
    return out;
}

}  // namespace

int cmd_solve(const Options& o) {
    const Instance inst = load_instance(o.instance);
    json out{{"method", o.method}, {"seed", o.seed}, {"config", options_json(o, "solve")}, {"n", inst.n()}};
    const auto start = std::chrono::steady_clock::now();
    if (inst.graph)
        solve_graph(o, *inst.graph, out);
    else
        solve_portfolio(o, *inst.portfolio, out);
    out["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, out.dump(2) + "\n");
    return kExitOk;
}

}  // namespace wsqopt::cli
