#include "wsqopt/rqaoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wsqopt/errors.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

CorrelationMatrix from_edges(const WeightedGraph& g, std::span<const double> values) {
    CorrelationMatrix m = CorrelationMatrix::Zero(g.n(), g.n());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edges()[e];
        m(edge.i, edge.j) = m(edge.j, edge.i) = values[e];
    }
    return m;
}

struct Angles {
    double beta;
    double gamma;
};

Angles optimise_depth1(const Depth1Simulator& sim, const RqaoaConfig& cfg) {
    if (cfg.fixed_angles) return {cfg.fixed_angles->first, cfg.fixed_angles->second};
    const GridPoint start = grid_search([&](double b, double c) { return sim.energy(b, c); }, cfg.grid);
    const MinimizeResult r =
        minimize([&](std::span<const double> x) { return sim.energy(x[0], x[1]); }, {start.beta, start.gamma},
                 cfg.optimizer);
    return {r.x[0], r.x[1]};
}

}  // namespace

CorrelationMatrix correlation_matrix_depth1(const WeightedGraph& g, std::span<const double> c_star,
                                            double epsilon, double beta, double gamma, MixerKind kind) {
    const Depth1Simulator sim(g, c_star, epsilon, kind);
    return from_edges(g, sim.edge_correlators(beta, gamma));
}

CorrelationMatrix aggregate_correlations(std::span<const CorrelationMatrix> runs) {
    require(!runs.empty(), "nothing to aggregate");
    CorrelationMatrix sum = runs.front();
    for (std::size_t r = 1; r < runs.size(); ++r) {
        require(runs[r].rows() == sum.rows() && runs[r].cols() == sum.cols(),
                "correlation matrices differ in size");
        sum += runs[r];
    }
    return sum / static_cast<double>(runs.size());
}

Elimination eliminate(const WeightedGraph& g, const CorrelationMatrix& m, bool allow_ambiguous) {
    require(m.rows() == g.n() && m.cols() == g.n(), "correlation matrix does not match the graph");
    if (g.num_edges() == 0) throw AmbiguousElimination("graph has no edges to eliminate along");
    const Edge* chosen = nullptr;
    double best = 0.0;
    for (const Edge& e : g.edges()) {
        const double a = std::abs(m(e.i, e.j));
        if (a > best) {
            best = a;
            chosen = &e;
        }
    }
    if (chosen == nullptr) {
        if (!allow_ambiguous) throw AmbiguousElimination("every edge correlator is zero");
        chosen = &g.edges().front();
    }
    const double c = m(chosen->i, chosen->j);
    const int sign = c >= 0.0 ? 1 : -1;
    Elimination out{reduce_maxcut(g, chosen->j, chosen->i, sign), {chosen->j, chosen->i, sign, c}};
    return out;
}

const char* to_string(RqaoaMode mode) noexcept {
    switch (mode) {
        case RqaoaMode::Standard: return "standard";
        case RqaoaMode::WarmStart: return "warm-start";
        case RqaoaMode::ClassicalGw: return "classical-gw";
    }
    return "?";
}

RqaoaMode parse_rqaoa_mode(std::string_view text) {
    if (text == "standard") return RqaoaMode::Standard;
    if (text == "warm-start" || text == "ws") return RqaoaMode::WarmStart;
    if (text == "classical-gw") return RqaoaMode::ClassicalGw;
    throw InvalidInput("unknown recursion mode '" + std::string(text) + "'");
}

void RqaoaConfig::validate() const {
    require(n_stop >= 1, "n_stop must be at least 1");
    require(gw_keep >= 1 && gw_samples >= gw_keep, "need N >= M >= 1");
    require(epsilon >= 0.0 && epsilon <= 0.5, "epsilon must lie in [0, 0.5]");
    grid.validate();
    optimizer.validate();
}

RqaoaResult run_rqaoa(const WeightedGraph& g, const RqaoaConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    require(g.n() >= 1, "graph needs at least one node");

    WeightedGraph current = g;
    std::vector<int> labels(static_cast<std::size_t>(g.n()));
    std::iota(labels.begin(), labels.end(), 0);
    RqaoaResult out;

    for (int iter = 0; current.n() > cfg.n_stop && current.num_edges() > 0; ++iter) {
        RqaoaIteration step;
        step.iter = iter;
        step.n = current.n();
        CorrelationMatrix m;

        if (cfg.mode == RqaoaMode::Standard) {
            const Depth1Simulator sim(current, {}, 0.5, MixerKind::Standard);
            const Angles a = optimise_depth1(sim, cfg);
            step.angles.emplace_back(a.beta, a.gamma);
            m = from_edges(current, sim.edge_correlators(a.beta, a.gamma));
        } else {
            const GwCuts gw = gw_best_cuts(current, cfg.gw_samples, cfg.gw_keep,
                                           derive_seed(seed, "rqaoa-gw", {static_cast<std::uint64_t>(iter)}),
                                           cfg.sdp);
            step.gw_best_value = gw.values.front();
            std::vector<CorrelationMatrix> runs;
            for (const CutAssignment& cut : gw.cuts) {
                if (cfg.mode == RqaoaMode::ClassicalGw) {
                    const Spins& z = cut.spins();
                    CorrelationMatrix r = CorrelationMatrix::Zero(current.n(), current.n());
                    for (const Edge& e : current.edges()) r(e.i, e.j) = r(e.j, e.i) = z[e.i] * z[e.j];
                    runs.push_back(std::move(r));
                    continue;
                }
                const Bits x = spins_to_bits(cut.spins());
                const std::vector<double> c_star(x.begin(), x.end());
                const Depth1Simulator sim(current, c_star, cfg.epsilon, MixerKind::WarmStartRounded);
                const Angles a = optimise_depth1(sim, cfg);
                step.angles.emplace_back(a.beta, a.gamma);
                runs.push_back(from_edges(current, sim.edge_correlators(a.beta, a.gamma)));
            }
            m = aggregate_correlations(runs);
        }

        Elimination e = eliminate(current, m, cfg.allow_ambiguous);
        step.record = {labels[e.record.eliminated], labels[e.record.kept], e.record.sign, e.record.correlator};
        step.offset = e.reduced.offset;
        out.offset_total += e.reduced.offset;
        labels.erase(labels.begin() + e.record.eliminated);
        current = std::move(e.reduced.graph);
        out.trace.push_back(std::move(step));
    }

    Spins z(static_cast<std::size_t>(g.n()), 1);
    if (current.num_edges() > 0) {
        const MaxCut exact = brute_force_maxcut(current);
        out.reduced_value = exact.value;
        for (std::size_t k = 0; k < labels.size(); ++k) z[labels[k]] = exact.cut.spins()[k];
    }
    for (auto it = out.trace.rbegin(); it != out.trace.rend(); ++it)
        z[it->record.eliminated] = it->record.sign * z[it->record.kept];

    out.cut = CutAssignment(std::move(z)).canonical();
    out.value = cut_value(g, out.cut.spins());
    double scale = 1.0;
    for (const Edge& e : g.edges()) scale += std::abs(e.w);
    if (std::abs(out.value - (out.reduced_value + out.offset_total)) > 1e-9 * scale)
        throw SolverError("back-substituted cut value " + std::to_string(out.value) +
                          " disagrees with reduced optimum plus offsets " +
                          std::to_string(out.reduced_value + out.offset_total));
    return out;
}

RqaoaResult run_classical_recursive_gw(const WeightedGraph& g, RqaoaConfig cfg, std::uint64_t seed) {
    cfg.mode = RqaoaMode::ClassicalGw;
    return run_rqaoa(g, cfg, seed);
}

}  // namespace wsqopt
