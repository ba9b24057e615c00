#include <sstream>

#include "cli.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/io.hpp"

namespace wsqopt::cli {

int cmd_generate(const Options& o) {
    const int n = o.n.value_or(12);
    if (o.kind == "graph-er") {
        if (n < 2) throw InvalidInput("graphs need n >= 2");
        std::ostringstream s;
        io::write_graph(s, random_graph(n, o.p_edge, o.weights, o.seed));
        emit(o, s.str());
    } else if (o.kind == "graph-complete") {
        if (n < 2) throw InvalidInput("graphs need n >= 2");
        if (o.weight_lo > o.weight_hi) throw InvalidInput("weight-lo exceeds weight-hi");
        std::ostringstream s;
        io::write_graph(s, complete_graph(n, o.seed, o.weight_lo, o.weight_hi));
        emit(o, s.str());
    } else {
        GbmConfig cfg;
        cfg.n_assets = n;
        cfg.seed = o.seed;
        PortfolioInstance p = gbm_portfolio(cfg);
        p.q = o.q;
        p.budget = o.budget.value_or(n / 2);
        p.lambda = o.lambda;
        p.validate();
        emit(o, io::to_json(p, o.seed).dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace wsqopt::cli
