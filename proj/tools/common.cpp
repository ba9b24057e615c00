#include <cstdio>
#include <iostream>

#include "cli.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/io.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt::cli {

json options_json(const Options& o, const std::string& command) {
    auto opt = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
    json j{{"command", command}, {"seed", o.seed}, {"n", opt(o.n)}};
    if (command == "generate") {
        j["kind"] = o.kind;
        if (o.kind == "graph-er") {
            j["p_edge"] = o.p_edge;
            j["weights"] = o.weights;
        } else if (o.kind == "graph-complete") {
            j["weight_lo"] = o.weight_lo;
            j["weight_hi"] = o.weight_hi;
        } else {
            j["q"] = o.q;
            j["B"] = o.budget.value_or(o.n.value_or(12) / 2);
            j["lambda"] = o.lambda;
        }
        return j;
    }
    j["p"] = o.p;
    j["epsilon"] = opt(o.epsilon);
    j["depth"] = o.depth;
    j["n_stop"] = opt(o.n_stop);
    j["gw_samples"] = o.gw_samples;
    j["gw_keep"] = o.gw_keep;
    j["grid"] = o.grid;
    j["multistart"] = opt(o.multistart);
    j["mode"] = o.mode;
    if (command == "solve") {
        j["method"] = o.method;
        j["instance"] = o.instance;
    } else {
        j["recipe"] = o.recipe;
        j["instances"] = opt(o.instances);
        j["epsilons"] = o.epsilons;
        j["samples"] = o.sample_counts;
        j["trajectories"] = o.trajectories;
        j["dt"] = o.dt;
    }
    return j;
}

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            g.beta_points = g.gamma_points = std::stoi(text);
        } else {
            g.beta_points = std::stoi(text.substr(0, x));
            g.gamma_points = std::stoi(text.substr(x + 1));
        }
    } catch (const std::exception&) {
        throw InvalidInput("grid must look like 24x24, got '" + text + "'");
    }
    g.validate();
    return g;
}

Seeding make_seeding(const Options& o, std::uint64_t seed) {
    Seeding s;
    s.grid = parse_grid(o.grid);
    if (o.multistart.value_or(0) > 0) {
        s.kind = SeedingKind::Random;
        s.starts = *o.multistart;
        s.seed = seed;
    }
    return s;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        io::write_file(o.out, text);
    }
}

}  // namespace wsqopt::cli
