#pragma once

#include <cstdint>
#include <vector>

#include "wsqopt/problem.hpp"
#include "wsqopt/random.hpp"

namespace testutil {

inline std::vector<int> all_bits(std::uint64_t index, int n) {
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = static_cast<int>((index >> i) & 1u);
    return x;
}

inline double exhaustive_max_cut(const wsqopt::WeightedGraph& g) {
    double best = -1e300;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << g.n()); ++idx)
        best = std::max(best, wsqopt::cut_value(g, wsqopt::spins_from_index(idx, g.n())));
    return best;
}

inline wsqopt::WeightedGraph random_weighted_graph(int n, double p_edge, std::uint64_t seed) {
    wsqopt::Rng rng(seed);
    std::vector<wsqopt::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p_edge) edges.push_back({i, j, rng.uniform(-3.0, 5.0)});
    return wsqopt::WeightedGraph(n, std::move(edges));
}

inline wsqopt::WeightedGraph unit_triangle() {
    return wsqopt::WeightedGraph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
}

}  // namespace testutil
