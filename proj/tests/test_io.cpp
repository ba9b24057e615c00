#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/io.hpp"

using namespace wsqopt;

TEST_SUITE("io") {

TEST_CASE("graph text round trip") {
    const WeightedGraph g = testutil::random_weighted_graph(9, 0.5, 4);
    std::stringstream buf;
    io::write_graph(buf, g);
    CHECK(io::read_graph(buf) == g);

    const auto path = std::filesystem::temp_directory_path() / "wsqopt_io_test.txt";
    io::save_graph(path, g);
    CHECK(io::load_graph(path) == g);
    std::filesystem::remove(path);
}

TEST_CASE("malformed graphs are rejected") {
    std::stringstream truncated("3 2\n0 1 1.0\n");
    CHECK_THROWS(io::read_graph(truncated));
    std::stringstream out_of_range("2 1\n0 5 1.0\n");
    CHECK_THROWS_AS(io::read_graph(out_of_range), InvalidInput);
    CHECK_THROWS(io::load_graph("/nonexistent/graph.txt"));
}

TEST_CASE("portfolio JSON round trip") {
    GbmConfig cfg;
    cfg.seed = 12;
    PortfolioInstance p = gbm_portfolio(cfg);
    p.q = 2.0;
    p.budget = 3;
    p.lambda = 3.0;
    const io::json j = io::to_json(p, 12);
    CHECK(j.at("seed") == 12);
    const PortfolioInstance back = io::portfolio_from_json(io::json::parse(j.dump()));
    CHECK(back.sigma == p.sigma);
    CHECK(back.mu == p.mu);
    CHECK(back.q == p.q);
    CHECK(back.budget == p.budget);
    CHECK(back.lambda == p.lambda);
}

TEST_CASE("Gram factor JSON round trip") {
    const WeightedGraph g = complete_graph(6, 2);
    const GramFactor f = solve_maxcut_sdp(g, 3);
    const GramFactor back = io::gram_factor_from_json(io::json::parse(io::to_json(f).dump()));
    CHECK(back.vectors == f.vectors);
    CHECK(back.objective == f.objective);
}

TEST_CASE("spins and QAOA results serialise") {
    const std::vector<int> z{1, -1, 1};
    CHECK(io::spins_json(z).dump() == "[1,-1,1]");
    QaoaResult r;
    r.params = {{0.1}, {0.2}};
    r.energy = -1.5;
    r.p_target = 0.25;
    const io::json j = io::to_json(r);
    CHECK(j.at("betas")[0] == 0.1);
    CHECK(j.at("energy") == -1.5);
    CHECK(j.at("p_target") == 0.25);
}

}
