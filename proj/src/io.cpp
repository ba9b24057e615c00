#include "wsqopt/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wsqopt/errors.hpp"

namespace wsqopt::io {

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.n() << ' ' << g.num_edges() << '\n';
    out << std::setprecision(17);
    for (const Edge& e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.w << '\n';
}

WeightedGraph read_graph(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 1 || m < 0) throw InvalidInput("graph header must be \"n m\" with n >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        Edge e{};
        if (!(in >> e.i >> e.j >> e.w))
            throw InvalidInput("graph file ends after " + std::to_string(k) + " of " + std::to_string(m) + " edges");
        edges.push_back(e);
    }
    return WeightedGraph(static_cast<int>(n), std::move(edges));
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& g) {
    std::ostringstream s;
    write_graph(s, g);
    write_file(path, s.str());
}

WeightedGraph load_graph(const std::filesystem::path& path) {
    std::istringstream s(read_file(path));
    return read_graph(s);
}

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty()) throw InvalidInput(std::string(what) + " must be a non-empty array");
    const std::size_t cols = rows.front().size();
    Eigen::MatrixXd m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols) throw InvalidInput(std::string(what) + " is ragged");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

}  // namespace

json to_json(const PortfolioInstance& p, std::optional<std::uint64_t> seed) {
    json j;
    j["sigma"] = matrix_json(p.sigma);
    j["mu"] = std::vector<double>(p.mu.data(), p.mu.data() + p.mu.size());
    j["q"] = p.q;
    j["B"] = p.budget;
    j["lambda"] = p.lambda;
    if (seed) j["seed"] = *seed;
    return j;
}

PortfolioInstance portfolio_from_json(const json& j) {
    try {
        PortfolioInstance p;
        p.sigma = matrix_from(j.at("sigma"), "sigma");
        const auto mu = j.at("mu").get<std::vector<double>>();
        p.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(mu.size()));
        p.q = j.value("q", 1.0);
        p.budget = j.value("B", 0);
        p.lambda = j.value("lambda", 0.0);
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed portfolio JSON: ") + e.what());
    }
}

json to_json(const GramFactor& f) {
    return {{"k", f.rank()}, {"vectors", matrix_json(f.vectors)}, {"objective", f.objective}};
}

GramFactor gram_factor_from_json(const json& j) {
    try {
        GramFactor f;
        f.vectors = matrix_from(j.at("vectors"), "vectors");
        if (j.contains("k") && j["k"].get<int>() != f.rank()) throw InvalidInput("\"k\" disagrees with vectors");
        f.objective = j.value("objective", 0.0);
        f.validate();
        return f;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed Gram factor JSON: ") + e.what());
    }
}

json to_json(const QaoaResult& r) {
    json j{{"betas", r.params.betas}, {"gammas", r.params.gammas}, {"energy", r.energy}, {"evals", r.evals}};
    j["p_target"] = r.p_target ? json(*r.p_target) : json(nullptr);
    return j;
}

json spins_json(std::span<const int> z) { return std::vector<int>(z.begin(), z.end()); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace wsqopt::io
