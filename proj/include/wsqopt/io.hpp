#pragma once

// Text and JSON formats.
//
// Graph file: first line "n m", then m lines "i j w" (0-based, decimal w).
// Portfolio JSON: {"sigma": [[...]], "mu": [...], "q":, "B":, "lambda":, "seed":}.
// Gram factor JSON: {"k":, "vectors": [[...]]}.
// QAOA result JSON: {"betas": [...], "gammas": [...], "energy":, "evals":, "p_target":}.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "wsqopt/problem.hpp"
#include "wsqopt/relaxation.hpp"
#include "wsqopt/variational.hpp"

namespace wsqopt::io {

using nlohmann::json;

void write_graph(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& in);
void save_graph(const std::filesystem::path& path, const WeightedGraph& g);
WeightedGraph load_graph(const std::filesystem::path& path);

json to_json(const PortfolioInstance& p, std::optional<std::uint64_t> seed = std::nullopt);
PortfolioInstance portfolio_from_json(const json& j);

json to_json(const GramFactor& f);
GramFactor gram_factor_from_json(const json& j);

json to_json(const QaoaResult& r);

json spins_json(std::span<const int> z);

/// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wsqopt::io
