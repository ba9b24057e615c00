#pragma once

// Problem representations: QUBO, Ising and weighted MAXCUT, the conversions
// between them, instance generators, MAXCUT node elimination and an exhaustive
// ground-state oracle.
//
// Spin/bit convention used throughout the library: z_i = 1 - 2 x_i, so the
// binary value x_i = 1 is spin z_i = -1. In a basis-state index, qubit i is
// bit i (qubit 0 is the least significant bit).

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wsqopt {

using Spins = std::vector<int>;  ///< entries in {-1, +1}
using Bits = std::vector<int>;   ///< entries in {0, 1}

Bits spins_to_bits(std::span<const int> z);
Spins bits_to_spins(std::span<const int> x);
Spins spins_from_index(std::uint64_t index, int n);
std::uint64_t index_from_spins(std::span<const int> z);

/// min x^T sigma x + mu^T x + offset over x in {0,1}^n.
class QuboProblem {
public:
    /// Asymmetric sigma is replaced by (sigma + sigma^T) / 2; the objective on
    /// binary vectors is unchanged.
    QuboProblem(Eigen::MatrixXd sigma, Eigen::VectorXd mu, double offset = 0.0);

    int n() const noexcept { return static_cast<int>(mu_.size()); }
    const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
    const Eigen::VectorXd& mu() const noexcept { return mu_; }
    double offset() const noexcept { return offset_; }

    double objective(std::span<const int> x) const;
    double objective(const Eigen::VectorXd& x) const;

private:
    Eigen::MatrixXd sigma_;
    Eigen::VectorXd mu_;
    double offset_;
};

/// E(z) = offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j.
class IsingModel {
public:
    using Key = std::pair<int, int>;

    explicit IsingModel(int n);

    int n() const noexcept { return n_; }
    const std::map<Key, double>& couplings() const noexcept { return couplings_; }
    const Eigen::VectorXd& fields() const noexcept { return fields_; }
    double offset() const noexcept { return offset_; }

    /// Accumulates into J_{min(i,j), max(i,j)}.
    void add_coupling(int i, int j, double value);
    void add_field(int i, double value);
    void add_offset(double value) noexcept { offset_ += value; }

    double energy(std::span<const int> z) const;

private:
    int n_;
    std::map<Key, double> couplings_;
    Eigen::VectorXd fields_;
    double offset_ = 0.0;
};

struct Edge {
    int i;
    int j;
    double w;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected edge-weighted graph. Edges are stored with i < j, sorted.
class WeightedGraph {
public:
    WeightedGraph() = default;
    /// Edges may be given in either orientation; self-loops, duplicates and
    /// out-of-range endpoints throw InvalidInput.
    WeightedGraph(int n, std::vector<Edge> edges);

    int n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    double total_weight() const noexcept;
    double weight(int i, int j) const noexcept;
    Eigen::MatrixXd weight_matrix() const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// A cut as a spin vector. z and -z denote the same cut.
class CutAssignment {
public:
    explicit CutAssignment(Spins z);

    const Spins& spins() const noexcept { return z_; }
    int n() const noexcept { return static_cast<int>(z_.size()); }
    /// The representative with z_0 = +1.
    CutAssignment canonical() const;
    CutAssignment complement() const;
    bool same_cut(const CutAssignment& other) const;

    friend bool operator==(const CutAssignment&, const CutAssignment&) = default;
    friend auto operator<=>(const CutAssignment&, const CutAssignment&) = default;

private:
    Spins z_;
};

struct PortfolioInstance {
    Eigen::MatrixXd sigma;
    Eigen::VectorXd mu;
    double q = 1.0;
    int budget = 0;
    double lambda = 0.0;

    /// Throws InvalidInput unless sigma is symmetric PSD (1e-9) and 0 <= B <= n.
    void validate() const;
};

struct GbmConfig {
    int n_assets = 6;
    int n_days = 250;
    double mu_lo = -0.05;
    double mu_hi = 0.05;
    double sigma_lo = -0.20;
    double sigma_hi = 0.20;
    std::uint64_t seed = 0;
};

IsingModel qubo_to_ising(const QuboProblem& q);
IsingModel maxcut_to_ising(const WeightedGraph& g);

/// q x^T Sigma x - mu^T x + lambda (1^T x - B)^2 as a QUBO.
QuboProblem portfolio_qubo(const PortfolioInstance& p);

double cut_value(const WeightedGraph& g, std::span<const int> z);

struct ReducedGraph {
    WeightedGraph graph;
    double offset;
};

/// Substitutes z_elim = sign * z_keep. Nodes above `elim` shift down by one.
/// For every reduced assignment z', cut(reduced, z') + offset equals the cut of
/// the original graph under the extended assignment.
ReducedGraph reduce_maxcut(const WeightedGraph& g, int elim, int keep, int sign);

struct GroundState {
    Spins z;
    double energy;
};

inline constexpr int kBruteForceMaxSpins = 30;

/// Exhaustive minimum of the Ising energy (Gray-code walk). Ties within a small
/// relative tolerance go to the lexicographically smallest bit string
/// x_0 x_1 ... x_{n-1}.
GroundState brute_force(const IsingModel& ising);

/// Maximum cut by exhaustive search; the returned spins are canonical.
struct MaxCut {
    CutAssignment cut;
    double value;
};
MaxCut brute_force_maxcut(const WeightedGraph& g);

PortfolioInstance gbm_portfolio(const GbmConfig& cfg);

/// Erdos-Renyi graph: each pair is an edge with probability p_edge and a weight
/// drawn uniformly from weight_set.
WeightedGraph random_graph(int n, double p_edge, std::span<const double> weight_set,
                           std::uint64_t seed);

/// Complete graph with integer weights uniform in {lo, ..., hi}; zero draws are
/// dropped from the edge list.
WeightedGraph complete_graph(int n, std::uint64_t seed, int lo = -10, int hi = 10);

}  // namespace wsqopt
