#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cholesky.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace gbw {

// Generalized G-Wishart parameters in original vertex labels.
struct GWishartParams {
  Graph graph;
  Ordering ordering;
  Eigen::MatrixXd U;
  Eigen::VectorXd delta;

  int size() const { return graph.size(); }
  void validate() const;  // shapes, U positive definite, delta > 0

  Graph ranked_graph() const { return relabel(graph, ordering); }
  Eigen::MatrixXd ranked(const Eigen::MatrixXd& m) const;  // permute rows/cols into rank order
  Eigen::MatrixXd unranked(const Eigen::MatrixXd& m) const;
  Eigen::VectorXd ranked(const Eigen::VectorXd& v) const;
};

GWishartParams posterior_params(const GWishartParams& prior, const Eigen::MatrixXd& S, double n);

struct SampleConfig {
  long iters = 3000;   // total sweeps, burn-in included
  long burnin = 2000;
  long thin = 1;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  bool keep_factors = false;  // store (L, D) for each retained draw
  bool track_sigma = false;   // accumulate the mean of Omega^{-1}
  int block_start = -1;       // >= 0: joint update of the trailing block after each sweep
  FitOptions fit;
  // Chi-square degrees of freedom offset for the accept-reject / MH proposal on psi_ii^2.
  double df_offset = 2.0;
};

struct FactorDraw {
  Eigen::MatrixXd L;  // rank space
  Eigen::VectorXd D;
};

struct ChainSummary {
  std::string sampler;
  Graph graph;
  Ordering ordering;
  std::vector<Edge> support;  // original labels (u <= v), diagonal and edges, row-major upper triangle
  std::vector<long> iteration;
  std::vector<std::vector<double>> draws;  // Omega at the support entries
  std::vector<FactorDraw> factors;
  Eigen::MatrixXd sigma_sum;
  long sigma_count = 0;
  SampleConfig config;
  double acceptance_rate = -1;  // MH / accept-reject only
  long attempts = 0;
  bool exhausted = false;       // accept-reject ran out of attempts

  int size() const { return graph.size(); }
  std::size_t retained() const { return draws.size(); }
  Eigen::MatrixXd omega_draw(std::size_t t) const;
  Eigen::MatrixXd omega_mean() const;
  // Merge retained draws of several chains on the same model.
  static ChainSummary concat(const std::vector<ChainSummary>& chains);
};

std::vector<Edge> support_entries(const Graph& g);

// Single-coordinate Gibbs sampler on (L_I, D~). Works in rank space.
class GibbsSampler {
 public:
  // Sampling target is the generalized G-Wishart with scale U + nS and shapes delta + n.
  GibbsSampler(const GWishartParams& prior, const Eigen::MatrixXd* S, double n, const SampleConfig& cfg);

  void sweep(Rng& rng);
  void block_update_trailing(int p1, Rng& rng);

  const SparseFactor& state() const { return factor_; }
  void set_state(const IndependentEntries& li, const Eigen::VectorXd& dtilde) { factor_.set_state(li, dtilde); }
  Eigen::MatrixXd omega() const;  // original labels
  const GWishartParams& params() const { return params_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  void use_dense_energy(bool on) { dense_ = on; }

 private:
  void update_independent(std::size_t q, Rng& rng);
  void update_dtilde(int k, Rng& rng);

  GWishartParams params_;
  Graph gs_;
  Eigen::MatrixXd ubar_;
  Eigen::VectorXd alpha_;
  SparseFactor factor_;
  SampleConfig cfg_;
  bool dense_ = false;
};

ChainSummary gibbs_run(const GWishartParams& prior, const Eigen::MatrixXd* S, double n, const SampleConfig& cfg);

// Exact sampler and moments for decomposable graphs under a perfect elimination ordering.
CholeskyFactor direct_decomposable_sample(const GWishartParams& params, Rng& rng);
ChainSummary direct_run(const GWishartParams& params, long draws, const SampleConfig& cfg);
Eigen::MatrixXd closed_form_mean(const GWishartParams& params);

struct ArResult {
  std::optional<CholeskyFactor> draw;  // rank space
  long attempts = 0;
  long accepted = 0;
  double mean_acceptance = 0;  // average acceptance probability over the attempts
};

// Accept-reject sampler; stops at the first acceptance or after max_attempts.
ArResult ar_sample(const GWishartParams& params, long max_attempts, Rng& rng, double df_offset = 2.0);
// Runs all attempts without stopping and reports the acceptance estimate.
ArResult ar_acceptance(const GWishartParams& params, long attempts, Rng& rng, double df_offset = 2.0);
// Collects `draws` accepted samples; sets `exhausted` if the total attempt budget runs out.
ChainSummary ar_run(const GWishartParams& params, long draws, long max_attempts, const SampleConfig& cfg);

ChainSummary mh_run(const GWishartParams& params, const SampleConfig& cfg);

}  // namespace gbw
