#pragma once

#include <Eigen/Dense>
#include <vector>

#include "samplers.hpp"

namespace gbw {

// sum_k (delta_k - delta_{k+1}) [Omega_k^{-1}]^0, which telescopes to
// L^{-T} diag(delta / D) L^{-1}. Rank space throughout.
Eigen::MatrixXd sigma_star(const Eigen::MatrixXd& L, const Eigen::VectorXd& D, const Eigen::VectorXd& delta_ranked);

struct IdentityEntry {
  int i = 0, j = 0;  // original labels, i >= j
  double simulated = 0;
  double truth = 0;
  double std_error = 0;
};

struct IdentityReport {
  double max_abs_deviation = 0;
  std::vector<IdentityEntry> entries;
};

// Requires chain.factors (SampleConfig::keep_factors) and delta_k > 4 for all k.
IdentityReport identity_diagnostic(const ChainSummary& chain, const GWishartParams& params);

struct PosteriorSummary {
  Eigen::MatrixXd omega_mean, omega_lower, omega_upper;
  Eigen::MatrixXd sigma_mean;  // empty unless the chain tracked it
  double level = 0;
};

// Nearest-rank equal-tailed intervals: ranks ceil(n (1 - level) / 2) and ceil(n (1 + level) / 2).
std::pair<double, double> equal_tailed_interval(std::vector<double> xs, double level);
PosteriorSummary posterior_mean_and_ci(const ChainSummary& chain, double level);

double stein_loss(const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& truth);

double deviance(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& S, double n);
double dic(const ChainSummary& chain, const Eigen::MatrixXd& S, double n);

Eigen::VectorXd empirical_delta(const Eigen::MatrixXd& U, const Eigen::MatrixXd& S, double n);
Eigen::VectorXd inv_diag_delta(const Eigen::MatrixXd& S);
Eigen::VectorXd prec_diag_delta(const Eigen::MatrixXd& S);

// Batch-means standard error of the mean.
double batch_means_se(const std::vector<double>& xs, int batches = 50);

}  // namespace gbw
