#include "inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace gbw {

Eigen::MatrixXd sigma_star(const Eigen::MatrixXd& L, const Eigen::VectorXd& D, const Eigen::VectorXd& delta) {
  const Eigen::Index p = L.rows();
  Eigen::MatrixXd linv = L.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::VectorXd w = delta.cwiseQuotient(D);
  return linv.transpose() * w.asDiagonal() * linv;
}

IdentityReport identity_diagnostic(const ChainSummary& chain, const GWishartParams& params) {
  params.validate();
  const int p = params.size();
  for (int k = 0; k < p; ++k)
    if (!(params.delta(k) > 4))
      fail(ErrorKind::Infeasible, "the identity diagnostic requires every delta_k > 4 (delta_" +
                                           std::to_string(k + 1) + " = " + std::to_string(params.delta(k)) + ")");
  if (chain.factors.empty()) fail(ErrorKind::InvalidArgument, "chain has no retained factor draws");
  const Eigen::VectorXd delta = params.ranked(params.delta);
  const auto support = support_entries(params.graph);
  std::vector<std::vector<double>> series(support.size());
  for (const FactorDraw& f : chain.factors) {
    Eigen::MatrixXd s = params.unranked(sigma_star(f.L, f.D, delta));
    for (std::size_t q = 0; q < support.size(); ++q) series[q].push_back(s(support[q].first, support[q].second));
  }
  IdentityReport rep;
  for (std::size_t q = 0; q < support.size(); ++q) {
    auto [u, v] = support[q];
    IdentityEntry e;
    e.i = std::max(u, v);
    e.j = std::min(u, v);
    double sum = 0;
    for (double x : series[q]) sum += x;
    e.simulated = sum / static_cast<double>(series[q].size());
    e.truth = params.U(u, v);
    e.std_error = batch_means_se(series[q]);
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(e.simulated - e.truth));
    rep.entries.push_back(e);
  }
  return rep;
}

std::pair<double, double> equal_tailed_interval(std::vector<double> xs, double level) {
  if (!(level > 0 && level < 1)) fail(ErrorKind::InvalidArgument, "level must lie in (0, 1)");
  require(!xs.empty(), "no draws");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  auto at_rank = [&](double r) {
    long k = static_cast<long>(std::ceil(r - 1e-9));
    k = std::clamp(k, 1L, static_cast<long>(xs.size()));
    return xs[static_cast<std::size_t>(k - 1)];
  };
  return {at_rank(n * (1 - level) / 2), at_rank(n * (1 + level) / 2)};
}

PosteriorSummary posterior_mean_and_ci(const ChainSummary& chain, double level) {
  if (!(level > 0 && level < 1)) fail(ErrorKind::InvalidArgument, "level must lie in (0, 1)");
  if (chain.draws.empty()) fail(ErrorKind::InvalidArgument, "chain has no retained draws");
  const int p = chain.size();
  PosteriorSummary out;
  out.level = level;
  out.omega_mean = chain.omega_mean();
  out.omega_lower = Eigen::MatrixXd::Zero(p, p);
  out.omega_upper = Eigen::MatrixXd::Zero(p, p);
  std::vector<double> col(chain.draws.size());
  for (std::size_t s = 0; s < chain.support.size(); ++s) {
    for (std::size_t t = 0; t < chain.draws.size(); ++t) col[t] = chain.draws[t][s];
    auto [lo, hi] = equal_tailed_interval(col, level);
    auto [u, v] = chain.support[s];
    out.omega_lower(u, v) = out.omega_lower(v, u) = lo;
    out.omega_upper(u, v) = out.omega_upper(v, u) = hi;
  }
  if (chain.sigma_count > 0) out.sigma_mean = chain.sigma_sum / static_cast<double>(chain.sigma_count);
  return out;
}

double stein_loss(const Eigen::MatrixXd& est, const Eigen::MatrixXd& truth) {
  require(est.rows() == truth.rows() && est.cols() == truth.cols() && est.rows() == est.cols(),
          "matrices must be square and of equal size");
  Eigen::LLT<Eigen::MatrixXd> le(est), lt(truth);
  if (le.info() != Eigen::Success) fail(ErrorKind::Numerical, "estimate is not positive definite");
  if (lt.info() != Eigen::Success) fail(ErrorKind::Numerical, "truth is not positive definite");
  const double p = static_cast<double>(est.rows());
  const double tr = lt.solve(est).trace();
  double logdet = 0;
  for (Eigen::Index i = 0; i < est.rows(); ++i)
    logdet += 2 * (std::log(le.matrixL()(i, i)) - std::log(lt.matrixL()(i, i)));
  return std::max(0.0, tr - logdet - p);
}

double deviance(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& S, double n) {
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Numerical, "matrix is not positive definite");
  double logdet = 0;
  for (Eigen::Index i = 0; i < omega.rows(); ++i) logdet += 2 * std::log(llt.matrixL()(i, i));
  return n * ((omega.cwiseProduct(S)).sum() - logdet);
}

double dic(const ChainSummary& chain, const Eigen::MatrixXd& S, double n) {
  require(n > 0, "sample count must be positive");
  if (chain.draws.empty()) fail(ErrorKind::InvalidArgument, "chain has no retained draws");
  require(S.rows() == chain.size() && S.cols() == chain.size(), "S has the wrong size");
  double dbar = 0;
  for (std::size_t t = 0; t < chain.draws.size(); ++t) dbar += deviance(chain.omega_draw(t), S, n);
  dbar /= static_cast<double>(chain.draws.size());
  Eigen::MatrixXd mean = chain.omega_mean();
  double dmean;
  try {
    dmean = deviance(mean, S, n);
  } catch (const Error&) {
    fail(ErrorKind::Numerical, "posterior mean of Omega is not positive definite; chain input is corrupt");
  }
  return 2 * dbar - dmean;
}

Eigen::VectorXd empirical_delta(const Eigen::MatrixXd& U, const Eigen::MatrixXd& S, double n) {
  require(U.rows() == S.rows() && U.cols() == S.cols(), "U and S differ in size");
  Eigen::VectorXd d(S.rows());
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    if (!(S(i, i) > 0)) fail(ErrorKind::InvalidArgument, "S has a zero diagonal entry at " + std::to_string(i + 1));
    d(i) = (U(i, i) + n * S(i, i)) / S(i, i);
  }
  return d;
}

Eigen::VectorXd inv_diag_delta(const Eigen::MatrixXd& S) {
  Eigen::VectorXd d(S.rows());
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    if (!(S(i, i) > 0)) fail(ErrorKind::InvalidArgument, "S has a zero diagonal entry at " + std::to_string(i + 1));
    d(i) = 1 / S(i, i);
  }
  return d;
}

Eigen::VectorXd prec_diag_delta(const Eigen::MatrixXd& S) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    fail(ErrorKind::InvalidArgument, "S is not invertible");
  Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(S.rows(), S.cols()));
  Eigen::VectorXd d = inv.diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!(d(i) > 0)) fail(ErrorKind::InvalidArgument, "S is not positive definite");
  return d;
}

double batch_means_se(const std::vector<double>& xs, int batches) {
  const std::size_t n = xs.size();
  if (n < 2) return 0;
  std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(std::max(batches, 2)), n);
  const std::size_t size = n / b;
  std::vector<double> means(b, 0.0);
  for (std::size_t k = 0; k < b; ++k) {
    for (std::size_t t = 0; t < size; ++t) means[k] += xs[k * size + t];
    means[k] /= static_cast<double>(size);
  }
  double grand = 0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(b);
  double var = 0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(b - 1);
  return std::sqrt(var / static_cast<double>(b));
}

}  // namespace gbw
