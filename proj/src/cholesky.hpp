#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "graph.hpp"

namespace gbw {

// Everything in this header works in rank space: vertex r is the r-th vertex of
// the ordering, so the graph passed around is E_sigma.

// Independent entries (i, j), i > j, (i, j) in E_sigma, sorted by column then row.
std::vector<Edge> independent_keys(const Graph& gs);

struct IndependentEntries {
  std::vector<Edge> keys;  // (i, j) with i > j
  std::vector<double> values;

  static IndependentEntries zeros(const Graph& gs);
};

struct CholeskyFactor {
  Graph pattern;
  Eigen::MatrixXd L;  // unit lower triangular
  Eigen::VectorXd D;
};

Eigen::VectorXd d_from_tilde(const Eigen::VectorXd& dtilde);
Eigen::VectorXd tilde_from_d(const Eigen::VectorXd& d);

// Dense reference completion of the dependent entries.
CholeskyFactor complete_factor(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& d);
Eigen::MatrixXd assemble_omega(const CholeskyFactor& f);
CholeskyFactor factorize(const Eigen::MatrixXd& omega, const Graph& gs);
IndependentEntries independent_of(const CholeskyFactor& f);

// tr(Omega * ubar) for the factor described by (li, dtilde).
double energy(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde, const Eigen::MatrixXd& ubar);

struct QuadraticFit {
  double a = 0, b = 0, c = 0;  // g(x) = a x^2 + b x + c
  double residual = 0;         // |prediction - value| at the check point
  double scale = 0;            // largest |g| among the evaluations
};

struct RationalFit {
  double c1 = 0, cm1 = 0, c0 = 0;  // g(x) = c1 x + cm1 / x + c0
  double residual = 0;
  double scale = 0;
};

struct FitOptions {
  double step = 1.0;           // quadratic points x0 - step, x0, x0 + step; check at x0 + 2 step
  double ratio = 2.0;          // rational points x0 / ratio, x0, ratio x0; check at ratio^2 x0
  double tolerance = 1e-6;     // relative residual that counts as failure
  bool strict = true;          // throw on failure
};

// Fits from an arbitrary evaluator g(x) around x0.
QuadraticFit fit_quadratic_values(const std::function<double(double)>& g, double x0, const FitOptions& opt);
RationalFit fit_rational_values(const std::function<double(double)>& g, double x0, const FitOptions& opt);

// coord indexes li.keys.
QuadraticFit fit_quadratic(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde,
                           const Eigen::MatrixXd& ubar, std::size_t coord, const FitOptions& opt = {});
RationalFit fit_rational(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde,
                         const Eigen::MatrixXd& ubar, int k, const FitOptions& opt = {});

// alpha_k = (p - k) + sum_{l >= k} ((n + delta_l) / 2 + nu_l), 1-based k. delta in rank order.
Eigen::VectorXd alpha_exponents(const Graph& gs, double n, const Eigen::VectorXd& delta);
std::vector<int> column_counts(const Graph& gs);  // nu_j

// Factor restricted to the fill pattern, with per-column energy caches so that
// changing a coordinate in column c only recomputes columns >= c.
class SparseFactor {
 public:
  SparseFactor(const Graph& gs, const Eigen::MatrixXd& ubar);

  int size() const { return p_; }
  const std::vector<Edge>& keys() const { return keys_; }
  const Graph& cover() const { return cover_; }

  void set_state(const IndependentEntries& li, const Eigen::VectorXd& dtilde);
  double independent(std::size_t q) const { return L_(keys_[q].first, keys_[q].second); }
  double dtilde(int k) const { return dt_(k); }

  // Energy of columns >= c with the coordinate temporarily set to x. The cache
  // is left stale until commit_* is called.
  double trial_independent(std::size_t q, double x);
  double trial_dtilde(int k, double x);
  // Sets several independent entries (all in columns >= c) and returns energy of columns >= c.
  double trial_block(const std::vector<std::size_t>& qs, const std::vector<double>& xs, int c);

  void commit_independent(std::size_t q, double x);
  void commit_dtilde(int k, double x);
  void commit_block(const std::vector<std::size_t>& qs, const std::vector<double>& xs, int c);

  double energy() const;                  // full energy from the cache
  double prefix_energy(int c) const;      // columns < c
  double recompute_energy();              // recomputes everything

  const Eigen::MatrixXd& L() const { return L_; }
  const Eigen::VectorXd& D() const { return d_; }
  const Eigen::VectorXd& Dtilde() const { return dt_; }
  IndependentEntries independent_entries() const;
  CholeskyFactor factor() const;

 private:
  struct Dependent {
    int i, j;
    std::vector<int> common;  // m < j with (i,m), (j,m) in the cover
  };

  // Refreshes D and the dependent entries of columns >= c and returns their energy.
  double suffix(int c, bool store);

  int p_;
  Graph cover_;
  Eigen::MatrixXd ubar_;
  std::vector<Edge> keys_;
  std::vector<std::vector<int>> support_;           // rows of column j in the cover, including j
  std::vector<std::vector<Dependent>> dependents_;  // by column
  Eigen::MatrixXd L_;
  Eigen::VectorXd dt_, d_;
  std::vector<double> column_energy_;
};

}  // namespace gbw
