#include "cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace gbw {

std::vector<Edge> independent_keys(const Graph& gs) {
  std::vector<Edge> keys;
  const int p = gs.size();
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i)
      if (gs.has_edge(i, j)) keys.emplace_back(i, j);
  return keys;
}

IndependentEntries IndependentEntries::zeros(const Graph& gs) {
  IndependentEntries li;
  li.keys = independent_keys(gs);
  li.values.assign(li.keys.size(), 0.0);
  return li;
}

Eigen::VectorXd d_from_tilde(const Eigen::VectorXd& dt) {
  Eigen::VectorXd d(dt.size());
  double acc = 1.0;
  for (Eigen::Index k = 0; k < dt.size(); ++k) d(k) = acc *= dt(k);
  return d;
}

Eigen::VectorXd tilde_from_d(const Eigen::VectorXd& d) {
  Eigen::VectorXd dt(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) dt(k) = k == 0 ? d(0) : d(k) / d(k - 1);
  return dt;
}

namespace {

void check_entries(const Graph& gs, const IndependentEntries& li) {
  require(li.keys.size() == li.values.size(), "independent entries: keys and values differ in length");
  for (auto [i, j] : li.keys)
    if (i <= j || i >= gs.size() || !gs.has_edge(i, j))
      fail(ErrorKind::InvalidArgument, "independent entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") is not a below-diagonal edge");
}

}  // namespace

CholeskyFactor complete_factor(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& d) {
  const int p = gs.size();
  require(d.size() == p, "D has the wrong length");
  for (int k = 0; k < p; ++k)
    if (!(d(k) > 0)) fail(ErrorKind::InvalidArgument, "D entry " + std::to_string(k + 1) + " is not positive");
  check_entries(gs, li);
  CholeskyFactor f{gs, Eigen::MatrixXd::Identity(p, p), d};
  for (std::size_t q = 0; q < li.keys.size(); ++q) f.L(li.keys[q].first, li.keys[q].second) = li.values[q];
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i) {
      if (gs.has_edge(i, j)) continue;
      double s = 0;
      for (int k = 0; k < j; ++k) s += f.L(i, k) * f.L(j, k) * d(k);
      f.L(i, j) = -s / d(j);
    }
  return f;
}

Eigen::MatrixXd assemble_omega(const CholeskyFactor& f) {
  Eigen::MatrixXd om = f.L * f.D.asDiagonal() * f.L.transpose();
  return 0.5 * (om + om.transpose());
}

CholeskyFactor factorize(const Eigen::MatrixXd& omega, const Graph& gs) {
  const int p = gs.size();
  require(omega.rows() == p && omega.cols() == p, "matrix size does not match graph");
  const double tol = 1e-10 * std::max(1.0, omega.cwiseAbs().maxCoeff());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < i; ++j)
      if (!gs.has_edge(i, j) && std::abs(omega(i, j)) > tol)
        fail(ErrorKind::InvalidArgument, "matrix is nonzero at non-edge (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ")");
  CholeskyFactor f{gs, Eigen::MatrixXd::Identity(p, p), Eigen::VectorXd::Zero(p)};
  for (int j = 0; j < p; ++j) {
    double s = omega(j, j);
    for (int k = 0; k < j; ++k) s -= f.L(j, k) * f.L(j, k) * f.D(k);
    if (!(s > 0)) fail(ErrorKind::Numerical, "matrix is not positive definite (leading minor " + std::to_string(j + 1) + ")");
    f.D(j) = s;
    for (int i = j + 1; i < p; ++i) {
      double t = omega(i, j);
      for (int k = 0; k < j; ++k) t -= f.L(i, k) * f.L(j, k) * f.D(k);
      f.L(i, j) = t / s;
    }
  }
  return f;
}

IndependentEntries independent_of(const CholeskyFactor& f) {
  IndependentEntries li = IndependentEntries::zeros(f.pattern);
  for (std::size_t q = 0; q < li.keys.size(); ++q) li.values[q] = f.L(li.keys[q].first, li.keys[q].second);
  return li;
}

double energy(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde, const Eigen::MatrixXd& ubar) {
  CholeskyFactor f = complete_factor(gs, li, d_from_tilde(dtilde));
  double e = 0;
  for (int j = 0; j < gs.size(); ++j) {
    Eigen::VectorXd col = f.L.col(j);
    e += f.D(j) * col.dot(ubar * col);
  }
  return e;
}

QuadraticFit fit_quadratic_values(const std::function<double(double)>& g, double x0, const FitOptions& opt) {
  const double h = opt.step;
  const double gm = g(x0 - h), g0 = g(x0), gp = g(x0 + h), g2 = g(x0 + 2 * h);
  QuadraticFit fit;
  const double a = (gp + gm - 2 * g0) / (2 * h * h);
  const double slope = (gp - gm) / (2 * h);
  fit.a = a;
  fit.b = slope - 2 * a * x0;
  fit.c = a * x0 * x0 - slope * x0 + g0;
  fit.residual = std::abs(g0 + slope * 2 * h + a * 4 * h * h - g2);
  fit.scale = std::max({std::abs(gm), std::abs(g0), std::abs(gp), std::abs(g2), 1e-300});
  if (opt.strict) {
    if (fit.residual > opt.tolerance * fit.scale)
      fail(ErrorKind::Numerical, "energy is not quadratic in the coordinate (relative residual " +
                                     std::to_string(fit.residual / fit.scale) + ")");
    if (!(a > 1e-14 * fit.scale)) fail(ErrorKind::Numerical, "non-positive quadratic coefficient");
  }
  return fit;
}

RationalFit fit_rational_values(const std::function<double(double)>& g, double x0, const FitOptions& opt) {
  const double r = opt.ratio;
  require(x0 > 0 && r > 1, "rational fit needs x0 > 0 and ratio > 1");
  const double glo = g(x0 / r), g1 = g(x0), ghi = g(x0 * r), gchk = g(x0 * r * r);
  // g(t x0) = A t + B / t + C
  const double u = (ghi - g1) / (r - 1), v = (g1 - glo) / (r - 1);
  const double B = (u - r * v) / (r - 1 / r);
  const double A = r * (v + B);
  const double C = g1 - A - B;
  RationalFit fit;
  fit.c1 = A / x0;
  fit.cm1 = B * x0;
  fit.c0 = C;
  fit.residual = std::abs(A * r * r + B / (r * r) + C - gchk);
  fit.scale = std::max({std::abs(glo), std::abs(g1), std::abs(ghi), std::abs(gchk), 1e-300});
  if (std::abs(fit.cm1) <= 1e-10 * fit.scale * x0) fit.cm1 = 0;
  if (opt.strict) {
    if (fit.residual > opt.tolerance * fit.scale)
      fail(ErrorKind::Numerical, "energy is not of the form c1 x + c-1 / x + c0 (relative residual " +
                                     std::to_string(fit.residual / fit.scale) + ")");
    if (!(fit.c1 > 0)) fail(ErrorKind::Numerical, "non-positive linear coefficient");
    if (fit.cm1 < 0) fail(ErrorKind::Numerical, "negative reciprocal coefficient");
  }
  return fit;
}

QuadraticFit fit_quadratic(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde,
                           const Eigen::MatrixXd& ubar, std::size_t coord, const FitOptions& opt) {
  require(coord < li.values.size(), "coordinate out of range");
  IndependentEntries work = li;
  auto g = [&](double x) {
    work.values[coord] = x;
    return energy(gs, work, dtilde, ubar);
  };
  return fit_quadratic_values(g, li.values[coord], opt);
}

RationalFit fit_rational(const Graph& gs, const IndependentEntries& li, const Eigen::VectorXd& dtilde,
                         const Eigen::MatrixXd& ubar, int k, const FitOptions& opt) {
  require(k >= 0 && k < dtilde.size(), "diagonal index out of range");
  Eigen::VectorXd work = dtilde;
  auto g = [&](double x) {
    work(k) = x;
    return energy(gs, li, work, ubar);
  };
  return fit_rational_values(g, dtilde(k), opt);
}

std::vector<int> column_counts(const Graph& gs) {
  std::vector<int> nu(static_cast<std::size_t>(gs.size()), 0);
  for (auto [i, j] : independent_keys(gs)) ++nu[j];
  return nu;
}

Eigen::VectorXd alpha_exponents(const Graph& gs, double n, const Eigen::VectorXd& delta) {
  const int p = gs.size();
  require(delta.size() == p, "delta has the wrong length");
  std::vector<int> nu = column_counts(gs);
  Eigen::VectorXd alpha(p);
  double tail = 0;
  for (int k = p - 1; k >= 0; --k) {
    tail += (n + delta(k)) / 2 + nu[k];
    alpha(k) = (p - 1 - k) + tail;
  }
  return alpha;
}

SparseFactor::SparseFactor(const Graph& gs, const Eigen::MatrixXd& ubar)
    : p_(gs.size()),
      cover_(triangulate(gs).cover),
      ubar_(ubar),
      keys_(independent_keys(gs)),
      support_(static_cast<std::size_t>(gs.size())),
      dependents_(static_cast<std::size_t>(gs.size())),
      L_(Eigen::MatrixXd::Identity(gs.size(), gs.size())),
      dt_(Eigen::VectorXd::Ones(gs.size())),
      d_(Eigen::VectorXd::Ones(gs.size())),
      column_energy_(static_cast<std::size_t>(gs.size()), 0.0) {
  require(ubar.rows() == p_ && ubar.cols() == p_, "scale matrix size does not match graph");
  for (int j = 0; j < p_; ++j) {
    support_[j].push_back(j);
    for (int i = j + 1; i < p_; ++i) {
      if (!cover_.has_edge(i, j)) continue;
      support_[j].push_back(i);
      if (gs.has_edge(i, j)) continue;
      Dependent dep{i, j, {}};
      for (int m = 0; m < j; ++m)
        if (cover_.has_edge(i, m) && cover_.has_edge(j, m)) dep.common.push_back(m);
      dependents_[j].push_back(std::move(dep));
    }
  }
  suffix(0, true);
}

void SparseFactor::set_state(const IndependentEntries& li, const Eigen::VectorXd& dtilde) {
  require(li.keys == keys_, "independent entries do not match the pattern");
  require(dtilde.size() == p_, "dtilde has the wrong length");
  for (int k = 0; k < p_; ++k)
    if (!(dtilde(k) > 0)) fail(ErrorKind::InvalidArgument, "dtilde entry " + std::to_string(k + 1) + " is not positive");
  for (std::size_t q = 0; q < keys_.size(); ++q) L_(keys_[q].first, keys_[q].second) = li.values[q];
  dt_ = dtilde;
  suffix(0, true);
}

double SparseFactor::suffix(int c, bool store) {
  double acc = c == 0 ? 1.0 : d_(c - 1);
  for (int j = c; j < p_; ++j) d_(j) = acc *= dt_(j);
  double total = 0;
  for (int j = c; j < p_; ++j) {
    for (const Dependent& dep : dependents_[j]) {
      double s = 0;
      for (int m : dep.common) s += L_(dep.i, m) * L_(dep.j, m) * d_(m);
      L_(dep.i, dep.j) = -s / d_(j);
    }
    const auto& sup = support_[j];
    double q = 0;
    for (std::size_t a = 0; a < sup.size(); ++a) {
      const double la = L_(sup[a], j);
      double row = 0.5 * la * ubar_(sup[a], sup[a]);
      for (std::size_t b = a + 1; b < sup.size(); ++b) row += L_(sup[b], j) * ubar_(sup[a], sup[b]);
      q += la * row;
    }
    const double e = 2.0 * q * d_(j);
    if (store) column_energy_[j] = e;
    total += e;
  }
  return total;
}

double SparseFactor::trial_independent(std::size_t q, double x) {
  L_(keys_[q].first, keys_[q].second) = x;
  return suffix(keys_[q].second, false);
}

double SparseFactor::trial_dtilde(int k, double x) {
  dt_(k) = x;
  return suffix(k, false);
}

double SparseFactor::trial_block(const std::vector<std::size_t>& qs, const std::vector<double>& xs, int c) {
  for (std::size_t t = 0; t < qs.size(); ++t) {
    require(keys_[qs[t]].second >= c, "block coordinate lies before the block start");
    L_(keys_[qs[t]].first, keys_[qs[t]].second) = xs[t];
  }
  return suffix(c, false);
}

void SparseFactor::commit_independent(std::size_t q, double x) {
  L_(keys_[q].first, keys_[q].second) = x;
  suffix(keys_[q].second, true);
}

void SparseFactor::commit_dtilde(int k, double x) {
  if (!(x > 0)) fail(ErrorKind::Numerical, "dtilde entry " + std::to_string(k + 1) + " left the positive half-line");
  dt_(k) = x;
  suffix(k, true);
}

void SparseFactor::commit_block(const std::vector<std::size_t>& qs, const std::vector<double>& xs, int c) {
  for (std::size_t t = 0; t < qs.size(); ++t) L_(keys_[qs[t]].first, keys_[qs[t]].second) = xs[t];
  suffix(c, true);
}

double SparseFactor::energy() const { return prefix_energy(p_); }

double SparseFactor::prefix_energy(int c) const {
  double s = 0;
  for (int j = 0; j < c; ++j) s += column_energy_[j];
  return s;
}

double SparseFactor::recompute_energy() { return suffix(0, true); }

IndependentEntries SparseFactor::independent_entries() const {
  IndependentEntries li;
  li.keys = keys_;
  for (std::size_t q = 0; q < keys_.size(); ++q) li.values.push_back(independent(q));
  return li;
}

CholeskyFactor SparseFactor::factor() const {
  Graph base(p_);
  for (auto [i, j] : keys_) base.add_edge(i, j);
  return {base, L_, d_};
}

}  // namespace gbw
