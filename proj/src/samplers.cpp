#include "samplers.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace gbw {

namespace {

std::string label(int v) { return std::to_string(v + 1); }

bool positive_definite(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

void GWishartParams::validate() const {
  const int p = graph.size();
  require(p > 0, "empty graph");
  require(ordering.size() == p, "ordering size does not match graph");
  require(U.rows() == p && U.cols() == p, "U has the wrong size");
  require(delta.size() == p, "delta has the wrong length");
  if ((U - U.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, U.cwiseAbs().maxCoeff()))
    fail(ErrorKind::InvalidArgument, "U is not symmetric");
  if (!positive_definite(U)) fail(ErrorKind::InvalidArgument, "U is not positive definite");
  for (int i = 0; i < p; ++i)
    if (!(delta(i) > 0) || !std::isfinite(delta(i)))
      fail(ErrorKind::InvalidArgument, "delta_" + label(i) + " must be positive");
}

Eigen::MatrixXd GWishartParams::ranked(const Eigen::MatrixXd& m) const {
  const int p = size();
  Eigen::MatrixXd r(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) r(a, b) = m(ordering.vertex[a], ordering.vertex[b]);
  return r;
}

Eigen::MatrixXd GWishartParams::unranked(const Eigen::MatrixXd& m) const {
  const int p = size();
  Eigen::MatrixXd r(p, p);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < p; ++v) r(u, v) = m(ordering.rank[u], ordering.rank[v]);
  return r;
}

Eigen::VectorXd GWishartParams::ranked(const Eigen::VectorXd& v) const {
  Eigen::VectorXd r(v.size());
  for (int a = 0; a < v.size(); ++a) r(a) = v(ordering.vertex[a]);
  return r;
}

GWishartParams posterior_params(const GWishartParams& prior, const Eigen::MatrixXd& S, double n) {
  const int p = prior.size();
  if (S.rows() != p || S.cols() != p) fail(ErrorKind::InvalidArgument, "S has the wrong size");
  require(n >= 0, "sample count must be non-negative");
  GWishartParams post = prior;
  post.U = prior.U + n * S;
  post.delta = prior.delta.array() + n;
  return post;
}

std::vector<Edge> support_entries(const Graph& g) {
  std::vector<Edge> out;
  for (int u = 0; u < g.size(); ++u) {
    out.emplace_back(u, u);
    for (int v = u + 1; v < g.size(); ++v)
      if (g.has_edge(u, v)) out.emplace_back(u, v);
  }
  return out;
}

Eigen::MatrixXd ChainSummary::omega_draw(std::size_t t) const {
  const int p = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t s = 0; s < support.size(); ++s) {
    auto [u, v] = support[s];
    m(u, v) = m(v, u) = draws[t][s];
  }
  return m;
}

Eigen::MatrixXd ChainSummary::omega_mean() const {
  require(!draws.empty(), "chain has no retained draws");
  const int p = size();
  std::vector<double> acc(support.size(), 0.0);
  for (const auto& d : draws)
    for (std::size_t s = 0; s < support.size(); ++s) acc[s] += d[s];
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t s = 0; s < support.size(); ++s) {
    auto [u, v] = support[s];
    m(u, v) = m(v, u) = acc[s] / static_cast<double>(draws.size());
  }
  return m;
}

ChainSummary ChainSummary::concat(const std::vector<ChainSummary>& chains) {
  require(!chains.empty(), "nothing to merge");
  ChainSummary out = chains[0];
  long accepted_weight = 0;
  double acc_sum = out.acceptance_rate >= 0 ? out.acceptance_rate * static_cast<double>(out.attempts) : 0;
  accepted_weight = out.attempts;
  for (std::size_t c = 1; c < chains.size(); ++c) {
    const ChainSummary& ch = chains[c];
    require(ch.support == out.support, "chains sample different models");
    out.iteration.insert(out.iteration.end(), ch.iteration.begin(), ch.iteration.end());
    out.draws.insert(out.draws.end(), ch.draws.begin(), ch.draws.end());
    out.factors.insert(out.factors.end(), ch.factors.begin(), ch.factors.end());
    if (ch.sigma_count > 0) {
      if (out.sigma_count == 0) out.sigma_sum = Eigen::MatrixXd::Zero(out.size(), out.size());
      out.sigma_sum += ch.sigma_sum;
      out.sigma_count += ch.sigma_count;
    }
    if (ch.acceptance_rate >= 0) acc_sum += ch.acceptance_rate * static_cast<double>(ch.attempts);
    accepted_weight += ch.attempts;
    out.exhausted = out.exhausted || ch.exhausted;
  }
  out.attempts = accepted_weight;
  if (out.acceptance_rate >= 0 && accepted_weight > 0) out.acceptance_rate = acc_sum / static_cast<double>(accepted_weight);
  return out;
}

namespace {

// Records retained draws into a summary; Omega entries are supplied in rank space.
class Recorder {
 public:
  Recorder(ChainSummary& out, const GWishartParams& params, const std::string& sampler, const SampleConfig& cfg)
      : out_(out), params_(params) {
    out.sampler = sampler;
    out.graph = params.graph;
    out.ordering = params.ordering;
    out.support = support_entries(params.graph);
    out.config = cfg;
    if (cfg.track_sigma) out.sigma_sum = Eigen::MatrixXd::Zero(params.size(), params.size());
    const int p = params.size();
    slot_.assign(static_cast<std::size_t>(p) * p, -1);
    for (std::size_t s = 0; s < out.support.size(); ++s) {
      int a = params.ordering.rank[out.support[s].first], b = params.ordering.rank[out.support[s].second];
      slot_[static_cast<std::size_t>(a) * p + b] = slot_[static_cast<std::size_t>(b) * p + a] = static_cast<int>(s);
    }
  }

  int slot(int a, int b) const { return slot_[static_cast<std::size_t>(a) * params_.size() + b]; }

  // Sparse accumulation over the columns of a factor whose column supports are given.
  void record_sparse(long iter, const Eigen::MatrixXd& L, const Eigen::VectorXd& D,
                     const std::vector<std::vector<int>>& colsupp) {
    std::vector<double> vals(out_.support.size(), 0.0);
    for (std::size_t m = 0; m < colsupp.size(); ++m) {
      const auto& sup = colsupp[m];
      for (std::size_t x = 0; x < sup.size(); ++x)
        for (std::size_t y = x; y < sup.size(); ++y) {
          int s = slot(sup[x], sup[y]);
          if (s >= 0) vals[s] += L(sup[x], m) * L(sup[y], m) * D(m);
        }
    }
    push(iter, std::move(vals), L, D);
  }

  void record_dense(long iter, const Eigen::MatrixXd& omega_ranked, const Eigen::MatrixXd& L, const Eigen::VectorXd& D) {
    std::vector<double> vals(out_.support.size(), 0.0);
    for (std::size_t s = 0; s < out_.support.size(); ++s) {
      int a = params_.ordering.rank[out_.support[s].first], b = params_.ordering.rank[out_.support[s].second];
      vals[s] = omega_ranked(a, b);
    }
    push(iter, std::move(vals), L, D);
  }

 private:
  void push(long iter, std::vector<double> vals, const Eigen::MatrixXd& L, const Eigen::VectorXd& D) {
    out_.iteration.push_back(iter);
    out_.draws.push_back(std::move(vals));
    if (out_.config.keep_factors) out_.factors.push_back({L, D});
    if (out_.config.track_sigma) {
      // Omega^{-1} = L^{-T} D^{-1} L^{-1}
      const int p = params_.size();
      Eigen::MatrixXd linv = L.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(p, p));
      Eigen::MatrixXd sig = linv.transpose() * D.cwiseInverse().asDiagonal() * linv;
      out_.sigma_sum += params_.unranked(sig);
      ++out_.sigma_count;
    }
  }

  ChainSummary& out_;
  const GWishartParams& params_;
  std::vector<int> slot_;
};

bool retained(long t, const SampleConfig& cfg) { return t > cfg.burnin && (t - cfg.burnin) % cfg.thin == 0; }

void check_run_config(const SampleConfig& cfg) {
  require(cfg.iters > 0 && cfg.burnin >= 0 && cfg.thin > 0, "iteration settings must be positive");
  require(cfg.iters > cfg.burnin, "iters must exceed burn-in");
}

}  // namespace

namespace {

GWishartParams target_params(const GWishartParams& prior, const Eigen::MatrixXd* S, double n) {
  prior.validate();
  GWishartParams t = S ? posterior_params(prior, *S, n) : prior;
  t.validate();
  return t;
}

}  // namespace

GibbsSampler::GibbsSampler(const GWishartParams& prior, const Eigen::MatrixXd* S, double n, const SampleConfig& cfg)
    : params_(target_params(prior, S, n)),
      gs_(relabel(params_.graph, params_.ordering)),
      ubar_(params_.ranked(params_.U)),
      alpha_(),
      factor_(gs_, ubar_),
      cfg_(cfg) {
  GbCheck check = is_gb_ordering(params_.graph, params_.ordering);
  if (!check.ok) {
    const Triple& t = check.violations.front();
    fail(ErrorKind::Infeasible, "ordering is not a Generalized Bartlett ordering: vertices " + label(t[0]) + ", " +
                                    label(t[1]) + ", " + label(t[2]) + " form a triangle of fill edges");
  }
  alpha_ = alpha_exponents(gs_, 0.0, params_.ranked(params_.delta));
}

void GibbsSampler::update_independent(std::size_t q, Rng& rng) {
  const double x0 = factor_.independent(q);
  QuadraticFit fit;
  try {
    if (dense_) {
      IndependentEntries li = factor_.independent_entries();
      Eigen::VectorXd dt = factor_.Dtilde();
      fit = fit_quadratic(gs_, li, dt, ubar_, q, cfg_.fit);
    } else {
      fit = fit_quadratic_values([&](double x) { return factor_.trial_independent(q, x); }, x0, cfg_.fit);
    }
  } catch (const Error& e) {
    auto [i, j] = factor_.keys()[q];
    fail(e.kind(), "Gibbs update of L(" + label(params_.ordering.vertex[i]) + "," + label(params_.ordering.vertex[j]) +
                       "): " + e.what());
  }
  // density proportional to exp(-(a x^2 + b x) / 2)
  const double mean = -fit.b / (2 * fit.a), sd = 1 / std::sqrt(fit.a);
  factor_.commit_independent(q, mean + sd * rng.normal());
}

void GibbsSampler::update_dtilde(int k, Rng& rng) {
  const double x0 = factor_.dtilde(k);
  RationalFit fit;
  try {
    if (dense_) {
      IndependentEntries li = factor_.independent_entries();
      Eigen::VectorXd dt = factor_.Dtilde();
      fit = fit_rational(gs_, li, dt, ubar_, k, cfg_.fit);
    } else {
      fit = fit_rational_values([&](double x) { return factor_.trial_dtilde(k, x); }, x0, cfg_.fit);
    }
  } catch (const Error& e) {
    fail(e.kind(), "Gibbs update of D~(" + label(params_.ordering.vertex[k]) + "): " + e.what());
  }
  // density proportional to x^alpha exp(-(c1 x + c_{-1} / x) / 2)
  factor_.commit_dtilde(k, rng.gig(alpha_(k) + 1, fit.cm1, fit.c1));
}

void GibbsSampler::sweep(Rng& rng) {
  for (std::size_t q = 0; q < factor_.keys().size(); ++q) update_independent(q, rng);
  for (int k = 0; k < gs_.size(); ++k) update_dtilde(k, rng);
  if (cfg_.block_start >= 0) block_update_trailing(cfg_.block_start, rng);
}

void GibbsSampler::block_update_trailing(int p1, Rng& rng) {
  const int p = gs_.size();
  require(p1 >= 0 && p1 < p, "block start out of range");
  std::vector<int> tail;
  for (int v = p1; v < p; ++v) tail.push_back(v);
  if (!is_perfect_elimination(gs_.induced(tail)))
    fail(ErrorKind::Infeasible, "trailing subgraph from position " + std::to_string(p1 + 1) +
                                    " is not decomposable under the ordering");
  std::vector<std::size_t> qs;
  for (std::size_t q = 0; q < factor_.keys().size(); ++q)
    if (factor_.keys()[q].second >= p1) qs.push_back(q);
  const std::size_t m = qs.size();
  if (m == 0) return;
  std::vector<double> x0(m);
  for (std::size_t t = 0; t < m; ++t) x0[t] = factor_.independent(qs[t]);
  std::vector<double> xs(m);
  auto g = [&](const Eigen::VectorXd& off) {
    for (std::size_t t = 0; t < m; ++t) xs[t] = x0[t] + off(static_cast<Eigen::Index>(t));
    return factor_.trial_block(qs, xs, p1);
  };
  const Eigen::Index mm = static_cast<Eigen::Index>(m);
  Eigen::VectorXd off = Eigen::VectorXd::Zero(mm);
  const double g0 = g(off);
  Eigen::VectorXd gp(mm), gm(mm), b(mm);
  Eigen::MatrixXd A(mm, mm);
  for (Eigen::Index i = 0; i < mm; ++i) {
    off.setZero();
    off(i) = 1;
    gp(i) = g(off);
    off(i) = -1;
    gm(i) = g(off);
    A(i, i) = (gp(i) + gm(i) - 2 * g0) / 2;
    b(i) = (gp(i) - gm(i)) / 2;
  }
  for (Eigen::Index i = 0; i < mm; ++i)
    for (Eigen::Index j = i + 1; j < mm; ++j) {
      off.setZero();
      off(i) = off(j) = 1;
      A(i, j) = A(j, i) = (g(off) - gp(i) - gp(j) + g0) / 2;
    }
  off.setOnes();
  const double check = g(off);
  const double predicted = g0 + b.sum() + A.sum();
  const double scale = std::max({std::abs(g0), std::abs(check), 1e-300});
  if (std::abs(check - predicted) > cfg_.fit.tolerance * scale)
    fail(ErrorKind::Numerical, "energy is not jointly quadratic in the trailing block");
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Numerical, "recovered block precision is not positive definite");
  // exp(-(x'Ax + b'x)/2): mean -A^{-1} b / 2, covariance A^{-1}
  Eigen::VectorXd mean = -0.5 * llt.solve(b);
  Eigen::VectorXd z(mm);
  for (Eigen::Index i = 0; i < mm; ++i) z(i) = rng.normal();
  Eigen::VectorXd draw = mean + llt.matrixU().solve(z);
  for (std::size_t t = 0; t < m; ++t) xs[t] = x0[t] + draw(static_cast<Eigen::Index>(t));
  factor_.commit_block(qs, xs, p1);
}

Eigen::MatrixXd GibbsSampler::omega() const { return params_.unranked(assemble_omega(factor_.factor())); }

ChainSummary gibbs_run(const GWishartParams& prior, const Eigen::MatrixXd* S, double n, const SampleConfig& cfg) {
  check_run_config(cfg);
  GibbsSampler sampler(prior, S, n, cfg);
  ChainSummary out;
  Recorder rec(out, sampler.params(), "gibbs", cfg);
  const Graph& cover = sampler.state().cover();
  std::vector<std::vector<int>> colsupp(static_cast<std::size_t>(cover.size()));
  for (int j = 0; j < cover.size(); ++j) {
    colsupp[j].push_back(j);
    for (int i = j + 1; i < cover.size(); ++i)
      if (cover.has_edge(i, j)) colsupp[j].push_back(i);
  }
  Rng rng(cfg.seed, cfg.stream);
  for (long t = 1; t <= cfg.iters; ++t) {
    sampler.sweep(rng);
    if (retained(t, cfg)) rec.record_sparse(t, sampler.state().L(), sampler.state().D(), colsupp);
  }
  return out;
}

namespace {

struct DirectColumn {
  std::vector<int> nbrs;       // N^{>j}
  Eigen::VectorXd e;           // conditional mean of L_{I_j}
  Eigen::MatrixXd chol_upper;  // R' with U^{>j} = R R'
  Eigen::MatrixXd usub_inv;
  double c = 0;
  double shape = 0;
};

std::vector<DirectColumn> direct_setup(const GWishartParams& params) {
  params.validate();
  const Graph gs = params.ranked_graph();
  if (!is_perfect_elimination(gs))
    fail(ErrorKind::Infeasible, "ordering is not a perfect elimination ordering of a decomposable graph");
  const Eigen::MatrixXd U = params.ranked(params.U);
  const Eigen::VectorXd delta = params.ranked(params.delta);
  const int p = gs.size();
  std::vector<DirectColumn> cols(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    DirectColumn& col = cols[j];
    for (int i = j + 1; i < p; ++i)
      if (gs.has_edge(i, j)) col.nbrs.push_back(i);
    const Eigen::Index nu = static_cast<Eigen::Index>(col.nbrs.size());
    col.c = U(j, j);
    if (nu > 0) {
      Eigen::MatrixXd usub(nu, nu);
      Eigen::VectorXd ucol(nu);
      for (Eigen::Index a = 0; a < nu; ++a) {
        ucol(a) = U(col.nbrs[a], j);
        for (Eigen::Index b = 0; b < nu; ++b) usub(a, b) = U(col.nbrs[a], col.nbrs[b]);
      }
      Eigen::LLT<Eigen::MatrixXd> llt(usub);
      col.e = -llt.solve(ucol);
      col.c = U(j, j) + ucol.dot(col.e);
      col.chol_upper = llt.matrixU();
      col.usub_inv = llt.solve(Eigen::MatrixXd::Identity(nu, nu));
    }
    col.shape = (static_cast<double>(nu) + delta(j)) / 2 + 1;
  }
  return cols;
}

CholeskyFactor direct_draw(const std::vector<DirectColumn>& cols, const Graph& gs, Rng& rng) {
  const int p = gs.size();
  CholeskyFactor f{gs, Eigen::MatrixXd::Identity(p, p), Eigen::VectorXd::Zero(p)};
  for (int j = 0; j < p; ++j) {
    const DirectColumn& col = cols[j];
    f.D(j) = rng.gamma(col.shape, col.c / 2);
    const Eigen::Index nu = static_cast<Eigen::Index>(col.nbrs.size());
    if (nu == 0) continue;
    Eigen::VectorXd z(nu);
    for (Eigen::Index a = 0; a < nu; ++a) z(a) = rng.normal();
    Eigen::VectorXd x = col.e + col.chol_upper.triangularView<Eigen::Upper>().solve(z) / std::sqrt(f.D(j));
    for (Eigen::Index a = 0; a < nu; ++a) f.L(col.nbrs[a], j) = x(a);
  }
  return f;
}

}  // namespace

CholeskyFactor direct_decomposable_sample(const GWishartParams& params, Rng& rng) {
  auto cols = direct_setup(params);
  return direct_draw(cols, params.ranked_graph(), rng);
}

ChainSummary direct_run(const GWishartParams& params, long draws, const SampleConfig& cfg) {
  require(draws > 0, "number of draws must be positive");
  auto cols = direct_setup(params);
  const Graph gs = params.ranked_graph();
  std::vector<std::vector<int>> colsupp(static_cast<std::size_t>(gs.size()));
  for (int j = 0; j < gs.size(); ++j) {
    colsupp[j].push_back(j);
    colsupp[j].insert(colsupp[j].end(), cols[j].nbrs.begin(), cols[j].nbrs.end());
  }
  SampleConfig c = cfg;
  c.iters = draws;
  c.burnin = 0;
  c.thin = 1;
  ChainSummary out;
  Recorder rec(out, params, "direct", c);
  Rng rng(cfg.seed, cfg.stream);
  for (long t = 1; t <= draws; ++t) {
    CholeskyFactor f = direct_draw(cols, gs, rng);
    rec.record_sparse(t, f.L, f.D, colsupp);
  }
  return out;
}

Eigen::MatrixXd closed_form_mean(const GWishartParams& params) {
  auto cols = direct_setup(params);
  const Eigen::VectorXd delta = params.ranked(params.delta);
  const int p = params.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k < p; ++k) {
    const DirectColumn& col = cols[k];
    const Eigen::Index nu = static_cast<Eigen::Index>(col.nbrs.size());
    for (Eigen::Index a = 0; a < nu; ++a)
      for (Eigen::Index b = 0; b < nu; ++b) m(col.nbrs[a], col.nbrs[b]) += col.usub_inv(a, b);
    const double h = (delta(k) + static_cast<double>(nu) + 2) / col.c;
    Eigen::VectorXd ek = Eigen::VectorXd::Zero(p);
    ek(k) = 1;
    for (Eigen::Index a = 0; a < nu; ++a) ek(col.nbrs[a]) = col.e(a);
    m += h * ek * ek.transpose();
  }
  return params.unranked(m);
}

namespace {

// Shared machinery of the accept-reject and Metropolis-Hastings samplers:
// Omega = Phi' Phi with Phi = Psi T upper triangular and U^{-1} = T' T.
class PsiSampler {
 public:
  PsiSampler(const GWishartParams& params, double df_offset) : gs_(params.ranked_graph()) {
    params.validate();
    const int p = gs_.size();
    Eigen::MatrixXd U = params.ranked(params.U);
    Eigen::MatrixXd uinv = U.llt().solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (uinv + uinv.transpose()));
    if (llt.info() != Eigen::Success) fail(ErrorKind::Numerical, "cannot factor U^{-1}");
    T_ = llt.matrixU();
    Eigen::VectorXd delta = params.ranked(params.delta);
    std::vector<int> nu = column_counts(gs_);
    df_.resize(p);
    for (int i = 0; i < p; ++i) {
      df_(i) = delta(i) + nu[i] + df_offset;
      if (!(df_(i) > 0)) fail(ErrorKind::InvalidArgument, "non-positive chi-square degrees of freedom");
    }
    psi_ = Eigen::MatrixXd::Zero(p, p);
    phi_ = Eigen::MatrixXd::Zero(p, p);
  }

  // Draws the free entries, completes the rest and returns sum of squared dependent entries.
  double propose(Rng& rng) {
    const int p = gs_.size();
    for (int i = 0; i < p; ++i) {
      psi_(i, i) = std::sqrt(rng.chi_square(df_(i)));
      for (int j = i + 1; j < p; ++j)
        if (gs_.has_edge(i, j)) psi_(i, j) = rng.normal();
    }
    return complete();
  }

  double complete() {
    const int p = gs_.size();
    double dep = 0;
    for (int i = 0; i < p; ++i) {
      phi_(i, i) = psi_(i, i) * T_(i, i);
      for (int j = i + 1; j < p; ++j) {
        double partial = 0;
        for (int l = i; l < j; ++l) partial += psi_(i, l) * T_(l, j);
        if (gs_.has_edge(i, j)) {
          phi_(i, j) = partial + psi_(i, j) * T_(j, j);
        } else {
          // Omega_ij = sum_{k <= i} Phi_ki Phi_kj = 0
          double s = 0;
          for (int k = 0; k < i; ++k) s += phi_(k, i) * phi_(k, j);
          phi_(i, j) = -s / phi_(i, i);
          psi_(i, j) = (phi_(i, j) - partial) / T_(j, j);
          dep += psi_(i, j) * psi_(i, j);
        }
      }
    }
    return dep;
  }

  CholeskyFactor factor() const {
    const int p = gs_.size();
    CholeskyFactor f{gs_, Eigen::MatrixXd::Identity(p, p), Eigen::VectorXd::Zero(p)};
    for (int j = 0; j < p; ++j) {
      f.D(j) = phi_(j, j) * phi_(j, j);
      for (int i = j + 1; i < p; ++i) f.L(i, j) = phi_(j, i) / phi_(j, j);
    }
    return f;
  }

  const Eigen::MatrixXd& phi() const { return phi_; }
  const Graph& ranked_graph() const { return gs_; }

 private:
  Graph gs_;
  Eigen::MatrixXd T_;
  Eigen::VectorXd df_;
  Eigen::MatrixXd psi_, phi_;
};

ArResult ar_loop(const GWishartParams& params, long max_attempts, Rng& rng, double df_offset, bool stop_on_accept) {
  require(max_attempts > 0, "max_attempts must be positive");
  PsiSampler ps(params, df_offset);
  ArResult res;
  double acc = 0;
  for (long a = 0; a < max_attempts; ++a) {
    double dep = ps.propose(rng);
    ++res.attempts;
    acc += std::exp(-0.5 * dep);
    if (std::log(rng.uniform()) < -0.5 * dep) {
      ++res.accepted;
      if (!res.draw) res.draw = ps.factor();
      if (stop_on_accept) break;
    }
  }
  res.mean_acceptance = acc / static_cast<double>(res.attempts);
  return res;
}

}  // namespace

ArResult ar_sample(const GWishartParams& params, long max_attempts, Rng& rng, double df_offset) {
  return ar_loop(params, max_attempts, rng, df_offset, true);
}

ArResult ar_acceptance(const GWishartParams& params, long attempts, Rng& rng, double df_offset) {
  return ar_loop(params, attempts, rng, df_offset, false);
}

ChainSummary ar_run(const GWishartParams& params, long draws, long max_attempts, const SampleConfig& cfg) {
  require(draws > 0, "number of draws must be positive");
  require(max_attempts > 0, "max_attempts must be positive");
  SampleConfig c = cfg;
  c.iters = draws;
  c.burnin = 0;
  c.thin = 1;
  ChainSummary out;
  Recorder rec(out, params, "ar", c);
  PsiSampler ps(params, cfg.df_offset);
  Rng rng(cfg.seed, cfg.stream);
  long attempts = 0, accepted = 0;
  double acc = 0;
  while (accepted < draws && attempts < max_attempts) {
    double dep = ps.propose(rng);
    ++attempts;
    acc += std::exp(-0.5 * dep);
    if (std::log(rng.uniform()) < -0.5 * dep) {
      ++accepted;
      CholeskyFactor f = ps.factor();
      rec.record_dense(accepted, ps.phi().transpose() * ps.phi(), f.L, f.D);
    }
  }
  out.attempts = attempts;
  out.acceptance_rate = acc / static_cast<double>(attempts);
  out.exhausted = accepted < draws;
  return out;
}

ChainSummary mh_run(const GWishartParams& params, const SampleConfig& cfg) {
  check_run_config(cfg);
  ChainSummary out;
  Recorder rec(out, params, "mh", cfg);
  PsiSampler ps(params, cfg.df_offset);
  Rng rng(cfg.seed, cfg.stream);
  double cur = ps.propose(rng);
  Eigen::MatrixXd phi_cur = ps.phi();
  CholeskyFactor f_cur = ps.factor();
  long accepted = 0;
  for (long t = 1; t <= cfg.iters; ++t) {
    double prop = ps.propose(rng);
    if (std::log(rng.uniform()) < 0.5 * (cur - prop)) {
      cur = prop;
      phi_cur = ps.phi();
      f_cur = ps.factor();
      ++accepted;
    }
    if (retained(t, cfg)) rec.record_dense(t, phi_cur.transpose() * phi_cur, f_cur.L, f_cur.D);
  }
  out.attempts = cfg.iters;
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(cfg.iters);
  return out;
}

}  // namespace gbw
