#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/gamma.hpp>
#include <cmath>
#include <random>

#include "error.hpp"
#include "inference.hpp"
#include "samplers.hpp"

using namespace gbw;

namespace {

Eigen::MatrixXd random_spd(int p, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = nd(gen);
  return a * a.transpose() / p + Eigen::MatrixXd::Identity(p, p);
}

// sum_k (delta_k - delta_{k+1}) [Omega_k^{-1}]^0 with Omega_k the leading k x k block.
Eigen::MatrixXd sigma_star_naive(const Eigen::MatrixXd& omega, const Eigen::VectorXd& delta) {
  const Eigen::Index p = omega.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index k = 1; k <= p; ++k) {
    const double w = delta(k - 1) - (k < p ? delta(k) : 0.0);
    out.topLeftCorner(k, k) += w * omega.topLeftCorner(k, k).inverse();
  }
  return out;
}

ChainSummary constant_chain(const Eigen::MatrixXd& omega, int draws) {
  const int p = static_cast<int>(omega.rows());
  ChainSummary c;
  c.graph = Graph::complete(p);
  c.ordering = Ordering::natural(p);
  c.support = support_entries(c.graph);
  for (int t = 0; t < draws; ++t) {
    std::vector<double> row;
    for (auto [u, v] : c.support) row.push_back(omega(u, v));
    c.draws.push_back(row);
    c.iteration.push_back(t + 1);
  }
  return c;
}

}  // namespace

TEST_CASE("sigma star telescoping matches the defining sum") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> ud(1, 20);
  for (int t = 0; t < 50; ++t) {
    const int p = 2 + t % 7;
    Eigen::MatrixXd om = random_spd(p, gen);
    // unit lower L and D from a plain Cholesky
    Eigen::LLT<Eigen::MatrixXd> llt(om);
    Eigen::MatrixXd C = llt.matrixL();
    Eigen::VectorXd D = C.diagonal().array().square();
    Eigen::MatrixXd L = C * C.diagonal().cwiseInverse().asDiagonal();
    Eigen::VectorXd delta(p);
    for (int i = 0; i < p; ++i) delta(i) = ud(gen);
    Eigen::MatrixXd fast = sigma_star(L, D, delta);
    Eigen::MatrixXd slow = sigma_star_naive(om, delta);
    CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-9 * (1 + slow.cwiseAbs().maxCoeff()));
    // constant delta reduces to delta * Omega^{-1}
    Eigen::VectorXd c = Eigen::VectorXd::Constant(p, 7.0);
    CHECK((sigma_star(L, D, c) - 7.0 * om.inverse()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("identity diagnostic for p = 1") {
  const double u = 3.0;
  GWishartParams prm{Graph(1), Ordering::natural(1), Eigen::MatrixXd::Constant(1, 1, u), Eigen::VectorXd::Constant(1, 6)};
  SampleConfig c;
  c.burnin = 100;
  c.iters = 100100;
  c.keep_factors = true;
  auto chain = gibbs_run(prm, nullptr, 0, c);
  auto rep = identity_diagnostic(chain, prm);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].truth == u);
  CHECK(std::abs(rep.entries[0].simulated - u) < 3 * rep.entries[0].std_error);
}

TEST_CASE("identity diagnostic on a small cycle") {
  std::mt19937_64 gen(2);
  Eigen::VectorXd delta(5);
  delta << 6, 7, 8, 9, 10;
  GWishartParams prm{Graph::cycle(5), Ordering::natural(5), random_spd(5, gen) * 10, delta};
  SampleConfig c;
  c.burnin = 1000;
  c.iters = 51000;
  c.keep_factors = true;
  auto rep = identity_diagnostic(gibbs_run(prm, nullptr, 0, c), prm);
  CHECK(rep.entries.size() == 10);
  for (const auto& e : rep.entries) {
    INFO("(" << e.i + 1 << "," << e.j + 1 << ") " << e.simulated << " vs " << e.truth << " se " << e.std_error);
    CHECK(e.i >= e.j);
    CHECK(std::abs(e.simulated - e.truth) < 4 * e.std_error);
  }
}

TEST_CASE("identity diagnostic refusals") {
  GWishartParams prm{Graph::cycle(4), Ordering::natural(4), Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::Constant(4, 4)};
  ChainSummary chain;
  try {
    identity_diagnostic(chain, prm);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("requires every delta_k > 4") != std::string::npos);
  }
  prm.delta = Eigen::VectorXd::Constant(4, 5);
  CHECK_THROWS_AS(identity_diagnostic(chain, prm), Error);  // no factors retained
}

TEST_CASE("nearest-rank intervals") {
  std::vector<double> xs(1000);
  for (int i = 0; i < 1000; ++i) xs[static_cast<std::size_t>(i)] = 1000 - i;  // values 1..1000
  auto [lo, hi] = equal_tailed_interval(xs, 0.95);
  CHECK(lo == 25);
  CHECK(hi == 975);
  auto [a, b] = equal_tailed_interval(std::vector<double>(10, 2.5), 0.9);
  CHECK(a == 2.5);
  CHECK(b == 2.5);
  CHECK_THROWS_AS(equal_tailed_interval(xs, 1.0), Error);

  Eigen::MatrixXd om = Eigen::MatrixXd::Identity(3, 3);
  om(0, 1) = om(1, 0) = 0.2;
  auto s = posterior_mean_and_ci(constant_chain(om, 50), 0.95);
  CHECK((s.omega_lower - om).cwiseAbs().maxCoeff() == 0);
  CHECK((s.omega_upper - om).cwiseAbs().maxCoeff() == 0);
  CHECK((s.omega_mean - om).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("interval coverage for a Gamma target") {
  // p = 1: Omega ~ Gamma(d/2 + 1, rate u/2); the exact mass between the bounds should be near the level
  const double u = 2.0, d = 5.0;
  GWishartParams prm{Graph(1), Ordering::natural(1), Eigen::MatrixXd::Constant(1, 1, u), Eigen::VectorXd::Constant(1, d)};
  boost::math::gamma_distribution<double> law(d / 2 + 1, 2 / u);
  double mass = 0;
  const int reps = 50;
  for (int r = 0; r < reps; ++r) {
    SampleConfig c;
    c.seed = static_cast<std::uint64_t>(r + 1);
    auto chain = direct_run(prm, 2000, c);
    auto s = posterior_mean_and_ci(chain, 0.95);
    mass += boost::math::cdf(law, s.omega_upper(0, 0)) - boost::math::cdf(law, s.omega_lower(0, 0));
  }
  CHECK(std::abs(mass / reps - 0.95) < 0.02);
}

TEST_CASE("Stein loss") {
  CHECK(stein_loss(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(0.0));
  CHECK(stein_loss(2 * Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)) ==
        doctest::Approx(2 * 2 - 2 * std::log(2.0) - 2));
  std::mt19937_64 gen(3);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd a = random_spd(4, gen), b = random_spd(4, gen), m = random_spd(4, gen);
    m(0, 3) += 0.5;  // not symmetric, still invertible
    CHECK(stein_loss(m * a * m.transpose(), m * b * m.transpose()) == doctest::Approx(stein_loss(a, b)).epsilon(1e-8));
    CHECK(stein_loss(a, b) >= 0);
  }
}

TEST_CASE("deviance and DIC") {
  auto chain = constant_chain(Eigen::MatrixXd::Identity(2, 2), 20);
  CHECK(deviance(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2), 10) == doctest::Approx(20));
  CHECK(dic(chain, Eigen::MatrixXd::Identity(2, 2), 10) == doctest::Approx(20));

  std::mt19937_64 gen(4);
  GWishartParams prm{Graph::cycle(4), Ordering::natural(4), Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::Constant(4, 5)};
  SampleConfig c;
  c.burnin = 100;
  c.iters = 2100;
  auto g = gibbs_run(prm, nullptr, 0, c);
  Eigen::MatrixXd S = random_spd(4, gen);
  double dbar = 0;
  for (std::size_t t = 0; t < g.retained(); ++t) dbar += deviance(g.omega_draw(t), S, 30);
  dbar /= static_cast<double>(g.retained());
  const double dmean = deviance(g.omega_mean(), S, 30);
  const double d = dic(g, S, 30);
  CHECK(d == doctest::Approx(2 * dbar - dmean));
  CHECK((d >= dmean) == (dbar >= dmean));
  CHECK_THROWS_AS(dic(ChainSummary{}, S, 30), Error);
}

TEST_CASE("shape rules") {
  Eigen::VectorXd e = empirical_delta(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3), 9);
  CHECK(e == Eigen::VectorXd::Constant(3, 10));
  std::mt19937_64 gen(5);
  Eigen::MatrixXd U = random_spd(3, gen), S = random_spd(3, gen);
  const double c = 2.5;
  Eigen::VectorXd scaled = empirical_delta(U, c * S, 7);
  for (int i = 0; i < 3; ++i) CHECK(scaled(i) == doctest::Approx(U(i, i) / (c * S(i, i)) + 7));
  Eigen::VectorXd inv = inv_diag_delta(S);
  for (int i = 0; i < 3; ++i) CHECK(inv(i) == doctest::Approx(1 / S(i, i)));
  Eigen::VectorXd prec = prec_diag_delta(S);
  Eigen::MatrixXd si = S.inverse();
  for (int i = 0; i < 3; ++i) CHECK(prec(i) == doctest::Approx(si(i, i)));
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(inv_diag_delta(zero), Error);
}

TEST_CASE("batch means standard error on independent draws") {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> nd(0, 2);
  std::vector<double> xs(100000);
  for (double& x : xs) x = nd(gen);
  CHECK(batch_means_se(xs) == doctest::Approx(2 / std::sqrt(100000.0)).epsilon(0.25));
  // a strongly autocorrelated series gets a larger error than the naive one
  std::vector<double> ar(100000);
  double prev = 0;
  for (double& x : ar) x = prev = 0.95 * prev + nd(gen);
  double var = 0;
  for (double x : ar) var += x * x;
  var /= static_cast<double>(ar.size());
  CHECK(batch_means_se(ar) > 3 * std::sqrt(var / static_cast<double>(ar.size())));
}
