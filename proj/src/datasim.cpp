#include "datasim.hpp"

#include <algorithm>
#include <string>

#include "cholesky.hpp"
#include "error.hpp"
#include "random.hpp"

namespace gbw {

void HubSpec::validate() const {
  require(p > 0, "hub graph needs p > 0");
  require(hubs.size() == 4 && blocks.size() == 4, "hub spec needs four hubs and four blocks");
  std::vector<int> seen(static_cast<std::size_t>(p), 0);
  auto mark = [&](int v) {
    require(v >= 0 && v < p, "hub spec vertex " + std::to_string(v + 1) + " out of range");
    if (seen[static_cast<std::size_t>(v)]++)
      fail(ErrorKind::InvalidArgument, "hub spec vertex " + std::to_string(v + 1) + " appears twice");
  };
  for (int h : hubs) mark(h);
  for (const auto& b : blocks)
    for (int v : b) mark(v);
}

HubSpec default_hub_spec(int p) {
  require(p >= 20 && p % 20 == 0, "default hub spec needs p divisible by 20");
  HubSpec s;
  s.p = p;
  const int b[5] = {0, p / 20, 3 * p / 20, 9 * p / 20, p};
  for (int i = 1; i <= 4; ++i) {
    s.hubs.push_back(b[i] - 1);
    std::vector<int> block;
    for (int v = b[i - 1] + 1; v < b[i]; ++v) block.push_back(v - 1);
    s.blocks.push_back(block);
  }
  return s;
}

Graph hub_graph(const HubSpec& spec) {
  spec.validate();
  Graph g(spec.p);
  for (int i = 0; i < 4; ++i) {
    g.add_edge(spec.hubs[static_cast<std::size_t>(i)], spec.hubs[static_cast<std::size_t>((i + 1) % 4)]);
    for (int v : spec.blocks[static_cast<std::size_t>(i)]) g.add_edge(spec.hubs[static_cast<std::size_t>(i)], v);
  }
  return g;
}

Eigen::VectorXd hub_d(const HubSpec& spec) {
  spec.validate();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(spec.p);
  int prev = 0;
  for (int i = 0; i < 4; ++i) {
    const int pos = spec.hubs[static_cast<std::size_t>(i)] + 1;
    const double w = pos - prev;
    d(spec.hubs[static_cast<std::size_t>(i)]) = w;
    for (int v : spec.blocks[static_cast<std::size_t>(i)]) d(v) = w;
    prev = pos;
  }
  return d;
}

Eigen::MatrixXd omega_from_pattern(const Graph& g, const Ordering& o, double fill_value, const Eigen::VectorXd& d) {
  const int p = g.size();
  require(o.size() == p, "ordering size does not match graph");
  require(d.size() == p, "D has the wrong length");
  for (int v = 0; v < p; ++v) require(d(v) > 0, "D must be positive");
  const Graph gs = relabel(g, o);
  IndependentEntries li = IndependentEntries::zeros(gs);
  std::fill(li.values.begin(), li.values.end(), fill_value);
  Eigen::VectorXd dr(p);
  for (int r = 0; r < p; ++r) dr(r) = d(o.vertex[static_cast<std::size_t>(r)]);
  const Eigen::MatrixXd ranked = assemble_omega(complete_factor(gs, li, dr));
  Eigen::MatrixXd out(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      out(o.vertex[static_cast<std::size_t>(a)], o.vertex[static_cast<std::size_t>(b)]) = ranked(a, b);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < p; ++v)
      if (u != v && !g.has_edge(u, v)) out(u, v) = 0;
  Eigen::LLT<Eigen::MatrixXd> llt(out);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Numerical, "assembled precision is not positive definite");
  return out;
}

MvnSample sample_mvn(const Eigen::MatrixXd& omega, long n, std::uint64_t seed) {
  require(n > 0, "n must be positive");
  require(omega.rows() == omega.cols(), "Omega must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) fail(ErrorKind::InvalidArgument, "Omega is not positive definite");
  const Eigen::Index p = omega.rows();
  // Omega = R^T R with R upper; x = R^{-1} z has covariance Omega^{-1}.
  const Eigen::MatrixXd R = llt.matrixU();
  MvnSample out;
  out.X.resize(n, p);
  Eigen::VectorXd z(p);
  for (long r = 0; r < n; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    for (Eigen::Index k = 0; k < p; ++k) z(k) = rng.normal();
    out.X.row(r) = R.triangularView<Eigen::Upper>().solve(z).transpose();
  }
  out.S = out.X.transpose() * out.X / static_cast<double>(n);
  return out;
}

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
}

}  // namespace

OrderedGraph random_gb_graph(int p, int m, std::uint64_t seed, int max_tries) {
  require(p >= 2, "need at least two vertices");
  require(m >= 0 && m <= p * (p - 1) / 2, "edge count out of range");
  Rng rng(seed, 0x9b);
  for (int t = 0; t < max_tries; ++t) {
    std::vector<Edge> all;
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v) all.emplace_back(u, v);
    Graph g(p);
    for (int e = 0; e < m; ++e) {
      std::size_t k = pick(rng, all.size());
      g.add_edge(all[k].first, all[k].second);
      all[k] = all.back();
      all.pop_back();
    }
    GbSearchOptions opt;
    opt.seed = seed + static_cast<std::uint64_t>(t);
    auto res = find_gb_ordering(g, opt);
    if (res.ordering) return {g, *res.ordering};
  }
  fail(ErrorKind::Limit, "no GB graph found within the try budget");
}

Graph perturb_graph(const Graph& g, int drop, int add, std::uint64_t seed) {
  Rng rng(seed, 0x5e);
  Graph out = g;
  std::vector<Edge> edges = out.edges();
  require(drop >= 0 && drop <= static_cast<int>(edges.size()), "cannot drop that many edges");
  for (int k = 0; k < drop; ++k) {
    std::size_t i = pick(rng, edges.size());
    out.remove_edge(edges[i].first, edges[i].second);
    edges[i] = edges.back();
    edges.pop_back();
  }
  std::vector<Edge> non;
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (!g.has_edge(u, v)) non.emplace_back(u, v);
  require(add >= 0 && add <= static_cast<int>(non.size()), "cannot add that many edges");
  for (int k = 0; k < add; ++k) {
    std::size_t i = pick(rng, non.size());
    out.add_edge(non[i].first, non[i].second);
    non[i] = non.back();
    non.pop_back();
  }
  return out;
}

}  // namespace gbw
