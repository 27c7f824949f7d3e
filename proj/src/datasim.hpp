#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace gbw {

// Hubs b_1..b_4 joined in a 4-cycle, hub b_i joined to every vertex of block B_i.
// 0-based labels.
struct HubSpec {
  int p = 0;
  std::vector<int> hubs;                 // size 4
  std::vector<std::vector<int>> blocks;  // size 4

  void validate() const;
};

// Hubs at the 1-based positions p/20, 3p/20, 9p/20, p with B_i the vertices strictly
// between b_{i-1} and b_i. Requires p divisible by 20.
HubSpec default_hub_spec(int p);
Graph hub_graph(const HubSpec& spec);
// D_jj = b_i - b_{i-1} (1-based positions, b_0 = 0) for j in {b_i} and B_i.
Eigen::VectorXd hub_d(const HubSpec& spec);

// Sets every independent entry of L to fill_value, completes the dependent
// entries and returns L D L^T in original labels. d is indexed by vertex.
Eigen::MatrixXd omega_from_pattern(const Graph& g, const Ordering& o, double fill_value, const Eigen::VectorXd& d);

struct MvnSample {
  Eigen::MatrixXd X;  // n x p
  Eigen::MatrixXd S;  // X^T X / n
};

// Rows are N(0, Omega^{-1}); row r uses substream r of the seed.
MvnSample sample_mvn(const Eigen::MatrixXd& omega, long n, std::uint64_t seed);

// Random graph on p vertices with exactly m edges admitting a GB ordering
// (found by heuristic search). Returns the graph and the ordering.
OrderedGraph random_gb_graph(int p, int m, std::uint64_t seed, int max_tries = 1000);

// Removes `drop` random edges then adds `add` random non-edges.
Graph perturb_graph(const Graph& g, int drop, int add, std::uint64_t seed);

}  // namespace gbw
