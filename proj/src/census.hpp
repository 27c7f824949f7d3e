#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace gbw {

struct CensusRow {
  int order = 0;
  long total_connected = 0;
  long decomposable = 0;
  long generalized_bartlett = 0;
};

// Upper-triangle bit code maximised over labelings that respect an
// isomorphism-invariant vertex partition. Two graphs of order <= 11 are
// isomorphic iff their codes are equal.
std::uint64_t canonical_code(const Graph& g);

// All connected graphs of each order 1..max_order up to isomorphism; index = order.
std::vector<std::vector<Graph>> enumerate_connected(int max_order);

// Classifies each connected graph; disconnected input graphs are skipped.
std::vector<CensusRow> census_of(const std::vector<Graph>& graphs, int max_order);
std::vector<CensusRow> census(int max_order);

}  // namespace gbw
