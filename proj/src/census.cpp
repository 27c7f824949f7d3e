#include "census.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "error.hpp"

namespace gbw {

namespace {

struct Canon {
  const Graph& g;
  int n;
  std::vector<int> cell;      // cell index of each vertex
  std::vector<int> cell_of_pos;
  std::vector<int> perm;      // perm[position] = vertex
  std::vector<char> used;
  std::uint64_t best = 0;

  std::uint64_t code() const {
    std::uint64_t c = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) c = (c << 1) | (g.has_edge(perm[i], perm[j]) ? 1u : 0u);
    return c;
  }

  void search(int pos) {
    if (pos == n) {
      best = std::max(best, code());
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || cell[v] != cell_of_pos[pos]) continue;
      used[v] = 1;
      perm[pos] = v;
      search(pos + 1);
      used[v] = 0;
    }
  }
};

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.size();
  require(n <= 11, "canonical code supports at most 11 vertices");
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<std::vector<int>> key(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    std::vector<int> nd;
    for (int u : g.neighbors(v)) nd.push_back(deg[u]);
    std::sort(nd.begin(), nd.end());
    key[v].push_back(deg[v]);
    key[v].insert(key[v].end(), nd.begin(), nd.end());
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  Canon c{g, n, std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n)),
          std::vector<int>(static_cast<std::size_t>(n)), std::vector<char>(static_cast<std::size_t>(n), 0)};
  int cells = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (pos > 0 && key[order[pos]] != key[order[pos - 1]]) ++cells;
    c.cell[order[pos]] = cells;
    c.cell_of_pos[pos] = cells;
  }
  c.search(0);
  return c.best;
}

std::vector<std::vector<Graph>> enumerate_connected(int max_order) {
  require(max_order >= 1 && max_order <= 10, "enumeration supports orders 1..10");
  std::vector<std::vector<Graph>> by_order(static_cast<std::size_t>(max_order) + 1);
  by_order[1].push_back(Graph(1));
  // Every connected graph has a vertex whose removal leaves it connected, so
  // extending connected graphs by one vertex reaches all of them.
  for (int n = 2; n <= max_order; ++n) {
    std::unordered_set<std::uint64_t> seen;
    for (const Graph& h : by_order[n - 1]) {
      const int m = n - 1;
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        Graph g(n);
        for (auto [a, b] : h.edges()) g.add_edge(a, b);
        for (int v = 0; v < m; ++v)
          if (mask & (1u << v)) g.add_edge(v, m);
        if (seen.insert(canonical_code(g)).second) by_order[n].push_back(std::move(g));
      }
    }
  }
  return by_order;
}

std::vector<CensusRow> census_of(const std::vector<Graph>& graphs, int max_order) {
  std::vector<CensusRow> rows;
  for (int n = 2; n <= max_order; ++n) rows.push_back({n, 0, 0, 0});
  GbSearchOptions opt;
  opt.exhaustive_limit = std::max(opt.exhaustive_limit, max_order);
  for (const Graph& g : graphs) {
    const int n = g.size();
    if (n < 2 || n > max_order || !g.is_connected()) continue;
    CensusRow& row = rows[static_cast<std::size_t>(n - 2)];
    ++row.total_connected;
    if (is_decomposable(g)) ++row.decomposable;
    GbSearchResult r = find_gb_ordering(g, opt);
    if (!r.exhaustive) fail(ErrorKind::Limit, "census requires exhaustive search");
    if (r.ordering) ++row.generalized_bartlett;
  }
  return rows;
}

std::vector<CensusRow> census(int max_order) {
  auto by_order = enumerate_connected(max_order);
  std::vector<Graph> all;
  for (auto& list : by_order)
    for (auto& g : list) all.push_back(g);
  return census_of(all, max_order);
}

}  // namespace gbw
