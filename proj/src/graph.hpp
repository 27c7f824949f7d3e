#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gbw {

using Edge = std::pair<int, int>;
using Triple = std::array<int, 3>;

// Simple undirected graph on vertices 0..p-1 backed by an adjacency matrix.
// Sizes stay in the hundreds, so the p^2 bytes are not a concern.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int p);

  static Graph complete(int p);
  static Graph cycle(int p);
  static Graph path(int p);
  static Graph grid(int rows, int cols);  // row-wise labels
  static Graph complete_bipartite(int a, int b);

  int size() const { return p_; }
  bool has_edge(int u, int v) const { return adj_[index(u, v)] != 0; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int edge_count() const { return m_; }
  int degree(int v) const;

  std::vector<int> neighbors(int v) const;
  std::vector<Edge> edges() const;  // u < v, lexicographic

  bool is_connected() const;
  bool is_clique(const std::vector<int>& vs) const;
  Graph induced(const std::vector<int>& vs) const;

  bool operator==(const Graph& o) const { return p_ == o.p_ && adj_ == o.adj_; }

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(v);
  }
  void check_pair(int u, int v) const;

  int p_ = 0;
  int m_ = 0;
  std::vector<std::uint8_t> adj_;
};

// rank[v] is the position of vertex v (0-based); vertex[r] is its inverse.
struct Ordering {
  std::vector<int> rank;
  std::vector<int> vertex;

  static Ordering natural(int p);
  static Ordering from_ranks(std::vector<int> ranks);
  static Ordering from_sequence(const std::vector<int>& elimination_sequence);
  int size() const { return static_cast<int>(rank.size()); }
};

// E_sigma: the graph relabelled so that vertex v becomes rank[v].
Graph relabel(const Graph& g, const Ordering& o);
// Inverse of relabel.
Graph unrelabel(const Graph& gs, const Ordering& o);

struct FillPattern {
  Graph base;                // E_sigma
  Graph cover;               // D^sigma(E), in rank space
  std::vector<Edge> fill;    // cover \ base, rank space, (lo, hi)
};

// Elimination game on a rank-space graph.
FillPattern triangulate(const Graph& gs);
FillPattern triangulate(const Graph& g, const Ordering& o);

bool is_perfect_elimination(const Graph& gs);
// Maximum cardinality search. Returns a perfect elimination ordering when g is chordal.
std::optional<Ordering> perfect_elimination_ordering(const Graph& g);
inline bool is_decomposable(const Graph& g) { return perfect_elimination_ordering(g).has_value(); }

struct GbCheck {
  bool ok = true;
  std::vector<Triple> violations;  // original vertex labels, sorted by rank descending within each triple
};

// Violating triples in rank space: i > j > k, all three pairs absent from gs and present in the fill cover.
std::vector<Triple> violating_triples(const Graph& gs, const Graph& cover);
GbCheck is_gb_ordering(const Graph& g, const Ordering& o);

struct GbSearchOptions {
  int exhaustive_limit = 20;
  int restarts = 200;
  std::uint64_t seed = 1;
};

struct GbSearchResult {
  std::optional<Ordering> ordering;
  bool exhaustive = false;
};

GbSearchResult find_gb_ordering(const Graph& g, const GbSearchOptions& opt = {});

// Adds the (i, j) side of the lexicographically smallest violating triple until
// none is left. The first overload works in rank space; the second takes and
// returns original labels.
Graph gb_cover(const Graph& gs, std::vector<Edge>* added = nullptr);
Graph gb_cover(const Graph& g, const Ordering& o, std::vector<Edge>* added = nullptr);

// Vertex sets of the prime components (atoms), each sorted ascending.
std::vector<std::vector<int>> prime_components(const Graph& g);

struct OrderedGraph {
  Graph graph;
  Ordering ordering;
};

OrderedGraph expand_max_vertex(const OrderedGraph& base, const std::vector<OrderedGraph>& parts);
OrderedGraph expand_tree(const Graph& tree, const std::vector<std::vector<OrderedGraph>>& attachments);

Ordering min_fill_ordering(const Graph& g);

}  // namespace gbw
