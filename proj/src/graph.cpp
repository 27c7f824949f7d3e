#include "graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "error.hpp"

namespace gbw {

Graph::Graph(int p) : p_(p), adj_(static_cast<std::size_t>(p) * static_cast<std::size_t>(p), 0) {
  require(p >= 0, "vertex count must be non-negative");
}

Graph Graph::complete(int p) {
  Graph g(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(int p) {
  require(p >= 3, "cycle needs at least 3 vertices");
  Graph g(p);
  for (int i = 0; i < p; ++i) g.add_edge(i, (i + 1) % p);
  return g;
}

Graph Graph::path(int p) {
  Graph g(p);
  for (int i = 0; i + 1 < p; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::grid(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

Graph Graph::complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

void Graph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= p_ || v >= p_)
    fail(ErrorKind::InvalidArgument, "vertex out of range: (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
  if (u == v) fail(ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u + 1));
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  if (adj_[index(u, v)]) return;
  adj_[index(u, v)] = adj_[index(v, u)] = 1;
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  check_pair(u, v);
  if (!adj_[index(u, v)]) return;
  adj_[index(u, v)] = adj_[index(v, u)] = 0;
  --m_;
}

int Graph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < p_; ++u) d += adj_[index(v, u)];
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < p_; ++u)
    if (adj_[index(v, u)]) out.push_back(u);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < p_; ++u)
    for (int v = u + 1; v < p_; ++v)
      if (adj_[index(u, v)]) out.emplace_back(u, v);
  return out;
}

bool Graph::is_connected() const {
  if (p_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(p_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < p_; ++u)
      if (adj_[index(v, u)] && !seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == p_;
}

bool Graph::is_clique(const std::vector<int>& vs) const {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!has_edge(vs[a], vs[b])) return false;
  return true;
}

Graph Graph::induced(const std::vector<int>& vs) const {
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (has_edge(vs[a], vs[b])) h.add_edge(static_cast<int>(a), static_cast<int>(b));
  return h;
}

Ordering Ordering::natural(int p) {
  Ordering o;
  o.rank.resize(static_cast<std::size_t>(p));
  std::iota(o.rank.begin(), o.rank.end(), 0);
  o.vertex = o.rank;
  return o;
}

Ordering Ordering::from_ranks(std::vector<int> ranks) {
  const int p = static_cast<int>(ranks.size());
  Ordering o;
  o.vertex.assign(static_cast<std::size_t>(p), -1);
  for (int v = 0; v < p; ++v) {
    int r = ranks[v];
    if (r < 0 || r >= p || o.vertex[r] != -1)
      fail(ErrorKind::InvalidArgument, "ordering is not a permutation");
    o.vertex[r] = v;
  }
  o.rank = std::move(ranks);
  return o;
}

Ordering Ordering::from_sequence(const std::vector<int>& seq) {
  std::vector<int> ranks(seq.size(), -1);
  for (std::size_t r = 0; r < seq.size(); ++r) {
    int v = seq[r];
    if (v < 0 || v >= static_cast<int>(seq.size()) || ranks[v] != -1)
      fail(ErrorKind::InvalidArgument, "elimination sequence is not a permutation");
    ranks[v] = static_cast<int>(r);
  }
  return from_ranks(std::move(ranks));
}

Graph relabel(const Graph& g, const Ordering& o) {
  require(o.size() == g.size(), "ordering size does not match graph");
  Graph gs(g.size());
  for (auto [u, v] : g.edges()) gs.add_edge(o.rank[u], o.rank[v]);
  return gs;
}

Graph unrelabel(const Graph& gs, const Ordering& o) {
  require(o.size() == gs.size(), "ordering size does not match graph");
  Graph g(gs.size());
  for (auto [a, b] : gs.edges()) g.add_edge(o.vertex[a], o.vertex[b]);
  return g;
}

FillPattern triangulate(const Graph& gs) {
  const int p = gs.size();
  FillPattern fp{gs, gs, {}};
  Graph& h = fp.cover;
  std::vector<int> higher;
  for (int v = 0; v < p; ++v) {
    higher.clear();
    for (int u = v + 1; u < p; ++u)
      if (h.has_edge(v, u)) higher.push_back(u);
    for (std::size_t a = 0; a < higher.size(); ++a)
      for (std::size_t b = a + 1; b < higher.size(); ++b)
        if (!h.has_edge(higher[a], higher[b])) h.add_edge(higher[a], higher[b]);
  }
  for (auto e : h.edges())
    if (!gs.has_edge(e.first, e.second)) fp.fill.push_back(e);
  return fp;
}

FillPattern triangulate(const Graph& g, const Ordering& o) { return triangulate(relabel(g, o)); }

bool is_perfect_elimination(const Graph& gs) {
  const int p = gs.size();
  std::vector<int> higher;
  for (int v = 0; v < p; ++v) {
    higher.clear();
    for (int u = v + 1; u < p; ++u)
      if (gs.has_edge(v, u)) higher.push_back(u);
    if (!gs.is_clique(higher)) return false;
  }
  return true;
}

std::optional<Ordering> perfect_elimination_ordering(const Graph& g) {
  const int p = g.size();
  // MCS visits vertices in reverse elimination order.
  std::vector<int> weight(static_cast<std::size_t>(p), 0);
  std::vector<char> done(static_cast<std::size_t>(p), 0);
  std::vector<int> ranks(static_cast<std::size_t>(p), 0);
  for (int step = p - 1; step >= 0; --step) {
    int best = -1;
    for (int v = 0; v < p; ++v)
      if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
    done[best] = 1;
    ranks[best] = step;
    for (int u = 0; u < p; ++u)
      if (!done[u] && g.has_edge(best, u)) ++weight[u];
  }
  Ordering o = Ordering::from_ranks(std::move(ranks));
  if (!is_perfect_elimination(relabel(g, o))) return std::nullopt;
  return o;
}

std::vector<Triple> violating_triples(const Graph& gs, const Graph& cover) {
  const int p = gs.size();
  auto fill = [&](int a, int b) { return cover.has_edge(a, b) && !gs.has_edge(a, b); };
  std::vector<Triple> out;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < i; ++j) {
      if (!fill(i, j)) continue;
      for (int k = 0; k < j; ++k)
        if (fill(i, k) && fill(j, k)) out.push_back({i, j, k});
    }
  return out;
}

GbCheck is_gb_ordering(const Graph& g, const Ordering& o) {
  Graph gs = relabel(g, o);
  FillPattern fp = triangulate(gs);
  GbCheck res;
  for (const Triple& t : violating_triples(gs, fp.cover))
    res.violations.push_back({o.vertex[t[0]], o.vertex[t[1]], o.vertex[t[2]]});
  res.ok = res.violations.empty();
  return res;
}

namespace {

// Exhaustive search over elimination sets. Whether eliminating x next creates a
// violating triple depends only on the set S already eliminated: the higher
// neighbours of x in the cover are the vertices outside S u {x} adjacent to the
// component of x in G[S u {x}].
class SubsetSearch {
 public:
  explicit SubsetSearch(const Graph& g) : p_(g.size()), nbr_(static_cast<std::size_t>(g.size()), 0) {
    for (int v = 0; v < p_; ++v)
      for (int u : g.neighbors(v)) nbr_[v] |= 1u << u;
    dead_.assign((std::size_t{1} << p_) / 64 + 1, 0);
  }

  std::optional<std::vector<int>> run() {
    seq_.clear();
    if (dfs(0)) return seq_;
    return std::nullopt;
  }

 private:
  bool is_dead(std::uint32_t s) const { return (dead_[s >> 6] >> (s & 63)) & 1u; }
  void mark_dead(std::uint32_t s) { dead_[s >> 6] |= std::uint64_t{1} << (s & 63); }

  std::uint32_t higher(std::uint32_t s, int x) const {
    std::uint32_t comp = 1u << x, frontier = comp;
    std::uint32_t inside = s | (1u << x);
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr_[__builtin_ctz(f)];
      next &= inside & ~comp;
      comp |= next;
      frontier = next;
    }
    std::uint32_t reach = 0;
    for (std::uint32_t c = comp; c; c &= c - 1) reach |= nbr_[__builtin_ctz(c)];
    return reach & ~inside;
  }

  bool safe(std::uint32_t s, int x) const {
    std::uint32_t f = higher(s, x) & ~nbr_[x];
    for (std::uint32_t a = f; a; a &= a - 1) {
      int y = __builtin_ctz(a);
      std::uint32_t rest = (a & (a - 1)) & ~nbr_[y];
      if (rest) return false;
    }
    return true;
  }

  bool dfs(std::uint32_t s) {
    if (static_cast<int>(seq_.size()) == p_) return true;
    if (is_dead(s)) return false;
    for (int x = 0; x < p_; ++x) {
      if (s & (1u << x)) continue;
      if (!safe(s, x)) continue;
      seq_.push_back(x);
      if (dfs(s | (1u << x))) return true;
      seq_.pop_back();
    }
    mark_dead(s);
    return false;
  }

  int p_;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::uint64_t> dead_;
  std::vector<int> seq_;
};

// Elimination game that refuses moves creating a triangle of fill edges.
// Returns the elimination sequence or nullopt on a dead end.
std::optional<std::vector<int>> greedy_gb_elimination(const Graph& g, std::mt19937_64* rng, double explore) {
  const int p = g.size();
  Graph h = g;
  std::vector<char> gone(static_cast<std::size_t>(p), 0);
  std::vector<int> seq;
  std::vector<int> nb;
  std::vector<int> candidates;
  std::vector<int> fills;
  for (int step = 0; step < p; ++step) {
    candidates.clear();
    fills.clear();
    for (int x = 0; x < p; ++x) {
      if (gone[x]) continue;
      nb.clear();
      for (int u = 0; u < p; ++u)
        if (!gone[u] && h.has_edge(x, u)) nb.push_back(u);
      bool bad = false;
      int fill = 0;
      for (std::size_t a = 0; a < nb.size() && !bad; ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
          int y = nb[a], z = nb[b];
          if (!h.has_edge(y, z)) ++fill;
          if (!g.has_edge(x, y) && !g.has_edge(x, z) && !g.has_edge(y, z)) {
            bad = true;
            break;
          }
        }
      if (bad) continue;
      candidates.push_back(x);
      fills.push_back(fill);
    }
    if (candidates.empty()) return std::nullopt;
    std::size_t pick = 0;
    if (rng && std::uniform_real_distribution<double>(0.0, 1.0)(*rng) < explore) {
      pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng);
    } else {
      int best = *std::min_element(fills.begin(), fills.end());
      std::vector<std::size_t> ties;
      for (std::size_t c = 0; c < candidates.size(); ++c)
        if (fills[c] == best) ties.push_back(c);
      pick = ties[0];
      if (rng) pick = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(*rng)];
    }
    int x = candidates[pick];
    nb.clear();
    for (int u = 0; u < p; ++u)
      if (!gone[u] && h.has_edge(x, u)) nb.push_back(u);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) h.add_edge(nb[a], nb[b]);
    gone[x] = 1;
    seq.push_back(x);
  }
  return seq;
}

constexpr int kHardExhaustiveCap = 28;

}  // namespace

GbSearchResult find_gb_ordering(const Graph& g, const GbSearchOptions& opt) {
  const int p = g.size();
  GbSearchResult res;
  if (p == 0) {
    res.ordering = Ordering::natural(0);
    res.exhaustive = true;
    return res;
  }
  if (auto peo = perfect_elimination_ordering(g)) {
    res.ordering = *peo;
    res.exhaustive = true;
    return res;
  }
  if (p <= std::min(opt.exhaustive_limit, kHardExhaustiveCap)) {
    SubsetSearch search(g);
    res.exhaustive = true;
    if (auto seq = search.run()) res.ordering = Ordering::from_sequence(*seq);
    return res;
  }
  auto accept = [&](const Ordering& o) { return is_gb_ordering(g, o).ok; };
  Ordering mf = min_fill_ordering(g);
  if (accept(mf)) {
    res.ordering = mf;
    return res;
  }
  Ordering nat = Ordering::natural(p);
  if (accept(nat)) {
    res.ordering = nat;
    return res;
  }
  if (auto seq = greedy_gb_elimination(g, nullptr, 0.0)) {
    res.ordering = Ordering::from_sequence(*seq);
    return res;
  }
  std::mt19937_64 rng(opt.seed);
  for (int r = 0; r < opt.restarts; ++r) {
    double explore = 0.5 * static_cast<double>(r) / std::max(1, opt.restarts);
    if (auto seq = greedy_gb_elimination(g, &rng, explore)) {
      res.ordering = Ordering::from_sequence(*seq);
      return res;
    }
  }
  return res;
}

Graph gb_cover(const Graph& gs, std::vector<Edge>* added) {
  Graph cur = gs;
  const int p = gs.size();
  for (;;) {
    FillPattern fp = triangulate(cur);
    auto fill = [&](int a, int b) { return fp.cover.has_edge(a, b) && !cur.has_edge(a, b); };
    bool found = false;
    // lexicographically smallest (i, j, k) with i > j > k
    for (int i = 0; i < p && !found; ++i)
      for (int j = 0; j < i && !found; ++j) {
        if (!fill(i, j)) continue;
        for (int k = 0; k < j; ++k)
          if (fill(i, k) && fill(j, k)) {
            cur.add_edge(i, j);
            if (added) added->emplace_back(j, i);
            found = true;
            break;
          }
      }
    if (!found) return cur;
  }
}

Graph gb_cover(const Graph& g, const Ordering& o, std::vector<Edge>* added) {
  std::vector<Edge> rank_added;
  Graph cs = gb_cover(relabel(g, o), &rank_added);
  if (added)
    for (auto [a, b] : rank_added) {
      int u = o.vertex[a], v = o.vertex[b];
      added->emplace_back(std::min(u, v), std::max(u, v));
    }
  return unrelabel(cs, o);
}

namespace {

// MCS-M. Returns the elimination sequence and the minimal triangulation.
std::pair<std::vector<int>, Graph> mcs_m(const Graph& g) {
  const int p = g.size();
  Graph h = g;
  std::vector<int> weight(static_cast<std::size_t>(p), 0);
  std::vector<char> numbered(static_cast<std::size_t>(p), 0);
  std::vector<int> seq(static_cast<std::size_t>(p), -1);
  for (int step = p - 1; step >= 0; --step) {
    int v = -1;
    for (int u = 0; u < p; ++u)
      if (!numbered[u] && (v < 0 || weight[u] > weight[v])) v = u;
    // reach[u]: smallest possible max interior weight over paths v..u through unnumbered vertices
    std::vector<int> reach(static_cast<std::size_t>(p), std::numeric_limits<int>::max());
    std::vector<char> fixed(static_cast<std::size_t>(p), 0);
    reach[v] = -1;
    for (;;) {
      int x = -1;
      for (int u = 0; u < p; ++u)
        if (!numbered[u] && !fixed[u] && reach[u] != std::numeric_limits<int>::max() &&
            (x < 0 || reach[u] < reach[x]))
          x = u;
      if (x < 0) break;
      fixed[x] = 1;
      int through = (x == v) ? -1 : std::max(reach[x], weight[x]);
      for (int y = 0; y < p; ++y)
        if (!numbered[y] && y != v && g.has_edge(x, y) && through < reach[y]) reach[y] = through;
    }
    std::vector<int> bump;
    for (int u = 0; u < p; ++u)
      if (!numbered[u] && u != v && reach[u] < weight[u]) bump.push_back(u);
    for (int u : bump) {
      ++weight[u];
      h.add_edge(u, v);
    }
    numbered[v] = 1;
    seq[step] = v;
  }
  return {seq, h};
}

std::vector<std::vector<int>> components_without(const Graph& g, const std::vector<char>& removed) {
  const int p = g.size();
  std::vector<int> comp(static_cast<std::size_t>(p), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < p; ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    std::vector<int> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < p; ++u)
        if (!removed[u] && comp[u] < 0 && g.has_edge(v, u)) {
          comp[u] = comp[s];
          members.push_back(u);
          stack.push_back(u);
        }
    }
    out.push_back(std::move(members));
  }
  return out;
}

void decompose(const Graph& g, const std::vector<int>& verts, std::vector<std::vector<int>>& atoms) {
  Graph sub = g.induced(verts);
  const int q = sub.size();
  auto [seq, h] = mcs_m(sub);
  std::vector<int> pos(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) pos[seq[r]] = r;
  for (int r = 0; r < q; ++r) {
    int x = seq[r];
    std::vector<int> sep;
    for (int u = 0; u < q; ++u)
      if (h.has_edge(x, u) && pos[u] > r) sep.push_back(u);
    if (sep.empty() || !sub.is_clique(sep)) continue;
    std::vector<char> removed(static_cast<std::size_t>(q), 0);
    for (int s : sep) removed[s] = 1;
    auto comps = components_without(sub, removed);
    if (comps.size() < 2) continue;
    for (const auto& c : comps) {
      std::vector<char> in(static_cast<std::size_t>(q), 0);
      for (int v : c) in[v] = 1;
      for (int s : sep)
        for (int v : c)
          if (sub.has_edge(s, v)) {
            in[s] = 1;
            break;
          }
      std::vector<int> piece;
      for (int v = 0; v < q; ++v)
        if (in[v]) piece.push_back(verts[v]);
      decompose(g, piece, atoms);
    }
    return;
  }
  std::vector<int> atom = verts;
  std::sort(atom.begin(), atom.end());
  atoms.push_back(std::move(atom));
}

}  // namespace

std::vector<std::vector<int>> prime_components(const Graph& g) {
  std::vector<int> all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> atoms;
  if (g.size() == 0) return atoms;
  decompose(g, all, atoms);
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  std::vector<std::vector<int>> out;
  for (const auto& a : atoms) {
    bool contained = false;
    for (const auto& b : out)
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        contained = true;
        break;
      }
    if (!contained) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OrderedGraph expand_max_vertex(const OrderedGraph& base, const std::vector<OrderedGraph>& parts) {
  const int r = base.graph.size();
  require(static_cast<int>(parts.size()) == r, "expansion needs one part per base vertex");
  // block of base vertex v is placed at position base.ordering.rank[v]
  std::vector<long long> offset(static_cast<std::size_t>(r) + 1, 0);
  for (int pos = 0; pos < r; ++pos) {
    const auto& part = parts[base.ordering.vertex[pos]];
    require(part.graph.size() > 0, "expansion parts must be non-empty");
    require(part.ordering.size() == part.graph.size(), "part ordering size mismatch");
    offset[pos + 1] = offset[pos] + part.graph.size();
  }
  if (offset[r] > std::numeric_limits<int>::max() / 2)
    fail(ErrorKind::InvalidArgument, "expanded graph is too large");
  Graph out(static_cast<int>(offset[r]));
  auto top = [&](int v) { return static_cast<int>(offset[base.ordering.rank[v] + 1] - 1); };
  for (int v = 0; v < r; ++v) {
    const auto& part = parts[v];
    int off = static_cast<int>(offset[base.ordering.rank[v]]);
    for (auto [a, b] : part.graph.edges())
      out.add_edge(off + part.ordering.rank[a], off + part.ordering.rank[b]);
  }
  for (auto [u, v] : base.graph.edges()) out.add_edge(top(u), top(v));
  return {out, Ordering::natural(out.size())};
}

OrderedGraph expand_tree(const Graph& tree, const std::vector<std::vector<OrderedGraph>>& attachments) {
  const int r = tree.size();
  require(r > 0, "tree must be non-empty");
  if (tree.edge_count() != r - 1 || !tree.is_connected())
    fail(ErrorKind::InvalidArgument, "input is not a tree");
  require(static_cast<int>(attachments.size()) == r, "need one attachment list per tree vertex");

  // depth from vertex 0; deeper vertices (children) get lower labels than parents
  std::vector<int> depth(static_cast<std::size_t>(r), -1);
  std::vector<int> queue{0};
  depth[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int u : tree.neighbors(v))
      if (depth[u] < 0) {
        depth[u] = depth[v] + 1;
        queue.push_back(u);
      }
  }
  std::vector<int> tree_order(static_cast<std::size_t>(r));
  std::iota(tree_order.begin(), tree_order.end(), 0);
  std::stable_sort(tree_order.begin(), tree_order.end(), [&](int a, int b) { return depth[a] > depth[b]; });

  long long total = r;
  for (const auto& list : attachments)
    for (const auto& og : list) total += og.graph.size();
  if (total > std::numeric_limits<int>::max() / 2) fail(ErrorKind::InvalidArgument, "expanded graph is too large");

  int attached = static_cast<int>(total) - r;
  std::vector<int> tree_label(static_cast<std::size_t>(r));
  for (int pos = 0; pos < r; ++pos) tree_label[tree_order[pos]] = attached + pos;

  Graph out(static_cast<int>(total));
  int off = 0;
  for (int v = 0; v < r; ++v)
    for (const auto& og : attachments[v]) {
      require(og.ordering.size() == og.graph.size(), "attachment ordering size mismatch");
      for (auto [a, b] : og.graph.edges()) out.add_edge(off + og.ordering.rank[a], off + og.ordering.rank[b]);
      for (int a = 0; a < og.graph.size(); ++a) out.add_edge(off + a, tree_label[v]);
      off += og.graph.size();
    }
  for (auto [u, v] : tree.edges()) out.add_edge(tree_label[u], tree_label[v]);
  return {out, Ordering::natural(out.size())};
}

Ordering min_fill_ordering(const Graph& g) {
  const int p = g.size();
  Graph h = g;
  std::vector<char> gone(static_cast<std::size_t>(p), 0);
  std::vector<int> seq;
  std::vector<int> nb;
  auto live_neighbors = [&](int x) {
    nb.clear();
    for (int u = 0; u < p; ++u)
      if (!gone[u] && h.has_edge(x, u)) nb.push_back(u);
  };
  for (int step = 0; step < p; ++step) {
    int best = -1, best_fill = 0;
    for (int x = 0; x < p; ++x) {
      if (gone[x]) continue;
      live_neighbors(x);
      int fill = 0;
      for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
          if (!h.has_edge(nb[a], nb[b])) ++fill;
      if (best < 0 || fill < best_fill) {
        best = x;
        best_fill = fill;
      }
    }
    live_neighbors(best);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) h.add_edge(nb[a], nb[b]);
    gone[best] = 1;
    seq.push_back(best);
  }
  return Ordering::from_sequence(seq);
}

}  // namespace gbw
