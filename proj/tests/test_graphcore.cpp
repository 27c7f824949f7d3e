#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "census.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "io.hpp"

using namespace gbw;

namespace {

Graph from_edges(int p, std::initializer_list<Edge> es) {  // 1-based
  Graph g(p);
  for (auto [u, v] : es) g.add_edge(u - 1, v - 1);
  return g;
}

std::set<Edge> one_based(const std::vector<Edge>& es) {
  std::set<Edge> out;
  for (auto [u, v] : es) out.insert({std::min(u, v) + 1, std::max(u, v) + 1});
  return out;
}

Ordering random_ordering(int p, std::mt19937_64& gen) {
  std::vector<int> seq(static_cast<std::size_t>(p));
  std::iota(seq.begin(), seq.end(), 0);
  std::shuffle(seq.begin(), seq.end(), gen);
  return Ordering::from_sequence(seq);
}

// Independent oracle: a triangle of the cover whose three sides are all absent from gs.
bool has_all_fill_triangle(const Graph& gs, const Graph& cover) {
  const int p = gs.size();
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      for (int c = b + 1; c < p; ++c)
        if (cover.has_edge(a, b) && cover.has_edge(a, c) && cover.has_edge(b, c) && !gs.has_edge(a, b) &&
            !gs.has_edge(a, c) && !gs.has_edge(b, c))
          return true;
  return false;
}

// Brute-force elimination game oracle, written without the library's routine.
Graph eliminate(const Graph& gs) {
  Graph c = gs;
  const int p = gs.size();
  for (int v = 0; v < p; ++v) {
    std::vector<int> later;
    for (int u = v + 1; u < p; ++u)
      if (c.has_edge(u, v)) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j)
        if (!c.has_edge(later[i], later[j])) c.add_edge(later[i], later[j]);
  }
  return c;
}

Graph star(int leaves) {  // center is the last vertex
  Graph g(leaves + 1);
  for (int v = 0; v < leaves; ++v) g.add_edge(v, leaves);
  return g;
}

}  // namespace

TEST_CASE("triangulate fills cycles as expected") {
  auto f4 = triangulate(Graph::cycle(4), Ordering::natural(4));
  CHECK(one_based(f4.fill) == std::set<Edge>{{2, 4}});
  auto f5 = triangulate(Graph::cycle(5), Ordering::natural(5));
  CHECK(one_based(f5.fill) == std::set<Edge>{{2, 5}, {3, 5}});
  for (int p = 1; p <= 7; ++p) CHECK(triangulate(Graph::complete(p), Ordering::natural(p)).fill.empty());
}

TEST_CASE("triangulate output is chordal with the ordering as PEO") {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 200; ++t) {
    int p = 3 + static_cast<int>(gen() % 8);
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 3 == 0) g.add_edge(u, v);
    Ordering o = random_ordering(p, gen);
    auto f = triangulate(g, o);
    CHECK(f.cover == eliminate(relabel(g, o)));
    CHECK(is_perfect_elimination(f.cover));
    CHECK(is_decomposable(f.cover));
    for (auto [u, v] : f.base.edges()) CHECK(f.cover.has_edge(u, v));
  }
}

TEST_CASE("perfect elimination ordering search") {
  CHECK(perfect_elimination_ordering(Graph::complete(3)).has_value());
  CHECK_FALSE(perfect_elimination_ordering(Graph::cycle(4)).has_value());
  CHECK_FALSE(perfect_elimination_ordering(Graph::cycle(7)).has_value());
  Graph tree = from_edges(7, {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {6, 7}});
  auto o = perfect_elimination_ordering(tree);
  REQUIRE(o.has_value());
  CHECK(is_perfect_elimination(relabel(tree, *o)));
}

TEST_CASE("GB ordering checks") {
  for (int p = 3; p <= 14; ++p) CHECK(is_gb_ordering(Graph::cycle(p), Ordering::natural(p)).ok);
  for (int rows = 1; rows <= 6; ++rows) CHECK(is_gb_ordering(Graph::grid(rows, 3), Ordering::natural(3 * rows)).ok);
  Graph k33 = Graph::complete_bipartite(3, 3);
  std::vector<int> seq{0, 1, 2, 3, 4, 5};
  int orderings = 0;
  do {
    auto chk = is_gb_ordering(k33, Ordering::from_sequence(seq));
    CHECK_FALSE(chk.ok);
    CHECK_FALSE(chk.violations.empty());
    ++orderings;
  } while (std::next_permutation(seq.begin(), seq.end()));
  CHECK(orderings == 720);
}

TEST_CASE("GB check agrees with an independent triangle scan") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 300; ++t) {
    int p = 4 + static_cast<int>(gen() % 6);
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 2 == 0) g.add_edge(u, v);
    Ordering o = random_ordering(p, gen);
    Graph gs = relabel(g, o);
    bool oracle_bad = has_all_fill_triangle(gs, eliminate(gs));
    CHECK(is_gb_ordering(g, o).ok == !oracle_bad);
  }
}

TEST_CASE("violations are reported in original labels") {
  Graph k33 = Graph::complete_bipartite(3, 3);
  auto chk = is_gb_ordering(k33, Ordering::natural(6));
  REQUIRE_FALSE(chk.ok);
  for (const Triple& t : chk.violations) {
    CHECK_FALSE(k33.has_edge(t[0], t[1]));
    CHECK_FALSE(k33.has_edge(t[0], t[2]));
    CHECK_FALSE(k33.has_edge(t[1], t[2]));
  }
}

TEST_CASE("find_gb_ordering") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 50; ++t) {
    // random chordal graph: elimination cover of a random graph
    int p = 4 + static_cast<int>(gen() % 10);
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 4 == 0) g.add_edge(u, v);
    Graph chordal = eliminate(g);
    auto r = find_gb_ordering(chordal);
    REQUIRE(r.ordering.has_value());
    CHECK(is_perfect_elimination(relabel(chordal, *r.ordering)));
    CHECK(is_gb_ordering(chordal, *r.ordering).ok);
  }
  auto grid = find_gb_ordering(Graph::grid(4, 4));
  CHECK(grid.exhaustive);
  CHECK_FALSE(grid.ordering.has_value());

  auto c10 = find_gb_ordering(Graph::cycle(10));
  REQUIRE(c10.ordering.has_value());
  CHECK(is_gb_ordering(Graph::cycle(10), *c10.ordering).ok);

  auto k33 = find_gb_ordering(Graph::complete_bipartite(3, 3));
  CHECK(k33.exhaustive);
  CHECK_FALSE(k33.ordering.has_value());

  GbSearchOptions heur;
  heur.exhaustive_limit = 4;
  auto big = find_gb_ordering(Graph::grid(6, 3), heur);
  CHECK_FALSE(big.exhaustive);
  REQUIRE(big.ordering.has_value());
  CHECK(is_gb_ordering(Graph::grid(6, 3), *big.ordering).ok);
  auto no = find_gb_ordering(Graph::complete_bipartite(3, 3), heur);
  CHECK_FALSE(no.exhaustive);
}

TEST_CASE("induced subgraphs of GB graphs stay GB under the restricted ordering") {
  std::mt19937_64 gen(5);
  Graph g = Graph::grid(3, 3);
  Ordering o = Ordering::natural(9);
  REQUIRE(is_gb_ordering(g, o).ok);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> keep;
    for (int v = 0; v < 9; ++v)
      if (gen() % 3 != 0) keep.push_back(v);
    if (keep.empty()) continue;
    Graph h = g.induced(keep);  // keeps relative (rank) order since o is natural
    CHECK(is_gb_ordering(h, Ordering::natural(h.size())).ok);
    CHECK(find_gb_ordering(h).ordering.has_value());
  }
}

TEST_CASE("clique sums of GB graphs are GB") {
  // two 5-cycles glued along an edge, and a 4x3 grid glued to a 6-cycle at a vertex
  Graph a(8);
  for (int i = 0; i < 5; ++i) a.add_edge(i, (i + 1) % 5);
  a.add_edge(0, 5);
  a.add_edge(5, 6);
  a.add_edge(6, 7);
  a.add_edge(7, 1);
  auto ra = find_gb_ordering(a);
  CHECK(ra.exhaustive);
  CHECK(ra.ordering.has_value());

  Graph b(17);
  Graph grid = Graph::grid(4, 3);
  for (auto [u, v] : grid.edges()) b.add_edge(u, v);
  int prev = 11;
  for (int v = 12; v < 17; ++v) {
    b.add_edge(prev, v);
    prev = v;
  }
  b.add_edge(16, 11);
  auto rb = find_gb_ordering(b);
  CHECK(rb.exhaustive);
  CHECK(rb.ordering.has_value());
}

TEST_CASE("gb_cover") {
  std::vector<Edge> added;
  Graph cover = gb_cover(Graph::grid(4, 4), Ordering::natural(16), &added);
  CHECK(added.size() == 3);
  CHECK(is_gb_ordering(cover, Ordering::natural(16)).ok);

  for (int p = 3; p <= 10; ++p) {
    std::vector<Edge> none;
    Graph c = gb_cover(Graph::cycle(p), Ordering::natural(p), &none);
    CHECK(none.empty());
    CHECK(c == Graph::cycle(p));
  }

  Graph k33 = Graph::complete_bipartite(3, 3);
  std::mt19937_64 gen(1);
  for (int t = 0; t < 20; ++t) {
    Ordering o = random_ordering(6, gen);
    std::vector<Edge> add;
    Graph orig = gb_cover(k33, o, &add);
    CHECK_FALSE(add.empty());
    CHECK(is_gb_ordering(orig, o).ok);
    for (auto [u, v] : k33.edges()) CHECK(orig.has_edge(u, v));
    for (auto [u, v] : add) CHECK(orig.has_edge(u, v));
    CHECK(orig.edge_count() == k33.edge_count() + static_cast<int>(add.size()));
  }
}

TEST_CASE("prime components") {
  Graph two = from_edges(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
  auto pc = prime_components(two);
  CHECK(pc == std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 3}});

  Graph pend = from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}});
  auto pp = prime_components(pend);
  CHECK(pp == std::vector<std::vector<int>>{{0, 1, 2, 3}, {0, 4}});

  auto c5 = prime_components(Graph::cycle(5));
  CHECK(c5 == std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});

  // decomposable iff every atom is complete
  std::mt19937_64 gen(9);
  for (int t = 0; t < 200; ++t) {
    int p = 3 + static_cast<int>(gen() % 6);
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 2 == 0) g.add_edge(u, v);
    if (!g.is_connected()) continue;
    bool all_complete = true;
    for (const auto& atom : prime_components(g)) all_complete = all_complete && g.is_clique(atom);
    CHECK(all_complete == is_decomposable(g));
  }
}

TEST_CASE("expand_max_vertex") {
  OrderedGraph base{Graph::cycle(4), Ordering::natural(4)};
  std::vector<OrderedGraph> singles(4, OrderedGraph{Graph(1), Ordering::natural(1)});
  auto same = expand_max_vertex(base, singles);
  CHECK(same.graph == Graph::cycle(4));

  std::vector<OrderedGraph> stars;
  for (int k : {3, 5, 2, 4}) stars.push_back({star(k), Ordering::natural(k + 1)});
  auto hub = expand_max_vertex(base, stars);
  CHECK(hub.graph.size() == 18);
  CHECK(hub.graph.edge_count() == 4 + 14);
  CHECK(is_gb_ordering(hub.graph, hub.ordering).ok);

  OrderedGraph tri{Graph::complete(3), Ordering::natural(3)};
  std::vector<OrderedGraph> edges(3, OrderedGraph{Graph::complete(2), Ordering::natural(2)});
  auto six = expand_max_vertex(tri, edges);
  CHECK(six.graph.size() == 6);
  CHECK(is_gb_ordering(six.graph, six.ordering).ok);
}

TEST_CASE("expand_tree") {
  std::vector<std::vector<OrderedGraph>> att{{OrderedGraph{Graph::complete(2), Ordering::natural(2)}}};
  auto tri = expand_tree(Graph(1), att);
  CHECK(tri.graph == Graph::complete(3));

  std::vector<std::vector<OrderedGraph>> wheel{{OrderedGraph{Graph::cycle(4), Ordering::natural(4)}}};
  auto w = expand_tree(Graph(1), wheel);
  CHECK(w.graph.size() == 5);
  CHECK(w.graph.edge_count() == 8);
  CHECK(is_gb_ordering(w.graph, w.ordering).ok);

  auto single = expand_tree(Graph::path(2), {{}, {}});
  CHECK(single.graph == Graph::path(2));

  Graph tree = from_edges(5, {{1, 2}, {1, 3}, {3, 4}, {3, 5}});
  std::vector<std::vector<OrderedGraph>> mix(5);
  mix[0].push_back({Graph::cycle(5), Ordering::natural(5)});
  mix[3].push_back({Graph::grid(2, 3), Ordering::natural(6)});
  mix[3].push_back({Graph::complete(3), Ordering::natural(3)});
  auto big = expand_tree(tree, mix);
  CHECK(big.graph.size() == 19);
  CHECK(is_gb_ordering(big.graph, big.ordering).ok);

  CHECK_THROWS_AS(expand_tree(Graph::cycle(3), {{}, {}, {}}), Error);
}

TEST_CASE("min_fill_ordering") {
  auto ok = min_fill_ordering(Graph::complete(5));
  CHECK(ok.rank == Ordering::natural(5).rank);
  CHECK(triangulate(Graph::complete(5), ok).fill.empty());
  CHECK(triangulate(Graph::cycle(4), min_fill_ordering(Graph::cycle(4))).fill.size() == 1);
  Graph s(6);
  for (int v = 1; v < 6; ++v) s.add_edge(0, v);
  auto so = min_fill_ordering(s);
  // the last two vertices form an edge, so the centre and one leaf tie at zero fill
  CHECK(so.rank[0] >= 4);
  CHECK(triangulate(s, so).fill.empty());
}

TEST_CASE("census small orders") {
  auto rows = census(6);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].order == 2);
  CHECK(rows[0].total_connected == 1);
  CHECK(rows[0].decomposable == 1);
  CHECK(rows[0].generalized_bartlett == 1);
  CHECK(rows[2].total_connected == 6);
  CHECK(rows[2].decomposable == 5);
  CHECK(rows[4].total_connected == 112);
  CHECK(rows[4].generalized_bartlett == 111);
  for (const auto& r : rows) {
    CHECK(r.decomposable <= r.generalized_bartlett);
    CHECK(r.generalized_bartlett <= r.total_connected);
  }
}

TEST_CASE("census from enumeration equals census from graph6 file") {
  auto graphs = read_graph6_file(GBW_TEST_DATA "/connected_upto7.g6");
  CHECK(graphs.size() == 995);
  auto from_file = census_of(graphs, 7);
  auto internal = census(7);
  REQUIRE(from_file.size() == internal.size());
  for (std::size_t i = 0; i < internal.size(); ++i) {
    CHECK(from_file[i].order == internal[i].order);
    CHECK(from_file[i].total_connected == internal[i].total_connected);
    CHECK(from_file[i].decomposable == internal[i].decomposable);
    CHECK(from_file[i].generalized_bartlett == internal[i].generalized_bartlett);
  }
  // every file graph appears exactly once among the enumerated codes
  auto enumerated = enumerate_connected(7);
  std::set<std::uint64_t> codes;
  for (int n = 2; n <= 7; ++n)
    for (const Graph& g : enumerated[static_cast<std::size_t>(n)]) codes.insert(canonical_code(g) ^ (std::uint64_t(n) << 58));
  std::set<std::uint64_t> file_codes;
  for (const Graph& g : graphs) file_codes.insert(canonical_code(g) ^ (std::uint64_t(g.size()) << 58));
  CHECK(codes == file_codes);
}

TEST_CASE("fill is contained in every chordal cover with the same PEO") {
  auto graphs = enumerate_connected(6);
  std::mt19937_64 gen(21);
  for (int n = 3; n <= 6; ++n)
    for (const Graph& g : graphs[static_cast<std::size_t>(n)]) {
      Ordering o = random_ordering(n, gen);
      Graph gs = relabel(g, o);
      Graph extra = gs;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (gen() % 5 == 0 && !extra.has_edge(u, v)) extra.add_edge(u, v);
      Graph chordal = eliminate(extra);
      REQUIRE(is_perfect_elimination(chordal));
      auto f = triangulate(gs);
      for (auto [u, v] : f.fill) CHECK(chordal.has_edge(u, v));
    }
}

TEST_CASE("canonical code is invariant under relabelling") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 200; ++t) {
    int p = 2 + static_cast<int>(gen() % 8);
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 2 == 0) g.add_edge(u, v);
    CHECK(canonical_code(g) == canonical_code(relabel(g, random_ordering(p, gen))));
  }
  CHECK(canonical_code(Graph::cycle(6)) != canonical_code(Graph::complete_bipartite(3, 3)));
}

TEST_CASE("edge list io") {
  std::istringstream in("# comment\n4\n1 2\n2 3  # trailing\n3 4\n4 1\n");
  Graph g = parse_edge_list(in);
  CHECK(g == Graph::cycle(4));
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream back(out.str());
  CHECK(parse_edge_list(back) == g);

  std::istringstream bad("4\n1 2\n2 x\n");
  try {
    parse_edge_list(bad);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream loop("3\n1 1\n");
  CHECK_THROWS_AS(parse_edge_list(loop), Error);
  std::istringstream range("3\n1 4\n");
  CHECK_THROWS_AS(parse_edge_list(range), Error);
}

TEST_CASE("graph6 io") {
  CHECK(to_graph6(Graph::complete(2)) == "A_");
  CHECK(parse_graph6("A_") == Graph::complete(2));
  CHECK(to_graph6(Graph::cycle(5)) == "Dhc");
  std::mt19937_64 gen(2);
  for (int p : {1, 5, 62, 63, 70}) {
    Graph g(p);
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (gen() % 3 == 0) g.add_edge(u, v);
    CHECK(parse_graph6(to_graph6(g)) == g);
  }
  CHECK(parse_graph6(">>graph6<<A_") == Graph::complete(2));
  CHECK_THROWS_AS(parse_graph6("D"), Error);
}

TEST_CASE("ordering and matrix io") {
  std::istringstream in("2 1 4 3\n");
  Ordering o = parse_ordering(in, 4);
  CHECK(o.rank == std::vector<int>{1, 0, 3, 2});
  std::ostringstream out;
  write_ordering(out, o);
  std::istringstream back(out.str());
  CHECK(parse_ordering(back, 4).rank == o.rank);
  std::istringstream dup("1 1 2 3\n");
  CHECK_THROWS_AS(parse_ordering(dup, 4), Error);

  Eigen::MatrixXd m(2, 2);
  m << 0.1, 1.0 / 3.0, 1.0 / 3.0, 2e-300;
  std::ostringstream csv;
  write_csv_matrix(csv, m);
  std::istringstream csv_in(csv.str());
  CHECK(parse_csv_matrix(csv_in) == m);
}

namespace {

// elimination game on an adjacency matrix; true when no triangle is made only of fill edges
bool brute_gb_under(const Graph& g, const std::vector<int>& seq) {
  const int p = g.size();
  std::vector<std::vector<int>> adj(p, std::vector<int>(p, 0));  // 1 original, 2 fill
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < p; ++v)
      if (u != v && g.has_edge(u, v)) adj[u][v] = 1;
  std::vector<bool> gone(p, false);
  for (int v : seq) {
    std::vector<int> nb;
    for (int w = 0; w < p; ++w)
      if (!gone[w] && adj[v][w]) nb.push_back(w);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (!adj[nb[a]][nb[b]]) adj[nb[a]][nb[b]] = adj[nb[b]][nb[a]] = 2;
    gone[v] = true;
  }
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      for (int c = b + 1; c < p; ++c)
        if (adj[a][b] == 2 && adj[b][c] == 2 && adj[a][c] == 2) return false;
  return true;
}

bool brute_gb(const Graph& g) {
  std::vector<int> seq(static_cast<std::size_t>(g.size()));
  std::iota(seq.begin(), seq.end(), 0);
  do {
    if (brute_gb_under(g, seq)) return true;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return false;
}

}  // namespace

TEST_CASE("order-7 GB count agrees with brute force over all orderings") {
  auto graphs = read_graph6_file(GBW_TEST_DATA "/connected_upto7.g6");
  int total = 0, gb = 0;
  for (const Graph& g : graphs) {
    if (g.size() != 7) continue;
    ++total;
    const bool brute = brute_gb(g);
    gb += brute;
    REQUIRE(find_gb_ordering(g).ordering.has_value() == brute);
  }
  CHECK(total == 853);
  CHECK(gb == 842);
  auto rows = census(7);
  CHECK(rows.back().generalized_bartlett == gb);
}
