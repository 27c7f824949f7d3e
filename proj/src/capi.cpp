#include "gbwish/gbwish.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <new>
#include <sstream>
#include <thread>

#include "census.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "inference.hpp"
#include "io.hpp"
#include "samplers.hpp"

using json = nlohmann::ordered_json;

struct gbw_graph {
  gbw::Graph g;
  gbw::Ordering o;
};

struct gbw_matrix {
  Eigen::MatrixXd m;
};

struct gbw_model {
  gbw::GWishartParams p;
};

struct gbw_chain {
  gbw::ChainSummary c;
  int chains = 1;
};

namespace {

thread_local std::string last_error;

template <class F>
gbw_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GBW_OK;
  } catch (const gbw::Error& e) {
    last_error = e.what();
    return static_cast<gbw_status>(static_cast<int>(e.kind()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GBW_LIMIT;
  } catch (const json::exception& e) {
    last_error = std::string("json: ") + e.what();
    return GBW_PARSE_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GBW_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) gbw::fail(gbw::ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json ranks_json(const gbw::Ordering& o) {
  json r = json::array();
  for (int x : o.rank) r.push_back(x + 1);
  return r;
}

template <class Fn>
void with_output(const char* path, Fn&& fn) {
  need(path, "path");
  if (std::strcmp(path, "-") == 0) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) gbw::fail(gbw::ErrorKind::Io, std::string("cannot open ") + path + " for writing");
  fn(out);
  if (!out) gbw::fail(gbw::ErrorKind::Io, std::string("write failed: ") + path);
}

gbw::SampleConfig to_config(const gbw_sample_config& c) {
  gbw::SampleConfig s;
  s.iters = c.iters;
  s.burnin = c.burnin;
  s.thin = c.thin;
  s.seed = c.seed;
  s.keep_factors = c.keep_factors != 0;
  s.track_sigma = c.track_sigma != 0;
  s.df_offset = c.df_offset;
  return s;
}

gbw::ChainSummary run_one(const gbw::GWishartParams& p, const std::string& sampler, const gbw_sample_config& c,
                          std::uint64_t stream) {
  gbw::SampleConfig s = to_config(c);
  s.stream = stream;
  const long kept = (c.iters - c.burnin) / std::max(1L, c.thin);
  if (sampler == "gibbs") return gbw::gibbs_run(p, nullptr, 0, s);
  if (sampler == "mh") return gbw::mh_run(p, s);
  if (sampler == "direct") return gbw::direct_run(p, kept, s);
  if (sampler == "ar") return gbw::ar_run(p, kept, c.max_attempts, s);
  gbw::fail(gbw::ErrorKind::InvalidArgument, "unknown sampler '" + sampler + "' (gibbs, direct, ar, mh)");
}

}  // namespace

extern "C" {

const char* gbw_last_error(void) { return last_error.c_str(); }

const char* gbw_version(void) { return "1.0.0"; }

void gbw_string_free(char* s) { std::free(s); }

gbw_status gbw_graph_read(const char* path, gbw_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    gbw::Graph g = gbw::read_edge_list(path);
    *out = new gbw_graph{g, gbw::Ordering::natural(g.size())};
  });
}

gbw_status gbw_graph_from_graph6(const char* record, gbw_graph** out) {
  return guard([&] {
    need(record, "record");
    need(out, "out");
    gbw::Graph g = gbw::parse_graph6(record);
    *out = new gbw_graph{g, gbw::Ordering::natural(g.size())};
  });
}

gbw_status gbw_graph_from_edges(int p, const int* edges, int m, gbw_graph** out) {
  return guard([&] {
    need(out, "out");
    gbw::require(p >= 1, "graph needs at least one vertex");
    gbw::require(m >= 0, "negative edge count");
    if (m > 0) need(edges, "edges");
    gbw::Graph g(p);
    for (int e = 0; e < m; ++e) g.add_edge(edges[2 * e], edges[2 * e + 1]);
    *out = new gbw_graph{g, gbw::Ordering::natural(p)};
  });
}

gbw_status gbw_graph_copy(const gbw_graph* g, gbw_graph** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = new gbw_graph(*g);
  });
}

void gbw_graph_free(gbw_graph* g) { delete g; }

int gbw_graph_order(const gbw_graph* g) { return g ? g->g.size() : 0; }

int gbw_graph_edge_count(const gbw_graph* g) { return g ? g->g.edge_count() : 0; }

gbw_status gbw_graph_edges(const gbw_graph* g, int* edges) {
  return guard([&] {
    need(g, "graph");
    need(edges, "edges");
    int k = 0;
    for (auto [u, v] : g->g.edges()) {
      edges[k++] = u;
      edges[k++] = v;
    }
  });
}

gbw_status gbw_graph_write(const gbw_graph* g, const char* path) {
  return guard([&] {
    need(g, "graph");
    with_output(path, [&](std::ostream& os) { gbw::write_edge_list(os, g->g); });
  });
}

gbw_status gbw_graph_set_ordering(gbw_graph* g, const char* spec) {
  return guard([&] {
    need(g, "graph");
    need(spec, "ordering");
    const std::string s = spec;
    if (s == "natural") {
      g->o = gbw::Ordering::natural(g->g.size());
    } else if (s == "min-fill") {
      g->o = gbw::min_fill_ordering(g->g);
    } else if (s == "peo") {
      auto o = gbw::perfect_elimination_ordering(g->g);
      if (!o) gbw::fail(gbw::ErrorKind::Infeasible, "graph is not decomposable; no perfect elimination ordering");
      g->o = *o;
    } else if (s == "gb-search") {
      auto r = gbw::find_gb_ordering(g->g);
      if (!r.ordering)
        gbw::fail(gbw::ErrorKind::Infeasible,
                  std::string("no GB ordering found (") + (r.exhaustive ? "exhaustive" : "heuristic") + " search)");
      g->o = *r.ordering;
    } else {
      g->o = gbw::read_ordering(s, g->g.size());
    }
  });
}

gbw_status gbw_graph_ordering(const gbw_graph* g, int* ranks) {
  return guard([&] {
    need(g, "graph");
    need(ranks, "ranks");
    std::copy(g->o.rank.begin(), g->o.rank.end(), ranks);
  });
}

gbw_status gbw_graph_write_ordering(const gbw_graph* g, const char* path) {
  return guard([&] {
    need(g, "graph");
    with_output(path, [&](std::ostream& os) { gbw::write_ordering(os, g->o); });
  });
}

gbw_status gbw_graph_check(const gbw_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    json j;
    j["schema"] = "gbwish.graph_check";
    j["schema_version"] = GBW_SCHEMA_VERSION;
    j["vertices"] = g->g.size();
    j["edges"] = g->g.edge_count();
    j["decomposable"] = gbw::is_decomposable(g->g);
    auto cur = gbw::is_gb_ordering(g->g, g->o);
    json violations = json::array();
    for (const auto& t : cur.violations) violations.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
    j["ordering"] = {{"ranks", ranks_json(g->o)}, {"gb", cur.ok}, {"violations", violations}};
    if (cur.ok) {
      j["gb"] = true;
      j["exhaustive"] = false;
      j["gb_ordering"] = ranks_json(g->o);
    } else {
      auto r = gbw::find_gb_ordering(g->g);
      j["gb"] = r.ordering.has_value();
      j["exhaustive"] = r.exhaustive;
      j["gb_ordering"] = r.ordering ? ranks_json(*r.ordering) : json(nullptr);
    }
    *out = dup_string(j.dump(2));
  });
}

gbw_status gbw_graph_triangulate(const gbw_graph* g, gbw_graph** out, int* fill_edges) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    auto f = gbw::triangulate(g->g, g->o);
    if (fill_edges) *fill_edges = static_cast<int>(f.fill.size());
    *out = new gbw_graph{gbw::unrelabel(f.cover, g->o), g->o};
  });
}

gbw_status gbw_graph_cover(const gbw_graph* g, gbw_graph** out, int* added_edges) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    std::vector<gbw::Edge> added;
    gbw::Graph c = gbw::gb_cover(g->g, g->o, &added);
    if (added_edges) *added_edges = static_cast<int>(added.size());
    *out = new gbw_graph{c, g->o};
  });
}

gbw_status gbw_graph_prime_components(const gbw_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    json arr = json::array();
    for (const auto& comp : gbw::prime_components(g->g)) {
      json c = json::array();
      for (int v : comp) c.push_back(v + 1);
      arr.push_back(c);
    }
    *out = dup_string(arr.dump());
  });
}

gbw_status gbw_census(int max_order, const char* graph6_path, char** out) {
  return guard([&] {
    need(out, "out");
    gbw::require(max_order >= 1 && max_order <= 10, "max order must lie in 1..10");
    auto rows = graph6_path ? gbw::census_of(gbw::read_graph6_file(graph6_path), max_order) : gbw::census(max_order);
    std::ostringstream os;
    os << "order,total,decomposable,gb,decomposable_pct,gb_pct\n";
    for (const auto& r : rows) {
      if (r.total_connected == 0) continue;
      auto pct = [&](long k) { return std::lround(100.0 * static_cast<double>(k) / static_cast<double>(r.total_connected)); };
      os << r.order << ',' << r.total_connected << ',' << r.decomposable << ',' << r.generalized_bartlett << ','
         << pct(r.decomposable) << ',' << pct(r.generalized_bartlett) << '\n';
    }
    *out = dup_string(os.str());
  });
}

gbw_status gbw_matrix_new(int rows, int cols, const double* data, gbw_matrix** out) {
  return guard([&] {
    need(out, "out");
    gbw::require(rows >= 0 && cols >= 0, "negative matrix size");
    auto* m = new gbw_matrix{Eigen::MatrixXd::Zero(rows, cols)};
    if (data)
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m->m(i, j) = data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
    *out = m;
  });
}

gbw_status gbw_matrix_read(const char* path, gbw_matrix** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new gbw_matrix{gbw::read_csv_matrix(path)};
  });
}

gbw_status gbw_matrix_read_symmetric(const char* path, gbw_matrix** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new gbw_matrix{gbw::read_symmetric_matrix(path)};
  });
}

gbw_status gbw_matrix_write(const gbw_matrix* m, const char* path) {
  return guard([&] {
    need(m, "matrix");
    with_output(path, [&](std::ostream& os) { gbw::write_csv_matrix(os, m->m); });
  });
}

void gbw_matrix_free(gbw_matrix* m) { delete m; }

int gbw_matrix_rows(const gbw_matrix* m) { return m ? static_cast<int>(m->m.rows()) : 0; }

int gbw_matrix_cols(const gbw_matrix* m) { return m ? static_cast<int>(m->m.cols()) : 0; }

double gbw_matrix_get(const gbw_matrix* m, int i, int j) {
  if (!m || i < 0 || j < 0 || i >= m->m.rows() || j >= m->m.cols()) return std::nan("");
  return m->m(i, j);
}

gbw_status gbw_matrix_cross_product(const gbw_matrix* x, gbw_matrix** s) {
  return guard([&] {
    need(x, "data");
    need(s, "out");
    gbw::require(x->m.rows() > 0, "data matrix has no rows");
    *s = new gbw_matrix{x->m.transpose() * x->m / static_cast<double>(x->m.rows())};
  });
}

gbw_status gbw_delta_rule(const char* rule, int p, const gbw_matrix* U, const gbw_matrix* S, double n,
                          double* delta) {
  return guard([&] {
    need(rule, "rule");
    need(delta, "delta");
    const std::string r = rule;
    Eigen::VectorXd d;
    auto need_s = [&] {
      if (!S) gbw::fail(gbw::ErrorKind::InvalidArgument, "delta rule '" + r + "' needs data");
      gbw::require(S->m.rows() == p && S->m.cols() == p, "data has the wrong number of variables");
    };
    if (r.rfind("const:", 0) == 0) {
      char* end = nullptr;
      const double x = std::strtod(r.c_str() + 6, &end);
      if (end == r.c_str() + 6 || *end != '\0') gbw::fail(gbw::ErrorKind::Parse, "bad constant in delta rule '" + r + "'");
      d = Eigen::VectorXd::Constant(p, x);
    } else if (r == "empirical") {
      need_s();
      Eigen::MatrixXd u = U ? U->m : Eigen::MatrixXd::Identity(p, p);
      d = gbw::empirical_delta(u, S->m, n);
    } else if (r == "inv-diag") {
      need_s();
      d = gbw::inv_diag_delta(S->m);
    } else if (r == "prec-diag") {
      need_s();
      d = gbw::prec_diag_delta(S->m);
    } else {
      Eigen::MatrixXd m = gbw::read_csv_matrix(r);
      if (m.size() != p) gbw::fail(gbw::ErrorKind::Parse, r + ": expected " + std::to_string(p) + " shape values");
      d = Eigen::Map<Eigen::VectorXd>(m.data(), p);
    }
    for (int i = 0; i < p; ++i) {
      if (!(d(i) > 0)) gbw::fail(gbw::ErrorKind::InvalidArgument, "delta must be positive (vertex " + std::to_string(i + 1) + ")");
      delta[i] = d(i);
    }
  });
}

gbw_status gbw_model_new(const gbw_graph* g, const gbw_matrix* U, const double* delta, gbw_model** out) {
  return guard([&] {
    need(g, "graph");
    need(delta, "delta");
    need(out, "out");
    const int p = g->g.size();
    gbw::GWishartParams prm{g->g, g->o, U ? U->m : Eigen::MatrixXd::Identity(p, p), Eigen::Map<const Eigen::VectorXd>(delta, p)};
    prm.validate();
    *out = new gbw_model{prm};
  });
}

gbw_status gbw_model_posterior(const gbw_model* prior, const gbw_matrix* S, double n, gbw_model** out) {
  return guard([&] {
    need(prior, "model");
    need(S, "S");
    need(out, "out");
    *out = new gbw_model{gbw::posterior_params(prior->p, S->m, n)};
  });
}

void gbw_model_free(gbw_model* m) { delete m; }

void gbw_sample_config_default(gbw_sample_config* cfg) {
  if (!cfg) return;
  gbw::SampleConfig d;
  cfg->iters = d.iters;
  cfg->burnin = d.burnin;
  cfg->thin = d.thin;
  cfg->seed = d.seed;
  cfg->chains = 1;
  cfg->threads = 0;
  cfg->max_attempts = 1000000;
  cfg->df_offset = d.df_offset;
  cfg->keep_factors = 0;
  cfg->track_sigma = 0;
}

gbw_status gbw_sample(const gbw_model* m, const char* sampler, const gbw_sample_config* cfg, gbw_chain** out) {
  gbw_status st = guard([&] {
    need(m, "model");
    need(sampler, "sampler");
    need(cfg, "config");
    need(out, "out");
    *out = nullptr;
    gbw::require(cfg->chains >= 1, "chains must be positive");
    gbw::require(cfg->iters > cfg->burnin && cfg->burnin >= 0 && cfg->thin >= 1, "need iters > burnin >= 0 and thin >= 1");
    const std::string s = sampler;
    const int k = cfg->chains;
    int threads = cfg->threads > 0 ? cfg->threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, k);

    std::vector<gbw::ChainSummary> runs(static_cast<std::size_t>(k));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
    auto work = [&](int first) {
      for (int c = first; c < k; c += threads) {
        try {
          runs[static_cast<std::size_t>(c)] = run_one(m->p, s, *cfg, static_cast<std::uint64_t>(c));
        } catch (...) {
          errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    auto* ch = new gbw_chain{gbw::ChainSummary::concat(runs), k};
    *out = ch;
    if (ch->c.exhausted)
      gbw::fail(gbw::ErrorKind::Limit, "accept-reject budget of " + std::to_string(cfg->max_attempts) +
                                           " attempts exhausted after " + std::to_string(ch->c.retained()) +
                                           " draws (acceptance estimate " + gbw::format_double(ch->c.acceptance_rate) + ")");
  });
  return st;
}

void gbw_chain_free(gbw_chain* c) { delete c; }

long gbw_chain_retained(const gbw_chain* c) { return c ? static_cast<long>(c->c.retained()) : 0; }

double gbw_chain_acceptance(const gbw_chain* c) { return c ? c->c.acceptance_rate : -1; }

gbw_status gbw_chain_write_csv(const gbw_chain* c, const char* path) {
  return guard([&] {
    need(c, "chain");
    with_output(path, [&](std::ostream& os) {
      os << "iter";
      for (auto [u, v] : c->c.support) os << ",w_" << u + 1 << '_' << v + 1;
      os << '\n';
      for (std::size_t t = 0; t < c->c.retained(); ++t) {
        os << c->c.iteration[t];
        for (double x : c->c.draws[t]) os << ',' << gbw::format_double(x);
        os << '\n';
      }
    });
  });
}

gbw_status gbw_chain_mean(const gbw_chain* c, gbw_matrix** out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    gbw::require(c->c.retained() > 0, "chain has no draws");
    *out = new gbw_matrix{c->c.omega_mean()};
  });
}

gbw_status gbw_chain_summary(const gbw_chain* c, double level, const char* config_json, char** out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    const auto& ch = c->c;
    json j;
    j["schema"] = "gbwish.chain_summary";
    j["schema_version"] = GBW_SCHEMA_VERSION;
    j["sampler"] = ch.sampler;
    j["vertices"] = ch.size();
    j["chains"] = c->chains;
    j["retained"] = ch.retained();
    j["settings"] = {{"iters", ch.config.iters},   {"burnin", ch.config.burnin},
                     {"thin", ch.config.thin},     {"seed", ch.config.seed},
                     {"df_offset", ch.config.df_offset}};
    j["acceptance_rate"] = ch.acceptance_rate >= 0 ? json(ch.acceptance_rate) : json(nullptr);
    j["attempts"] = ch.attempts;
    j["exhausted"] = ch.exhausted;
    j["ordering"] = ranks_json(ch.ordering);
    if (ch.retained() > 0) {
      auto s = gbw::posterior_mean_and_ci(ch, level);
      j["level"] = level;
      j["ci_convention"] = "nearest-rank equal-tailed";
      j["mean"] = matrix_json(s.omega_mean);
      j["lower"] = matrix_json(s.omega_lower);
      j["upper"] = matrix_json(s.omega_upper);
      if (s.sigma_mean.size() > 0) j["sigma_mean"] = matrix_json(s.sigma_mean);
    }
    j["config"] = config_json ? json::parse(config_json) : json(nullptr);
    *out = dup_string(j.dump(2));
  });
}

gbw_status gbw_identity_diagnostic(const gbw_chain* c, const gbw_model* m, char** out) {
  return guard([&] {
    need(c, "chain");
    need(m, "model");
    need(out, "out");
    auto rep = gbw::identity_diagnostic(c->c, m->p);
    json rows = json::array();
    for (const auto& e : rep.entries)
      rows.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"simulated", e.simulated}, {"truth", e.truth}, {"se", e.std_error}});
    json j;
    j["schema"] = "gbwish.identity_diagnostic";
    j["schema_version"] = GBW_SCHEMA_VERSION;
    j["statistic"] = "sigma_star";
    j["retained"] = c->c.retained();
    j["max_abs_deviation"] = rep.max_abs_deviation;
    j["rows"] = rows;
    *out = dup_string(j.dump(2));
  });
}

gbw_status gbw_dic(const gbw_chain* c, const gbw_matrix* S, double n, double* out) {
  return guard([&] {
    need(c, "chain");
    need(S, "S");
    need(out, "out");
    *out = gbw::dic(c->c, S->m, n);
  });
}

gbw_status gbw_stein_loss(const gbw_matrix* estimate, const gbw_matrix* truth, double* out) {
  return guard([&] {
    need(estimate, "estimate");
    need(truth, "truth");
    need(out, "out");
    *out = gbw::stein_loss(estimate->m, truth->m);
  });
}

}  // extern "C"
