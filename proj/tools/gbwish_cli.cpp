// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "gbwish/gbwish.h"

using json = nlohmann::json;

namespace {

// Status -> process exit code: 1 infeasible, 2 parse/bad input, 3 resource/limit.
int exit_code(gbw_status s) {
  switch (s) {
    case GBW_OK:
      return 0;
    case GBW_INFEASIBLE:
    case GBW_NUMERICAL:
      return 1;
    case GBW_PARSE_ERROR:
    case GBW_INVALID_ARGUMENT:
    case GBW_IO_ERROR:
      return 2;
    default:
      return 3;
  }
}

struct Failure {
  gbw_status status;
};

void check(gbw_status s) {
  if (s == GBW_OK) return;
  std::cerr << "error: " << gbw_last_error() << "\n";
  throw Failure{s};
}

struct GraphDel {
  void operator()(gbw_graph* g) const { gbw_graph_free(g); }
};
struct MatrixDel {
  void operator()(gbw_matrix* m) const { gbw_matrix_free(m); }
};
struct ModelDel {
  void operator()(gbw_model* m) const { gbw_model_free(m); }
};
struct ChainDel {
  void operator()(gbw_chain* c) const { gbw_chain_free(c); }
};
using GraphPtr = std::unique_ptr<gbw_graph, GraphDel>;
using MatrixPtr = std::unique_ptr<gbw_matrix, MatrixDel>;
using ModelPtr = std::unique_ptr<gbw_model, ModelDel>;
using ChainPtr = std::unique_ptr<gbw_chain, ChainDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  gbw_string_free(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    throw Failure{GBW_IO_ERROR};
  }
  out << text;
}

struct Options {
  std::vector<std::string> graphs;
  std::string ordering = "natural";
  std::string U = "identity";
  std::string delta = "const:3";
  std::string data;
  double n = -1;
  long iters = 3000;
  long burnin = 2000;
  long thin = 1;
  std::uint64_t seed = 1;
  int chains = 1;
  std::string out;
  int max_order = 7;
  std::string graph6;
  double level = 0.95;
  long max_attempts = 1000000;
  double df_offset = 2.0;
  std::string estimate, truth;
};

int thread_cap() {
  const char* env = std::getenv("GBW_THREADS");
  if (!env) return 0;
  const int t = std::atoi(env);
  return t > 0 ? t : 0;
}

GraphPtr load_graph(const std::string& path, const std::string& ordering) {
  gbw_graph* g = nullptr;
  check(gbw_graph_read(path.c_str(), &g));
  GraphPtr gp(g);
  check(gbw_graph_set_ordering(g, ordering.c_str()));
  return gp;
}

const std::string& single_graph(const Options& o) {
  if (o.graphs.size() != 1) {
    std::cerr << "error: exactly one --graph is required\n";
    throw Failure{GBW_INVALID_ARGUMENT};
  }
  return o.graphs[0];
}

// Data: an n x p observation matrix, or with --n a p x p sample covariance.
struct Data {
  MatrixPtr S;
  double n = 0;
};

Data load_data(const Options& o) {
  Data d;
  if (o.data.empty()) return d;
  gbw_matrix* m = nullptr;
  if (o.n > 0) {
    check(gbw_matrix_read_symmetric(o.data.c_str(), &m));
    d.S.reset(m);
    d.n = o.n;
  } else {
    check(gbw_matrix_read(o.data.c_str(), &m));
    MatrixPtr x(m);
    gbw_matrix* s = nullptr;
    check(gbw_matrix_cross_product(x.get(), &s));
    d.S.reset(s);
    d.n = gbw_matrix_rows(x.get());
  }
  return d;
}

// U: a CSV path, "identity", or "scaled-identity" (c I with c the mean diagonal of n S).
MatrixPtr load_u(const std::string& spec, int p, const Data& data) {
  std::vector<double> v(static_cast<std::size_t>(p) * static_cast<std::size_t>(p), 0.0);
  double c = 1.0;
  if (spec == "scaled-identity") {
    if (!data.S) {
      std::cerr << "error: --U scaled-identity needs --data\n";
      throw Failure{GBW_INVALID_ARGUMENT};
    }
    c = 0;
    for (int i = 0; i < p; ++i) c += data.n * gbw_matrix_get(data.S.get(), i, i);
    c /= p;
  } else if (spec != "identity") {
    gbw_matrix* m = nullptr;
    check(gbw_matrix_read_symmetric(spec.c_str(), &m));
    MatrixPtr mp(m);
    if (gbw_matrix_rows(m) != p) {
      std::cerr << "error: " << spec << " is " << gbw_matrix_rows(m) << " x " << gbw_matrix_rows(m) << ", graph has " << p
                << " vertices\n";
      throw Failure{GBW_PARSE_ERROR};
    }
    return mp;
  }
  for (int i = 0; i < p; ++i) v[static_cast<std::size_t>(i) * static_cast<std::size_t>(p + 1)] = c;
  gbw_matrix* m = nullptr;
  check(gbw_matrix_new(p, p, v.data(), &m));
  return MatrixPtr(m);
}

struct Problem {
  GraphPtr graph;
  Data data;
  MatrixPtr U;
  std::vector<double> delta;
  ModelPtr prior, target;
};

Problem build(const Options& o, const std::string& graph_path, const std::string& ordering) {
  Problem pr;
  pr.graph = load_graph(graph_path, ordering);
  const int p = gbw_graph_order(pr.graph.get());
  pr.data = load_data(o);
  if (pr.data.S && gbw_matrix_rows(pr.data.S.get()) != p) {
    std::cerr << "error: data has " << gbw_matrix_cols(pr.data.S.get()) << " variables, graph has " << p << " vertices\n";
    throw Failure{GBW_PARSE_ERROR};
  }
  pr.U = load_u(o.U, p, pr.data);
  pr.delta.resize(static_cast<std::size_t>(p));
  check(gbw_delta_rule(o.delta.c_str(), p, pr.U.get(), pr.data.S.get(), pr.data.n, pr.delta.data()));
  gbw_model* m = nullptr;
  check(gbw_model_new(pr.graph.get(), pr.U.get(), pr.delta.data(), &m));
  pr.prior.reset(m);
  if (pr.data.S) {
    gbw_model* post = nullptr;
    check(gbw_model_posterior(m, pr.data.S.get(), pr.data.n, &post));
    pr.target.reset(post);
  }
  return pr;
}

gbw_model* target_of(const Problem& pr) { return pr.target ? pr.target.get() : pr.prior.get(); }

gbw_sample_config sample_config(const Options& o) {
  gbw_sample_config c;
  gbw_sample_config_default(&c);
  c.iters = o.iters;
  c.burnin = o.burnin;
  c.thin = o.thin;
  c.seed = o.seed;
  c.chains = o.chains;
  c.threads = thread_cap();
  c.max_attempts = o.max_attempts;
  c.df_offset = o.df_offset;
  return c;
}

json run_config(const std::string& command, const Options& o, const Problem& pr) {
  json j;
  j["command"] = command;
  j["graph"] = o.graphs;
  j["ordering"] = o.ordering;
  j["U"] = o.U;
  j["delta_rule"] = o.delta;
  j["delta"] = pr.delta;
  j["data"] = o.data.empty() ? json(nullptr) : json(o.data);
  j["n"] = pr.data.n;
  j["iters"] = o.iters;
  j["burnin"] = o.burnin;
  j["thin"] = o.thin;
  j["seed"] = o.seed;
  j["chains"] = o.chains;
  j["level"] = o.level;
  j["max_attempts"] = o.max_attempts;
  j["df_offset"] = o.df_offset;
  return j;
}

// graph commands

int graph_check(const Options& o) {
  auto g = load_graph(single_graph(o), o.ordering);
  json r = json::parse(take([&] {
    char* s = nullptr;
    check(gbw_graph_check(g.get(), &s));
    return s;
  }()));
  auto ranks = [](const json& a) {
    std::string s;
    for (const auto& x : a) s += (s.empty() ? "" : " ") + std::to_string(x.get<int>());
    return s;
  };
  std::cout << "vertices: " << r["vertices"] << ", edges: " << r["edges"] << "\n";
  std::cout << "decomposable: " << (r["decomposable"].get<bool>() ? "yes" : "no") << "\n";
  if (r["gb"].get<bool>())
    std::cout << "GB: yes (ordering ranks: " << ranks(r["gb_ordering"]) << ")\n";
  else
    std::cout << "GB: no (" << (r["exhaustive"].get<bool>() ? "exhaustive" : "heuristic") << ")\n";
  const auto& cur = r["ordering"];
  std::cout << "given ordering: " << (cur["gb"].get<bool>() ? "GB" : "not GB");
  if (!cur["violations"].empty()) {
    const auto& t = cur["violations"][0];
    std::cout << ", first violating triple (" << t[0] << ", " << t[1] << ", " << t[2] << ")";
  }
  std::cout << "\n";
  if (!o.out.empty()) write_text(o.out, r.dump(2) + "\n");
  return 0;
}

int graph_triangulate(const Options& o) {
  auto g = load_graph(single_graph(o), o.ordering);
  gbw_graph* t = nullptr;
  int fill = 0;
  check(gbw_graph_triangulate(g.get(), &t, &fill));
  GraphPtr tp(t);
  std::cerr << "fill edges: " << fill << "\n";
  check(gbw_graph_write(t, o.out.empty() ? "-" : o.out.c_str()));
  return 0;
}

int graph_cover(const Options& o) {
  auto g = load_graph(single_graph(o), o.ordering);
  gbw_graph* c = nullptr;
  int added = 0;
  check(gbw_graph_cover(g.get(), &c, &added));
  GraphPtr cp(c);
  std::cerr << "added edges: " << added << "\n";
  check(gbw_graph_write(c, o.out.empty() ? "-" : o.out.c_str()));
  return 0;
}

int graph_census(const Options& o) {
  char* s = nullptr;
  check(gbw_census(o.max_order, o.graph6.empty() ? nullptr : o.graph6.c_str(), &s));
  write_text(o.out, take(s));
  return 0;
}

int graph_prime(const Options& o) {
  auto g = load_graph(single_graph(o), o.ordering);
  char* s = nullptr;
  check(gbw_graph_prime_components(g.get(), &s));
  json comps = json::parse(take(s));
  for (const auto& c : comps) {
    std::string line;
    for (const auto& v : c) line += (line.empty() ? "" : " ") + std::to_string(v.get<int>());
    std::cout << line << "\n";
  }
  if (!o.out.empty()) write_text(o.out, comps.dump() + "\n");
  return 0;
}

// sample

int sample(const std::string& sampler, const Options& o) {
  Problem pr = build(o, single_graph(o), o.ordering);
  gbw_sample_config cfg = sample_config(o);
  gbw_chain* ch = nullptr;
  gbw_status st = gbw_sample(target_of(pr), sampler.c_str(), &cfg, &ch);
  ChainPtr cp(ch);
  if (st != GBW_OK) {
    std::cerr << "error: " << gbw_last_error() << "\n";
    if (!ch) return exit_code(st);
  }
  const std::string cfg_json = run_config("sample " + sampler, o, pr).dump();
  char* s = nullptr;
  check(gbw_chain_summary(ch, o.level, cfg_json.c_str(), &s));
  const std::string summary = take(s) + "\n";
  if (o.out.empty()) {
    std::cout << summary;
  } else {
    check(gbw_chain_write_csv(ch, (o.out + ".csv").c_str()));
    write_text(o.out + ".json", summary);
    std::cerr << "wrote " << o.out << ".csv and " << o.out << ".json (" << gbw_chain_retained(ch) << " draws)\n";
  }
  return exit_code(st);
}

// diagnose

int diagnose_identity(const Options& o) {
  Problem pr = build(o, single_graph(o), o.ordering);
  gbw_sample_config cfg = sample_config(o);
  cfg.keep_factors = 1;
  gbw_chain* ch = nullptr;
  check(gbw_sample(target_of(pr), "gibbs", &cfg, &ch));
  ChainPtr cp(ch);
  char* s = nullptr;
  check(gbw_identity_diagnostic(ch, target_of(pr), &s));
  json r = json::parse(take(s));
  r["config"] = run_config("diagnose thm2", o, pr);
  std::printf("%4s %4s %16s %12s %10s\n", "i", "j", "Simulated mean", "True Mean", "MC s.e.");
  for (const auto& row : r["rows"])
    std::printf("%4d %4d %16.4f %12.4f %10.4f\n", row["i"].get<int>(), row["j"].get<int>(), row["simulated"].get<double>(),
                row["truth"].get<double>(), row["se"].get<double>());
  std::printf("max |simulated - true| = %.4f over %ld draws\n", r["max_abs_deviation"].get<double>(),
              r["retained"].get<long>());
  if (!o.out.empty()) write_text(o.out, r.dump(2) + "\n");
  return 0;
}

int diagnose_dic(const Options& o) {
  if (o.graphs.empty() || o.data.empty()) {
    std::cerr << "error: dic needs --data and at least one --graph\n";
    return 2;
  }
  struct Row {
    std::string graph;
    double dic;
    int edges, added;
  };
  std::vector<Row> rows;
  for (const auto& path : o.graphs) {
    // candidates without a GB ordering are replaced by their GB cover under the natural ordering
    gbw_graph* raw = nullptr;
    check(gbw_graph_read(path.c_str(), &raw));
    GraphPtr g(raw);
    int added = 0;
    if (gbw_graph_set_ordering(raw, o.ordering.c_str()) != GBW_OK) {
      check(gbw_graph_set_ordering(raw, "natural"));
      gbw_graph* c = nullptr;
      check(gbw_graph_cover(raw, &c, &added));
      g.reset(c);
    }
    Problem pr;
    pr.graph = std::move(g);
    const int p = gbw_graph_order(pr.graph.get());
    pr.data = load_data(o);
    pr.U = load_u(o.U, p, pr.data);
    pr.delta.resize(static_cast<std::size_t>(p));
    check(gbw_delta_rule(o.delta.c_str(), p, pr.U.get(), pr.data.S.get(), pr.data.n, pr.delta.data()));
    gbw_model* m = nullptr;
    check(gbw_model_new(pr.graph.get(), pr.U.get(), pr.delta.data(), &m));
    pr.prior.reset(m);
    gbw_model* post = nullptr;
    check(gbw_model_posterior(m, pr.data.S.get(), pr.data.n, &post));
    pr.target.reset(post);
    gbw_sample_config cfg = sample_config(o);
    gbw_chain* ch = nullptr;
    check(gbw_sample(post, "gibbs", &cfg, &ch));
    ChainPtr cp(ch);
    double d = 0;
    check(gbw_dic(ch, pr.data.S.get(), pr.data.n, &d));
    rows.push_back({path, d, gbw_graph_edge_count(pr.graph.get()), added});
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].dic < rows[best].dic) best = i;
  std::string csv = "graph,dic,edges,cover_added,best\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", rows[i].dic);
    csv += rows[i].graph + "," + buf + "," + std::to_string(rows[i].edges) + "," + std::to_string(rows[i].added) + "," +
           (i == best ? "1" : "0") + "\n";
    std::printf("%s%-40s DIC %.3f\n", i == best ? "* " : "  ", rows[i].graph.c_str(), rows[i].dic);
  }
  if (!o.out.empty()) write_text(o.out, csv);
  return 0;
}

int diagnose_loss(const Options& o) {
  if (o.estimate.empty() || o.truth.empty()) {
    std::cerr << "error: loss needs --estimate and --truth\n";
    return 2;
  }
  gbw_matrix *e = nullptr, *t = nullptr;
  check(gbw_matrix_read_symmetric(o.estimate.c_str(), &e));
  MatrixPtr ep(e);
  check(gbw_matrix_read_symmetric(o.truth.c_str(), &t));
  MatrixPtr tp(t);
  double l = 0;
  check(gbw_stein_loss(e, t, &l));
  std::printf("stein_loss %.17g\n", l);
  if (!o.out.empty()) {
    json j{{"schema", "gbwish.loss"}, {"schema_version", GBW_SCHEMA_VERSION}, {"loss", "stein"}, {"value", l}};
    write_text(o.out, j.dump(2) + "\n");
  }
  return 0;
}

void model_flags(CLI::App* c, Options& o) {
  c->add_option("--graph", o.graphs, "edge list file")->required();
  c->add_option("--ordering", o.ordering, "rank file, natural, min-fill, peo or gb-search");
  c->add_option("--U", o.U, "scale matrix CSV, identity or scaled-identity");
  c->add_option("--delta", o.delta, "const:<x>, empirical, inv-diag, prec-diag or a CSV file");
  c->add_option("--data", o.data, "observations CSV (rows = samples); with --n a sample covariance");
  c->add_option("--n", o.n, "sample size when --data holds a covariance matrix");
  c->add_option("--iters", o.iters, "total sweeps including burn-in");
  c->add_option("--burnin", o.burnin);
  c->add_option("--thin", o.thin);
  c->add_option("--seed", o.seed);
  c->add_option("--chains", o.chains);
  c->add_option("--level", o.level, "credible level");
  c->add_option("--max-attempts", o.max_attempts, "accept-reject budget");
  c->add_option("--df-offset", o.df_offset, "chi-square offset for accept-reject and MH proposals");
  c->add_option("--out", o.out, "output path or prefix");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized G-Wishart inference on Generalized Bartlett graphs"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  auto* check_cmd = graph->add_subcommand("check", "decomposable / GB status");
  auto* tri_cmd = graph->add_subcommand("triangulate", "fill cover of an ordering");
  auto* cover_cmd = graph->add_subcommand("cover", "GB cover of an ordering");
  auto* prime_cmd = graph->add_subcommand("prime", "prime components");
  for (auto* c : {check_cmd, tri_cmd, cover_cmd, prime_cmd}) {
    c->add_option("--graph", o.graphs, "edge list file")->required();
    c->add_option("--ordering", o.ordering, "rank file, natural, min-fill, peo or gb-search");
    c->add_option("--out", o.out);
  }
  auto* census_cmd = graph->add_subcommand("census", "counts of connected graphs by class");
  census_cmd->add_option("--max-order", o.max_order)->check(CLI::Range(1, 10));
  census_cmd->add_option("--graph6", o.graph6, "classify the graphs of a graph6 file instead of enumerating");
  census_cmd->add_option("--out", o.out);
  check_cmd->callback([&] { action = [&] { return graph_check(o); }; });
  tri_cmd->callback([&] { action = [&] { return graph_triangulate(o); }; });
  cover_cmd->callback([&] { action = [&] { return graph_cover(o); }; });
  prime_cmd->callback([&] { action = [&] { return graph_prime(o); }; });
  census_cmd->callback([&] { action = [&] { return graph_census(o); }; });

  auto* samp = app.add_subcommand("sample", "draw from the generalized G-Wishart (posterior with --data)");
  samp->require_subcommand(1);
  for (const char* name : {"gibbs", "direct", "ar", "mh"}) {
    auto* c = samp->add_subcommand(name);
    model_flags(c, o);
    std::string s = name;
    c->callback([&, s] { action = [&, s] { return sample(s, o); }; });
  }

  auto* diag = app.add_subcommand("diagnose", "diagnostics and model scores");
  diag->require_subcommand(1);
  auto* thm = diag->add_subcommand("thm2", "simulated vs exact means of the sigma-star statistic");
  model_flags(thm, o);
  thm->callback([&] { action = [&] { return diagnose_identity(o); }; });
  auto* dic_cmd = diag->add_subcommand("dic", "DIC of each candidate graph");
  model_flags(dic_cmd, o);
  dic_cmd->callback([&] {
    if (dic_cmd->count("--U") == 0) o.U = "scaled-identity";
    if (dic_cmd->count("--delta") == 0) o.delta = "empirical";
    if (dic_cmd->count("--ordering") == 0) o.ordering = "gb-search";
    action = [&] { return diagnose_dic(o); };
  });
  auto* loss = diag->add_subcommand("loss", "Stein loss of an estimate against a truth matrix");
  loss->add_option("--estimate", o.estimate)->required();
  loss->add_option("--truth", o.truth)->required();
  loss->add_option("--out", o.out);
  loss->callback([&] { action = [&] { return diagnose_loss(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Failure& f) {
    return exit_code(f.status);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
