// graphboot: subgraph-count statistics with subsampling bootstrap.
//
// Subcommands: count, bootstrap, variance, test, simulate, coverage.
// JSON on stdout (CSV for coverage grids); every JSON record embeds a run
// manifest sufficient to reproduce the output. Exit codes: 0 ok, 2 usage or
// parse error, 3 degenerate statistic, 4 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphboot/estimators.hpp"
#include "graphboot/graph.hpp"
#include "graphboot/inference.hpp"
#include "graphboot/models.hpp"
#include "graphboot/motif.hpp"
#include "graphboot/variance.hpp"

using nlohmann::json;
using namespace graphboot;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i)
      h = (h ^ static_cast<unsigned char>(buf[i])) * 1099511628211ULL;
    if (!in) break;
  }
  return h;
}

struct Manifest {
  std::string command;
  json params = json::object();
  std::uint64_t seed = 0;
  json inputs = json::object();
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void add_input(const std::string& path) {
    std::ostringstream hex;
    hex << std::hex << fnv1a_digest(path);
    inputs[path] = hex.str();
  }
  json to_json() const {
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    return {{"command", command}, {"params", params},   {"seed", seed},
            {"version", kVersion}, {"inputs", inputs},  {"duration_ms", ms}};
  }
};

Graph load_graph(const std::string& path, Manifest& man) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  man.add_input(path);
  return load_edge_list(in).graph;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw std::invalid_argument("empty numeric list");
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double x : parse_doubles(csv)) out.push_back(static_cast<int>(x));
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) out.push_back(parse_doubles(row));
  return out;
}

json estimate_json(const CountEstimate& est) {
  json j;
  j["motif"] = est.motif.name.empty() ? "custom" : est.motif.name;
  j["p"] = est.motif.p;
  j["e"] = est.motif.e;
  j["scheme"] = scheme_name(est.scheme);
  j["value"] = est.value;
  j["normalized"] = est.normalized;
  j["rho_hat"] = est.rho_hat;
  j["n"] = est.n;
  j["warnings"] = est.warnings;
  return j;
}

json variance_json(const VarianceEstimate& v) {
  json j;
  json motifs = json::array();
  for (const auto& m : v.motifs)
    motifs.push_back(m.name.empty() ? "custom" : m.name);
  j["motifs"] = motifs;
  j["sigma2"] = v.sigma2;
  j["estimate"] = v.estimate;
  if (v.motifs.size() == 2) j["estimate2"] = v.estimate2;
  j["rho_hat"] = v.rho_hat;
  j["correction"] = v.correction;
  j["scheme"] = scheme_name(v.scheme);
  j["n"] = v.n;
  json terms = json::array();
  for (const auto& t : v.terms)
    terms.push_back({{"p_w", t.pattern.w.p},
                     {"e_w", t.pattern.w.e},
                     {"overlap", t.pattern.overlap},
                     {"pair_multiplicity", t.pattern.pair_multiplicity},
                     {"count", t.count},
                     {"contribution", t.contribution}});
  j["terms"] = terms;
  j["warnings"] = v.warnings;
  return j;
}

json test_json(const TestResult& t) {
  json j;
  j["statistic"] = t.statistic;
  j["p_value"] = t.p_value;
  j["alternative"] = alternative_name(t.alternative);
  j["estimate"] = t.estimate;
  j["null_value"] = t.null_value;
  j["sigma2"] = t.sigma2;
  j["n"] = t.n;
  if (t.n2 > 0) {
    j["estimate2"] = t.estimate2;
    j["sigma2_2"] = t.sigma2_2;
    j["n2"] = t.n2;
  }
  if (t.rank > 0) j["rank"] = t.rank;
  j["degenerate"] = t.degenerate;
  return j;
}

void emit(const json& payload, Manifest& man, const std::string& out_path) {
  json doc = payload;
  doc["manifest"] = man.to_json();
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
  }
}

Alternative parse_alternative(const std::string& s) {
  if (s == "less") return Alternative::less;
  if (s == "greater") return Alternative::greater;
  if (s == "two-sided" || s == "two_sided") return Alternative::two_sided;
  throw std::invalid_argument("unknown alternative: " + s);
}

struct SchemeFlags {
  std::string scheme;
  int m = 0;
  std::string q_csv;
  int B = 50;
  std::uint64_t seed = 0;
  int threads = 1;

  void attach(CLI::App* cmd, bool allow_exact) {
    cmd->add_option("--scheme", scheme,
                    allow_exact ? "exact | uniform | subgraph"
                                : "uniform | subgraph");
    cmd->add_option("--m", m, "uniform scheme: subsample size");
    cmd->add_option("--q", q_csv,
                    "subgraph scheme: comma-separated retention probs");
    cmd->add_option("--B", B, "bootstrap iterates");
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--threads", threads, "worker bound (results unaffected)");
  }

  BootstrapConfig config(int motif_p) const {
    if (!q_csv.empty() && m > 0)
      throw std::invalid_argument("--m and --q are mutually exclusive");
    BootstrapConfig cfg;
    cfg.B = B;
    cfg.seed = seed;
    cfg.threads = threads;
    if (scheme == "uniform" || (scheme.empty() && m > 0)) {
      cfg.scheme = Scheme::uniform;
      cfg.m = m;
    } else if (scheme == "subgraph" || (scheme.empty() && !q_csv.empty())) {
      cfg.scheme = Scheme::subgraph;
      cfg.q = parse_doubles(q_csv);
      if (static_cast<int>(cfg.q.size()) == 1)
        cfg.q.assign(motif_p, cfg.q[0]);
    } else {
      throw std::invalid_argument("scheme flags missing or inconsistent");
    }
    return cfg;
  }
};

SbmSpec sbm_from_flags(double nu, int n, const std::string& pi_csv,
                       const std::string& s_text, double s_n) {
  if (nu > 0.0) return benchmark_sbm(nu, n);
  SbmSpec spec;
  spec.pi = parse_doubles(pi_csv);
  spec.S = parse_matrix(s_text);
  spec.s_n = s_n;
  spec.validate();
  return spec;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"subgraph-count statistics with subsampling bootstrap"};
  app.require_subcommand(1);

  // ---- count ----
  auto* count_cmd = app.add_subcommand("count", "exact motif count");
  std::string graph_path, motif_spec, out_path;
  count_cmd->add_option("--graph", graph_path)->required();
  count_cmd->add_option("--motif", motif_spec)->required();
  count_cmd->add_option("--out", out_path);

  // ---- bootstrap ----
  auto* boot_cmd = app.add_subcommand("bootstrap", "bootstrap motif count");
  std::string b_graph, b_motif, b_out, b_iter_csv;
  SchemeFlags b_flags;
  boot_cmd->add_option("--graph", b_graph)->required();
  boot_cmd->add_option("--motif", b_motif)->required();
  boot_cmd->add_option("--out", b_out);
  boot_cmd->add_option("--iterates-csv", b_iter_csv,
                       "write per-iterate values to this CSV");
  b_flags.attach(boot_cmd, false);

  // ---- variance ----
  auto* var_cmd = app.add_subcommand("variance", "variance / covariance");
  std::string v_graph, v_motif, v_motif2, v_out;
  SchemeFlags v_flags;
  var_cmd->add_option("--graph", v_graph)->required();
  var_cmd->add_option("--motif", v_motif)->required();
  var_cmd->add_option("--motif2", v_motif2,
                      "second motif: compute the covariance instead");
  var_cmd->add_option("--out", v_out);
  v_flags.attach(var_cmd, true);

  // ---- test ----
  auto* test_cmd = app.add_subcommand("test", "asymptotic-normal tests");
  std::string t_graph, t_motif, t_alt = "two-sided", t_out;
  SchemeFlags t_flags;
  double t_est = 0, t_sigma2 = -1, t_null = 0;
  long long t_n = 0;
  bool t_two = false;
  double t_est1 = 0, t_s1 = 0, t_est2 = 0, t_s2 = 0;
  long long t_n1 = 0, t_n2 = 0;
  test_cmd->add_option("--graph", t_graph, "compute estimate+variance first");
  test_cmd->add_option("--motif", t_motif);
  t_flags.attach(test_cmd, true);
  test_cmd->add_option("--est", t_est);
  test_cmd->add_option("--sigma2", t_sigma2);
  test_cmd->add_option("--n", t_n);
  test_cmd->add_option("--null", t_null);
  test_cmd->add_option("--alternative", t_alt);
  test_cmd->add_flag("--two-sample", t_two);
  test_cmd->add_option("--est1", t_est1);
  test_cmd->add_option("--sigma2-1", t_s1);
  test_cmd->add_option("--n1", t_n1);
  test_cmd->add_option("--est2", t_est2);
  test_cmd->add_option("--sigma2-2", t_s2);
  test_cmd->add_option("--n2", t_n2);
  test_cmd->add_option("--out", t_out);

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "draw a random graph");
  std::string s_model = "sbm", s_pi, s_S, s_out, s_labels_out;
  double s_nu = 0, s_sn = 1.0, s_p_edge = -1, s_lambda = -1, s_rho = -1;
  int s_n = 0;
  std::uint64_t s_seed = 0;
  sim_cmd->add_option("--model", s_model, "sbm | er | pfa");
  sim_cmd->add_option("--n", s_n)->required();
  sim_cmd->add_option("--nu", s_nu, "sbm: benchmark scale parameter");
  sim_cmd->add_option("--pi", s_pi, "sbm: block probabilities");
  sim_cmd->add_option("--S", s_S, "sbm: rows 'a,b;c,d'");
  sim_cmd->add_option("--sn", s_sn, "sbm: scale factor");
  sim_cmd->add_option("--p-edge", s_p_edge, "er: edge probability");
  sim_cmd->add_option("--lambda", s_lambda, "pfa/er: expected degree");
  sim_cmd->add_option("--rho", s_rho, "pfa: sparsity scale");
  sim_cmd->add_option("--seed", s_seed);
  sim_cmd->add_option("--out", s_out, "edge-list output path")->required();
  sim_cmd->add_option("--labels-out", s_labels_out,
                      "write block labels / latent positions");

  // ---- coverage ----
  auto* cov_cmd = app.add_subcommand("coverage", "CI coverage experiment");
  std::string c_model = "sbm", c_grid, c_motif, c_out;
  double c_nu = 0.5, c_level = 0.95;
  int c_reps = 200;
  SchemeFlags c_flags;
  cov_cmd->add_option("--model", c_model, "sbm only");
  cov_cmd->add_option("--nu", c_nu);
  cov_cmd->add_option("--grid", c_grid, "comma-separated n values")
      ->required();
  cov_cmd->add_option("--reps", c_reps);
  cov_cmd->add_option("--motif", c_motif)->required();
  cov_cmd->add_option("--level", c_level);
  cov_cmd->add_option("--out", c_out, "CSV output path");
  c_flags.attach(cov_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Manifest man;
  if (count_cmd->parsed()) {
    man.command = "count";
    man.params = {{"graph", graph_path}, {"motif", motif_spec}};
    Graph g = load_graph(graph_path, man);
    CountEstimate est = exact_count(g, parse_motif(motif_spec));
    emit(estimate_json(est), man, out_path);
    return 0;
  }
  if (boot_cmd->parsed()) {
    man.command = "bootstrap";
    MotifPattern r = parse_motif(b_motif);
    BootstrapConfig cfg = b_flags.config(r.p);
    man.seed = cfg.seed;
    man.params = {{"graph", b_graph},
                  {"motif", b_motif},
                  {"scheme", scheme_name(cfg.scheme)},
                  {"B", cfg.B}};
    if (cfg.scheme == Scheme::uniform)
      man.params["m"] = cfg.m;
    else
      man.params["q"] = cfg.q;
    Graph g = load_graph(b_graph, man);
    CountEstimate est = cfg.scheme == Scheme::uniform
                            ? uniform_bootstrap(g, r, cfg)
                            : subgraph_bootstrap(g, r, cfg);
    json j = estimate_json(est);
    j["B"] = cfg.B;
    j["seed"] = cfg.seed;
    if (cfg.scheme == Scheme::uniform)
      j["m"] = cfg.m;
    else
      j["q"] = cfg.q;
    if (!b_iter_csv.empty()) {
      std::ofstream csv(b_iter_csv);
      csv << "iterate,value\n";
      for (std::size_t i = 0; i < est.iterates.size(); ++i)
        csv << i << "," << est.iterates[i] << "\n";
    }
    emit(j, man, b_out);
    return 0;
  }
  if (var_cmd->parsed()) {
    man.command = "variance";
    MotifPattern r1 = parse_motif(v_motif);
    Graph g = load_graph(v_graph, man);
    VarianceEstimate v;
    const bool exact = v_flags.scheme.empty() || v_flags.scheme == "exact";
    BootstrapConfig cfg;
    if (!exact) cfg = v_flags.config(r1.p);
    man.seed = exact ? 0 : cfg.seed;
    man.params = {{"graph", v_graph},
                  {"motif", v_motif},
                  {"scheme", exact ? "exact" : scheme_name(cfg.scheme)}};
    if (v_motif2.empty()) {
      v = exact ? empirical_variance(g, r1)
                : bootstrap_variance(g, r1, cfg);
    } else {
      MotifPattern r2 = parse_motif(v_motif2);
      man.params["motif2"] = v_motif2;
      v = exact ? empirical_covariance(g, r1, r2)
                : bootstrap_covariance(g, r1, r2, cfg);
    }
    json j = variance_json(v);
    if (!exact) j["seed"] = cfg.seed;
    emit(j, man, v_out);
    return 0;
  }
  if (test_cmd->parsed()) {
    man.command = "test";
    Alternative alt = parse_alternative(t_alt);
    TestResult res;
    if (t_two) {
      man.params = {{"mode", "two-sample"}};
      res = two_sample_test(t_est1, t_s1, t_n1, t_est2, t_s2, t_n2, alt);
    } else if (!t_graph.empty()) {
      MotifPattern r = parse_motif(t_motif);
      Graph g = load_graph(t_graph, man);
      const bool exact = t_flags.scheme.empty() || t_flags.scheme == "exact";
      VarianceEstimate v;
      if (exact) {
        v = empirical_variance(g, r);
      } else {
        BootstrapConfig cfg = t_flags.config(r.p);
        man.seed = cfg.seed;
        v = bootstrap_variance(g, r, cfg);
      }
      man.params = {{"mode", "one-sample"},
                    {"graph", t_graph},
                    {"motif", t_motif},
                    {"null", t_null}};
      res = one_sample_test(v.estimate, std::max(v.sigma2, 0.0),
                            g.vertex_count(), t_null, alt);
    } else {
      if (t_sigma2 < 0 || t_n <= 0)
        throw std::invalid_argument(
            "numeric mode needs --est, --sigma2 and --n");
      man.params = {{"mode", "one-sample"}, {"null", t_null}};
      res = one_sample_test(t_est, t_sigma2, t_n, t_null, alt);
    }
    json j = test_json(res);
    j["significant_at_5pct"] = res.p_value < 0.05;
    emit(j, man, t_out);
    return 0;
  }
  if (sim_cmd->parsed()) {
    man.command = "simulate";
    man.seed = s_seed;
    man.params = {{"model", s_model}, {"n", s_n}};
    Rng rng(derive_seed(s_seed, 7));
    Graph g;
    json labels = json::array();
    if (s_model == "sbm") {
      SbmSpec spec = sbm_from_flags(s_nu, s_n, s_pi, s_S, s_sn);
      man.params["rho"] = spec.rho();
      SbmSample sample = sample_sbm(s_n, spec, rng);
      g = std::move(sample.graph);
      for (int l : sample.labels) labels.push_back(l);
    } else if (s_model == "er") {
      double p = s_p_edge >= 0 ? s_p_edge : s_lambda / (s_n - 1);
      SbmSpec spec;
      spec.pi = {1.0};
      spec.S = {{p}};
      spec.validate();
      g = std::move(sample_sbm(s_n, spec, rng).graph);
    } else if (s_model == "pfa") {
      double rho = s_rho >= 0 ? s_rho : s_lambda / s_n;
      GraphonSample sample = sample_graphon(s_n, pfa_graphon(rho), rng);
      g = std::move(sample.graph);
      for (double x : sample.xi) labels.push_back(x);
    } else {
      throw std::invalid_argument("unknown model: " + s_model);
    }
    {
      std::ofstream out(s_out);
      if (!out) throw std::invalid_argument("cannot write " + s_out);
      write_edge_list(out, g);
    }
    if (!s_labels_out.empty()) {
      std::ofstream out(s_labels_out);
      out << labels.dump() << "\n";
    }
    json j = {{"n", g.vertex_count()},
              {"edges", g.edge_count()},
              {"mean_degree", g.mean_degree()},
              {"out", s_out}};
    emit(j, man, "");
    return 0;
  }
  if (cov_cmd->parsed()) {
    man.command = "coverage";
    if (c_model != "sbm")
      throw std::invalid_argument("coverage supports the sbm model only");
    MotifPattern r = parse_motif(c_motif);
    CoverageConfig cc;
    cc.n_grid = parse_ints(c_grid);
    cc.reps = c_reps;
    cc.cfg = c_flags.config(r.p);
    cc.level = c_level;
    cc.seed = c_flags.seed;
    man.seed = cc.seed;
    man.params = {{"model", "sbm"}, {"nu", c_nu},   {"grid", cc.n_grid},
                  {"reps", c_reps}, {"motif", c_motif}, {"level", c_level}};
    auto model = [&](int n, std::uint64_t seed) {
      Rng rng(seed);
      return sample_sbm(n, benchmark_sbm(c_nu, n), rng).graph;
    };
    auto target = [&](int n) {
      return sbm_moment(r, benchmark_sbm(c_nu, n));
    };
    CoverageReport rep = coverage_experiment(model, target, r, cc);
    std::ostringstream csv;
    csv << "n,reps,coverage,mean_width,seed\n";
    for (const auto& cell : rep.cells)
      csv << cell.n << "," << cell.reps << "," << cell.coverage << ","
          << cell.mean_width << "," << cell.seed << "\n";
    if (c_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(c_out);
      out << csv.str();
      json j = {{"out", c_out}, {"cells", rep.cells.size()}};
      emit(j, man, "");
    }
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    if (what.find("degenerate") != std::string::npos ||
        what.find("no connected triples") != std::string::npos)
      return 3;
    return what.find("parse") != std::string::npos ? 2 : 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
