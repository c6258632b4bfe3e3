// maxcov: command-line front end for the coverage library.
//
// Exit codes: 0 success, 1 error (bad flags, missing files, invalid input),
// 2 a solver budget was hit and the result is best-effort.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxcov/algorithms.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/exact_opt.hpp"
#include "maxcov/experiments.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/graph.hpp"
#include "maxcov/matching.hpp"
#include "maxcov/theory.hpp"

namespace {

using namespace maxcov;
using Json = nlohmann::ordered_json;

constexpr int kBestEffort = 2;

void print(const Json& j) { std::cout << j.dump() << '\n'; }

std::uint64_t seed_or_default(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::cerr << "warning: --seed not given; using the shared default seed 0\n";
  return 0;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json node_list(const std::vector<NodeId>& nodes) {
  Json j = Json::array();
  for (auto u : nodes) j.push_back(u);
  return j;
}

struct GenArgs {
  std::string model = "lrr";
  std::size_t n = 0, m = 0, d = 0, k = 0;
  std::vector<std::size_t> degrees;
  double a = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_gen(const GenArgs& g) {
  const std::uint64_t seed = seed_or_default(g.seed);
  const std::size_t m = g.m == 0 ? g.n : g.m;
  BipartiteGraph graph;
  if (g.model == "lrr") {
    if (g.m != 0 && g.m != g.n) throw InvalidInput("lrr has m = n; use --model ulrr");
    graph = gen_lrr(g.n, g.d, {seed, 0});
  } else if (g.model == "ulrr") {
    graph = gen_ulrr(g.n, m, g.d, {seed, 0});
  } else if (g.model == "genr") {
    if (g.degrees.size() != g.n) throw InvalidInput("--degrees needs exactly n values");
    graph = gen_genr(g.n, m, g.degrees, {seed, 0});
  } else if (g.model == "powerlaw") {
    const PowerLawDegrees degs = gen_powerlaw_degrees(g.n, m, g.a, {seed, 0});
    if (degs.clamped > 0) {
      std::cerr << "note: " << degs.clamped << " power-law degree(s) exceeded m and were clamped to "
                << m << '\n';
    }
    graph = gen_genr(g.n, m, degs.degrees, {seed, 1});
  } else if (g.model == "bad_instance") {
    graph = gen_bad_instance(g.k).graph;
  } else {
    throw InvalidInput("unknown model: " + g.model);
  }
  save_graph(graph, g.out);
  print(Json{{"out", g.out},
             {"n", graph.n_left()},
             {"m", graph.m_right()},
             {"edges", graph.num_edges()}});
  return 0;
}

struct GreedyArgs {
  std::string graph;
  std::size_t k = 0;
  std::string algorithm = "greedy";
  std::string trace_out;
};

int run_greedy(const GreedyArgs& a) {
  const BipartiteGraph graph = load_graph(a.graph);
  Json j;
  j["k"] = a.k;
  if (a.algorithm == "accept_reject") {
    const AcceptRejectTrace ar = accept_reject(graph, a.k);
    j["algorithm"] = "accept_reject";
    j["coverage"] = coverage(graph, NodeSet(ar.accepted));
    j["selections"] = node_list(ar.accepted);
    j["accepts_per_phase"] = ar.accepts_per_phase;
  } else if (a.algorithm == "greedy") {
    const GreedyTrace trace = greedy(graph, a.k);
    j["algorithm"] = "greedy";
    j["coverage"] = trace.value();
    j["selections"] = node_list(trace.selections);
    Json summary;
    summary["steps"] = trace.selections.size();
    summary["first_gain"] = trace.gains.empty() ? 0 : trace.gains.front();
    summary["last_gain"] = trace.gains.empty() ? 0 : trace.gains.back();
    if (const std::size_t d = graph.regular_degree(); d > 0) {
      summary["t_d_prefix"] = t_d_from_trace(trace, d);
    }
    j["trace"] = summary;
    if (!a.trace_out.empty()) {
      std::ofstream out(a.trace_out);
      if (!out) throw InvalidInput("cannot write " + a.trace_out);
      write_trace_csv(out, trace);
    }
  } else {
    throw InvalidInput("unknown algorithm: " + a.algorithm);
  }
  print(j);
  return 0;
}

struct OptArgs {
  std::string graph;
  std::size_t k = 0;
  std::string method = "branch_bound";
  double time_budget_ms = 0.0;
  std::size_t node_budget = 0;
  double subset_budget = 1e7;
};

int run_opt(const OptArgs& a) {
  const BipartiteGraph graph = load_graph(a.graph);
  OptResult r;
  if (a.method == "exhaustive") {
    try {
      r = opt_exhaustive(graph, a.k, {a.subset_budget});
    } catch (const CapacityError& e) {
      print(Json{{"error", e.what()}, {"method", "exhaustive"}, {"budget_exceeded", true}});
      return kBestEffort;
    }
  } else if (a.method == "branch_bound") {
    BranchBoundOptions options;
    options.time_budget_ms = a.time_budget_ms;
    options.node_budget = a.node_budget;
    r = opt_branch_bound(graph, a.k, options);
  } else {
    throw InvalidInput("unknown method: " + a.method);
  }
  print(Json{{"k", a.k},
             {"value", r.value},
             {"witness", node_list(r.witness.nodes())},
             {"method", std::string(to_string(r.method))},
             {"explored", r.nodes_explored},
             {"best_effort", r.best_effort},
             {"time_ms", r.time_ms}});
  return r.best_effort ? kBestEffort : 0;
}

struct MatchArgs {
  std::string graph;
  std::string simple_graph;
  std::optional<std::size_t> k;
};

int run_match(const MatchArgs& a) {
  if (a.graph.empty() == a.simple_graph.empty()) {
    throw InvalidInput("give exactly one of --graph and --simple-graph");
  }
  Json j;
  if (!a.simple_graph.empty()) {
    std::ifstream in(a.simple_graph);
    if (!in) throw InvalidInput("cannot open " + a.simple_graph);
    const MatchingResult r = max_matching(read_simple_graph(in));
    j["matching_size"] = r.size;
    Json pairs = Json::array();
    for (const auto& [u, v] : r.pairs) pairs.push_back({u, v});
    j["pairs"] = pairs;
  } else {
    const BipartiteGraph graph = load_graph(a.graph);
    const NodeSet witness = disjoint_left_set(graph);
    j["lambda"] = witness.size();
    j["witness"] = node_list(witness.nodes());
    if (a.k) {
      j["k"] = *a.k;
      j["opt_lower_bound"] = 2 * std::min(*a.k, witness.size());
    }
  }
  print(j);
  return 0;
}

struct PredictArgs {
  std::size_t n = 0, m = 0, d = 0;
  std::optional<std::size_t> k;
  double eps = 0.1;
};

int run_predict(const PredictArgs& a) {
  const std::size_t m = a.m == 0 ? a.n : a.m;
  if (a.d == 0) throw InvalidInput("--d must be >= 1");
  const std::size_t k = a.k.value_or(std::min(a.n, m / a.d));
  const theory::PredictionSet p = theory::predict(a.n, m, a.d, k, a.eps);
  std::cout << theory::to_json(p) << '\n';
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::optional<int> threads;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig config = load_config(a.config);
  if (a.threads) config.threads = *a.threads;
  std::ostringstream body;
  const ExperimentOutcome outcome = run_experiment(config, body);
  std::ofstream out(a.out);
  if (!out) throw InvalidInput("cannot write " + a.out);
  out << "# maxcov experiment " << config.experiment << " generated " << utc_timestamp() << '\n';
  out << body.str();
  print(outcome.summary);
  return outcome.best_effort ? kBestEffort : 0;
}

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::size_t graphs = 200;
};

int run_verify(const VerifyArgs& a) {
  Json j;
  bool ok = true;

  const theory::ClaimReport claims = theory::claim_checks();
  j["claim1_violations"] = claims.claim1_violations;
  j["claim2_violations"] = claims.claim2_violations;
  ok = ok && claims.ok();

  std::size_t hyper_violations = 0;
  for (std::size_t m = 50; m <= 200; ++m) {
    for (std::size_t d = 1; double(2 * d * d) <= double(m); ++d) {
      hyper_violations += theory::hypergeom_approx_error(m, d) > theory::hypergeom_approx_bound(m, d);
    }
  }
  j["hypergeom_violations"] = hyper_violations;
  ok = ok && hyper_violations == 0;

  double ode_err = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    for (double ratio : {0.5, 1.0, 2.0}) {
      for (double t : {0.25, 0.5, 1.0}) {
        const double n = 100.0 * ratio;
        const double m = 100.0;
        ode_err = std::max(ode_err, std::abs(theory::ode_rk4(t, 1e-4, n, m, d) -
                                             theory::ode_solution(t, n, m, d)));
      }
    }
  }
  j["ode_max_error"] = ode_err;
  ok = ok && ode_err <= 1e-8;

  std::size_t mismatches = 0;
  const auto rows = equivalence_check(a.graphs, 60, a.seed, 1);
  for (const auto& r : rows) mismatches += !r.identical;
  j["equivalence_checks"] = rows.size();
  j["equivalence_mismatches"] = mismatches;
  ok = ok && mismatches == 0;

  j["ok"] = ok;
  print(j);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum coverage on random bipartite graphs: generators, greedy, exact solvers, "
               "matching bounds, predictions and experiments"};
  app.require_subcommand(1, 1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
  gen_cmd->add_option("--model", gen.model, "lrr | ulrr | genr | powerlaw | bad_instance")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Left nodes");
  gen_cmd->add_option("--m", gen.m, "Right nodes (default n)");
  gen_cmd->add_option("--d", gen.d, "Left degree for lrr/ulrr");
  gen_cmd->add_option("--degrees", gen.degrees, "Per-node degrees for genr")->delimiter(',');
  gen_cmd->add_option("--a", gen.a, "Pareto exponent for powerlaw");
  gen_cmd->add_option("--k", gen.k, "k for bad_instance");
  gen_cmd->add_option("--seed", gen.seed, "Master seed (default 0, shared)");
  gen_cmd->add_option("--out", gen.out, "Output graph file")->required();

  GreedyArgs gr;
  auto* greedy_cmd = app.add_subcommand("greedy", "Run greedy (or AcceptReject) on a graph file");
  greedy_cmd->add_option("--graph", gr.graph, "Graph file")->required();
  greedy_cmd->add_option("--k", gr.k, "Cardinality")->required();
  greedy_cmd->add_option("--algorithm", gr.algorithm, "greedy | accept_reject")
      ->capture_default_str();
  greedy_cmd->add_option("--trace-out", gr.trace_out,
                         "Write the greedy trace as CSV (step,node,gain,coverage)");

  OptArgs op;
  auto* opt_cmd = app.add_subcommand("opt", "Exact optimum of a graph file");
  opt_cmd->add_option("--graph", op.graph, "Graph file")->required();
  opt_cmd->add_option("--k", op.k, "Cardinality")->required();
  opt_cmd->add_option("--method", op.method, "exhaustive | branch_bound")->capture_default_str();
  opt_cmd->add_option("--time-budget-ms", op.time_budget_ms, "Branch and bound time budget (0 = none)");
  opt_cmd->add_option("--node-budget", op.node_budget, "Branch and bound node budget (0 = none)");
  opt_cmd->add_option("--subset-budget", op.subset_budget, "Largest binom(n, k) to enumerate")
      ->capture_default_str();

  MatchArgs ma;
  auto* match_cmd = app.add_subcommand(
      "match", "Maximum disjoint left set of a 2-regular graph, or a matching of a simple graph");
  match_cmd->add_option("--graph", ma.graph, "Bipartite graph file (2-left-regular)");
  match_cmd->add_option("--simple-graph", ma.simple_graph, "Simple graph file (\"V E\" + edges)");
  match_cmd->add_option("--k", ma.k, "Report the 2 min(k, lambda) lower bound");

  PredictArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Closed-form predictions for LRR/ULRR");
  predict_cmd->add_option("--n", pr.n, "Left nodes")->required();
  predict_cmd->add_option("--m", pr.m, "Right nodes (default n)");
  predict_cmd->add_option("--d", pr.d, "Left degree")->required();
  predict_cmd->add_option("--k", pr.k, "Cardinality (default min(n, m/d))");
  predict_cmd->add_option("--eps", pr.eps, "Region parameter in (0, 1)")->capture_default_str();

  ExperimentArgs ex;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment config and write CSV");
  exp_cmd->add_option("--config", ex.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--out", ex.out, "Output CSV")->required();
  exp_cmd->add_option("--threads", ex.threads, "Worker threads (default: OpenMP default)");
  exp_cmd->footer(csv_schema_help());

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "Run the deterministic invariant suite");
  verify_cmd->add_option("--seed", ve.seed, "Seed for sampled graphs")->capture_default_str();
  verify_cmd->add_option("--graphs", ve.graphs, "Sampled graphs for greedy/AcceptReject")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*greedy_cmd) return run_greedy(gr);
    if (*opt_cmd) return run_opt(op);
    if (*match_cmd) return run_match(ma);
    if (*predict_cmd) return run_predict(pr);
    if (*exp_cmd) return run_experiment_cmd(ex);
    if (*verify_cmd) return run_verify(ve);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBestEffort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
