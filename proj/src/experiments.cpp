#include "maxcov/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <string>

#include "maxcov/algorithms.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/matching.hpp"
#include "maxcov/parallel.hpp"
#include "maxcov/rng.hpp"
#include "maxcov/theory.hpp"

namespace maxcov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Master seed of sub-experiment `cell` (one grid point of a reproduction);
// its trials then use substreams 0..T-1 of that master.
std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell) {
  return substream_seed(master, (std::uint64_t{1} << 40) + cell);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<double> to_doubles(const std::vector<std::size_t>& xs) {
  return {xs.begin(), xs.end()};
}

double sample_variance(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / double(xs.size() - 1);
}

double sample_covariance(const std::vector<double>& xs, double mx, const std::vector<double>& ys,
                         double my) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
  return s / double(xs.size() - 1);
}

// Standard error of the mean of a - b over paired samples.
double paired_se(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return mean_se(diff).se;
}

std::size_t uniform_degree(const DegreeSpec& spec, const char* model) {
  if (const auto* u = std::get_if<degrees::Uniform>(&spec)) return u->d;
  throw InvalidInput(std::string("model ") + model + " needs a uniform degree");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

Model parse_model(const std::string& s) {
  if (s == "lrr") return Model::lrr;
  if (s == "ulrr") return Model::ulrr;
  if (s == "genr") return Model::genr;
  if (s == "powerlaw") return Model::powerlaw;
  if (s == "bad_instance") return Model::bad_instance;
  throw InvalidInput("unknown model: " + s);
}

OptProxy parse_proxy(const std::string& s) {
  if (s == "exhaustive") return OptProxy::exhaustive;
  if (s == "branch_bound") return OptProxy::branch_bound;
  if (s == "matching_lb") return OptProxy::matching_lb;
  if (s == "trivial_ub") return OptProxy::trivial_ub;
  if (s == "none") return OptProxy::none;
  throw InvalidInput("unknown opt_method: " + s);
}

DegreeSpec parse_degrees(const nlohmann::json& j) {
  require(j.is_object(), "degrees must be an object");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return degrees::Uniform{j.at("d").get<std::size_t>()};
  if (kind == "explicit") return degrees::Explicit{j.at("values").get<std::vector<std::size_t>>()};
  if (kind == "mixture") {
    return degrees::Mixture{j.at("values").get<std::vector<std::size_t>>(),
                            j.at("probs").get<std::vector<double>>()};
  }
  if (kind == "powerlaw") return degrees::PowerLaw{j.at("a").get<double>()};
  throw InvalidInput("unknown degree kind: " + kind);
}

const std::set<std::string>& known_experiments() {
  static const std::set<std::string> names{"ratio",    "sweep_k", "degree_mix",
                                           "marginals", "theorem3", "t_d",
                                           "chernoff", "lemma_grid", "equivalence"};
  return names;
}

BranchBoundOptions bb_options(const ExperimentConfig& config) {
  BranchBoundOptions options;
  options.time_budget_ms = config.time_budget_ms;
  options.node_budget = config.node_budget;
  return options;
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::lrr:
      return "lrr";
    case Model::ulrr:
      return "ulrr";
    case Model::genr:
      return "genr";
    case Model::powerlaw:
      return "powerlaw";
    case Model::bad_instance:
      return "bad_instance";
  }
  return "unknown";
}

std::string_view to_string(OptProxy proxy) {
  switch (proxy) {
    case OptProxy::exhaustive:
      return "exhaustive";
    case OptProxy::branch_bound:
      return "branch_bound";
    case OptProxy::matching_lb:
      return "matching_lb";
    case OptProxy::trivial_ub:
      return "trivial_ub";
    case OptProxy::none:
      return "none";
  }
  return "unknown";
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  require(j.is_object(), "experiment config must be a JSON object");
  ExperimentConfig c;
  bool have_degrees = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      c.experiment = value.get<std::string>();
    } else if (key == "model") {
      c.model = parse_model(value.get<std::string>());
    } else if (key == "n") {
      c.n = value.get<std::size_t>();
    } else if (key == "m") {
      c.m = value.get<std::size_t>();
    } else if (key == "d") {
      c.d = value.get<std::size_t>();
    } else if (key == "degrees") {
      c.degrees = parse_degrees(value);
      have_degrees = true;
    } else if (key == "k") {
      c.k = value.get<std::size_t>();
    } else if (key == "k_grid") {
      c.k_grid = value.get<std::vector<std::size_t>>();
    } else if (key == "trials") {
      c.trials = value.get<std::size_t>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "opt_method") {
      c.opt_method = parse_proxy(value.get<std::string>());
    } else if (key == "time_budget_ms") {
      c.time_budget_ms = value.get<double>();
    } else if (key == "node_budget") {
      c.node_budget = value.get<std::size_t>();
    } else if (key == "threads") {
      c.threads = value.get<int>();
    } else if (key == "a_grid") {
      c.a_grid = value.get<std::vector<double>>();
    } else if (key == "n_grid") {
      c.n_grid = value.get<std::vector<std::size_t>>();
    } else if (key == "d_grid") {
      c.d_grid = value.get<std::vector<std::size_t>>();
    } else if (key == "k_multipliers") {
      c.k_multipliers = value.get<std::vector<double>>();
    } else if (key == "k_fraction") {
      c.k_fraction = value.get<double>();
    } else if (key == "delta") {
      c.delta = value.get<double>();
    } else if (key == "count") {
      c.count = value.get<std::size_t>();
    } else if (key == "max_n") {
      c.max_n = value.get<std::size_t>();
    } else {
      throw InvalidInput("unknown config key: " + key);
    }
  }
  if (!have_degrees && c.d > 0) c.degrees = degrees::Uniform{c.d};
  if (have_degrees && c.d == 0) {
    if (const auto* u = std::get_if<degrees::Uniform>(&c.degrees)) c.d = u->d;
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config " + path + ": " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config " + path + ": " + e.what());
  }
}

void validate(const ExperimentConfig& c) {
  require(known_experiments().count(c.experiment) > 0, "unknown experiment: " + c.experiment);
  require(c.trials >= 1, "trials must be >= 1");
  const std::string& e = c.experiment;
  if (e == "ratio" || e == "sweep_k") {
    if (c.model == Model::bad_instance) {
      require(c.k.has_value() && *c.k >= 2, "bad_instance needs k >= 2");
      require(c.k_grid.empty(), "bad_instance takes a single k");
      return;
    }
    require(c.n >= 1, "n must be >= 1");
    const std::size_t m = c.right_size();
    switch (c.model) {
      case Model::lrr:
        require(c.m == 0 || c.m == c.n, "lrr has m = n; use ulrr for m != n");
        uniform_degree(c.degrees, "lrr");
        break;
      case Model::ulrr:
        uniform_degree(c.degrees, "ulrr");
        break;
      case Model::powerlaw:
        require(std::holds_alternative<degrees::PowerLaw>(c.degrees),
                "powerlaw model needs a powerlaw degree spec");
        break;
      case Model::genr:
      case Model::bad_instance:
        break;
    }
    validate(c.degrees, c.n, m);
    if (e == "ratio") {
      require(c.k.has_value(), "ratio needs k");
    } else {
      require(!c.k_grid.empty() || c.k.has_value(), "sweep_k needs k_grid");
    }
    std::vector<std::size_t> ks = c.k_grid;
    if (c.k) ks.push_back(*c.k);
    for (auto k : ks) require(k >= 1 && k <= c.n, "k values must lie in [1, n]");
    if (c.opt_method == OptProxy::matching_lb) {
      const auto* u = std::get_if<degrees::Uniform>(&c.degrees);
      require(u != nullptr && u->d == 2, "matching_lb needs 2-left-regular graphs");
    }
  } else if (e == "degree_mix") {
    require(c.n >= 1 && !c.a_grid.empty(), "degree_mix needs n and a_grid");
    require(c.right_size() >= 7, "degree_mix needs m >= 7");
    for (double a : c.a_grid) require(a >= 0.0 && a <= 1.0, "a must lie in [0, 1]");
  } else if (e == "marginals") {
    require(c.n >= 1 && c.d >= 1 && c.d <= c.right_size(), "marginals needs n and 1 <= d <= m");
  } else if (e == "theorem3") {
    require(!c.n_grid.empty(), "theorem3 needs n_grid");
    require(c.k_fraction > 0.0 && c.k_fraction <= 1.0, "k_fraction must lie in (0, 1]");
    for (auto n : c.n_grid) require(n >= 2, "theorem3 needs n >= 2");
  } else if (e == "t_d") {
    require(c.n >= 1 && c.d >= 2, "t_d needs n and d >= 2");
  } else if (e == "chernoff") {
    require(c.n >= 1 && c.d >= 1 && c.d <= c.n && c.k.has_value() && *c.k <= c.n,
            "chernoff needs n, 1 <= d <= n, k <= n");
    require(c.delta > 0.0 && c.delta < 1.0, "delta must lie in (0, 1)");
  } else if (e == "lemma_grid") {
    require(!c.n_grid.empty() && !c.d_grid.empty() && !c.k_multipliers.empty(),
            "lemma_grid needs n_grid, d_grid and k_multipliers");
  } else if (e == "equivalence") {
    require(c.count >= 1 && c.max_n >= 2, "equivalence needs count >= 1 and max_n >= 2");
  }
}

BipartiteGraph make_graph(const ExperimentConfig& c, std::size_t trial) {
  switch (c.model) {
    case Model::lrr:
      return gen_lrr(c.n, uniform_degree(c.degrees, "lrr"), {c.seed, trial});
    case Model::ulrr:
      return gen_ulrr(c.n, c.right_size(), uniform_degree(c.degrees, "ulrr"), {c.seed, trial});
    case Model::genr:
    case Model::powerlaw: {
      Rng rng = make_rng(c.seed, trial);
      const auto degs = realize_degrees(c.degrees, c.n, c.right_size(), rng);
      return sample_genr(c.right_size(), degs, rng);
    }
    case Model::bad_instance:
      return gen_bad_instance(c.k.value_or(0)).graph;
  }
  throw InvalidInput("unknown model");
}

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe r;
  if (xs.empty()) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / double(xs.size());
  r.se = std::sqrt(sample_variance(xs, r.mean) / double(xs.size()));
  return r;
}

RatioEstimate make_ratio_estimate(std::size_t k, OptProxy proxy, std::vector<double> alg,
                                  std::vector<double> opt, std::size_t best_effort_trials) {
  RatioEstimate r;
  r.k = k;
  r.trials = alg.size();
  r.opt_method = proxy;
  r.best_effort_trials = best_effort_trials;
  const MeanSe a = mean_se(alg);
  r.mean_alg = a.mean;
  r.se_alg = a.se;
  if (opt.empty()) {
    r.mean_opt = r.se_opt = r.ratio_of_means = r.se_ratio = kNaN;
  } else {
    if (opt.size() != alg.size()) throw InvalidInput("alg and opt sample sizes differ");
    const MeanSe o = mean_se(opt);
    r.mean_opt = o.mean;
    r.se_opt = o.se;
    r.ratio_of_means = a.mean / o.mean;
    const double t = double(alg.size());
    const double var_a = sample_variance(alg, a.mean);
    const double var_o = sample_variance(opt, o.mean);
    const double cov = sample_covariance(alg, a.mean, opt, o.mean);
    const double rr = r.ratio_of_means;
    const double v = (var_a + rr * rr * var_o - 2.0 * rr * cov) / (o.mean * o.mean * t);
    r.se_ratio = std::sqrt(std::max(0.0, v));
  }
  r.alg_values = std::move(alg);
  r.opt_values = std::move(opt);
  return r;
}

double opt_value(const BipartiteGraph& graph, std::size_t k, const ExperimentConfig& config,
                 bool& best_effort) {
  switch (config.opt_method) {
    case OptProxy::exhaustive:
      return double(opt_exhaustive(graph, k).value);
    case OptProxy::branch_bound: {
      const OptResult r = opt_branch_bound(graph, k, bb_options(config));
      best_effort = best_effort || r.best_effort;
      return double(r.value);
    }
    case OptProxy::matching_lb:
      return double(opt_lower_bound_d2(graph, k));
    case OptProxy::trivial_ub:
      return double(theory::trivial_opt_ub(graph, k));
    case OptProxy::none:
      return kNaN;
  }
  return kNaN;
}

RatioEstimate estimate_ratio(const ExperimentConfig& config) {
  validate(config);
  const std::size_t k = config.k.value();
  struct Trial {
    double alg = 0, opt = 0;
    bool best_effort = false;
  };
  const auto trials = run_trials<Trial>(config.trials, config.threads, [&](std::size_t i) {
    const BipartiteGraph graph = make_graph(config, i);
    Trial t;
    t.alg = double(greedy(graph, k).value());
    t.opt = opt_value(graph, k, config, t.best_effort);
    return t;
  });
  std::vector<double> alg, opt;
  std::size_t best_effort = 0;
  for (const auto& t : trials) {
    alg.push_back(t.alg);
    if (config.opt_method != OptProxy::none) opt.push_back(t.opt);
    best_effort += t.best_effort;
  }
  return make_ratio_estimate(k, config.opt_method, std::move(alg), std::move(opt), best_effort);
}

SweepResult sweep_k(const ExperimentConfig& config) {
  validate(config);
  std::vector<std::size_t> ks = config.k_grid;
  if (ks.empty()) ks.push_back(config.k.value());
  const std::size_t k_max = *std::max_element(ks.begin(), ks.end());
  struct Trial {
    std::vector<double> alg, opt;
    std::vector<std::uint8_t> best_effort;
  };
  const auto trials = run_trials<Trial>(config.trials, config.threads, [&](std::size_t i) {
    const BipartiteGraph graph = make_graph(config, i);
    const GreedyTrace trace = greedy(graph, k_max);
    Trial t;
    for (auto k : ks) {
      t.alg.push_back(double(trace.coverage_prefix[k - 1]));
      bool be = false;
      t.opt.push_back(opt_value(graph, k, config, be));
      t.best_effort.push_back(be);
    }
    return t;
  });

  SweepResult result;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    std::vector<double> alg, opt;
    std::size_t be = 0;
    for (const auto& t : trials) {
      alg.push_back(t.alg[j]);
      if (config.opt_method != OptProxy::none) opt.push_back(t.opt[j]);
      be += t.best_effort[j];
    }
    result.cells.push_back(
        make_ratio_estimate(ks[j], config.opt_method, std::move(alg), std::move(opt), be));
  }
  bool found = false;
  for (const auto& cell : result.cells) {
    if (std::isnan(cell.ratio_of_means)) continue;
    if (!found || cell.ratio_of_means < result.min_ratio) {
      found = true;
      result.min_ratio = cell.ratio_of_means;
      result.min_se = cell.se_ratio;
      result.argmin_k = cell.k;
    }
  }
  if (!found) result.min_ratio = result.min_se = kNaN;
  return result;
}

std::vector<DegreeMixRow> reproduce_degree_mix(std::size_t n, std::size_t m,
                                               const std::vector<double>& a_grid,
                                               std::size_t trials, std::uint64_t seed,
                                               const BranchBoundOptions& options, int threads) {
  std::vector<DegreeMixRow> rows;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double a = a_grid[i];
    ExperimentConfig c;
    c.experiment = "sweep_k";
    c.model = Model::genr;
    c.n = n;
    c.m = m;
    c.degrees = degrees::Mixture{{1, 4, 7}, {a / 2.0, 1.0 - a, a / 2.0}};
    c.trials = trials;
    c.seed = cell_seed(seed, i);
    c.opt_method = OptProxy::branch_bound;
    c.time_budget_ms = options.time_budget_ms;
    c.node_budget = options.node_budget;
    c.threads = threads;
    for (std::size_t k = 1; k <= n; ++k) c.k_grid.push_back(k);
    const SweepResult sweep = sweep_k(c);
    DegreeMixRow row;
    row.a = a;
    row.min_ratio = sweep.min_ratio;
    row.se = sweep.min_se;
    row.argmin_k = sweep.argmin_k;
    for (const auto& cell : sweep.cells) row.best_effort_cells += cell.best_effort_trials > 0;
    rows.push_back(row);
  }
  return rows;
}

MarginalsResult reproduce_marginals(std::size_t n, std::size_t m, std::size_t d,
                                    std::size_t trials, std::uint64_t seed, int threads) {
  if (n == 0 || d == 0 || d > m) throw InvalidInput("marginals needs n >= 1 and 1 <= d <= m");
  struct Trial {
    std::vector<double> greedy, fixed;
  };
  const auto runs = run_trials<Trial>(trials, threads, [&](std::size_t i) {
    const BipartiteGraph graph = gen_ulrr(n, m, d, {seed, i});
    Trial t;
    t.greedy = to_doubles(greedy(graph, n).gains);
    CoverState state(graph);
    for (NodeId u : fixed_set(graph, n)) t.fixed.push_back(double(state.add(u)));
    return t;
  });

  MarginalsResult result;
  std::vector<double> cum_g(trials, 0.0), cum_f(trials, 0.0);
  std::vector<double> g(trials), f(trials);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < trials; ++i) {
      g[i] = runs[i].greedy[t];
      f[i] = runs[i].fixed[t];
      cum_g[i] += g[i];
      cum_f[i] += f[i];
    }
    MarginalRow row;
    row.t = t + 1;
    row.greedy = mean_se(g);
    row.fixed = mean_se(f);
    row.cum_greedy = mean_se(cum_g).mean;
    row.cum_fixed = mean_se(cum_f).mean;
    row.cum_diff_se = paired_se(cum_g, cum_f);
    if (!result.crossover && row.fixed.mean > row.greedy.mean) result.crossover = row.t;
    result.rows.push_back(row);
  }
  return result;
}

std::vector<Theorem3Row> theorem3_experiment(const std::vector<std::size_t>& n_grid,
                                             double k_fraction, std::size_t trials,
                                             std::uint64_t seed, int threads) {
  if (!(k_fraction > 0.0 && k_fraction <= 1.0)) throw InvalidInput("k_fraction must lie in (0, 1]");
  std::vector<Theorem3Row> rows;
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const std::size_t n = n_grid[ni];
    if (n < 2) throw InvalidInput("theorem3 needs n >= 2");
    const std::size_t k = std::min(n, static_cast<std::size_t>(std::floor(k_fraction * double(n))));
    const std::uint64_t master = cell_seed(seed, ni);
    struct Trial {
      double greedy = 0, lb = 0, t2 = 0;
      std::size_t lambda = 0;
    };
    const auto runs = run_trials<Trial>(trials, threads, [&](std::size_t i) {
      const BipartiteGraph graph = gen_lrr(n, 2, {master, i});
      const GreedyTrace trace = greedy(graph, n);
      Trial t;
      t.greedy = k == 0 ? 0.0 : double(trace.coverage_prefix[k - 1]);
      t.t2 = double(t_d_from_trace(trace, 2));
      t.lambda = lambda(graph);
      t.lb = 2.0 * double(std::min(k, t.lambda));
      return t;
    });
    Theorem3Row row;
    row.n = n;
    row.k = k;
    row.trials = trials;
    std::vector<double> g, lb, lam, t2;
    std::size_t ge = 0;
    for (const auto& t : runs) {
      g.push_back(t.greedy);
      lb.push_back(t.lb);
      lam.push_back(double(t.lambda));
      t2.push_back(t.t2);
      row.lambdas.push_back(t.lambda);
      ge += t.lambda >= k;
    }
    row.greedy = mean_se(g);
    row.lower_bound = mean_se(lb);
    row.lambda = mean_se(lam);
    row.mean_t2 = mean_se(t2).mean;
    row.ratio_ub = row.greedy.mean / row.lower_bound.mean;
    row.greedy_over_2k = k == 0 ? kNaN : row.greedy.mean / (2.0 * double(k));
    row.frac_lambda_ge_k = double(ge) / double(trials);
    rows.push_back(row);
  }
  return rows;
}

TdSummary t_d_concentration(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t seed,
                            int threads) {
  if (d < 2) throw InvalidInput("t_d concentration needs d >= 2");
  if (double(d) > std::sqrt(double(n) / 2.0)) throw InvalidInput("t_d concentration needs d <= sqrt(n/2)");
  TdSummary s;
  s.n = n;
  s.d = d;
  s.trials = trials;
  s.samples = run_trials<std::size_t>(trials, threads, [&](std::size_t i) {
    return t_d_count(gen_lrr(n, d, {seed, i}));
  });
  s.t_star = theory::predict_t_star(double(n), double(n), d);
  s.delta = theory::de_error_bound(double(n), double(n), d);
  const auto xs = to_doubles(s.samples);
  const MeanSe ms = mean_se(xs);
  s.mean = ms.mean;
  s.sd = ms.se * std::sqrt(double(trials));
  s.all_within_delta = true;
  double total = 0.0;
  for (double x : xs) {
    const double dev = std::abs(x - s.t_star);
    s.max_abs_dev = std::max(s.max_abs_dev, dev);
    total += dev;
    s.all_within_delta = s.all_within_delta && dev <= s.delta;
  }
  s.mean_abs_dev = total / double(trials);
  return s;
}

ChernoffReport chernoff_check(std::size_t n, std::size_t d, std::size_t k, double delta,
                              std::size_t trials, std::uint64_t seed, int threads) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  if (d == 0 || d > n || k > n) throw InvalidInput("chernoff needs 1 <= d <= n and k <= n");
  ChernoffReport r;
  r.n = n;
  r.d = d;
  r.k = k;
  r.trials = trials;
  r.delta = delta;
  r.analytic_mean = theory::expected_fixed_coverage(std::vector<std::size_t>(n, d), double(n), k);
  const auto values = run_trials<double>(trials, threads, [&](std::size_t i) {
    return double(fixed_set_value(gen_lrr(n, d, {seed, i}), k));
  });
  r.empirical = mean_se(values);
  const double diff = std::abs(r.empirical.mean - r.analytic_mean);
  r.mean_z = r.empirical.se > 0 ? diff / r.empirical.se : (diff == 0 ? 0.0 : kNaN);
  const double threshold = (1.0 + delta) * r.analytic_mean;
  std::size_t exceed = 0;
  for (double v : values) exceed += v >= threshold;
  r.exceed_freq = double(exceed) / double(trials);
  r.bound = std::exp(-delta * delta * r.analytic_mean / 3.0);
  r.slack = 3.0 * std::sqrt(r.bound * (1.0 - r.bound) / double(trials));
  r.holds = r.exceed_freq <= r.bound + r.slack;
  return r;
}

std::vector<std::size_t> hybrid_values(const BipartiteGraph& graph, std::size_t k) {
  const GreedyTrace trace = greedy(graph, k);
  CoverState state(graph);
  std::vector<std::uint8_t> in_greedy(graph.n_left(), 0);
  std::vector<std::size_t> values(k + 1);
  for (std::size_t t = 0; t <= k; ++t) {
    if (t > 0) {
      state.add(trace.selections[t - 1]);
      in_greedy[trace.selections[t - 1]] = 1;
    }
    CoverState y = state;
    for (NodeId u : top_residual_nodes(graph, state, in_greedy, k - t)) y.add(u);
    values[t] = y.covered();
  }
  return values;
}

LemmaCell lemma_cell(std::size_t n, std::size_t d, std::size_t k, std::size_t trials,
                     std::uint64_t seed, int threads) {
  if (k == 0 || k > n || d == 0 || d > n) throw InvalidInput("lemma cell needs 1 <= k <= n, 1 <= d <= n");
  struct Trial {
    double greedy = 0, fixed = 0, ub = 0;
    std::vector<std::size_t> hybrid;
  };
  const auto runs = run_trials<Trial>(trials, threads, [&](std::size_t i) {
    const BipartiteGraph graph = gen_lrr(n, d, {seed, i});
    Trial t;
    t.hybrid = hybrid_values(graph, k);
    t.greedy = double(t.hybrid.back());
    t.fixed = double(fixed_set_value(graph, k));
    t.ub = double(theory::trivial_opt_ub(graph, k));
    return t;
  });
  LemmaCell c;
  c.n = n;
  c.d = d;
  c.k = k;
  c.trials = trials;
  std::vector<double> g, f, ub;
  for (const auto& t : runs) {
    g.push_back(t.greedy);
    f.push_back(t.fixed);
    ub.push_back(t.ub);
  }
  c.greedy = mean_se(g);
  c.fixed = mean_se(f);
  c.greedy_minus_fixed_se = paired_se(g, f);
  c.product_formula = theory::expected_fixed_coverage(std::vector<std::size_t>(n, d), double(n), k);
  const double diff = std::abs(c.fixed.mean - c.product_formula);
  c.fixed_z = c.fixed.se > 0 ? diff / c.fixed.se : (diff == 0 ? 0.0 : kNaN);
  std::vector<double> prev(trials), cur(trials);
  c.hybrid_step_se.push_back(0.0);
  for (std::size_t t = 0; t <= k; ++t) {
    for (std::size_t i = 0; i < trials; ++i) cur[i] = double(runs[i].hybrid[t]);
    c.hybrid_means.push_back(mean_se(cur).mean);
    if (t > 0) {
      const double se = paired_se(cur, prev);
      c.hybrid_step_se.push_back(se);
      if (c.hybrid_means[t] - c.hybrid_means[t - 1] < -2.0 * se) ++c.hybrid_violations;
    }
    std::swap(prev, cur);
  }
  c.opt_ub = mean_se(ub);
  c.ratio_vs_ub = c.greedy.mean / c.opt_ub.mean;
  return c;
}

std::vector<LemmaCell> lemma_grid(const std::vector<std::size_t>& n_grid,
                                  const std::vector<std::size_t>& d_grid,
                                  const std::vector<double>& k_multipliers, std::size_t trials,
                                  std::uint64_t seed, int threads) {
  std::vector<LemmaCell> cells;
  std::uint64_t cell = 0;
  for (auto n : n_grid) {
    for (auto d : d_grid) {
      for (double mult : k_multipliers) {
        if (d == 0) throw InvalidInput("lemma grid needs d >= 1");
        const auto raw = std::llround(mult * double(n) / double(d));
        const std::size_t k = std::clamp<std::size_t>(raw < 1 ? 1 : std::size_t(raw), 1, n);
        cells.push_back(lemma_cell(n, d, k, trials, cell_seed(seed, cell++), threads));
      }
    }
  }
  return cells;
}

std::vector<EquivalenceRow> equivalence_check(std::size_t count, std::size_t max_n,
                                              std::uint64_t seed, int threads) {
  if (max_n < 2) throw InvalidInput("equivalence needs max_n >= 2");
  const auto per_graph = run_trials<std::vector<EquivalenceRow>>(count, threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    auto pick = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const Model model = std::array{Model::lrr, Model::ulrr, Model::genr}[i % 3];
    const std::size_t n = pick(2, max_n);
    BipartiteGraph graph;
    if (model == Model::lrr) {
      graph = sample_genr(n, std::vector<std::size_t>(n, pick(1, std::min<std::size_t>(n, 8))), rng);
    } else if (model == Model::ulrr) {
      const std::size_t m = pick(std::max<std::size_t>(1, n / 4), 2 * n);
      graph = sample_genr(m, std::vector<std::size_t>(n, pick(1, std::min<std::size_t>(m, 8))), rng);
    } else {
      const std::size_t m = pick(std::max<std::size_t>(1, n / 4), 2 * n);
      std::vector<std::size_t> degs(n);
      for (auto& x : degs) x = pick(1, std::min<std::size_t>(m, 10));
      graph = sample_genr(m, degs, rng);
    }
    std::vector<EquivalenceRow> rows;
    for (std::size_t k : {std::size_t{1}, std::max<std::size_t>(1, n / 4), n}) {
      const GreedyTrace g = greedy(graph, k);
      const AcceptRejectTrace ar = accept_reject(graph, k);
      EquivalenceRow row;
      row.index = i;
      row.model = model;
      row.n = n;
      row.m = graph.m_right();
      row.k = k;
      row.greedy_value = g.value();
      row.identical = g.selections == ar.accepted;
      rows.push_back(row);
    }
    return rows;
  });
  std::vector<EquivalenceRow> rows;
  for (const auto& r : per_graph) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

namespace {

void ratio_header(std::ostream& out) {
  out << "k,trials,mean_alg,se_alg,mean_opt,se_opt,ratio_of_means,se_ratio,opt_method,"
         "opt_is_bound,best_effort_trials";
}

void ratio_row(std::ostream& out, const RatioEstimate& r) {
  out << r.k << ',' << r.trials << ',' << num(r.mean_alg) << ',' << num(r.se_alg) << ','
      << num(r.mean_opt) << ',' << num(r.se_opt) << ',' << num(r.ratio_of_means) << ','
      << num(r.se_ratio) << ',' << to_string(r.opt_method) << ',' << int(is_bound(r.opt_method))
      << ',' << r.best_effort_trials;
}

}  // namespace

void write_csv(std::ostream& out, const RatioEstimate& r) {
  ratio_header(out);
  out << '\n';
  ratio_row(out, r);
  out << '\n';
}

void write_csv(std::ostream& out, const SweepResult& r) {
  ratio_header(out);
  out << ",is_argmin\n";
  for (const auto& cell : r.cells) {
    ratio_row(out, cell);
    out << ',' << int(cell.k == r.argmin_k) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<DegreeMixRow>& rows) {
  out << "a,min_ratio,se,argmin_k,best_effort_cells\n";
  for (const auto& r : rows) {
    out << num(r.a) << ',' << num(r.min_ratio) << ',' << num(r.se) << ',' << r.argmin_k << ','
        << r.best_effort_cells << '\n';
  }
}

void write_csv(std::ostream& out, const MarginalsResult& r) {
  out << "t,greedy_mean,greedy_se,fixed_mean,fixed_se,cum_greedy,cum_fixed,cum_diff_se\n";
  for (const auto& row : r.rows) {
    out << row.t << ',' << num(row.greedy.mean) << ',' << num(row.greedy.se) << ','
        << num(row.fixed.mean) << ',' << num(row.fixed.se) << ',' << num(row.cum_greedy) << ','
        << num(row.cum_fixed) << ',' << num(row.cum_diff_se) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<Theorem3Row>& rows) {
  out << "n,k,trials,mean_greedy,se_greedy,mean_lb,se_lb,mean_lambda,se_lambda,lambda_over_n,"
         "mean_t2,ratio_ub,greedy_over_2k,frac_lambda_ge_k\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.trials << ',' << num(r.greedy.mean) << ','
        << num(r.greedy.se) << ',' << num(r.lower_bound.mean) << ',' << num(r.lower_bound.se)
        << ',' << num(r.lambda.mean) << ',' << num(r.lambda.se) << ','
        << num(r.lambda.mean / double(r.n)) << ',' << num(r.mean_t2) << ',' << num(r.ratio_ub)
        << ',' << num(r.greedy_over_2k) << ',' << num(r.frac_lambda_ge_k) << '\n';
  }
}

void write_csv(std::ostream& out, const TdSummary& s) {
  out << "trial,n,d,t_d,t_star,abs_dev,within_delta\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const double dev = std::abs(double(s.samples[i]) - s.t_star);
    out << i << ',' << s.n << ',' << s.d << ',' << s.samples[i] << ',' << num(s.t_star) << ','
        << num(dev) << ',' << int(dev <= s.delta) << '\n';
  }
}

void write_csv(std::ostream& out, const ChernoffReport& r) {
  out << "n,d,k,trials,delta,analytic_mean,empirical_mean,empirical_se,mean_z,bound,exceed_freq,"
         "slack,holds\n";
  out << r.n << ',' << r.d << ',' << r.k << ',' << r.trials << ',' << num(r.delta) << ','
      << num(r.analytic_mean) << ',' << num(r.empirical.mean) << ',' << num(r.empirical.se) << ','
      << num(r.mean_z) << ',' << num(r.bound) << ',' << num(r.exceed_freq) << ',' << num(r.slack)
      << ',' << int(r.holds) << '\n';
}

void write_csv(std::ostream& out, const std::vector<LemmaCell>& cells) {
  out << "n,d,k,trials,mean_greedy,se_greedy,mean_fixed,se_fixed,diff_se,product_formula,"
         "fixed_z,hybrid_violations,mean_opt_ub,ratio_vs_ub\n";
  for (const auto& c : cells) {
    out << c.n << ',' << c.d << ',' << c.k << ',' << c.trials << ',' << num(c.greedy.mean) << ','
        << num(c.greedy.se) << ',' << num(c.fixed.mean) << ',' << num(c.fixed.se) << ','
        << num(c.greedy_minus_fixed_se) << ',' << num(c.product_formula) << ','
        << num(c.fixed_z) << ',' << c.hybrid_violations << ',' << num(c.opt_ub.mean) << ','
        << num(c.ratio_vs_ub) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<EquivalenceRow>& rows) {
  out << "graph,model,n,m,k,greedy_value,identical\n";
  for (const auto& r : rows) {
    out << r.index << ',' << to_string(r.model) << ',' << r.n << ',' << r.m << ',' << r.k << ','
        << r.greedy_value << ',' << int(r.identical) << '\n';
  }
}

ExperimentOutcome run_experiment(const ExperimentConfig& c, std::ostream& csv) {
  validate(c);
  ExperimentOutcome out;
  auto& s = out.summary;
  s["experiment"] = c.experiment;
  s["seed"] = c.seed;
  const std::string& e = c.experiment;
  if (e == "ratio") {
    const RatioEstimate r = estimate_ratio(c);
    write_csv(csv, r);
    out.best_effort = r.best_effort_trials > 0;
    s["ratio_of_means"] = r.ratio_of_means;
    s["se_ratio"] = r.se_ratio;
    s["opt_method"] = std::string(to_string(r.opt_method));
  } else if (e == "sweep_k") {
    const SweepResult r = sweep_k(c);
    write_csv(csv, r);
    for (const auto& cell : r.cells) out.best_effort = out.best_effort || cell.best_effort_trials > 0;
    s["argmin_k"] = r.argmin_k;
    s["min_ratio"] = r.min_ratio;
    s["se"] = r.min_se;
  } else if (e == "degree_mix") {
    const auto rows = reproduce_degree_mix(c.n, c.right_size(), c.a_grid, c.trials, c.seed,
                                           bb_options(c), c.threads);
    write_csv(csv, rows);
    std::size_t flagged = 0;
    for (const auto& r : rows) flagged += r.best_effort_cells;
    out.best_effort = flagged > 0;
    s["best_effort_cells"] = flagged;
  } else if (e == "marginals") {
    const auto r = reproduce_marginals(c.n, c.right_size(), c.d, c.trials, c.seed, c.threads);
    write_csv(csv, r);
    if (r.crossover) {
      s["crossover"] = *r.crossover;
    } else {
      s["crossover"] = nullptr;
    }
  } else if (e == "theorem3") {
    const auto rows = theorem3_experiment(c.n_grid, c.k_fraction, c.trials, c.seed, c.threads);
    write_csv(csv, rows);
    s["rows"] = rows.size();
  } else if (e == "t_d") {
    const auto r = t_d_concentration(c.n, c.d, c.trials, c.seed, c.threads);
    write_csv(csv, r);
    s["mean"] = r.mean;
    s["sd"] = r.sd;
    s["t_star"] = r.t_star;
    s["delta"] = r.delta;
    s["max_abs_dev"] = r.max_abs_dev;
    s["all_within_delta"] = r.all_within_delta;
  } else if (e == "chernoff") {
    const auto r = chernoff_check(c.n, c.d, c.k.value(), c.delta, c.trials, c.seed, c.threads);
    write_csv(csv, r);
    s["holds"] = r.holds;
    s["exceed_freq"] = r.exceed_freq;
    s["bound"] = r.bound;
  } else if (e == "lemma_grid") {
    const auto cells = lemma_grid(c.n_grid, c.d_grid, c.k_multipliers, c.trials, c.seed, c.threads);
    write_csv(csv, cells);
    std::size_t violations = 0;
    for (const auto& cell : cells) violations += cell.hybrid_violations;
    s["cells"] = cells.size();
    s["hybrid_violations"] = violations;
  } else if (e == "equivalence") {
    const auto rows = equivalence_check(c.count, c.max_n, c.seed, c.threads);
    write_csv(csv, rows);
    std::size_t mismatches = 0;
    for (const auto& r : rows) mismatches += !r.identical;
    s["checks"] = rows.size();
    s["mismatches"] = mismatches;
  }
  s["best_effort"] = out.best_effort;
  return out;
}

std::string csv_schema_help() {
  return "CSV column orders by experiment:\n"
         "  ratio       k,trials,mean_alg,se_alg,mean_opt,se_opt,ratio_of_means,se_ratio,"
         "opt_method,opt_is_bound,best_effort_trials\n"
         "  sweep_k     as ratio, one row per k, plus is_argmin\n"
         "  degree_mix  a,min_ratio,se,argmin_k,best_effort_cells\n"
         "  marginals   t,greedy_mean,greedy_se,fixed_mean,fixed_se,cum_greedy,cum_fixed,"
         "cum_diff_se\n"
         "  theorem3    n,k,trials,mean_greedy,se_greedy,mean_lb,se_lb,mean_lambda,se_lambda,"
         "lambda_over_n,mean_t2,ratio_ub,greedy_over_2k,frac_lambda_ge_k\n"
         "  t_d         trial,n,d,t_d,t_star,abs_dev,within_delta\n"
         "  chernoff    n,d,k,trials,delta,analytic_mean,empirical_mean,empirical_se,mean_z,"
         "bound,exceed_freq,slack,holds\n"
         "  lemma_grid  n,d,k,trials,mean_greedy,se_greedy,mean_fixed,se_fixed,diff_se,"
         "product_formula,fixed_z,hybrid_violations,mean_opt_ub,ratio_vs_ub\n"
         "  equivalence graph,model,n,m,k,greedy_value,identical\n"
         "The file starts with one '# ...' line (tool and timestamp), then the header row.\n";
}

}  // namespace maxcov
