#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxcov/exact_opt.hpp"
#include "maxcov/generators.hpp"

namespace maxcov {

enum class Model { lrr, ulrr, genr, powerlaw, bad_instance };
enum class OptProxy { exhaustive, branch_bound, matching_lb, trivial_ub, none };

std::string_view to_string(Model model);
std::string_view to_string(OptProxy proxy);
// Bounds are never exact optima; rows computed with them say so.
inline bool is_bound(OptProxy p) { return p == OptProxy::matching_lb || p == OptProxy::trivial_ub; }

struct ExperimentConfig {
  std::string experiment = "ratio";
  Model model = Model::lrr;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 means m = n
  DegreeSpec degrees = degrees::Uniform{1};
  std::optional<std::size_t> k;
  std::vector<std::size_t> k_grid;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  OptProxy opt_method = OptProxy::branch_bound;
  double time_budget_ms = 0.0;
  std::size_t node_budget = 0;
  int threads = 0;

  // Parameters of the scripted reproductions.
  std::vector<double> a_grid;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> d_grid;
  std::vector<double> k_multipliers{0.5, 1.0, 2.0};  // k = round(mult * n / d)
  std::size_t d = 0;
  double k_fraction = 0.38;
  double delta = 0.2;
  std::size_t count = 1000;  // graphs in the equivalence check
  std::size_t max_n = 200;

  std::size_t right_size() const { return m == 0 ? n : m; }
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
// Throws InvalidInput on inconsistent configs (trials = 0, k > n, ...).
void validate(const ExperimentConfig& config);

// Trial `trial` draws its graph from substream `trial` of config.seed.
BipartiteGraph make_graph(const ExperimentConfig& config, std::size_t trial);

struct MeanSe {
  double mean = 0;
  double se = 0;
};
// Sample mean and sample-sd / sqrt(count).
MeanSe mean_se(const std::vector<double>& xs);

struct RatioEstimate {
  std::size_t k = 0;
  std::size_t trials = 0;
  double mean_alg = 0, se_alg = 0;
  double mean_opt = 0, se_opt = 0;
  // mean_alg / mean_opt, never a mean of per-trial ratios.
  double ratio_of_means = 0;
  // Delta-method standard error of the ratio (uses the paired covariance).
  double se_ratio = 0;
  OptProxy opt_method = OptProxy::none;
  std::size_t best_effort_trials = 0;
  std::vector<double> alg_values;
  std::vector<double> opt_values;
};
RatioEstimate make_ratio_estimate(std::size_t k, OptProxy proxy, std::vector<double> alg,
                                  std::vector<double> opt, std::size_t best_effort_trials);

// Value of `proxy` on one instance; sets best_effort when a budget was hit.
double opt_value(const BipartiteGraph& graph, std::size_t k, const ExperimentConfig& config,
                 bool& best_effort);

RatioEstimate estimate_ratio(const ExperimentConfig& config);

struct SweepResult {
  std::vector<RatioEstimate> cells;  // one per k in k_grid order
  std::size_t argmin_k = 0;
  double min_ratio = 0;
  double min_se = 0;
};
// Every trial's graph is shared by all k values.
SweepResult sweep_k(const ExperimentConfig& config);

struct DegreeMixRow {
  double a = 0;
  double min_ratio = 0;
  double se = 0;
  std::size_t argmin_k = 0;
  std::size_t best_effort_cells = 0;
};
// GenR(n, m) with degrees 1, 4, 7 drawn w.p. a/2, 1 - a, a/2; min over
// k in [1, n] of the ratio of means against exact branch and bound.
std::vector<DegreeMixRow> reproduce_degree_mix(std::size_t n, std::size_t m,
                                               const std::vector<double>& a_grid,
                                               std::size_t trials, std::uint64_t seed,
                                               const BranchBoundOptions& options, int threads);

struct MarginalRow {
  std::size_t t = 0;
  MeanSe greedy;
  MeanSe fixed;
  double cum_greedy = 0;
  double cum_fixed = 0;
  double cum_diff_se = 0;  // paired standard error of cum_greedy - cum_fixed
};
struct MarginalsResult {
  std::vector<MarginalRow> rows;
  std::optional<std::size_t> crossover;  // first t with fixed mean > greedy mean
};
MarginalsResult reproduce_marginals(std::size_t n, std::size_t m, std::size_t d,
                                    std::size_t trials, std::uint64_t seed, int threads);

struct Theorem3Row {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  MeanSe greedy;
  MeanSe lower_bound;  // 2 min(k, lambda)
  MeanSe lambda;
  double mean_t2 = 0;
  double ratio_ub = 0;      // mean greedy / mean lower bound
  double greedy_over_2k = 0;
  double frac_lambda_ge_k = 0;
  std::vector<std::size_t> lambdas;
};
std::vector<Theorem3Row> theorem3_experiment(const std::vector<std::size_t>& n_grid,
                                             double k_fraction, std::size_t trials,
                                             std::uint64_t seed, int threads);

struct TdSummary {
  std::size_t n = 0, d = 0, trials = 0;
  double mean = 0, sd = 0;
  double t_star = 0, delta = 0;
  double max_abs_dev = 0, mean_abs_dev = 0;
  bool all_within_delta = false;
  std::vector<std::size_t> samples;
};
TdSummary t_d_concentration(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t seed,
                            int threads);

struct ChernoffReport {
  std::size_t n = 0, d = 0, k = 0, trials = 0;
  double delta = 0;
  double analytic_mean = 0;
  MeanSe empirical;
  double mean_z = 0;  // |empirical - analytic| / se
  double bound = 0;   // exp(-delta^2 E / 3)
  double exceed_freq = 0;
  double slack = 0;  // 3 sqrt(bound (1 - bound) / trials)
  bool holds = false;
};
ChernoffReport chernoff_check(std::size_t n, std::size_t d, std::size_t k, double delta,
                              std::size_t trials, std::uint64_t seed, int threads);

// One (n, d, k) cell of LRR statistics: greedy vs the fixed set H_k, the
// hybrid chain Y^0..Y^k, the product formula for E|N(H_k)|, and greedy
// against the trivial optimum upper bound.
struct LemmaCell {
  std::size_t n = 0, d = 0, k = 0, trials = 0;
  MeanSe greedy;
  MeanSe fixed;
  double greedy_minus_fixed_se = 0;  // paired
  double product_formula = 0;
  double fixed_z = 0;
  std::vector<double> hybrid_means;     // index t
  std::vector<double> hybrid_step_se;   // paired se of Y^t - Y^(t-1), index t >= 1
  std::size_t hybrid_violations = 0;    // t with mean drop beyond 2 se
  MeanSe opt_ub;
  double ratio_vs_ub = 0;
};
LemmaCell lemma_cell(std::size_t n, std::size_t d, std::size_t k, std::size_t trials,
                     std::uint64_t seed, int threads);

std::vector<LemmaCell> lemma_grid(const std::vector<std::size_t>& n_grid,
                                  const std::vector<std::size_t>& d_grid,
                                  const std::vector<double>& k_multipliers, std::size_t trials,
                                  std::uint64_t seed, int threads);

struct EquivalenceRow {
  std::size_t index = 0;
  Model model = Model::lrr;
  std::size_t n = 0, m = 0, k = 0;
  std::size_t greedy_value = 0;
  bool identical = false;
};
// Greedy vs AcceptReject selection sequences on `count` random graphs
// cycling through LRR, ULRR and GenR with n <= max_n and k in {1, n/4, n}.
std::vector<EquivalenceRow> equivalence_check(std::size_t count, std::size_t max_n,
                                              std::uint64_t seed, int threads);

// Per-t coverage of Y^t for t = 0..k on one graph.
std::vector<std::size_t> hybrid_values(const BipartiteGraph& graph, std::size_t k);

// CSV writers: fixed header row, then data rows. No comment lines.
void write_csv(std::ostream& out, const RatioEstimate& r);
void write_csv(std::ostream& out, const SweepResult& r);
void write_csv(std::ostream& out, const std::vector<DegreeMixRow>& rows);
void write_csv(std::ostream& out, const MarginalsResult& r);
void write_csv(std::ostream& out, const std::vector<Theorem3Row>& rows);
void write_csv(std::ostream& out, const TdSummary& s);
void write_csv(std::ostream& out, const ChernoffReport& r);
void write_csv(std::ostream& out, const std::vector<LemmaCell>& cells);
void write_csv(std::ostream& out, const std::vector<EquivalenceRow>& rows);

struct ExperimentOutcome {
  bool best_effort = false;
  nlohmann::ordered_json summary;
};
// Dispatches on config.experiment and writes the CSV body to `csv`.
ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream& csv);

// Column orders, as printed by `maxcov experiment --help`.
std::string csv_schema_help();

}  // namespace maxcov
