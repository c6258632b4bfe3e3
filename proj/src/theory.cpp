#include "maxcov/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <json.hpp>

#include "maxcov/errors.hpp"

namespace maxcov::theory {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double gamma_residual(double x) { return x - 2.0 * std::exp(-2.0 * std::exp(-x)); }

}  // namespace

double predict_t_star(double n, double m, std::size_t d) {
  require(d >= 2, "t_star needs d >= 2: the exponent -1/(d-1) is undefined at d = 1");
  require(n > 0 && m > 0, "t_star needs n, m > 0");
  const double x = n * double(d) * double(d - 1) / m;
  return -std::expm1(std::log1p(x) * (-1.0 / double(d - 1))) * m / double(d);
}

double de_error_bound(double n, double m, std::size_t d) {
  require(n >= 1 && m > 0, "delta needs n >= 1, m > 0");
  require(m >= 2.0 * double(d) * double(d), "delta needs m >= 2 d^2");
  const double dd = double(d);
  return 3.0 * std::exp(n * dd * dd / m) * std::sqrt(8.0 * n * std::log(2.0 * n));
}

double ode_rhs(double y, double n, double m, std::size_t d) {
  const double y_max = m / (n * double(d));
  require(y >= 0 && y <= y_max * (1 + 1e-12), "ode_rhs needs y in [0, m/(n d)]");
  const double base = std::max(0.0, 1.0 - n * double(d) / m * y);
  return std::pow(base, double(d));
}

double ode_solution(double t, double n, double m, std::size_t d) {
  require(d >= 2, "closed form needs d >= 2");
  require(t >= 0 && t <= 1, "ode_solution needs t in [0, 1]");
  require(n > 0 && m > 0, "ode_solution needs n, m > 0");
  const double scale = m / (n * double(d));
  const double x = n * double(d) * double(d - 1) * t / m;
  return scale * -std::expm1(std::log1p(x) * (-1.0 / double(d - 1)));
}

double ode_rk4(double t_end, double step, double n, double m, std::size_t d) {
  require(step > 0 && t_end >= 0, "rk4 needs step > 0, t_end >= 0");
  const double c = n * double(d) / m;
  auto f = [&](double y) { return std::pow(1.0 - c * y, double(d)); };
  const auto steps = static_cast<std::size_t>(std::llround(t_end / step));
  const double h = steps == 0 ? 0.0 : t_end / double(steps);
  double y = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

double expected_fixed_coverage(const std::vector<std::size_t>& degrees, double m, std::size_t k) {
  require(k <= degrees.size(), "expected_fixed_coverage needs k <= number of degrees");
  require(m > 0, "expected_fixed_coverage needs m > 0");
  double log_miss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (double(degrees[i]) > m) throw InvalidInput("degree exceeds m");
    if (double(degrees[i]) == m) return m;
    log_miss += std::log1p(-double(degrees[i]) / m);
  }
  return -std::expm1(log_miss) * m;
}

double hypergeom_approx_error(std::size_t m, std::size_t d) {
  require(d >= 1, "hypergeometric check needs d >= 1");
  require(double(m) >= 2.0 * double(d) * double(d), "hypergeometric check needs m >= 2 d^2");
  double worst = 0.0;
  for (std::size_t r = 1; r <= m; ++r) {
    double ratio = 0.0;
    if (r >= d) {
      ratio = 1.0;
      for (std::size_t i = 0; i < d; ++i) ratio *= double(r - i) / double(m - i);
    }
    const double approx = std::pow(double(r) / double(m), double(d));
    worst = std::max(worst, std::abs(ratio - approx));
  }
  return worst;
}

GammaConstants gamma_constants() {
  // First sign change of g on a 1e-3 grid over [0, 2], then bisection.
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 0; i < 2000; ++i) {
    const double a = i * 1e-3;
    const double b = (i + 1) * 1e-3;
    if (gamma_residual(a) <= 0.0 && gamma_residual(b) > 0.0) {
      lo = a;
      hi = b;
      bracketed = true;
      break;
    }
  }
  require(bracketed, "no root of x = 2 exp(-2 exp(-x)) in [0, 2]");
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_residual(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  GammaConstants g;
  g.gamma_star_low = std::abs(gamma_residual(lo)) <= std::abs(gamma_residual(hi)) ? lo : hi;
  g.residual = std::abs(gamma_residual(g.gamma_star_low));
  g.gamma_star_high = 2.0 * std::exp(-g.gamma_star_low);
  const double s = g.gamma_star_high + g.gamma_star_low + g.gamma_star_high * g.gamma_star_low;
  g.limit_ratio = 0.5 + (1.0 / 3.0) / (2.0 - s / 2.0);
  g.matching_fraction = 1.0 - s / 4.0;
  return g;
}

std::size_t theorem3_k(std::size_t n) {
  if (n == 0) throw InvalidInput("theorem3_k needs n >= 1");
  static const double fraction = gamma_constants().matching_fraction;
  const double value = (fraction - std::pow(double(n), -1.0 / 9.0)) * double(n);
  if (value <= 0.0) return 0;
  return std::min(n, static_cast<std::size_t>(std::floor(value)));
}

double worst_case_factor(std::size_t k) {
  require(k >= 1, "worst_case_factor needs k >= 1");
  return -std::expm1(double(k) * std::log1p(-1.0 / double(k)));
}

double augmented_factor(double t_d, double r, std::size_t d) {
  require(d >= 1 && r > 0, "augmented_factor needs d >= 1, r > 0");
  const double x = t_d / (r / double(d));
  require(t_d >= 0 && x <= 1.0 + 1e-12, "augmented_factor needs 0 <= t_d <= r/d");
  return 1.0 - kInvE + kInvE * x * x * x;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::NearLinear:
      return "near_linear";
    case Region::Critical:
      return "critical";
    case Region::Saturated:
      return "saturated";
  }
  return "unknown";
}

RegionReport classify_region(std::size_t n, std::size_t m, std::vector<std::size_t> degrees,
                             std::size_t k, double eps) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(m >= 1, "m must be >= 1");
  require(k <= degrees.size(), "k exceeds the number of degrees");
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  RegionReport report;
  for (std::size_t i = 0; i < k; ++i) report.degree_sum += double(degrees[i]);
  const double md = double(m);
  if (report.degree_sum <= eps / 2.0 * md) {
    report.region = Region::NearLinear;
  } else if (report.degree_sum >= 2.0 / eps * md) {
    report.region = Region::Saturated;
  } else {
    report.region = Region::Critical;
  }
  if (k > 0) {
    const double ratio = double(n) / md;
    const double threshold = std::pow(20.0, 4) * std::max(1.0, ratio * ratio) / std::pow(eps, 8);
    report.large_degree = report.degree_sum / double(k) >= threshold;
  }
  const double floor = k == 0 ? 1.0 : worst_case_factor(k);
  if (report.region == Region::Critical && !report.large_degree) {
    report.guarantee = floor;
    report.guarantee_label = "1 - 1/e + Omega(eps^24)";
  } else {
    report.guarantee = std::max(1.0 - eps, floor);
    report.guarantee_label = "1 - eps";
  }
  return report;
}

std::size_t trivial_opt_ub(const BipartiteGraph& graph, std::size_t k) {
  std::vector<std::size_t> deg(graph.n_left());
  for (std::size_t u = 0; u < deg.size(); ++u) deg[u] = graph.degree(u);
  const std::size_t take = std::min(k, deg.size());
  std::partial_sort(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(take), deg.end(),
                    std::greater<>());
  std::size_t top = 0;
  for (std::size_t i = 0; i < take; ++i) top += deg[i];
  std::vector<std::uint8_t> covered(graph.m_right(), 0);
  std::size_t all = 0;
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (!covered[v]) {
        covered[v] = 1;
        ++all;
      }
    }
  }
  return std::min({top, all, graph.m_right()});
}

PredictionSet predict(std::size_t n, std::size_t m, std::size_t d, std::size_t k, double eps) {
  if (n == 0 || m == 0) throw InvalidInput("predict needs n, m >= 1");
  if (d < 1 || d > m) throw InvalidInput("predict needs 1 <= d <= m");
  if (k > n) throw InvalidInput("predict needs k <= n");
  PredictionSet p;
  p.t_star = predict_t_star(double(n), double(m), d);
  if (double(m) >= 2.0 * double(d) * double(d)) {
    p.delta_defined = true;
    p.delta = de_error_bound(double(n), double(m), d);
    p.delta_vacuous = p.delta >= p.t_star;
  }
  p.region = classify_region(n, m, std::vector<std::size_t>(n, d), k, eps);
  p.opt_ub = std::min(k * d, m);
  p.greedy_lb_factor = p.region.guarantee;
  return p;
}

std::string to_json(const PredictionSet& p) {
  nlohmann::ordered_json j;
  j["t_star"] = p.t_star;
  if (p.delta_defined) {
    j["delta"] = p.delta;
  } else {
    j["delta"] = nullptr;
  }
  j["delta_vacuous"] = p.delta_vacuous;
  j["region"] = std::string(to_string(p.region.region));
  j["large_degree"] = p.region.large_degree;
  j["degree_sum"] = p.region.degree_sum;
  j["guarantee"] = p.region.guarantee_label;
  j["opt_ub"] = p.opt_ub;
  j["greedy_lb_factor"] = p.greedy_lb_factor;
  return j.dump();
}

ClaimReport claim_checks() {
  ClaimReport report;
  report.claim1_min_slack = 1e300;
  for (int i = 1; i < 10000; ++i) {
    const double eps = i * 1e-4;
    const double lhs = -std::expm1(-eps) / eps;
    const double slack = lhs - (1.0 - eps);
    ++report.claim1_points;
    report.claim1_violations += slack < 0.0;
    report.claim1_min_slack = std::min(report.claim1_min_slack, slack);
  }
  report.claim2_min_slack = 1e300;
  auto check_k = [&](double k) {
    const double lhs = std::exp(k * std::log1p(-1.0 / k));
    const double rhs = kInvE - kInvE / (4.0 * k);
    ++report.claim2_points;
    report.claim2_violations += lhs > rhs;
    report.claim2_min_slack = std::min(report.claim2_min_slack, rhs - lhs);
  };
  for (int k = 1; k <= 1000; ++k) check_k(k);
  for (double e = 3.0; e <= 6.0 + 1e-9; e += 0.01) check_k(std::floor(std::pow(10.0, e)));
  return report;
}

}  // namespace maxcov::theory
