#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "maxcov/graph.hpp"

namespace maxcov::theory {

// Expected number of greedy steps with full gain d on GenR(n, m, d, ..., d):
// (1 - (1 + n d (d-1) / m)^(-1/(d-1))) * m / d. Requires d >= 2.
double predict_t_star(double n, double m, std::size_t d);

// Error radius 3 e^(n d^2 / m) sqrt(8 n log 2n) of the first-phase
// estimate. Requires m >= 2 d^2.
double de_error_bound(double n, double m, std::size_t d);

// y' = (1 - (n d / m) y)^d, y(0) = 0, and its closed-form solution on [0, 1].
double ode_rhs(double y, double n, double m, std::size_t d);
double ode_solution(double t, double n, double m, std::size_t d);

// Classical RK4 for the same ODE from y(0) = 0 to t_end. Test and verify
// path only; the closed form is what the library uses.
double ode_rk4(double t_end, double step, double n, double m, std::size_t d);

// (1 - prod_{i<=k} (1 - d_i / m)) * m for degrees sorted descending.
double expected_fixed_coverage(const std::vector<std::size_t>& degrees, double m, std::size_t k);

// max over r in [1, m] of |C(r, d) / C(m, d) - (r / m)^d|. Requires m >= 2 d^2.
double hypergeom_approx_error(std::size_t m, std::size_t d);
inline double hypergeom_approx_bound(std::size_t m, std::size_t d) {
  return 2.0 * double(d) * double(d) / double(m);
}

struct GammaConstants {
  double gamma_star_low = 0;   // smallest root of x = 2 exp(-2 exp(-x))
  double gamma_star_high = 0;  // 2 exp(-gamma_star_low)
  double residual = 0;         // |x - 2 exp(-2 exp(-x))| at gamma_star_low
  double limit_ratio = 0;      // 1/2 + (1/3) / (2 - S/2)
  double matching_fraction = 0;  // 1 - S/4
};
// S = gamma_star_high + gamma_star_low + gamma_star_high * gamma_star_low.
GammaConstants gamma_constants();

// floor((matching_fraction - n^(-1/9)) * n), clamped at 0.
std::size_t theorem3_k(std::size_t n);

// 1 - (1 - 1/k)^k.
double worst_case_factor(std::size_t k);
// 1 - 1/e + (1/e) (t_d / (r / d))^3, where r is the number of right nodes.
// Requires t_d <= r / d.
double augmented_factor(double t_d, double r, std::size_t d);

enum class Region { NearLinear, Critical, Saturated };
std::string_view to_string(Region region);

struct RegionReport {
  Region region = Region::Critical;
  double degree_sum = 0;      // sum of the k largest degrees
  bool large_degree = false;  // average top-k degree >= 20^4 max(1, (n/m)^2) / eps^8
  double guarantee = 0;       // proven ratio floor for this cell
  std::string guarantee_label;
};
RegionReport classify_region(std::size_t n, std::size_t m, std::vector<std::size_t> degrees,
                             std::size_t k, double eps);

// min(sum of the k largest degrees, |N(L)|, m).
std::size_t trivial_opt_ub(const BipartiteGraph& graph, std::size_t k);

struct PredictionSet {
  double t_star = 0;
  double delta = 0;
  bool delta_defined = false;  // m >= 2 d^2
  bool delta_vacuous = false;  // delta >= t_star
  RegionReport region;
  std::size_t opt_ub = 0;  // min(k d, m)
  double greedy_lb_factor = 0;
};
PredictionSet predict(std::size_t n, std::size_t m, std::size_t d, std::size_t k, double eps);
std::string to_json(const PredictionSet& p);

struct ClaimReport {
  std::size_t claim1_points = 0;
  std::size_t claim1_violations = 0;
  double claim1_min_slack = 0;
  std::size_t claim2_points = 0;
  std::size_t claim2_violations = 0;
  double claim2_min_slack = 0;
  bool ok() const { return claim1_violations == 0 && claim2_violations == 0; }
};
// (1 - e^-eps) / eps >= 1 - eps on eps = 1e-4 .. 1 - 1e-4, and
// (1 - 1/k)^k <= 1/e - 1/(4 e k) on k in [1, 1e6] (log grid plus 1..1000).
ClaimReport claim_checks();

}  // namespace maxcov::theory
