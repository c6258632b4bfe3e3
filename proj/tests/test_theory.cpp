#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "maxcov/errors.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/theory.hpp"

using namespace maxcov;
using namespace maxcov::theory;
using Dec = boost::multiprecision::cpp_dec_float_50;
using Rational = boost::multiprecision::cpp_rational;

namespace {

constexpr double kE = std::numbers::e;

// Exact max_r |C(r,d)/C(m,d) - (r/m)^d| in rational arithmetic.
double exact_hypergeom_error(std::size_t m, std::size_t d) {
  Rational worst = 0;
  for (std::size_t r = 1; r <= m; ++r) {
    Rational ratio = 0;
    if (r >= d) {
      ratio = 1;
      for (std::size_t i = 0; i < d; ++i) ratio *= Rational(r - i, m - i);
    }
    Rational power = 1;
    for (std::size_t i = 0; i < d; ++i) power *= Rational(r, m);
    Rational diff = ratio - power;
    if (diff < 0) diff = -diff;
    if (diff > worst) worst = diff;
  }
  return static_cast<double>(worst);
}

}  // namespace

TEST_CASE("t_star closed form") {
  for (double n : {3.0, 300.0, 1e5}) CHECK(predict_t_star(n, n, 2) == doctest::Approx(n / 3).epsilon(1e-14));
  const Dec exact3 = (Dec(1) - pow(Dec(7), Dec(-0.5))) / 3;
  CHECK(predict_t_star(1.0, 1.0, 3) == doctest::Approx(exact3.convert_to<double>()).epsilon(1e-14));
  CHECK(predict_t_star(1e5, 1e5, 3) / 1e5 == doctest::Approx(0.20735).epsilon(1e-4));
  for (std::size_t d = 2; d <= 40; ++d) {
    const double scaled = predict_t_star(1000, 1000, d) * double(d) / 1000;
    CHECK(scaled > 1.0 / double(d));
    CHECK(scaled < 1.0);
  }
  // Unbalanced form against high precision.
  const double n = 700, m = 1300;
  const std::size_t d = 4;
  const Dec x = Dec(n) * d * (d - 1) / m;
  const Dec expect = (Dec(1) - pow(Dec(1) + x, Dec(-1) / (d - 1))) * m / d;
  CHECK(predict_t_star(n, m, d) == doctest::Approx(expect.convert_to<double>()).epsilon(1e-13));
  CHECK_THROWS_AS(predict_t_star(10, 10, 1), DomainError);
  CHECK_THROWS_AS(predict_t_star(10, 10, 0), DomainError);
}

TEST_CASE("differential-equation error radius") {
  const Dec expect = 3 * exp(Dec(4)) * sqrt(Dec(8e5) * log(Dec(2e5)));
  CHECK(de_error_bound(1e5, 1e5, 2) == doctest::Approx(expect.convert_to<double>()).epsilon(1e-13));
  CHECK(de_error_bound(2000, 1000, 3) > de_error_bound(1000, 1000, 3));
  CHECK(de_error_bound(1000, 1000, 4) > de_error_bound(1000, 1000, 3));
  CHECK_THROWS_AS(de_error_bound(100, 7, 2), DomainError);
  const auto p = predict(100, 100, 2, 10, 0.1);
  CHECK(p.delta_defined);
  CHECK(p.delta_vacuous);
}

TEST_CASE("ODE closed form") {
  for (std::size_t d = 2; d <= 6; ++d) {
    for (double ratio : {0.5, 1.0, 2.0}) {
      const double n = 1000 * ratio, m = 1000;
      CHECK(ode_solution(0, n, m, d) == 0.0);
      for (double t = 0.05; t < 0.96; t += 0.1) {
        const double h = 1e-6;
        const double slope = (ode_solution(t + h, n, m, d) - ode_solution(t - h, n, m, d)) / (2 * h);
        CHECK(std::abs(slope - ode_rhs(ode_solution(t, n, m, d), n, m, d)) <= 1e-6);
      }
      CHECK(std::abs(ode_rk4(1.0, 1e-4, n, m, d) - ode_solution(1.0, n, m, d)) <= 1e-8);
      CHECK(ode_solution(1.0, n, m, d) * n == doctest::Approx(predict_t_star(n, m, d)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(ode_solution(1.5, 10, 10, 2), DomainError);
  CHECK_THROWS_AS(ode_solution(-0.1, 10, 10, 2), DomainError);
  CHECK_THROWS_AS(ode_rhs(1.0, 10, 10, 2), DomainError);
}

TEST_CASE("expected fixed-set coverage") {
  CHECK(expected_fixed_coverage({3}, 10, 1) == doctest::Approx(3.0));
  CHECK(expected_fixed_coverage({10, 10, 10}, 10, 2) == 10.0);
  CHECK(expected_fixed_coverage({5, 5}, 10, 0) == 0.0);
  const std::vector<std::size_t> degs{9, 7, 7, 4, 2, 1};
  for (std::size_t k = 0; k <= degs.size(); ++k) {
    double sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += double(degs[i]);
    CHECK(expected_fixed_coverage(degs, 20, k) >= (1 - std::exp(-sum / 20)) * 20 - 1e-12);
  }
  CHECK_THROWS_AS(expected_fixed_coverage({11}, 10, 1), InvalidInput);
  CHECK_THROWS_AS(expected_fixed_coverage({1}, 10, 2), DomainError);
}

TEST_CASE("hypergeometric approximation") {
  for (std::size_t m : {50u, 100u, 200u}) CHECK(hypergeom_approx_error(m, 1) == 0.0);
  CHECK(hypergeom_approx_error(100, 5) <= 0.5);
  for (auto [m, d] : {std::pair<std::size_t, std::size_t>{50, 5}, {100, 7}, {137, 3}, {200, 10}}) {
    const double exact = exact_hypergeom_error(m, d);
    CHECK(hypergeom_approx_error(m, d) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(exact <= hypergeom_approx_bound(m, d));
  }
  CHECK_THROWS_AS(hypergeom_approx_error(10, 3), DomainError);
}

TEST_CASE("gamma constants") {
  const auto g = gamma_constants();
  CHECK(g.residual <= 1e-12);
  CHECK(g.gamma_star_low == doctest::Approx(0.8526).epsilon(1e-4));
  CHECK(g.gamma_star_low <= 0.853);
  CHECK(g.gamma_star_high <= 0.853);
  CHECK(g.gamma_star_high == doctest::Approx(2 * std::exp(-g.gamma_star_low)).epsilon(1e-15));
  CHECK(g.limit_ratio <= 0.94);
  CHECK(g.limit_ratio == doctest::Approx(0.9252).epsilon(1e-3));
  CHECK(g.matching_fraction == doctest::Approx(0.392).epsilon(2e-3));
  // No smaller root: the residual is negative on the whole grid below.
  for (double x = 0; x < g.gamma_star_low - 1e-3; x += 1e-4) CHECK(x - 2 * std::exp(-2 * std::exp(-x)) < 0);
  const auto again = gamma_constants();
  CHECK(again.limit_ratio == g.limit_ratio);
}

TEST_CASE("theorem3_k") {
  CHECK(theorem3_k(1) == 0);
  CHECK(theorem3_k(100) == 0);  // 100^(-1/9) ~ 0.6 > 0.392
  CHECK_THROWS_AS(theorem3_k(0), InvalidInput);
  const double f = gamma_constants().matching_fraction;
  for (std::size_t n : {1000u, 100000u, 10000000u, 1000000000u}) {
    CHECK(theorem3_k(n) <= n);
    const double raw = std::floor((f - std::pow(double(n), -1.0 / 9)) * double(n));
    CHECK(theorem3_k(n) == std::size_t(std::max(0.0, raw)));
  }
  CHECK(double(theorem3_k(std::size_t(1e15))) / 1e15 == doctest::Approx(f).epsilon(0.1));
}

TEST_CASE("approximation factors") {
  CHECK(worst_case_factor(1) == 1.0);
  CHECK(worst_case_factor(2) == doctest::Approx(0.75));
  for (std::size_t k = 1; k <= 2000; ++k) {
    CHECK(worst_case_factor(k) >= 1 - 1 / kE + 1 / (4 * kE * double(k)) - 1e-15);
  }
  CHECK(augmented_factor(50, 100, 2) == doctest::Approx(1.0));
  CHECK(augmented_factor(0, 100, 2) == doctest::Approx(1 - 1 / kE));
  CHECK_THROWS_AS(augmented_factor(51, 100, 2), DomainError);
  CHECK_THROWS_AS(worst_case_factor(0), DomainError);
}

TEST_CASE("region classification") {
  const std::size_t n = 1000;
  CHECK(classify_region(n, n, std::vector<std::size_t>(n, 4), n / 4, 0.1).region == Region::Critical);
  const auto near = classify_region(10000, 10000, std::vector<std::size_t>(10000, 2), 10, 0.1);
  CHECK(near.region == Region::NearLinear);
  CHECK(near.guarantee == doctest::Approx(0.9));
  CHECK(classify_region(n, n, std::vector<std::size_t>(n, 2), n, 0.5).region == Region::Critical);
  const auto sat = classify_region(n, n, std::vector<std::size_t>(n, 50), n, 0.1);
  CHECK(sat.region == Region::Saturated);
  const auto crit = classify_region(n, n, std::vector<std::size_t>(n, 4), n / 4, 0.1);
  CHECK_FALSE(crit.large_degree);
  CHECK(crit.guarantee == doctest::Approx(worst_case_factor(n / 4)));
  CHECK(crit.guarantee_label == "1 - 1/e + Omega(eps^24)");
  CHECK(to_string(Region::NearLinear) == "near_linear");
  CHECK_THROWS_AS(classify_region(n, n, {}, 0, 1.5), DomainError);
  CHECK_THROWS_AS(classify_region(n, n, {1}, 2, 0.5), DomainError);
}

TEST_CASE("trivial optimum upper bound") {
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto g = gen_bad_instance(k).graph;
    CHECK(trivial_opt_ub(g, k) == g.m_right());
  }
  const BipartiteGraph g(10, {{0, 1}, {1, 2}, {2}});
  CHECK(trivial_opt_ub(g, 1) == 2);
  CHECK(trivial_opt_ub(g, 5) == 3);
}

TEST_CASE("claims") {
  const auto r = claim_checks();
  CHECK(r.ok());
  CHECK(r.claim1_points > 9000);
  CHECK(r.claim2_points > 1000);
  CHECK((1 - std::exp(-0.5)) / 0.5 == doctest::Approx(0.787).epsilon(1e-3));
  CHECK(r.claim1_min_slack >= 0.0);
}

TEST_CASE("predict JSON") {
  const auto p = predict(300, 300, 2, 150, 0.1);
  CHECK(p.t_star == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(p.opt_ub == 300);
  const std::string s = to_json(p);
  CHECK(s.find('\n') == std::string::npos);
  const auto j = nlohmann::json::parse(s);
  CHECK(j.at("region") == "critical");
  CHECK(j.at("t_star").get<double>() == doctest::Approx(100.0));
  const auto no_delta = predict(10, 10, 3, 2, 0.1);
  CHECK_FALSE(no_delta.delta_defined);
  CHECK(nlohmann::json::parse(to_json(no_delta)).at("delta").is_null());
  CHECK_THROWS_AS(predict(10, 10, 11, 2, 0.1), InvalidInput);
  CHECK_THROWS_AS(predict(10, 10, 2, 11, 0.1), InvalidInput);
}
