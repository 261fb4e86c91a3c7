#include <doctest.h>

#include <cmath>

#include "cpd/verify.hpp"

using namespace cpd;
using namespace cpd::verify;

namespace {
constexpr auto S6 = SystemId::Sys1106;
constexpr auto S14 = SystemId::Sys1114;
}  // namespace

TEST_CASE("order suite") {
  auto r = run_order_suite(S6, {2, 1, 1}, 10000, 1);
  CHECK(r.cases_run == 10000);
  CHECK(r.failures.empty());
  CHECK(r.status == SuiteStatus::Pass);
  CHECK(r.rng == std::string("std::mt19937_64"));

  r = run_order_suite(S14, {1, 1, 2}, 10000, 1);
  CHECK(r.failures.empty());

  CHECK(order_preserved(S6, {2, 1, 1}, {1, 1}, {1, 1}));
  CHECK_THROWS_AS(run_order_suite(S6, {2, 1, 1}, 0, 1), std::invalid_argument);
}

TEST_CASE("suites are deterministic") {
  const auto a = to_json(run_order_suite(S14, {1, 1, 0.5}, 500, 9));
  const auto b = to_json(run_order_suite(S14, {1, 1, 0.5}, 500, 9));
  auto strip = [](nlohmann::json j) {
    j.erase("wall_time_ms");
    return j;
  };
  CHECK(strip(a) == strip(b));
  CHECK(a["schema"] == "cpd-suite-1");
  CHECK(a["seed"] == 9);
}

TEST_CASE("monotone y suites") {
  auto r = run_monotone_y_suite({1, 1, 1}, 1000, 1);
  CHECK(r.cases_run == 1000);
  CHECK(r.failures.empty());
  CHECK_THROWS_AS(run_monotone_y_suite({1, 1, 0.5}, 10, 1), std::invalid_argument);

  r = run_monotone_y_growth_suite({1, 1, 1}, 1000, 1);
  CHECK(r.failures.empty());
  r = run_monotone_y_growth_suite({2, 0.5, 4}, 1000, 2);
  CHECK(r.failures.empty());
  CHECK_THROWS_AS(run_monotone_y_growth_suite({2, 1, 1}, 10, 1), std::invalid_argument);

  // (1,1,2) from (0.5,2): y strictly decreasing, checked by hand.
  auto t = iterate(S14, {1, 1, 2}, {0.5, 2}, 50);
  for (std::size_t n = 1; n < t.points.size(); ++n) {
    CHECK(t.points[n].y < t.points[n - 1].y);
  }
}

TEST_CASE("period-two search") {
  auto r = run_period_two_search(S6, {2, 1, 1}, 32, 50);
  CHECK(r.cases_run > 0);
  CHECK(r.cases_run <= 32 * 32);  // only mesh points inside Delta
  CHECK(r.failures.empty());
  CHECK(r.status == SuiteStatus::Pass);
  CHECK(r.inconclusive < r.cases_run);

  r = run_period_two_search(S14, {1, 1, 0.5}, 32, 50);
  CHECK(r.failures.empty());

  r = run_period_two_search(S6, {1, 1, 2}, 8, 50);
  CHECK(r.status == SuiteStatus::NotApplicable);
  CHECK(r.passed());

  const auto n = newton_period_two(S6, {2, 1, 1}, {1, 1}, 50);
  CHECK(n.converged);
  CHECK(n.iterations == 0);
  CHECK(n.root == Point{1, 1});
}

TEST_CASE("newton converges near the saddle") {
  const auto n = newton_period_two(S14, {1, 1, 0.5}, {0.52, 0.97}, 50);
  REQUIRE(n.converged);
  CHECK(std::abs(n.root.x - 0.5) <= 1e-8);
  CHECK(std::abs(n.root.y - 1.0) <= 1e-8);
  CHECK(n.residual <= 1e-12);
}

TEST_CASE("hypothesis suite") {
  CHECK(run_hypothesis_suite(S6, {2, 1, 1}).status == SuiteStatus::Pass);
  CHECK(run_hypothesis_suite(S14, {1, 1, 0.5}).status == SuiteStatus::Pass);
  const auto r = run_hypothesis_suite(S6, {1, 1, 2});
  CHECK(r.status == SuiteStatus::NotApplicable);
  CHECK(to_json(r)["status"] == "not_applicable");
}
