#include <doctest.h>

#include <random>

#include "cpd/core.hpp"
#include "cpd/systems.hpp"
#include "test_support.hpp"

using namespace cpd;

TEST_CASE("southeast order") {
  CHECK(se_leq({1, 2}, {2, 1}));
  CHECK(se_leq({1, 1}, {1, 1}));
  CHECK_FALSE(se_leq({2, 1}, {1, 2}));
  CHECK(se_comparable({2, 1}, {1, 2}));
  CHECK_FALSE(se_comparable({1, 1}, {2, 2}));
}

TEST_CASE("closed quadrants") {
  const Point base{1, 1};
  CHECK(in_quadrant(base, Quadrant::Q2, {0.5, 2}));
  CHECK(in_quadrant(base, Quadrant::Q4, {1, 1}));
  CHECK_FALSE(in_quadrant(base, Quadrant::Q1, {0.5, 2}));
  for (auto q : {Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4}) {
    CHECK(in_quadrant(base, q, base));
    CHECK_FALSE(in_quadrant_interior(base, q, base));
  }
  CHECK(in_quadrant(base, Quadrant::Q3, {0, 0}));
  CHECK(in_quadrant(base, Quadrant::Q1, {3, 1}));
  CHECK_FALSE(in_quadrant_interior(base, Quadrant::Q1, {3, 1}));
}

TEST_CASE("iterate records the orbit") {
  const SystemParams p{2, 1, 1};
  auto trace = iterate(SystemId::Sys1106, p, {1, 1}, 5);
  REQUIRE(trace.points.size() == 6);
  for (const auto& q : trace.points) CHECK(q == Point{1, 1});
  CHECK(trace.terminated_by == TraceEnd::MaxIterations);

  trace = iterate(SystemId::Sys1106, {1, 1, 1}, {2, 1}, 1);
  REQUIRE(trace.points.size() == 2);
  CHECK(trace.points[1] == Point{0.5, 0.5});

  trace = iterate(SystemId::Sys1106, {3, 2, 0.7}, {0, 3}, 1);
  REQUIRE(trace.points.size() == 1);
  CHECK(trace.points[0] == Point{0, 3});
  CHECK(trace.terminated_by == TraceEnd::DomainError);

  trace = iterate(SystemId::Sys1106, p, {1, 1}, 0);
  CHECK(trace.points.size() == 1);
}

TEST_CASE("trace recomputation is bit-exact") {
  std::mt19937_64 rng(7);
  for (Region r : testing::kAllRegions) {
    const SystemId id = testing::system_of(r);
    const auto p = testing::draw_params(rng, r);
    const Point start{testing::log_uniform(rng, 1e-2, 1e2),
                      testing::log_uniform(rng, 1e-2, 1e2)};
    const auto trace = iterate(id, p, start, 40);
    for (std::size_t k = 0; k + 1 < trace.points.size(); ++k) {
      const Point again = step(id, p, trace.points[k]);
      CHECK(again.x == trace.points[k + 1].x);
      CHECK(again.y == trace.points[k + 1].y);
    }
  }
}

TEST_CASE("competitive maps preserve the southeast order") {
  std::mt19937_64 rng(11);
  for (Region r : testing::kAllRegions) {
    const SystemId id = testing::system_of(r);
    const auto p = testing::draw_params(rng, r);
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const Point a{testing::log_uniform(rng, 1e-3, 1e3),
                    testing::log_uniform(rng, 1e-3, 1e3)};
      const Point b{testing::log_uniform(rng, a.x, 1e3),
                    testing::log_uniform(rng, 1e-3, a.y)};
      REQUIRE(se_leq(a, b));
      if (!se_leq(step(id, p, a), step(id, p, b))) ++violations;
    }
    CHECK_MESSAGE(violations == 0, to_string(r));
  }
}

TEST_CASE("Q2 and Q4 of a fixed point are invariant") {
  std::mt19937_64 rng(13);
  for (Region r : testing::kAllRegions) {
    const SystemId id = testing::system_of(r);
    const auto p = testing::draw_params(rng, r);
    for (const auto& eq : equilibria(id, p)) {
      // Use the exact image of the computed point as the base so rounding in
      // the closed form does not leak into the predicate.
      const Point z = eq.point;
      std::size_t bad = 0;
      for (int i = 0; i < 2000; ++i) {
        const double dx = testing::log_uniform(rng, 1e-3, 10.0);
        const double dy = testing::log_uniform(rng, 1e-3, 10.0);
        const Point q2{std::max(z.x - dx, 1e-9), z.y + dy};
        const Point q4{z.x + dx, std::max(z.y - dy, 0.0)};
        const Point tz = step(id, p, z);
        if (!in_quadrant(tz, Quadrant::Q2, step(id, p, q2))) ++bad;
        if (!in_quadrant(tz, Quadrant::Q4, step(id, p, q4))) ++bad;
      }
      CHECK_MESSAGE(bad == 0, to_string(r));
    }
  }
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = testing::log_uniform(rng, 1e-300, 1e300);
    CHECK(std::stod(format_double(v)) == v);
  }
}
