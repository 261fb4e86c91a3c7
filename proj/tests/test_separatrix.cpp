#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cpd/separatrix.hpp"
#include "test_support.hpp"

using namespace cpd;

namespace {
constexpr auto S6 = SystemId::Sys1106;
constexpr auto S14 = SystemId::Sys1114;

// Closed-form inverse of the map, derived by hand.
Point inverse_step(SystemId id, const SystemParams& p, Point s) {
  const double y = p.alpha1 / s.x - p.a1;
  const double x = id == S6 ? p.third * y / s.y : y / s.y - p.third;
  return {x, y};
}

// Points of the stable manifold obtained by pulling back a short segment of
// the stable eigendirection.
std::vector<Point> manifold_by_inversion(SystemId id, const SystemParams& p) {
  const auto eq = equilibria(id, p);
  const Point z = eq.back().point;
  const auto v = *eq.back().eigvec_stable;
  std::vector<Point> out;
  for (double sign : {-1.0, 1.0}) {
    for (int k = 1; k <= 8; ++k) {
      const double s = sign * 1e-7 * k;
      Point q{z.x + s * v[0], z.y + s * v[1]};
      for (int n = 0; n < 60; ++n) {
        q = inverse_step(id, p, q);
        if (!(q.x > 0 && q.y > 0) || q.x > 50 || q.y > 50) break;
        out.push_back(q);
      }
    }
  }
  return out;
}
}  // namespace

TEST_CASE("abscissae") {
  const auto xs = separatrix_abscissae(0.5, 2.0, 1.0, 33);
  REQUIRE(xs.size() == 33);
  CHECK(xs.front() == 0.5);
  CHECK(xs.back() == 2.0);
  CHECK(std::count(xs.begin(), xs.end(), 1.0) == 1);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  int near_left = 0, near_right = 0;
  for (double x : xs) {
    if (x < 1.0 && x >= 1.0 - 1e-2) ++near_left;
    if (x > 1.0 && x <= 1.0 + 1e-2) ++near_right;
  }
  CHECK(near_left >= 2);
  CHECK(near_right >= 2);
}

TEST_CASE("separatrix passes through the saddle") {
  auto c = compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 33, 1e-10, 10000);
  CHECK(std::abs(c(1.0) - 1.0) <= 1e-10);
  CHECK(c.saddle == Point{1, 1});

  c = compute_separatrix(S14, {1, 1, 0.5}, 0.25, 1.0, 33, 1e-10, 10000);
  CHECK(std::abs(c(0.5) - 1.0) <= 1e-10);

  CHECK_THROWS_AS(c(0.1), std::out_of_range);
  CHECK_FALSE(c.covers(1.5));
}

TEST_CASE("separatrix preconditions") {
  CHECK_THROWS_AS(compute_separatrix(S6, {1, 1, 2}, 0.5, 2.0, 33, 1e-10, 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_separatrix(S6, {2, 1, 1}, 1.5, 2.0, 33, 1e-10, 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 1, 1e-10, 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 33, 0.0, 1000),
                  std::invalid_argument);
}

TEST_CASE("tangency with the stable eigenvector") {
  auto c = compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 33, 1e-10, 10000);
  auto t = tangency_check(c);
  CHECK(t.eigen_slope == doctest::Approx(std::sqrt(3.0) - 1).epsilon(1e-12));
  CHECK(t.difference <= 1e-3);
  CHECK(t.passed);

  c = compute_separatrix(S14, {1, 1, 0.5}, 0.25, 1.0, 33, 1e-10, 10000);
  t = tangency_check(c);
  CHECK(t.eigen_slope == doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-12));
  CHECK(t.passed);

  // Too few samples near the saddle.
  SeparatrixCurve sparse = c;
  sparse.samples = {{0.25, c(0.25)}, {0.5, 1.0}, {1.0, c(1.0)}};
  CHECK_THROWS_AS(tangency_check(sparse), InsufficientSamples);
}

TEST_CASE("forward invariance of the curve") {
  auto c = compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 65, 1e-10, 10000);
  auto r = validate_invariance(c, 100);
  CHECK(r.probes > 0);
  CHECK(r.max_deviation <= 1e-3);
  CHECK(r.passed);
  CHECK(probe_deviation(c, {1, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(probe_deviation(c, {1, 3}), std::invalid_argument);

  c = compute_separatrix(S14, {1, 1, 0.5}, 0.25, 1.0, 65, 1e-10, 10000);
  r = validate_invariance(c, 100);
  CHECK(r.max_deviation <= 1e-3);
}

TEST_CASE("curve is increasing and splits fates") {
  std::mt19937_64 rng(5);
  for (SystemId id : {S6, S14}) {
    for (int d = 0; d < 4; ++d) {
      const Region reg = id == S6 ? Region::R1106_TwoEquilibria : Region::R1114_TwoEquilibria;
      const auto p = testing::draw_params(rng, reg);
      const Point z = interior_saddle(id, p)->point;
      const auto c = compute_separatrix(id, p, 0.5 * z.x, 2.0 * z.x, 17, 1e-10, 10000);
      for (std::size_t i = 1; i < c.samples.size(); ++i) {
        CHECK(c.samples[i].y > c.samples[i - 1].y);
      }
      const OrbitClassifier cl(id, p);
      for (const auto& s : c.samples) {
        const double off = 1e-6 * (1 + s.y);
        const auto up = cl.classify({s.x, s.y + off}, 100000);
        const auto lo = cl.classify({s.x, s.y - off}, 100000);
        CHECK(up.tag == Fate::Upper);
        CHECK(lo.tag == Fate::Lower);
      }
    }
  }
}

TEST_CASE("refinement converges") {
  const SystemParams p{2, 1, 1};
  const auto coarse = compute_separatrix(S6, p, 0.5, 2.0, 17, 1e-10, 10000);
  const auto fine = compute_separatrix(S6, p, 0.5, 2.0, 129, 1e-10, 10000);
  double dc = 0, df = 0;
  const auto truth = compute_separatrix(S6, p, 0.5, 2.0, 513, 1e-10, 10000);
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.5 + 1.5 * i / 200.0;
    dc = std::max(dc, std::abs(coarse(x) - truth(x)));
    df = std::max(df, std::abs(fine(x) - truth(x)));
  }
  CHECK(df < dc);
  CHECK(df <= 1e-3);
}

TEST_CASE("sampled ordinates match the pulled-back manifold") {
  for (auto [id, p] : {std::pair{S6, SystemParams{2, 1, 1}},
                       std::pair{S14, SystemParams{1, 1, 0.5}},
                       std::pair{S6, SystemParams{3.5, 0.7, 2.2}}}) {
    const auto pts = manifold_by_inversion(id, p);
    REQUIRE(pts.size() > 20);
    const OrbitClassifier cl(id, p);
    std::size_t checked = 0;
    for (const auto& q : pts) {
      if (q.x < 1e-2 || q.y < 1e-2 || q.x > 20 || q.y > 20) continue;
      const double y = separatrix_ordinate(cl, q.x, 1e-11, 100000);
      CHECK(std::abs(y - q.y) <= 1e-8 * (1 + q.y));
      if (++checked >= 40) break;
    }
    CHECK(checked >= 10);
  }
}

TEST_CASE("csv output") {
  const auto c = compute_separatrix(S6, {2, 1, 1}, 0.5, 2.0, 33, 1e-10, 10000);
  std::ostringstream os;
  write_csv(os, c);
  const std::string s = os.str();
  CHECK(s.rfind("x,y\n", 0) == 0);
  CHECK(s.find("\n1,1\n") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 34);
}

TEST_CASE("worker count does not change samples") {
  const SystemParams p{1, 1, 0.5};
  const auto a = compute_separatrix(S14, p, 0.25, 1.0, 33, 1e-10, 10000, 1);
  const auto b = compute_separatrix(S14, p, 0.25, 1.0, 33, 1e-10, 10000, 4);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}
