#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cpd/basin.hpp"
#include "cpd/separatrix.hpp"
#include "test_support.hpp"

using namespace cpd;

namespace {
constexpr auto S6 = SystemId::Sys1106;
constexpr auto S14 = SystemId::Sys1114;
}  // namespace

TEST_CASE("cell geometry") {
  const auto r = rasterize(S6, {2, 1, 1}, {1, 3, 1, 2}, 4, 2, 100);
  CHECK(r.cell_width() == 0.5);
  CHECK(r.cell_height() == 0.5);
  CHECK(r.center(0, 0) == Point{1.25, 1.75});
  CHECK(r.center(3, 1) == Point{2.75, 1.25});
  CHECK(r.cells.size() == 8);
}

TEST_CASE("raster agrees with the separatrix") {
  const SystemParams p{2, 1, 1};
  const Window w{0.01, 4, 0.01, 4};
  const auto r = rasterize(S6, p, w, 100, 100, 10000);
  const auto c = compute_separatrix(S6, p, 0.01, 4, 257, 1e-10, 10000);
  std::size_t contradictions = 0, undecided = 0;
  for (std::size_t row = 0; row < r.height; ++row) {
    for (std::size_t col = 0; col < r.width; ++col) {
      const Point q = r.center(col, row);
      const Fate f = r.at(col, row);
      if (f == Fate::Undecided) ++undecided;
      const double gap = q.y - c(q.x);
      if (std::abs(gap) <= r.cell_height()) continue;
      if (f == Fate::Upper && gap < 0) ++contradictions;
      if (f == Fate::Lower && gap > 0) ++contradictions;
    }
  }
  CHECK(contradictions == 0);
  CHECK(undecided < 100);
}

TEST_CASE("global regions") {
  auto r = rasterize(S14, {1, 1, 2}, {0, 4, 0, 4}, 40, 40, 10000);
  for (Fate f : r.cells) CHECK(f == Fate::Lower);

  r = rasterize(S14, {0.2, 1, 0.5}, {0, 4, 0.01, 4}, 40, 40, 10000);
  for (Fate f : r.cells) CHECK(f == Fate::Upper);

  r = rasterize(S6, {1, 1, 1}, {0.01, 4, 0.01, 4}, 30, 30, 10000);
  for (Fate f : r.cells) CHECK(f == Fate::Upper);
}

TEST_CASE("fractions") {
  const auto r = rasterize(S6, {2, 1, 1}, {0.1, 3, 0.1, 3}, 50, 30, 10000);
  const auto fr = fate_fractions(r);
  double total = 0;
  for (const auto& [f, v] : fr) {
    CHECK(v > 0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fr.count(Fate::Lower) == 1);
  CHECK(fr.count(Fate::Upper) == 1);
}

TEST_CASE("deterministic across workers") {
  const SystemParams p{1, 1, 0.5};
  const Window w{0.05, 2, 0.05, 3};
  const auto a = rasterize(S14, p, w, 37, 23, 5000, 1);
  for (std::size_t k : {2u, 4u, 8u}) {
    const auto b = rasterize(S14, p, w, 37, 23, 5000, k);
    CHECK(a.cells == b.cells);
  }
}

TEST_CASE("pgm output") {
  const auto r = rasterize(S6, {2, 1, 1}, {0.5, 2, 0.5, 2}, 3, 2, 1000);
  std::ostringstream os;
  write_pgm(os, r);
  const std::string s = os.str();
  const std::string header = "P5\n3 2\n255\n";
  REQUIRE(s.size() == header.size() + 6);
  CHECK(s.substr(0, header.size()) == header);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(static_cast<unsigned char>(s[header.size() + i]) == fate_gray(r.cells[i]));
  }
  CHECK(fate_gray(Fate::Lower) == 64);
  CHECK(fate_gray(Fate::Upper) == 192);
  CHECK(fate_gray(Fate::Saddle) == 128);
  CHECK(fate_gray(Fate::Undecided) == 0);
  CHECK(fate_gray(Fate::Undefined) == 255);
  // Top row holds larger y: the top-left cell is above the curve.
  CHECK(r.at(0, 0) == Fate::Upper);
  CHECK(r.at(2, 1) == Fate::Lower);
}

TEST_CASE("invalid rasters") {
  const SystemParams p{2, 1, 1};
  CHECK_THROWS_AS(rasterize(S6, p, {1, 1, 0.5, 2}, 4, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(rasterize(S6, p, {0.5, 2, 2, 1}, 4, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(rasterize(S6, p, {0, 2, 0.5, 2}, 4, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(rasterize(S6, p, {0.5, 2, 0.5, 2}, 0, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(rasterize(S14, {1, 1, 0.5}, {-1, 2, 0.5, 2}, 4, 4, 10),
                  std::invalid_argument);
  CHECK_NOTHROW(rasterize(S14, {1, 1, 0.5}, {0, 2, 0, 2}, 4, 4, 10));
}
