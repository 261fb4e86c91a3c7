#include "cpd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cpd::verify {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

nlohmann::json point_json(const Point& p) { return nlohmann::json::array({p.x, p.y}); }

// Log-uniform on (1e-3, 1e3).
double log_uniform(std::mt19937_64& rng, double lo = 1e-3, double hi = 1e3) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

SuiteReport make_report(std::string name, SystemId id,
                        const SystemParams& params, std::uint64_t seed) {
  SuiteReport r;
  r.name = std::move(name);
  r.system = id;
  r.params = params;
  r.seed = seed;
  return r;
}

void finish(SuiteReport& r, Clock::time_point start) {
  std::sort(r.failures.begin(), r.failures.end(),
            [](const auto& a, const auto& b) { return a.case_index < b.case_index; });
  if (r.status != SuiteStatus::NotApplicable) {
    r.status = r.failures.empty() ? SuiteStatus::Pass : SuiteStatus::Fail;
  }
  r.wall_time_ms = elapsed_ms(start);
}

double inf_norm(const Point& p) { return std::max(std::abs(p.x), std::abs(p.y)); }

// Where T may be evaluated during the Newton search.
bool newton_domain(SystemId id, const Point& p) {
  return is_state(p) && (id != SystemId::Sys1106 || p.x > 0.0);
}

std::optional<Point> residual(SystemId id, const SystemParams& params,
                              const Point& p) {
  if (!newton_domain(id, p)) return std::nullopt;
  auto t1 = try_step(id, params, p);
  if (!t1 || !newton_domain(id, *t1)) return std::nullopt;
  auto t2 = try_step(id, params, *t1);
  if (!t2) return std::nullopt;
  return Point{t2->x - p.x, t2->y - p.y};
}

}  // namespace

const char* to_string(SuiteStatus s) noexcept {
  switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

bool order_preserved(SystemId id, const SystemParams& params, const Point& a,
                     const Point& b) {
  if (!se_leq(a, b)) return true;
  auto ta = try_step(id, params, a);
  auto tb = try_step(id, params, b);
  if (!ta || !tb) return true;
  return se_leq(*ta, *tb);
}

SuiteReport run_order_suite(SystemId id, const SystemParams& params,
                            std::size_t n_cases, std::uint64_t seed) {
  if (n_cases < 1) throw std::invalid_argument("n_cases must be >= 1");
  params.validate(id);
  const auto start = Clock::now();
  auto r = make_report("order", id, params, seed);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n_cases; ++i) {
    const Point a{log_uniform(rng), log_uniform(rng)};
    // b lies south-east of a, inside the same box.
    const Point b{log_uniform(rng, a.x, 1e3), log_uniform(rng, 1e-3, a.y)};
    ++r.cases_run;
    if (!order_preserved(id, params, a, b)) {
      r.failures.push_back({i,
                            {{"a", point_json(a)}, {"b", point_json(b)}},
                            {{"Ta", point_json(step(id, params, a))},
                             {"Tb", point_json(step(id, params, b))}},
                            "images not ordered"});
    }
  }
  finish(r, start);
  return r;
}

SuiteReport run_monotone_y_suite(const SystemParams& params,
                                 std::size_t n_cases, std::uint64_t seed) {
  constexpr auto id = SystemId::Sys1114;
  params.validate(id);
  if (!(params.third >= 1.0)) {
    throw std::invalid_argument("monotone-y suite requires a2 >= 1");
  }
  const auto start = Clock::now();
  auto r = make_report("monotone_y", id, params, seed);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n_cases; ++i) {
    const Point p0{log_uniform(rng), log_uniform(rng)};
    const auto trace = iterate(id, params, p0, 50);
    ++r.cases_run;
    for (std::size_t n = 1; n < trace.points.size(); ++n) {
      if (trace.points[n].y > trace.points[n - 1].y) {
        r.failures.push_back({i,
                              {{"start", point_json(p0)}},
                              {{"n", n},
                               {"y_prev", trace.points[n - 1].y},
                               {"y_next", trace.points[n].y}},
                              "y increased"});
        break;
      }
    }
  }
  finish(r, start);
  return r;
}

SuiteReport run_monotone_y_growth_suite(const SystemParams& params,
                                        std::size_t n_cases,
                                        std::uint64_t seed) {
  constexpr auto id = SystemId::Sys1106;
  params.validate(id);
  if (classify_region(id, params) != Region::R1106_Nonhyperbolic) {
    throw std::invalid_argument(
        "monotone-y growth suite requires gamma2*a1 == alpha1");
  }
  const auto start = Clock::now();
  auto r = make_report("monotone_y_growth", id, params, seed);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n_cases; ++i) {
    const Point p0{log_uniform(rng), log_uniform(rng)};
    const auto trace = iterate(id, params, p0, 50);
    ++r.cases_run;
    for (std::size_t n = 2; n < trace.points.size(); ++n) {
      if (trace.points[n].y < trace.points[n - 1].y) {
        r.failures.push_back({i,
                              {{"start", point_json(p0)}},
                              {{"n", n},
                               {"y_prev", trace.points[n - 1].y},
                               {"y_next", trace.points[n].y}},
                              "y decreased"});
        break;
      }
    }
  }
  finish(r, start);
  return r;
}

NewtonResult newton_period_two(SystemId id, const SystemParams& params,
                               const Point& seed, std::size_t max_iter) {
  NewtonResult out;
  Point p = seed;
  auto f = residual(id, params, p);
  if (!f) return out;
  double norm = inf_norm(*f);
  for (std::size_t it = 0;; ++it) {
    out.root = p;
    out.residual = norm;
    out.iterations = it;
    if (norm <= 1e-12) {
      out.converged = true;
      return out;
    }
    if (it == max_iter) return out;

    const Point t1 = step(id, params, p);
    Matrix2 j = jacobian(id, params, t1) * jacobian(id, params, p);
    j.m[0][0] -= 1.0;
    j.m[1][1] -= 1.0;
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) return out;
    const double dx = (-f->x * j(1, 1) + f->y * j(0, 1)) / det;
    const double dy = (-f->y * j(0, 0) + f->x * j(1, 0)) / det;

    bool accepted = false;
    double t = 1.0;
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      const Point q{p.x + t * dx, p.y + t * dy};
      auto fq = residual(id, params, q);
      if (fq && inf_norm(*fq) < norm) {
        p = q;
        f = fq;
        norm = inf_norm(*fq);
        accepted = true;
        break;
      }
    }
    if (!accepted) return out;
  }
}

SuiteReport run_period_two_search(SystemId id, const SystemParams& params,
                                  std::size_t grid, std::size_t newton_iters) {
  params.validate(id);
  const auto start = Clock::now();
  auto r = make_report("period_two", id, params, 0);
  r.rng = "none";
  const auto z = interior_saddle(id, params);
  if (!z) {
    r.status = SuiteStatus::NotApplicable;
    r.note = "no interior saddle for these parameters";
    finish(r, start);
    return r;
  }
  const auto known = equilibria(id, params);
  const Point zp = z->point;
  std::size_t index = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t k = 0; k < grid; ++k, ++index) {
      const Point s{4.0 * zp.x * (static_cast<double>(i) + 0.5) / grid,
                    4.0 * zp.y * (static_cast<double>(k) + 0.5) / grid};
      const bool in_delta = in_quadrant_interior(zp, Quadrant::Q1, s) ||
                            in_quadrant_interior(zp, Quadrant::Q3, s);
      if (!in_delta) continue;
      ++r.cases_run;
      const auto res = newton_period_two(id, params, s, newton_iters);
      if (!res.converged) {
        ++r.inconclusive;
        continue;
      }
      const bool is_fixed = std::any_of(known.begin(), known.end(), [&](const auto& e) {
        return inf_norm({res.root.x - e.point.x, res.root.y - e.point.y}) <= 1e-8;
      });
      if (!is_fixed) {
        r.failures.push_back({index,
                              {{"seed", point_json(s)}},
                              {{"root", point_json(res.root)},
                               {"residual", res.residual}},
                              "root of T^2(p) = p is not a fixed point"});
      }
    }
  }
  r.note = std::to_string(r.cases_run - r.inconclusive) + " seeds converged";
  finish(r, start);
  return r;
}

SuiteReport run_hypothesis_suite(SystemId id, const SystemParams& params) {
  const auto start = Clock::now();
  auto r = make_report("hypotheses", id, params, 1);
  const auto h = check_theorem_hypotheses(id, params, 1000, r.seed);
  if (!h.applicable) {
    r.status = SuiteStatus::NotApplicable;
    r.note = "no interior saddle for these parameters";
    finish(r, start);
    return r;
  }
  for (std::size_t i = 0; i < h.checks.size(); ++i) {
    const auto& c = h.checks[i];
    ++r.cases_run;
    if (!c.passed) {
      r.failures.push_back({i, {{"hypothesis", c.name}}, {{"detail", c.detail}},
                            c.name + " failed"});
    }
  }
  r.note = "det J_T(z) = " + format_double(h.det_at_saddle);
  finish(r, start);
  return r;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"case", f.case_index},
                        {"inputs", f.inputs},
                        {"observed", f.observed},
                        {"message", f.message}});
  }
  return {
      {"schema", "cpd-suite-1"},
      {"suite", report.name},
      {"system", std::string(to_string(report.system))},
      {"params",
       {{"alpha1", report.params.alpha1},
        {"a1", report.params.a1},
        {std::string(third_param_name(report.system)), report.params.third}}},
      {"status", to_string(report.status)},
      {"cases_run", report.cases_run},
      {"inconclusive", report.inconclusive},
      {"failures", failures},
      {"rng", report.rng},
      {"seed", report.seed},
      {"note", report.note},
      {"wall_time_ms", report.wall_time_ms},
  };
}

}  // namespace cpd::verify
