#include "cpd/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace cpd {

namespace {

// Sign of (lhs - rhs) without forming the difference.
int compare(double lhs, double rhs) noexcept {
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::string fmt_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Coordinate of the interior saddle: gamma2 for (11,6), 1 - A2 for (11,14).
double saddle_x(SystemId id, const SystemParams& p) noexcept {
  return id == SystemId::Sys1106 ? p.third : 1.0 - p.third;
}

std::array<double, 2> stable_eigenvector(const Matrix2& j, double lambda) {
  // Rows of J - lambda*I are dependent; the first row gives
  // -lambda*v1 + j01*v2 = 0.
  double v1 = j(0, 1);
  double v2 = lambda;
  if (v1 == 0.0 && v2 == 0.0) {
    v1 = j(1, 1) - lambda;
    v2 = -j(1, 0);
  }
  const double norm = std::hypot(v1, v2);
  v1 /= norm;
  v2 /= norm;
  if (v1 < 0.0 || (v1 == 0.0 && v2 < 0.0)) {
    v1 = -v1;
    v2 = -v2;
  }
  return {v1, v2};
}

}  // namespace

std::string_view to_string(SystemId id) noexcept {
  return id == SystemId::Sys1106 ? "11-06" : "11-14";
}

std::optional<SystemId> parse_system_id(std::string_view text) noexcept {
  if (text == "11-06") return SystemId::Sys1106;
  if (text == "11-14") return SystemId::Sys1114;
  return std::nullopt;
}

std::string_view third_param_name(SystemId id) noexcept {
  return id == SystemId::Sys1106 ? "gamma2" : "a2";
}

void SystemParams::validate(SystemId id) const {
  auto check = [](double v, std::string_view name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidParams(std::string(name) + " must be positive");
    }
  };
  check(alpha1, "alpha1");
  check(a1, "a1");
  check(third, third_param_name(id));
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  Matrix2 r;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      r.m[i][k] = m[i][0] * o.m[0][k] + m[i][1] * o.m[1][k];
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::optional<Point> try_step(SystemId id, const SystemParams& params,
                              const Point& p) noexcept {
  Point next;
  next.x = params.alpha1 / (params.a1 + p.y);
  if (id == SystemId::Sys1106) {
    if (p.x == 0.0) return std::nullopt;
    next.y = params.third * p.y / p.x;
  } else {
    const double den = params.third + p.x;
    if (den == 0.0) return std::nullopt;
    next.y = p.y / den;
  }
  if (!is_state(next)) return std::nullopt;
  return next;
}

Point step(SystemId id, const SystemParams& params, const Point& p) {
  if (auto next = try_step(id, params, p)) return *next;
  if (id == SystemId::Sys1106 && p.x == 0.0) {
    throw DomainError("y' = gamma2*y/x is undefined at x = 0");
  }
  throw DomainError("image of " + fmt_point(p) + " is not a finite state");
}

StepFunction step_function(SystemId id, const SystemParams& params) {
  return [id, params](const Point& p) { return try_step(id, params, p); };
}

OrbitTrace iterate(SystemId id, const SystemParams& params, const Point& start,
                   std::size_t n) {
  return iterate_map(step_function(id, params), start, n);
}

Matrix2 jacobian(SystemId id, const SystemParams& params, const Point& p) {
  (void)step(id, params, p);
  Matrix2 j;
  const double s = params.a1 + p.y;
  j.m[0][0] = 0.0;
  j.m[0][1] = -params.alpha1 / (s * s);
  if (id == SystemId::Sys1106) {
    j.m[1][0] = -params.third * p.y / (p.x * p.x) + 0.0;  // no -0
    j.m[1][1] = params.third / p.x;
  } else {
    const double d = params.third + p.x;
    j.m[1][0] = -p.y / (d * d) + 0.0;
    j.m[1][1] = 1.0 / d;
  }
  return j;
}

// ---------------------------------------------------------------------------

const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::LocallyAsymptoticallyStable: return "LocallyAsymptoticallyStable";
    case Stability::Saddle: return "Saddle";
    case Stability::Nonhyperbolic: return "Nonhyperbolic";
  }
  return "unknown";
}

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::R1106_SaddleOnly: return "R1106_SaddleOnly";
    case Region::R1106_Nonhyperbolic: return "R1106_Nonhyperbolic";
    case Region::R1106_TwoEquilibria: return "R1106_TwoEquilibria";
    case Region::R1114_GAS: return "R1114_GAS";
    case Region::R1114_SaddleOnly: return "R1114_SaddleOnly";
    case Region::R1114_Nonhyperbolic: return "R1114_Nonhyperbolic";
    case Region::R1114_TwoEquilibria: return "R1114_TwoEquilibria";
  }
  return "unknown";
}

const char* region_label(Region r) noexcept {
  switch (r) {
    case Region::R1106_SaddleOnly:
    case Region::R1114_SaddleOnly: return "SaddleOnly";
    case Region::R1106_Nonhyperbolic:
    case Region::R1114_Nonhyperbolic: return "Nonhyperbolic";
    case Region::R1106_TwoEquilibria:
    case Region::R1114_TwoEquilibria: return "TwoEquilibria";
    case Region::R1114_GAS: return "GAS";
  }
  return "unknown";
}

Region classify_region(SystemId id, const SystemParams& params) {
  if (id == SystemId::Sys1106) {
    switch (compare(params.third * params.a1, params.alpha1)) {
      case 1: return Region::R1106_SaddleOnly;
      case 0: return Region::R1106_Nonhyperbolic;
      default: return Region::R1106_TwoEquilibria;
    }
  }
  if (params.third >= 1.0) return Region::R1114_GAS;
  switch (compare((params.third - 1.0) * params.a1, -params.alpha1)) {
    case -1: return Region::R1114_SaddleOnly;
    case 0: return Region::R1114_Nonhyperbolic;
    default: return Region::R1114_TwoEquilibria;
  }
}

bool has_interior_saddle(Region r) noexcept {
  return r == Region::R1106_TwoEquilibria || r == Region::R1114_TwoEquilibria;
}

std::vector<EquilibriumReport> equilibria(SystemId id,
                                          const SystemParams& params) {
  const Region region = classify_region(id, params);
  std::vector<EquilibriumReport> out;

  EquilibriumReport axis;
  axis.point = {params.alpha1 / params.a1, 0.0};
  axis.jacobian = jacobian(id, params, axis.point);
  axis.lambda = 0.0;
  axis.mu = id == SystemId::Sys1106
                ? params.third * params.a1 / params.alpha1
                : 1.0 / (params.third + params.alpha1 / params.a1);
  switch (region) {
    case Region::R1106_SaddleOnly:
    case Region::R1114_SaddleOnly:
      axis.stability = Stability::Saddle;
      axis.eigvec_stable = stable_eigenvector(axis.jacobian, axis.lambda);
      break;
    case Region::R1106_Nonhyperbolic:
    case Region::R1114_Nonhyperbolic:
      axis.stability = Stability::Nonhyperbolic;
      break;
    default:
      axis.stability = Stability::LocallyAsymptoticallyStable;
      break;
  }
  out.push_back(axis);

  if (has_interior_saddle(region)) {
    EquilibriumReport z;
    const double xs = saddle_x(id, params);
    z.point = {xs, params.alpha1 / xs - params.a1};
    z.jacobian = jacobian(id, params, z.point);
    // Characteristic polynomial lambda^2 - lambda + c = 0 with
    //   c = gamma2*A1/alpha1 - 1                (11,6)
    //   c = A2 - 1 + A1*(1 - A2)^2/alpha1       (11,14)
    const double disc =
        id == SystemId::Sys1106
            ? 5.0 - 4.0 * params.third * params.a1 / params.alpha1
            : 5.0 - 4.0 * params.third -
                  4.0 * params.a1 * xs * xs / params.alpha1;
    const double root = std::sqrt(disc);
    z.lambda = (1.0 - root) / 2.0;
    z.mu = (1.0 + root) / 2.0;
    z.stability = Stability::Saddle;
    z.eigvec_stable = stable_eigenvector(z.jacobian, z.lambda);
    z.interior = true;
    out.push_back(z);
  }
  return out;
}

EquilibriumReport eigen_analysis(SystemId id, const SystemParams& params,
                                 std::size_t which) {
  auto all = equilibria(id, params);
  if (which >= all.size()) {
    throw std::out_of_range("equilibrium index " + std::to_string(which) +
                            " out of range (" + std::to_string(all.size()) +
                            " equilibria)");
  }
  return all[which];
}

std::optional<EquilibriumReport> interior_saddle(SystemId id,
                                                 const SystemParams& params) {
  for (auto& e : equilibria(id, params)) {
    if (e.interior) return e;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

const char* to_string(TrapSide s) noexcept {
  return s == TrapSide::LowerTrap ? "LowerTrap" : "UpperTrap";
}

bool Rect::contains(const Point& p) const noexcept {
  const bool left = x_lo_open ? p.x > x_lo : p.x >= x_lo;
  return left && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
}

TrapSpec trap(SystemId id, const SystemParams& params, TrapSide side,
              double epsilon) {
  if (!has_interior_saddle(classify_region(id, params))) {
    throw std::invalid_argument("trapping rectangles need an interior saddle");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidEpsilon("epsilon must be positive");
  }
  const double xs = saddle_x(id, params);
  constexpr double inf = std::numeric_limits<double>::infinity();
  TrapSpec t;
  t.side = side;
  t.epsilon = epsilon;
  if (side == TrapSide::UpperTrap) {
    const double edge = xs - epsilon;
    if (!(edge > 0.0)) {
      throw InvalidEpsilon("epsilon " + fmt_double(epsilon) +
                           " leaves no room left of the saddle");
    }
    t.bounds = {0.0, edge, params.alpha1 / edge - params.a1, inf,
                id == SystemId::Sys1106};
  } else {
    const double edge = xs + epsilon;
    const double y_hi = params.alpha1 / edge - params.a1;
    if (!(y_hi > 0.0)) {
      throw InvalidEpsilon("epsilon " + fmt_double(epsilon) +
                           " gives a nonpositive y-bound");
    }
    t.bounds = {edge, inf, 0.0, y_hi, false};
  }
  return t;
}

double default_epsilon(SystemId id, const SystemParams& params) {
  if (!has_interior_saddle(classify_region(id, params))) {
    throw std::invalid_argument("trapping rectangles need an interior saddle");
  }
  const double xs = saddle_x(id, params);
  double eps = xs / 2.0;
  while (eps > 0.0 && !(params.alpha1 / (xs + eps) - params.a1 > 0.0)) {
    eps /= 2.0;
  }
  if (!(eps > 0.0)) throw InvalidEpsilon("no admissible epsilon");
  return eps;
}

// ---------------------------------------------------------------------------

const char* to_string(Fate f) noexcept {
  switch (f) {
    case Fate::Lower: return "lower";
    case Fate::Upper: return "upper";
    case Fate::Saddle: return "saddle";
    case Fate::Undecided: return "undecided";
    case Fate::Undefined: return "undefined";
  }
  return "unknown";
}

std::optional<Fate> parse_fate(std::string_view text) noexcept {
  for (Fate f : {Fate::Lower, Fate::Upper, Fate::Saddle, Fate::Undecided,
                 Fate::Undefined}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

const char* to_string(Evidence e) noexcept {
  switch (e) {
    case Evidence::None: return "none";
    case Evidence::TrapEntry: return "trap_entry";
    case Evidence::SaddleProximity: return "saddle_proximity";
    case Evidence::AxisEquilibrium: return "axis_equilibrium";
    case Evidence::Divergence: return "divergence";
  }
  return "unknown";
}

OrbitClassifier::OrbitClassifier(SystemId id, const SystemParams& params)
    : id_(id),
      params_(params),
      region_(classify_region(id, params)),
      axis_x_(params.alpha1 / params.a1) {
  params.validate(id);
  if (has_interior_saddle(region_)) {
    const double xs = saddle_x(id, params);
    saddle_ = Point{xs, params.alpha1 / xs - params.a1};
    const double eps = default_epsilon(id, params);
    lower_ = trap(id, params, TrapSide::LowerTrap, eps);
    upper_ = trap(id, params, TrapSide::UpperTrap, eps);
  }
}

std::optional<OrbitFate> OrbitClassifier::certify(const Point& p) const noexcept {
  OrbitFate f;
  f.last = p;
  if (saddle_) {
    if (upper_->contains(p)) {
      f.tag = Fate::Upper;
      f.evidence = Evidence::TrapEntry;
      f.certificate = upper_;
      return f;
    }
    if (lower_->contains(p)) {
      f.tag = Fate::Lower;
      f.evidence = Evidence::TrapEntry;
      f.certificate = lower_;
      return f;
    }
    if (std::max(std::abs(p.x - saddle_->x), std::abs(p.y - saddle_->y)) <=
        kSaddleTolerance) {
      f.tag = Fate::Saddle;
      f.evidence = Evidence::SaddleProximity;
      return f;
    }
    return std::nullopt;
  }
  // The positive x-axis maps onto (alpha1/A1, 0) in one step.
  if (p.y == 0.0) {
    f.tag = Fate::Lower;
    f.evidence = Evidence::AxisEquilibrium;
    return f;
  }
  // Off the axis the axis equilibrium attracts only in the GAS region; in
  // the other saddle-free regions every such orbit diverges.
  if (region_ == Region::R1114_GAS && p.y < kAxisYTolerance &&
      std::abs(p.x - axis_x_) <= kAxisXTolerance) {
    f.tag = Fate::Lower;
    f.evidence = Evidence::AxisEquilibrium;
    return f;
  }
  if (p.y > kDivergenceY && p.x < kDivergenceX) {
    f.tag = Fate::Upper;
    f.evidence = Evidence::Divergence;
    return f;
  }
  return std::nullopt;
}

OrbitFate OrbitClassifier::classify(const Point& start,
                                    std::size_t max_iter) const {
  OrbitFate fate;
  fate.last = start;
  if (!is_state(start)) {
    fate.tag = Fate::Undefined;
    return fate;
  }
  Point p = start;
  for (std::size_t n = 0;; ++n) {
    if (auto cert = certify(p)) {
      cert->iterations_used = n;
      return *cert;
    }
    if (n == max_iter) {
      fate.tag = Fate::Undecided;
      fate.iterations_used = n;
      fate.last = p;
      return fate;
    }
    auto next = try_step(id_, params_, p);
    if (!next) {
      fate.tag = Fate::Undefined;
      fate.iterations_used = n;
      fate.last = p;
      return fate;
    }
    p = *next;
  }
}

OrbitFate classify_orbit(SystemId id, const SystemParams& params,
                         const Point& start, std::size_t max_iter) {
  return OrbitClassifier(id, params).classify(start, max_iter);
}

// ---------------------------------------------------------------------------

bool HypothesisReport::all_passed() const noexcept {
  return applicable && std::all_of(checks.begin(), checks.end(),
                                   [](const auto& c) { return c.passed; });
}

std::vector<std::string> HypothesisReport::failed() const {
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (!c.passed) names.push_back(c.name);
  }
  return names;
}

HypothesisReport check_theorem_hypotheses(SystemId id,
                                          const SystemParams& params,
                                          std::size_t n_samples,
                                          std::uint64_t seed) {
  params.validate(id);
  HypothesisReport report;
  report.det_at_saddle = std::numeric_limits<double>::quiet_NaN();
  const auto z = interior_saddle(id, params);
  if (!z) return report;
  report.applicable = true;
  const Point zp = z->point;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  // Delta = (0,inf)^2 & int(Q1(z) u Q3(z)); nonempty iff z is not a corner
  // of the region, i.e. both coordinates positive.
  const bool delta_nonempty = zp.x > 0.0 && zp.y > 0.0;
  add("delta_nonempty", delta_nonempty, "saddle " + fmt_point(zp));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t fy_bad = 0;
  std::size_t gx_bad = 0;
  std::size_t sampled = 0;
  Point first_bad{};
  if (delta_nonempty) {
    for (std::size_t i = 0; i < n_samples; ++i) {
      Point s;
      if (i % 2 == 0) {
        // int Q3(z) within the open quadrant
        s = {zp.x * std::max(unit(rng), 1e-12), zp.y * std::max(unit(rng), 1e-12)};
        s.x = std::min(s.x, std::nextafter(zp.x, 0.0));
        s.y = std::min(s.y, std::nextafter(zp.y, 0.0));
      } else {
        // int Q1(z), log-spread over three decades
        s = {zp.x * (1.0 + std::pow(10.0, 3.0 * unit(rng) - 2.0)),
             zp.y * (1.0 + std::pow(10.0, 3.0 * unit(rng) - 2.0))};
      }
      const Matrix2 j = jacobian(id, params, s);
      ++sampled;
      if (!(j(0, 1) < 0.0)) {
        if (fy_bad == 0 && gx_bad == 0) first_bad = s;
        ++fy_bad;
      }
      if (!(j(1, 0) < 0.0)) {
        if (fy_bad == 0 && gx_bad == 0) first_bad = s;
        ++gx_bad;
      }
    }
  }
  auto sample_detail = [&](std::size_t bad) {
    std::string d = std::to_string(sampled - bad) + "/" +
                    std::to_string(sampled) + " samples negative";
    if (bad > 0) d += ", first violation at " + fmt_point(first_bad);
    return d;
  };
  add("df_dy_negative", delta_nonempty && fy_bad == 0, sample_detail(fy_bad));
  add("dg_dx_negative", delta_nonempty && gx_bad == 0, sample_detail(gx_bad));

  const double lam = z->lambda;
  const double mu = z->mu;
  add("eigenvalue_ordering",
      lam != 0.0 && std::abs(lam) < 1.0 && 1.0 < mu,
      "lambda=" + fmt_double(lam) + " mu=" + fmt_double(mu));

  const auto& v = *z->eigvec_stable;
  add("eigenspace_not_axis", v[0] != 0.0 && v[1] != 0.0,
      "v=(" + fmt_double(v[0]) + ", " + fmt_double(v[1]) + ")");

  report.det_at_saddle = z->jacobian.det();
  add("det_negative", report.det_at_saddle < 0.0,
      "det=" + fmt_double(report.det_at_saddle));

  // x' depends on y alone and is strictly decreasing, so x' = z.x pins y.
  // For that y > 0, y' is strictly decreasing in x, so y' = z.y pins x.
  {
    const double y_pre = params.alpha1 / zp.x - params.a1;
    bool ok = y_pre > 0.0;
    Point pre{};
    if (ok) {
      const double x_pre = id == SystemId::Sys1106
                               ? params.third * y_pre / zp.y
                               : y_pre / zp.y - params.third;
      pre = {x_pre, y_pre};
      const double scale = 1.0 + std::max(std::abs(zp.x), std::abs(zp.y));
      ok = x_pre > 0.0 &&
           std::max(std::abs(pre.x - zp.x), std::abs(pre.y - zp.y)) <=
               1e-12 * scale;
    }
    add("preimage_unique", ok, "unique preimage " + fmt_point(pre));
  }

  {
    const Point axis{params.alpha1 / params.a1, 0.0};
    const bool in_region = axis.x > 0.0 && axis.y > 0.0;
    const bool in_delta =
        in_region && (in_quadrant_interior(zp, Quadrant::Q1, axis) ||
                      in_quadrant_interior(zp, Quadrant::Q3, axis));
    add("axis_equilibrium_outside_delta", !in_delta,
        "axis equilibrium " + fmt_point(axis));
  }
  return report;
}

}  // namespace cpd
