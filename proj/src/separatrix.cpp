#include "cpd/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cpd/parallel.hpp"

namespace cpd {

BisectionFailed::BisectionFailed(double x, const std::string& why)
    : std::runtime_error("bisection failed at x=" + format_double(x) + ": " +
                         why),
      x_(x) {}

bool SeparatrixCurve::covers(double x) const noexcept {
  return !samples.empty() && x >= samples.front().x && x <= samples.back().x;
}

double SeparatrixCurve::operator()(double x) const {
  if (!covers(x)) {
    throw std::out_of_range("x=" + format_double(x) +
                            " outside the sampled span of the curve");
  }
  auto it = std::lower_bound(
      samples.begin(), samples.end(), x,
      [](const Point& s, double v) { return s.x < v; });
  if (it->x == x) return it->y;
  const Point& hi = *it;
  const Point& lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.y + t * (hi.y - lo.y);
}

double SeparatrixCurve::interpolation_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
    const Point& a = samples[i];
    const Point& b = samples[i + 1];
    const Point& c = samples[i + 2];
    const double s1 = (b.y - a.y) / (b.x - a.x);
    const double s2 = (c.y - b.y) / (c.x - b.x);
    const double curvature = 2.0 * std::abs(s2 - s1) / (c.x - a.x);
    const double h = std::max(b.x - a.x, c.x - b.x);
    worst = std::max(worst, curvature * h * h / 8.0);
  }
  return worst;
}

// ---------------------------------------------------------------------------

std::vector<double> separatrix_abscissae(double x_min, double x_max,
                                         double x_saddle, std::size_t n) {
  if (!(x_min > 0.0 && x_min <= x_saddle && x_saddle <= x_max)) {
    throw std::invalid_argument("need 0 < x_min <= x_saddle <= x_max");
  }
  if (n < 3) throw std::invalid_argument("need at least 3 samples");

  const double a = std::max(x_min, 0.8 * x_saddle);
  const double b = std::min(x_max, 1.2 * x_saddle);
  const double outer_left = a - x_min;
  const double outer_right = x_max - b;

  // Outer intervals get at least one sample each when they are nonempty; the
  // inner band gets half of the total (x_saddle included).
  std::size_t nl = outer_left > 0.0 ? 1 : 0;
  std::size_t nr = outer_right > 0.0 ? 1 : 0;
  std::size_t inner = std::max<std::size_t>(n / 2, 1);
  if (inner + nl + nr > n) inner = n - nl - nr;
  std::size_t rest = n - inner - nl - nr;
  if (outer_left + outer_right > 0.0) {
    const auto extra_l = static_cast<std::size_t>(std::llround(
        static_cast<double>(rest) * outer_left / (outer_left + outer_right)));
    nl += std::min(extra_l, rest);
    nr += rest - std::min(extra_l, rest);
  } else {
    inner += rest;
  }

  std::size_t kl = 0;
  std::size_t kr = 0;
  const std::size_t side = inner - 1;
  if (a < x_saddle && b > x_saddle) {
    kl = side / 2;
    kr = side - kl;
  } else if (a < x_saddle) {
    kl = side;
  } else if (b > x_saddle) {
    kr = side;
  } else if (side > 0) {
    // Degenerate window at the saddle; nothing else to place.
    throw std::invalid_argument("window collapses to the saddle abscissa");
  }

  std::vector<double> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < nl; ++i) {
    xs.push_back(x_min + outer_left * static_cast<double>(i) /
                             static_cast<double>(nl));
  }
  for (std::size_t j = kl; j >= 1; --j) {
    const double t = static_cast<double>(j) / static_cast<double>(kl);
    xs.push_back(x_saddle - (x_saddle - a) * t * t * t);
  }
  xs.push_back(x_saddle);
  for (std::size_t j = 1; j <= kr; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(kr);
    xs.push_back(x_saddle + (b - x_saddle) * t * t * t);
  }
  for (std::size_t i = 1; i <= nr; ++i) {
    xs.push_back(b + outer_right * static_cast<double>(i) /
                         static_cast<double>(nr));
  }
  return xs;
}

namespace {

// Fate of (x, y), retrying once with doubled max_iter if undecided.
Fate decided_fate(const OrbitClassifier& classifier, const Point& p,
                  std::size_t max_iter) {
  Fate f = classifier.classify(p, max_iter).tag;
  if (f == Fate::Undecided) f = classifier.classify(p, 2 * max_iter).tag;
  return f;
}

}  // namespace

double separatrix_ordinate(const OrbitClassifier& classifier, double x,
                           double tol, std::size_t max_iter) {
  const auto& saddle = classifier.saddle();
  if (!saddle) throw std::invalid_argument("no interior saddle");

  double lo = 1e-9 * saddle->y;
  double hi = saddle->y;
  {
    const Fate f = decided_fate(classifier, {x, lo}, max_iter);
    if (f == Fate::Saddle) return lo;
    if (f != Fate::Lower) {
      throw BisectionFailed(x, std::string("lower bracket end has fate ") +
                                   to_string(f));
    }
  }
  const double cap = std::ldexp(saddle->y, 30);
  for (;;) {
    const Fate f = decided_fate(classifier, {x, hi}, max_iter);
    if (f == Fate::Upper) break;
    if (f == Fate::Saddle) return hi;
    if (f == Fate::Lower) {
      lo = hi;
      hi *= 2.0;
      if (hi > cap) throw BisectionFailed(x, "no Upper fate below 2^30*y_saddle");
      continue;
    }
    throw BisectionFailed(x, std::string("upper bracket end has fate ") +
                                 to_string(f));
  }

  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    const Fate f = decided_fate(classifier, {x, mid}, max_iter);
    switch (f) {
      case Fate::Upper: hi = mid; break;
      case Fate::Lower: lo = mid; break;
      case Fate::Saddle: return mid;
      default:
        throw BisectionFailed(x, std::string("midpoint ") + format_double(mid) +
                                     " has fate " + to_string(f));
    }
  }
  return lo + (hi - lo) / 2.0;
}

SeparatrixCurve compute_separatrix(SystemId id, const SystemParams& params,
                                   double x_min, double x_max,
                                   std::size_t n_samples, double tol,
                                   std::size_t max_iter, std::size_t workers) {
  params.validate(id);
  if (!has_interior_saddle(classify_region(id, params))) {
    throw std::invalid_argument(
        "the separatrix exists only in the two-equilibria region");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const OrbitClassifier classifier(id, params);
  const Point z = *classifier.saddle();
  const auto xs = separatrix_abscissae(x_min, x_max, z.x, n_samples);

  SeparatrixCurve curve;
  curve.system = id;
  curve.params = params;
  curve.x_min = x_min;
  curve.x_max = x_max;
  curve.bisection_tol = tol;
  curve.max_iter = max_iter;
  curve.saddle = z;
  curve.samples.resize(xs.size());
  parallel_for(xs.size(), workers, [&](std::size_t i) {
    curve.samples[i] = {xs[i], separatrix_ordinate(classifier, xs[i], tol, max_iter)};
  });
  return curve;
}

// ---------------------------------------------------------------------------

namespace {

double allowed_deviation(const SeparatrixCurve& curve) {
  return 10.0 * (curve.bisection_tol + curve.interpolation_error());
}

}  // namespace

double probe_deviation(const SeparatrixCurve& curve, const Point& p) {
  if (!curve.covers(p.x)) {
    throw std::invalid_argument("probe abscissa outside the curve");
  }
  const double offset = p.y - curve(p.x);
  if (std::abs(offset) > allowed_deviation(curve)) {
    throw std::invalid_argument("probe " + format_double(p.x) + "," +
                                format_double(p.y) + " is not on the curve");
  }
  const Point image = step(curve.system, curve.params, p);
  if (!curve.covers(image.x)) {
    throw ImageOutOfRange("image x=" + format_double(image.x) + " of probe x=" +
                          format_double(p.x) + " leaves the curve window");
  }
  return (image.y - curve(image.x)) - offset;
}

InvarianceReport validate_invariance(const SeparatrixCurve& curve,
                                     std::size_t n_probe) {
  if (curve.samples.empty()) throw std::invalid_argument("empty curve");
  InvarianceReport r;
  r.allowed = allowed_deviation(curve);
  const double lo = curve.samples.front().x;
  const double hi = curve.samples.back().x;
  for (std::size_t k = 0; k < n_probe; ++k) {
    const double x = lo + (hi - lo) * (static_cast<double>(k) + 0.5) /
                              static_cast<double>(n_probe);
    const double d = std::abs(probe_deviation(curve, {x, curve(x)}));
    if (d > r.max_deviation || r.probes == 0) {
      r.max_deviation = d;
      r.worst_x = x;
    }
    ++r.probes;
  }
  r.passed = r.max_deviation <= r.allowed;
  return r;
}

TangencyReport tangency_check(const SeparatrixCurve& curve) {
  const double xs = curve.saddle.x;
  std::size_t near_left = 0;
  std::size_t near_right = 0;
  const Point* left = nullptr;
  const Point* right = nullptr;
  for (const auto& s : curve.samples) {
    if (s.x < xs && xs - s.x <= 1e-2) {
      ++near_left;
      if (!left || s.x > left->x) left = &s;
    }
    if (s.x > xs && s.x - xs <= 1e-2) {
      ++near_right;
      if (!right || s.x < right->x) right = &s;
    }
  }
  if (near_left < 2 || near_right < 2) {
    throw InsufficientSamples(
        "tangency check needs two samples within 1e-2 of the saddle on each "
        "side (have " + std::to_string(near_left) + " left, " +
        std::to_string(near_right) + " right)");
  }
  const auto z = interior_saddle(curve.system, curve.params);
  const auto& v = *z->eigvec_stable;

  TangencyReport r;
  r.left = *left;
  r.right = *right;
  r.secant_slope = (right->y - left->y) / (right->x - left->x);
  r.eigen_slope = v[1] / v[0];
  r.difference = std::abs(r.secant_slope - r.eigen_slope);
  r.passed = r.difference <= r.threshold;
  return r;
}

void write_csv(std::ostream& out, const SeparatrixCurve& curve) {
  out << "x,y\n";
  for (const auto& s : curve.samples) {
    out << format_double(s.x) << ',' << format_double(s.y) << '\n';
  }
}

}  // namespace cpd
