#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpd/core.hpp"
#include "cpd/systems.hpp"

namespace cpd {

class BisectionFailed : public std::runtime_error {
 public:
  BisectionFailed(double x, const std::string& why);
  double x() const noexcept { return x_; }

 private:
  double x_;
};

class ImageOutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The stable manifold of the interior saddle, tabulated as y = C(x) and
/// interpolated piecewise-linearly between samples.
struct SeparatrixCurve {
  SystemId system = SystemId::Sys1106;
  SystemParams params;
  double x_min = 0.0;
  double x_max = 0.0;
  double bisection_tol = 0.0;
  std::size_t max_iter = 0;
  Point saddle;
  std::vector<Point> samples;  // strictly increasing in x

  /// Interpolated C(x). Throws std::out_of_range outside the sampled span.
  double operator()(double x) const;

  bool covers(double x) const noexcept;

  /// Estimated worst-case linear interpolation error, from second divided
  /// differences of neighbouring samples.
  double interpolation_error() const;
};

/// Sample abscissae on [x_min, x_max]: about half of them graded cubically
/// towards x_saddle inside [0.8, 1.2]*x_saddle, the rest uniform outside.
/// x_saddle itself is always a sample.
std::vector<double> separatrix_abscissae(double x_min, double x_max,
                                         double x_saddle, std::size_t n);

/// Brackets C(x) at each sample by bisecting on the fate of (x, y): Upper
/// fates lie above C, Lower fates below. Each returned y is the midpoint of a
/// bracket no wider than tol. Throws std::invalid_argument on violated
/// preconditions and BisectionFailed when a bracket cannot be established or
/// stays undecided after one retry with doubled max_iter.
SeparatrixCurve compute_separatrix(SystemId id, const SystemParams& params,
                                   double x_min, double x_max,
                                   std::size_t n_samples, double tol,
                                   std::size_t max_iter,
                                   std::size_t workers = 1);

/// C(x) at a single abscissa.
double separatrix_ordinate(const OrbitClassifier& classifier, double x,
                           double tol, std::size_t max_iter);

struct InvarianceReport {
  std::size_t probes = 0;
  double max_deviation = 0.0;
  double worst_x = 0.0;
  double allowed = 0.0;  // 10 * (tol + interpolation error)
  bool passed = false;
};

/// Change in vertical offset from the curve caused by one step:
/// (y' - C(x')) - (y - C(x)). Throws std::invalid_argument if p is farther
/// than the allowed deviation from the curve, ImageOutOfRange if x' leaves
/// the curve window.
double probe_deviation(const SeparatrixCurve& curve, const Point& p);

/// Maps n_probe points of the interpolated curve (evenly spaced in x) and
/// reports the largest probe_deviation.
InvarianceReport validate_invariance(const SeparatrixCurve& curve,
                                     std::size_t n_probe);

struct TangencyReport {
  double secant_slope = 0.0;
  double eigen_slope = 0.0;
  double difference = 0.0;
  double threshold = 1e-3;
  Point left;
  Point right;
  bool passed = false;
};

/// Compares the central secant through the nearest samples on either side of
/// the saddle with the slope of the stable eigenvector. Requires at least two
/// samples within 1e-2 of the saddle abscissa on each side.
TangencyReport tangency_check(const SeparatrixCurve& curve);

/// Header "x,y" then one shortest round-trip row per sample.
void write_csv(std::ostream& out, const SeparatrixCurve& curve);

}  // namespace cpd
