#pragma once

// Systems (11,6) and (11,14):
//
//   (11,6):  x' = alpha1 / (A1 + y),   y' = gamma2 * y / x
//   (11,14): x' = alpha1 / (A1 + y),   y' = y / (A2 + x)
//
// (11,14) is used in its reduced form (x rescaled by gamma2), so both systems
// carry exactly three positive parameters.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpd/core.hpp"

namespace cpd {

enum class SystemId { Sys1106, Sys1114 };

/// "11-06" / "11-14".
std::string_view to_string(SystemId id) noexcept;
std::optional<SystemId> parse_system_id(std::string_view text) noexcept;

/// Name of the third parameter: "gamma2" for (11,6), "a2" for (11,14).
std::string_view third_param_name(SystemId id) noexcept;

class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(const std::string& what)
      : std::invalid_argument(what) {}
};

struct SystemParams {
  double alpha1 = 1.0;
  double a1 = 1.0;
  double third = 1.0;  // gamma2 for (11,6), A2 for (11,14)

  /// Throws InvalidParams ("alpha1 must be positive", ...) unless all three
  /// values are finite and strictly positive.
  void validate(SystemId id) const;
};

struct Matrix2 {
  std::array<std::array<double, 2>, 2> m{};

  double operator()(int r, int c) const { return m[r][c]; }
  double trace() const { return m[0][0] + m[1][1]; }
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  Matrix2 operator*(const Matrix2& o) const;
};

// ---------------------------------------------------------------------------
// Maps

/// Exact application of the map. Throws DomainError if a denominator is zero
/// (x == 0 for (11,6)) or the image is not a finite state.
Point step(SystemId id, const SystemParams& params, const Point& p);

/// As step(), returning nullopt instead of throwing.
std::optional<Point> try_step(SystemId id, const SystemParams& params,
                              const Point& p) noexcept;

StepFunction step_function(SystemId id, const SystemParams& params);

/// Up to n+1 points of the orbit from start; stops with TraceEnd::DomainError
/// after the last valid state.
OrbitTrace iterate(SystemId id, const SystemParams& params, const Point& start,
                   std::size_t n);

/// Analytic Jacobian of the map at p. Throws DomainError where step does.
Matrix2 jacobian(SystemId id, const SystemParams& params, const Point& p);

// ---------------------------------------------------------------------------
// Equilibria and regions

enum class Stability { LocallyAsymptoticallyStable, Saddle, Nonhyperbolic };

const char* to_string(Stability s) noexcept;

struct EquilibriumReport {
  Point point;
  Matrix2 jacobian;
  /// Characteristic roots ordered so that |lambda| <= |mu|.
  double lambda = 0.0;
  double mu = 0.0;
  Stability stability = Stability::LocallyAsymptoticallyStable;
  /// Unit eigenvector for lambda; present for saddles.
  std::optional<std::array<double, 2>> eigvec_stable;
  /// True for the equilibrium off the x-axis.
  bool interior = false;
};

/// All nonnegative equilibria in closed form. The axis equilibrium
/// (alpha1/A1, 0) always comes first; the interior one (if any) second.
std::vector<EquilibriumReport> equilibria(SystemId id,
                                          const SystemParams& params);

/// The equilibrium at `which` in the order returned by equilibria().
/// Throws std::out_of_range if it does not exist for these parameters.
EquilibriumReport eigen_analysis(SystemId id, const SystemParams& params,
                                 std::size_t which);

enum class Region {
  R1106_SaddleOnly,
  R1106_Nonhyperbolic,
  R1106_TwoEquilibria,
  R1114_GAS,
  R1114_SaddleOnly,
  R1114_Nonhyperbolic,
  R1114_TwoEquilibria,
};

const char* to_string(Region r) noexcept;

/// Short, system-independent label: "SaddleOnly", "Nonhyperbolic",
/// "TwoEquilibria" or "GAS".
const char* region_label(Region r) noexcept;

/// Exact-threshold classification. Divisions are rearranged away:
/// (11,6) compares gamma2*A1 with alpha1; (11,14) compares A2 with 1 and
/// (A2 - 1)*A1 with -alpha1.
Region classify_region(SystemId id, const SystemParams& params);

bool has_interior_saddle(Region r) noexcept;

/// The interior saddle, when the region has one.
std::optional<EquilibriumReport> interior_saddle(SystemId id,
                                                 const SystemParams& params);

// ---------------------------------------------------------------------------
// Trapping rectangles

enum class TrapSide {
  LowerTrap,  // [X+eps, inf) x [0, alpha1/(X+eps) - A1]; orbits -> (alpha1/A1, 0)
  UpperTrap,  // (0, X-eps] x [alpha1/(X-eps) - A1, inf); orbits -> (0, inf)
};

const char* to_string(TrapSide s) noexcept;

/// Axis-aligned rectangle; infinite bounds are allowed. The left edge is open
/// when x_lo_open is set (the (11,6) upper trap excludes x = 0).
struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  bool x_lo_open = false;

  bool contains(const Point& p) const noexcept;
};

struct TrapSpec {
  TrapSide side = TrapSide::LowerTrap;
  double epsilon = 0.0;
  Rect bounds;

  bool contains(const Point& p) const noexcept { return bounds.contains(p); }
};

class InvalidEpsilon : public std::invalid_argument {
 public:
  explicit InvalidEpsilon(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Forward-invariant rectangle on one side of the interior saddle, with
/// X = gamma2 for (11,6) and X = 1 - A2 for (11,14). Throws
/// std::invalid_argument if there is no interior saddle and InvalidEpsilon if
/// the rectangle degenerates (eps <= 0, eps >= X, or a nonpositive y-bound).
TrapSpec trap(SystemId id, const SystemParams& params, TrapSide side,
              double epsilon);

/// X/2, halved until the lower trap's y-bound is positive.
double default_epsilon(SystemId id, const SystemParams& params);

// ---------------------------------------------------------------------------
// Orbit fates

enum class Fate { Lower, Upper, Saddle, Undecided, Undefined };

const char* to_string(Fate f) noexcept;
std::optional<Fate> parse_fate(std::string_view text) noexcept;

/// How a certified fate was established.
enum class Evidence {
  None,              // Undecided / Undefined
  TrapEntry,         // entered a forward-invariant trapping rectangle
  SaddleProximity,   // within kSaddleTolerance of the interior saddle
  AxisEquilibrium,   // at (alpha1/A1, 0) or on the invariant x-axis
  Divergence,        // y > kDivergenceY and x < kDivergenceX
};

const char* to_string(Evidence e) noexcept;

inline constexpr double kSaddleTolerance = 1e-12;
inline constexpr double kAxisYTolerance = 1e-12;
inline constexpr double kAxisXTolerance = 1e-9;
inline constexpr double kDivergenceY = 1e12;
inline constexpr double kDivergenceX = 1e-12;

struct OrbitFate {
  Fate tag = Fate::Undecided;
  std::size_t iterations_used = 0;
  Evidence evidence = Evidence::None;
  /// The trapping rectangle entered, for Evidence::TrapEntry.
  std::optional<TrapSpec> certificate;
  /// Last state examined.
  Point last;
};

/// Precomputes region, saddle and trapping rectangles once so that many
/// starts can be classified cheaply. Immutable after construction.
class OrbitClassifier {
 public:
  OrbitClassifier(SystemId id, const SystemParams& params);

  /// Iterates from start until a certificate applies, the map is undefined,
  /// or max_iter steps have been taken.
  OrbitFate classify(const Point& start, std::size_t max_iter) const;

  SystemId system() const noexcept { return id_; }
  const SystemParams& params() const noexcept { return params_; }
  Region region() const noexcept { return region_; }
  const std::optional<Point>& saddle() const noexcept { return saddle_; }
  const std::optional<TrapSpec>& lower_trap() const noexcept { return lower_; }
  const std::optional<TrapSpec>& upper_trap() const noexcept { return upper_; }

 private:
  std::optional<OrbitFate> certify(const Point& p) const noexcept;

  SystemId id_;
  SystemParams params_;
  Region region_;
  double axis_x_;
  std::optional<Point> saddle_;
  std::optional<TrapSpec> lower_;
  std::optional<TrapSpec> upper_;
};

OrbitFate classify_orbit(SystemId id, const SystemParams& params,
                         const Point& start, std::size_t max_iter);

// ---------------------------------------------------------------------------
// Hypotheses of the invariant-manifold theorems

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct HypothesisReport {
  /// False when the region has no interior saddle; checks is then empty.
  bool applicable = false;
  std::vector<HypothesisCheck> checks;
  /// det J_T at the saddle (NaN when not applicable).
  double det_at_saddle = 0.0;

  bool all_passed() const noexcept;
  std::vector<std::string> failed() const;
};

/// Checks, for the interior saddle z:
///   delta_nonempty, df_dy_negative, dg_dx_negative (sampled over
///   Delta = (0,inf)^2 & int(Q1(z) u Q3(z))), eigenvalue_ordering,
///   eigenspace_not_axis, det_negative, preimage_unique,
///   axis_equilibrium_outside_delta.
HypothesisReport check_theorem_hypotheses(SystemId id,
                                          const SystemParams& params,
                                          std::size_t n_samples = 1000,
                                          std::uint64_t seed = 1);

}  // namespace cpd
