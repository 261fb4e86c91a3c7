#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpd/systems.hpp"

namespace cpd::verify {

/// Identifier of the generator behind every sampled suite.
inline constexpr const char* kRngAlgorithm = "std::mt19937_64";

enum class SuiteStatus { Pass, Fail, NotApplicable };

const char* to_string(SuiteStatus s) noexcept;

struct CaseFailure {
  std::size_t case_index = 0;
  nlohmann::json inputs;
  nlohmann::json observed;
  std::string message;
};

struct SuiteReport {
  std::string name;
  SystemId system = SystemId::Sys1106;
  SystemParams params;
  std::size_t cases_run = 0;
  /// Cases that neither passed nor failed (e.g. Newton did not converge).
  std::size_t inconclusive = 0;
  std::vector<CaseFailure> failures;  // sorted by case_index
  double wall_time_ms = 0.0;
  std::string rng = kRngAlgorithm;
  std::uint64_t seed = 0;
  SuiteStatus status = SuiteStatus::Pass;
  std::string note;

  bool passed() const noexcept { return status != SuiteStatus::Fail; }
};

/// Comparable pairs a <=se b drawn log-uniformly from (1e-3, 1e3)^2; checks
/// T(a) <=se T(b).
SuiteReport run_order_suite(SystemId id, const SystemParams& params,
                            std::size_t n_cases, std::uint64_t seed);

/// The pair check behind run_order_suite: true when a <=se b implies
/// T(a) <=se T(b) (vacuously true for incomparable or undefined pairs).
bool order_preserved(SystemId id, const SystemParams& params, const Point& a,
                     const Point& b);

/// (11,14) with A2 >= 1: y is non-increasing along 50-step orbits from
/// random starts. Throws std::invalid_argument if A2 < 1.
SuiteReport run_monotone_y_suite(const SystemParams& params,
                                 std::size_t n_cases, std::uint64_t seed);

/// (11,6) with gamma2*A1 == alpha1: off the axis y_{n+1} >= y_n for n >= 1
/// along 50-step orbits (cut short if the state overflows). Throws
/// std::invalid_argument off the nonhyperbolic boundary.
SuiteReport run_monotone_y_growth_suite(const SystemParams& params,
                                        std::size_t n_cases,
                                        std::uint64_t seed);

struct NewtonResult {
  bool converged = false;
  Point root;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Damped Newton on T^2(p) - p with the chain-rule Jacobian. A step is halved
/// while it leaves the state space or does not reduce the residual. Stops at
/// residual <= 1e-12.
NewtonResult newton_period_two(SystemId id, const SystemParams& params,
                               const Point& seed, std::size_t max_iter);

/// Seeds a grid x grid mesh over Delta & (0, 4x]x(0, 4y] (x, y the saddle)
/// and runs newton_period_two from each. A converged root that is not an
/// equilibrium (within 1e-8) is a failure; non-convergence is inconclusive.
SuiteReport run_period_two_search(SystemId id, const SystemParams& params,
                                  std::size_t grid, std::size_t newton_iters);

/// One case per hypothesis of check_theorem_hypotheses; NotApplicable when
/// there is no interior saddle.
SuiteReport run_hypothesis_suite(SystemId id, const SystemParams& params);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace cpd::verify
