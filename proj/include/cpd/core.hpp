#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpd {

/// A state (x, y) of a planar system. Both coordinates are finite and
/// nonnegative for every state the library produces.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// True when the point is a legal state: finite and in the closed positive
/// quadrant.
bool is_state(const Point& p) noexcept;

/// Raised when a map is evaluated where one of its denominators vanishes
/// (or the result is not a finite state).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Southeast partial order: a precedes b iff a.x <= b.x and a.y >= b.y.
bool se_leq(const Point& a, const Point& b) noexcept;

/// Either a precedes b or b precedes a.
bool se_comparable(const Point& a, const Point& b) noexcept;

/// Closed quadrants relative to a base point:
///   Q1: u >= x, v >= y     Q2: u <= x, v >= y
///   Q3: u <= x, v <= y     Q4: u >= x, v <= y
enum class Quadrant { Q1, Q2, Q3, Q4 };

bool in_quadrant(const Point& base, Quadrant q, const Point& p) noexcept;

/// Interior of the quadrant (all inequalities strict).
bool in_quadrant_interior(const Point& base, Quadrant q,
                          const Point& p) noexcept;

enum class TraceEnd { MaxIterations, EnteredTrap, DomainError, ConvergedToFixedPoint };

const char* to_string(TraceEnd end) noexcept;

struct OrbitTrace {
  std::vector<Point> points;
  TraceEnd terminated_by = TraceEnd::MaxIterations;
};

/// One application of a planar map. Returns nullopt where the map is
/// undefined at the argument.
using StepFunction = std::function<std::optional<Point>(const Point&)>;

/// Records start, T(start), ..., T^n(start). Stops early with
/// TraceEnd::DomainError when the next image is undefined; the last recorded
/// point is then the last valid state.
OrbitTrace iterate_map(const StepFunction& step, const Point& start,
                       std::size_t n);

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits).
std::string format_double(double v);

}  // namespace cpd
