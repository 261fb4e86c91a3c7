#include "cpd/core.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cpd {

bool is_state(const Point& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0;
}

bool se_leq(const Point& a, const Point& b) noexcept {
  return a.x <= b.x && a.y >= b.y;
}

bool se_comparable(const Point& a, const Point& b) noexcept {
  return se_leq(a, b) || se_leq(b, a);
}

bool in_quadrant(const Point& base, Quadrant q, const Point& p) noexcept {
  switch (q) {
    case Quadrant::Q1: return p.x >= base.x && p.y >= base.y;
    case Quadrant::Q2: return p.x <= base.x && p.y >= base.y;
    case Quadrant::Q3: return p.x <= base.x && p.y <= base.y;
    case Quadrant::Q4: return p.x >= base.x && p.y <= base.y;
  }
  return false;
}

bool in_quadrant_interior(const Point& base, Quadrant q,
                          const Point& p) noexcept {
  switch (q) {
    case Quadrant::Q1: return p.x > base.x && p.y > base.y;
    case Quadrant::Q2: return p.x < base.x && p.y > base.y;
    case Quadrant::Q3: return p.x < base.x && p.y < base.y;
    case Quadrant::Q4: return p.x > base.x && p.y < base.y;
  }
  return false;
}

const char* to_string(TraceEnd end) noexcept {
  switch (end) {
    case TraceEnd::MaxIterations: return "max_iterations";
    case TraceEnd::EnteredTrap: return "entered_trap";
    case TraceEnd::DomainError: return "domain_error";
    case TraceEnd::ConvergedToFixedPoint: return "converged_to_fixed_point";
  }
  return "unknown";
}

OrbitTrace iterate_map(const StepFunction& step, const Point& start,
                       std::size_t n) {
  OrbitTrace trace;
  trace.points.reserve(n + 1);
  trace.points.push_back(start);
  for (std::size_t k = 0; k < n; ++k) {
    auto next = step(trace.points.back());
    if (!next) {
      trace.terminated_by = TraceEnd::DomainError;
      return trace;
    }
    trace.points.push_back(*next);
  }
  trace.terminated_by = TraceEnd::MaxIterations;
  return trace;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace cpd
