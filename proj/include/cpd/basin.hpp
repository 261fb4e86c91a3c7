#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "cpd/systems.hpp"

namespace cpd {

struct Window {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
};

/// Fate of every cell center on a width x height grid. Row 0 is the top
/// (largest y) so that rows map directly onto image scanlines.
struct BasinRaster {
  SystemId system = SystemId::Sys1106;
  SystemParams params;
  Window window;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t max_iter = 0;
  std::vector<Fate> cells;  // row-major, size width*height

  Fate at(std::size_t col, std::size_t row) const {
    return cells[row * width + col];
  }
  Point center(std::size_t col, std::size_t row) const;
  double cell_width() const { return (window.x_hi - window.x_lo) / width; }
  double cell_height() const { return (window.y_hi - window.y_lo) / height; }
};

/// Classifies every cell center with OrbitClassifier. Rows are split across
/// workers; the result does not depend on the worker count. Throws
/// std::invalid_argument for an empty window, zero resolution, or a window
/// touching the axes for (11,6).
BasinRaster rasterize(SystemId id, const SystemParams& params,
                      const Window& window, std::size_t width,
                      std::size_t height, std::size_t max_iter,
                      std::size_t workers = 1);

/// Fraction of cells per fate; fates that do not occur are omitted.
std::map<Fate, double> fate_fractions(const BasinRaster& raster);

/// PGM gray level: Lower 64, Upper 192, Saddle 128, Undecided 0,
/// Undefined 255.
std::uint8_t fate_gray(Fate f) noexcept;

/// Binary P5 image, maxval 255.
void write_pgm(std::ostream& out, const BasinRaster& raster);

}  // namespace cpd
