#include "cpd/basin.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cpd/parallel.hpp"

namespace cpd {

Point BasinRaster::center(std::size_t col, std::size_t row) const {
  const double x = window.x_lo + (static_cast<double>(col) + 0.5) * cell_width();
  const double y =
      window.y_hi - (static_cast<double>(row) + 0.5) * cell_height();
  return {x, y};
}

BasinRaster rasterize(SystemId id, const SystemParams& params,
                      const Window& window, std::size_t width,
                      std::size_t height, std::size_t max_iter,
                      std::size_t workers) {
  params.validate(id);
  const bool finite = std::isfinite(window.x_lo) && std::isfinite(window.x_hi) &&
                      std::isfinite(window.y_lo) && std::isfinite(window.y_hi);
  if (!finite || !(window.x_lo < window.x_hi) || !(window.y_lo < window.y_hi)) {
    throw std::invalid_argument("window must satisfy x_lo < x_hi and y_lo < y_hi");
  }
  if (width == 0 || height == 0) {
    throw std::invalid_argument("grid resolution must be at least 1x1");
  }
  if (id == SystemId::Sys1106 && !(window.x_lo > 0.0 && window.y_lo > 0.0)) {
    throw std::invalid_argument(
        "window must lie inside the open positive quadrant for 11-06");
  }
  if (window.x_lo < 0.0 || window.y_lo < 0.0) {
    throw std::invalid_argument("window must lie in the closed positive quadrant");
  }

  BasinRaster r;
  r.system = id;
  r.params = params;
  r.window = window;
  r.width = width;
  r.height = height;
  r.max_iter = max_iter;
  r.cells.assign(width * height, Fate::Undecided);

  const OrbitClassifier classifier(id, params);
  parallel_for(height, workers, [&](std::size_t row) {
    for (std::size_t col = 0; col < width; ++col) {
      r.cells[row * width + col] =
          classifier.classify(r.center(col, row), max_iter).tag;
    }
  });
  return r;
}

std::map<Fate, double> fate_fractions(const BasinRaster& raster) {
  if (raster.cells.empty()) throw std::invalid_argument("empty raster");
  std::map<Fate, std::size_t> counts;
  for (Fate f : raster.cells) ++counts[f];
  std::map<Fate, double> out;
  const auto total = static_cast<double>(raster.cells.size());
  for (auto [f, c] : counts) out[f] = static_cast<double>(c) / total;
  return out;
}

std::uint8_t fate_gray(Fate f) noexcept {
  switch (f) {
    case Fate::Lower: return 64;
    case Fate::Upper: return 192;
    case Fate::Saddle: return 128;
    case Fate::Undecided: return 0;
    case Fate::Undefined: return 255;
  }
  return 0;
}

void write_pgm(std::ostream& out, const BasinRaster& raster) {
  out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  std::vector<char> bytes(raster.cells.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<char>(fate_gray(raster.cells[i]));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace cpd
