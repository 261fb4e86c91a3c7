#include "cpd/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpd {

std::size_t resolve_workers(std::optional<std::size_t> requested) {
  if (requested) {
    if (*requested == 0) throw std::invalid_argument("workers must be >= 1");
    return *requested;
  }
  const char* env = std::getenv("CPD_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  std::string_view text(env);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw std::invalid_argument("CPD_WORKERS must be a positive integer, got '" +
                                std::string(text) + "'");
  }
  return value;
}

}  // namespace cpd
