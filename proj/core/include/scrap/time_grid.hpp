#pragma once

#include <cstddef>

namespace scrap {

/// Uniform grid of scaled times T = t / tau_1.
struct TimeGrid {
  double t_start = -6.0;
  double t_end = 12.0;
  std::size_t n_samples = 2001;

  void validate() const;

  double step() const noexcept { return (t_end - t_start) / static_cast<double>(n_samples - 1); }
  double at(std::size_t i) const noexcept {
    return i + 1 == n_samples ? t_end : t_start + static_cast<double>(i) * step();
  }
  std::size_t size() const noexcept { return n_samples; }
};

}  // namespace scrap
