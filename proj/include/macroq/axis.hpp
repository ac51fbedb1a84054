#pragma once

#include <cstddef>

namespace macroq {

/// Uniform sampling of [min, max] with n points (both ends included).
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int n = 0;

  double spacing() const { return (max - min) / static_cast<double>(n - 1); }
  double at(int i) const { return min + spacing() * static_cast<double>(i); }
  bool operator==(const Axis&) const = default;
};

/// Symmetric axis [-half_width, half_width].
inline Axis symmetric_axis(double half_width, int n) { return {-half_width, half_width, n}; }

}  // namespace macroq
