#pragma once

// Text formats for sampled phase-space functions.
//
//   WIGNER-GRID v1
//   x <min> <max> <n>
//   p <min> <max> <n>
//   # key=value            (optional, any number; convention=alpha-plane is written first)
//   n_x rows of n_p decimal numbers, row i holding W(x_i, p_0 .. p_{n-1})
//
// CHAR-GRID v1 is identical with axis tags `xr`/`xi` and complex tokens
// written as `a+bi` / `a-bi`. Numbers use the shortest representation that
// parses back to the same double, so a save/load round trip is bit-exact.

#include <iosfwd>
#include <string>
#include <vector>

#include "macroq/phase_space.hpp"

namespace macroq {

struct LoadOptions {
  double norm_tol = 0.02;
  /// Raise NormalizationError instead of warning when |Integral W - 1| > norm_tol.
  bool strict_normalization = false;
};

struct LoadedWigner {
  WignerGrid grid;
  std::vector<std::string> warnings;
};

struct LoadedChar {
  CharGrid grid;
  std::vector<std::string> warnings;
};

void write_wigner(std::ostream& os, const WignerGrid& grid);
void save_wigner(const std::string& path, const WignerGrid& grid);
LoadedWigner read_wigner(std::istream& is, const LoadOptions& opt = {});
LoadedWigner load_wigner(const std::string& path, const LoadOptions& opt = {});

void write_char(std::ostream& os, const CharGrid& grid);
void save_char(const std::string& path, const CharGrid& grid);
/// Warns when chi(0) (if on the grid) is off by more than 1e-6 or |chi| > 1 + 1e-6.
LoadedChar read_char(std::istream& is);
LoadedChar load_char(const std::string& path);

}  // namespace macroq
