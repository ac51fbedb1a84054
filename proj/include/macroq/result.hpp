#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace macroq {

enum class Route { operator_trace, char_quadrature, wigner_grid, closed_form, low_rank };

/// Stable tag used in JSON/CSV output: "operator", "char-quadrature", ...
std::string_view route_name(Route r);

/// Value of the interference measure I together with the diagnostics every
/// route can provide. `value` is signed: mixed states can have I < 0.
struct MeasureResult {
  double value = 0.0;
  Route route = Route::operator_trace;
  double mean_n = 0.0;
  double purity = 0.0;
  double err_estimate = 0.0;
  std::vector<std::string> warnings;
};

}  // namespace macroq
