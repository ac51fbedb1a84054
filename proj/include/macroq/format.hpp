#pragma once

#include <string>

namespace macroq {

/// 12 significant digits, '.' decimal point whatever the locale; -0 prints as 0.
std::string format_number(double v);
/// `v` rounded to 12 significant digits (what format_number prints).
double round_sig12(double v);
/// Shortest text that parses back to exactly `v`.
std::string format_exact(double v);

}  // namespace macroq
