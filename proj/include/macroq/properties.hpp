#pragma once

// Seeded property suite: the bound I <= <n> and its equality condition,
// the Lindblad identity, phase-space invariances, agreement of the numeric
// routes, the purity-rate identity and additivity over pure products.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "macroq/fock.hpp"

namespace macroq {

struct CheckOptions {
  std::uint64_t seed = 1;
  int ensemble = 500;
  int cutoff = 6;
  /// Flip the sign of the jump term of L; every I inside the bound checks is
  /// then computed from the broken model.
  bool inject_lindblad_fault = false;
  /// The route triangle builds Wigner grids and is the slowest property.
  bool include_route_triangle = true;
};

struct PropertyOutcome {
  std::string name;
  bool passed = false;
  /// Worst-case slack against the property's threshold; negative on failure.
  double margin = 0.0;
  int cases = 0;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyOutcome> outcomes;
  bool all_passed() const;
};

PropertyReport run_property_suite(const CheckOptions& opt);

/// Independent stream for case `index` of property `stream`.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// rho = G G^H / Tr(G G^H) with G a d x d matrix of standard complex normals.
DensityMatrix random_mixed_state(int dim, std::mt19937_64& rng);

enum class Parity { any, even, odd };
/// Normalized vector of complex normals; with a parity, the other levels are zero.
Ket random_pure_state(int dim, std::mt19937_64& rng, Parity parity = Parity::any);

}  // namespace macroq
