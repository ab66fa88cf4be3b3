#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kvertex/exactalg/ratfunc.hpp"

namespace kvertex::exactalg {

/// sign * unit * prod_f Phi_f^{e_f}; negative exponents are denominators.
struct FactoredTerm {
  int sign = 1;
  Monomial unit;
  std::vector<std::pair<CycloFactor, int>> factors;
};

RatFunc to_ratfunc(const FactoredTerm& t);

struct SumOptions {
  unsigned jobs = 1;
  /// Below this many terms the exact symbolic sum is used directly.
  std::size_t modular_threshold = 10;
  bool allow_modular = true;
  std::uint64_t seed = 0x6b76657274657821ULL;
};

struct SumReport {
  bool modular = false;
  std::size_t probe_points = 0;
  std::size_t grid_points = 0;
  int attempts = 0;
};

/// Exact sum of the terms.
///
/// Large sums go through a modular route: a univariate probe along a random
/// monomial curve finds the reduced denominator, the numerator is
/// interpolated on a tensor grid modulo 2^61 - 1 inside per-variable degree
/// bounds, and the identity sum = N / D is then checked at random points
/// modulo an independent prime. A failed check retries with fresh
/// randomness and finally falls back to exact symbolic summation.
RatFunc sum_factored(const std::vector<FactoredTerm>& terms, const SumOptions& opts = {},
                     SumReport* report = nullptr);

/// Exact symbolic summation (balanced tree of RatFunc additions).
RatFunc sum_factored_exact(const std::vector<FactoredTerm>& terms);

}  // namespace kvertex::exactalg
