#pragma once

#include <vector>

#include "kvertex/exactalg/laurent_poly.hpp"

namespace kvertex::qcombi {

using exactalg::LaurentPoly;

/// [n] = (-1)^{n-1} (s^n - s^-n) / (s - s^-1) with s = kappa^{1/2}.
/// Satisfies [-n] = -[n].
LaurentPoly quantum_int(int n);

/// [1][2]...[n]; throws std::invalid_argument for n < 0.
LaurentPoly quantum_factorial(int n);

/// kappa^{k/2}.
LaurentPoly kappa_power_half(int k);

/// (-kappa^{1/2})^k.
LaurentPoly neg_sqrt_kappa_power(int k);

/// Evaluates a polynomial in kappa^{1/2} at kappa = 1.
exactalg::Rational at_kappa_one(const LaurentPoly& p);

}  // namespace kvertex::qcombi
