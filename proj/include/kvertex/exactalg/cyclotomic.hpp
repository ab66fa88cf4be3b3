#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "kvertex/exactalg/laurent_poly.hpp"

namespace kvertex::exactalg {

/// Integer coefficients of the cyclotomic polynomial Phi_d, lowest degree
/// first. Thread-safe, cached.
const std::vector<Integer>& cyclotomic_coefficients(int d);

/// Value Phi_d(1): 0 for d = 1, p for d = p^k, 1 otherwise.
Integer cyclotomic_at_one(int d);

/// Irreducible factor Phi_order(base) of the Laurent ring, with base a
/// primitive lex-positive monomial (exponent_gcd(base) == 1).
struct CycloFactor {
  Monomial base;
  int order = 1;

  [[nodiscard]] LaurentPoly polynomial() const;
  [[nodiscard]] int degree() const;  // in the base variable

  friend auto operator<=>(const CycloFactor&, const CycloFactor&) = default;
  friend bool operator==(const CycloFactor&, const CycloFactor&) = default;
};

/// Splits m = base^power with base primitive and lex-positive; power may be
/// negative. Precondition: m is not the unit.
std::pair<Monomial, int> primitive_root(const Monomial& m);

/// Cyclotomic factorization of base^power - 1 (power > 0).
std::vector<CycloFactor> factor_binomial(const Monomial& base, int power);

/// Factors of Phi_order(z^power) over primitive z (power > 0).
std::vector<CycloFactor> factor_cyclotomic_power(const Monomial& z, int order, int power);

/// p * Phi_order(base)^k.
LaurentPoly multiply_by_factor(const LaurentPoly& p, const CycloFactor& f, int k = 1);

/// Exact quotient p / f, if f divides p. Works coset by coset in base, so
/// the cost is linear in the size of p.
std::optional<LaurentPoly> divide_by_factor(const LaurentPoly& p, const CycloFactor& f);

}  // namespace kvertex::exactalg
