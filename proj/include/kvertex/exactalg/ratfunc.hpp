#pragma once

#include <map>
#include <string>

#include "kvertex/exactalg/cyclotomic.hpp"
#include "kvertex/exactalg/laurent_poly.hpp"

namespace kvertex::exactalg {

/// Exact rational function in the Laurent variables.
///
/// Normal form: value = numerator / (product of denominator factors). Each
/// factor is monic with lex-least monomial 1. Cyclotomic factors are
/// irreducible and pairwise coprime, and the numerator is not divisible by
/// any of them, so the representation is unique whenever no general factor
/// is present. General factors (anything that does not split into cyclotomic
/// binomials) only arise from inverting unusual polynomials; equality then
/// falls back to cross-multiplication.
class RatFunc {
 public:
  struct PolyLess {
    bool operator()(const LaurentPoly& a, const LaurentPoly& b) const;
  };
  using CycloMap = std::map<CycloFactor, int>;
  using GeneralMap = std::map<LaurentPoly, int, PolyLess>;

  RatFunc() = default;
  RatFunc(LaurentPoly numerator);  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : RatFunc(LaurentPoly(c)) {}  // NOLINT
  RatFunc(int c) : RatFunc(LaurentPoly(c)) {}              // NOLINT

  /// Canonical representative of num / den; throws std::domain_error
  /// ("division by zero") when den == 0.
  static RatFunc normalize(const LaurentPoly& num, const LaurentPoly& den);
  /// 1 / (base^power - 1) style helpers used by the vertex code.
  static RatFunc from_factors(LaurentPoly numerator, CycloMap cyclo);

  [[nodiscard]] const LaurentPoly& numerator() const { return num_; }
  [[nodiscard]] const CycloMap& cyclo_factors() const { return cyclo_; }
  [[nodiscard]] const GeneralMap& general_factors() const { return general_; }
  /// Expanded denominator polynomial.
  [[nodiscard]] LaurentPoly denominator() const;

  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return cyclo_.empty() && general_.empty(); }
  [[nodiscard]] bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  /// Numerator of a polynomial value; throws std::domain_error otherwise.
  [[nodiscard]] const LaurentPoly& as_polynomial() const;
  [[nodiscard]] bool is_free_of(Var v) const;

  [[nodiscard]] RatFunc inverse() const;
  [[nodiscard]] RatFunc bar() const;
  [[nodiscard]] RatFunc times(const Monomial& m) const;
  [[nodiscard]] RatFunc times(const Rational& c) const;
  [[nodiscard]] RatFunc pow(int k) const;

  /// Applies a group homomorphism of exponent vectors. Throws
  /// std::domain_error("singular specialization") if a denominator factor
  /// maps to zero.
  [[nodiscard]] RatFunc map_monomials(const std::function<Monomial(const Monomial&)>& f) const;

  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(const RatFunc& a) { return a.times(Rational(-1)); }
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  /// "num" or "(num)/(den)" with both parts expanded canonically.
  [[nodiscard]] std::string to_string() const;

 private:
  // Cancels common factors and moves factor content into the numerator.
  void reduce();
  void reduce_against(LaurentPoly& num, CycloMap& cyclo, GeneralMap& general);
  // Splits p = unit * (cyclotomic factors) * (general remainder).
  static void factor_into(const LaurentPoly& p, LaurentPoly& unit_part, CycloMap& cyclo,
                          GeneralMap& general);

  LaurentPoly num_;
  CycloMap cyclo_;
  GeneralMap general_;
};

}  // namespace kvertex::exactalg
