#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kvertex/exactalg/monomial.hpp"
#include "kvertex/exactalg/rational.hpp"

namespace kvertex::exactalg {

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse Laurent polynomial over Q in t1, t2, t3, w1, w2 with half-integer
/// exponents. Terms are kept sorted by ascending monomial with no zero
/// coefficients, so structural equality is value equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(int c);              // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const Monomial& m, const Rational& c = 1);

  /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
  static LaurentPoly from_terms(std::vector<Term> terms);
  static LaurentPoly variable(Var v) { return LaurentPoly(Monomial::variable(v)); }

  [[nodiscard]] std::span<const Term> terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
  /// Lex-greatest term; precondition: nonzero.
  [[nodiscard]] const Term& leading() const { return terms_.back(); }
  /// Lex-least term; precondition: nonzero.
  [[nodiscard]] const Term& trailing() const { return terms_.front(); }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  /// Constant term (coefficient of the unit monomial).
  [[nodiscard]] Rational constant_term() const { return coefficient(Monomial{}); }
  /// Value at t = w = 1.
  [[nodiscard]] Rational coefficient_sum() const;
  /// True iff no term involves the given variable.
  [[nodiscard]] bool is_free_of(Var v) const;
  [[nodiscard]] bool has_integer_coefficients() const;

  /// Involution negating every exponent (duals of torus characters).
  [[nodiscard]] LaurentPoly bar() const;
  [[nodiscard]] LaurentPoly times(const Monomial& m) const;
  [[nodiscard]] LaurentPoly times(const Rational& c) const;
  [[nodiscard]] LaurentPoly pow(unsigned k) const;
  /// Applies an arbitrary exponent map to every monomial and recombines.
  [[nodiscard]] LaurentPoly map_monomials(
      const std::function<Monomial(const Monomial&)>& f) const;

  /// Exact quotient if divisor divides *this in the Laurent ring.
  [[nodiscard]] std::optional<LaurentPoly> exact_divide(
      const LaurentPoly& divisor) const;

  /// Positive rational c such that *this / c has coprime integer
  /// coefficients. Zero for the zero polynomial.
  [[nodiscard]] Rational content() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a) { return a.times(Rational(-1)); }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Adds c * m * other in place.
  void add_scaled(const LaurentPoly& other, const Monomial& m, const Rational& c);

  /// Canonical text form; terms in ascending lex order.
  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace kvertex::exactalg
