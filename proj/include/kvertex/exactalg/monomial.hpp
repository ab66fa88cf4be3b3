#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace kvertex::exactalg {

/// Variables of the coefficient ring: equivariant weights t1, t2, t3 and the
/// framing weights w1, w2 of the rank-2 Quot vertex.
enum class Var : std::size_t { t1 = 0, t2 = 1, t3 = 2, w1 = 3, w2 = 4 };

inline constexpr std::size_t kNumVars = 5;

using Exponents = std::array<std::int32_t, kNumVars>;

/// A monomial t1^(a/2) t2^(b/2) t3^(c/2) w1^(d/2) w2^(e/2), stored by its
/// doubled exponents so that square roots such as kappa^(1/2) stay exact.
///
/// Ordering is lexicographic on the doubled exponent vector. This is a group
/// order, so the leading monomial of a product is the product of the leading
/// monomials.
class Monomial {
 public:
  constexpr Monomial() = default;

  static constexpr Monomial from_doubled(const Exponents& doubled) {
    Monomial m;
    m.doubled_ = doubled;
    return m;
  }

  /// v^power with an integral power.
  static Monomial variable(Var v, std::int32_t power = 1);
  /// kappa = t1 t2 t3.
  static Monomial kappa();
  /// kappa^(1/2).
  static Monomial kappa_half();
  /// t1^a t2^b t3^c with integral exponents.
  static Monomial t(std::int32_t a, std::int32_t b, std::int32_t c);

  [[nodiscard]] constexpr std::int32_t doubled(Var v) const {
    return doubled_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] constexpr const Exponents& doubled() const { return doubled_; }

  [[nodiscard]] bool is_unit() const;
  /// True iff every exponent is an integer (all doubled exponents even).
  [[nodiscard]] bool is_integral() const;
  /// True iff the first nonzero doubled exponent is positive.
  [[nodiscard]] bool is_lex_positive() const;
  /// Square root; only defined when is_integral().
  [[nodiscard]] Monomial sqrt() const;

  [[nodiscard]] Monomial inverse() const;
  [[nodiscard]] Monomial pow(std::int32_t k) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  Monomial& operator*=(const Monomial& other);

  friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;

  /// Canonical text form, e.g. "t1^(1/2) t2^(1/2) t3^(1/2)" or "1".
  [[nodiscard]] std::string to_string() const;

 private:
  Exponents doubled_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Greatest common divisor of the doubled exponents (0 for the unit).
std::int32_t exponent_gcd(const Monomial& m);

}  // namespace kvertex::exactalg
