#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kvertex/exactalg/ratfunc.hpp"

namespace kvertex::exactalg {

/// Truncated Laurent series in Q with RatFunc coefficients, known exactly
/// for powers min_power() .. order().
class QSeries {
 public:
  QSeries() = default;
  /// Zero series known through `order`, starting at `min_power`.
  QSeries(int min_power, int order);
  QSeries(int min_power, std::vector<RatFunc> coefficients);

  static QSeries constant(const RatFunc& c, int order);

  [[nodiscard]] int min_power() const { return min_power_; }
  [[nodiscard]] int order() const { return min_power_ + static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<RatFunc>& coefficients() const { return coeffs_; }
  /// Coefficient of Q^n; zero below min_power, throws beyond order.
  [[nodiscard]] RatFunc coefficient(int n) const;
  void set_coefficient(int n, RatFunc c);

  [[nodiscard]] QSeries truncated(int order) const;
  [[nodiscard]] QSeries inverse() const;

  /// Coefficientwise monomial substitution (t3 -> (t1 t2)^-1, w_i -> m, ...).
  [[nodiscard]] QSeries map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const;
  [[nodiscard]] QSeries substitute_monomials(
      const std::function<Monomial(const Monomial&)>& f) const;
  /// Q -> c Q: coefficient n scaled by c^n.
  [[nodiscard]] QSeries rescale_q(const RatFunc& c) const;

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries&, const QSeries&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  int min_power_ = 0;
  std::vector<RatFunc> coeffs_;
};

/// a / b with b's lowest coefficient nonzero; throws std::domain_error
/// ("non-invertible series") otherwise.
QSeries series_div(const QSeries& a, const QSeries& b);

/// Calabi-Yau specialization t3 -> (t1 t2)^-1.
Monomial cy_limit(const Monomial& m);

}  // namespace kvertex::exactalg
