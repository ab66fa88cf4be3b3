#include "kvertex/exactalg/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace kvertex::exactalg {

QSeries::QSeries(int min_power, int order) : min_power_(min_power) {
  if (order < min_power - 1) throw std::invalid_argument("order below minimum power");
  coeffs_.resize(static_cast<std::size_t>(order - min_power + 1));
}

QSeries::QSeries(int min_power, std::vector<RatFunc> coefficients)
    : min_power_(min_power), coeffs_(std::move(coefficients)) {}

QSeries QSeries::constant(const RatFunc& c, int order) {
  QSeries s(0, order);
  if (order >= 0) s.coeffs_[0] = c;
  return s;
}

RatFunc QSeries::coefficient(int n) const {
  if (n < min_power_) return {};
  if (n > order()) throw std::out_of_range("coefficient beyond truncation order");
  return coeffs_[static_cast<std::size_t>(n - min_power_)];
}

void QSeries::set_coefficient(int n, RatFunc c) {
  if (n < min_power_ || n > order()) throw std::out_of_range("coefficient outside series range");
  coeffs_[static_cast<std::size_t>(n - min_power_)] = std::move(c);
}

QSeries QSeries::truncated(int order) const {
  if (order > this->order()) throw std::out_of_range("cannot extend truncation order");
  QSeries s = *this;
  s.coeffs_.resize(static_cast<std::size_t>(std::max(0, order - min_power_ + 1)));
  return s;
}

QSeries QSeries::inverse() const {
  return series_div(constant(RatFunc(1), order() - min_power_), *this);
}

QSeries QSeries::map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const {
  QSeries s = *this;
  for (auto& c : s.coeffs_) c = f(c);
  return s;
}

QSeries QSeries::substitute_monomials(const std::function<Monomial(const Monomial&)>& f) const {
  return map_coefficients([&](const RatFunc& c) { return c.map_monomials(f); });
}

QSeries QSeries::rescale_q(const RatFunc& c) const {
  QSeries s = *this;
  for (int n = min_power_; n <= order(); ++n) {
    auto& slot = s.coeffs_[static_cast<std::size_t>(n - min_power_)];
    if (!slot.is_zero()) slot *= c.pow(n);
  }
  return s;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  const int lo = std::min(min_power_, other.min_power_);
  const int hi = std::min(order(), other.order());
  QSeries s(lo, hi);
  for (int n = lo; n <= hi; ++n) {
    RatFunc c = coefficient(n);
    c += other.coefficient(n);
    s.coeffs_[static_cast<std::size_t>(n - lo)] = std::move(c);
  }
  return *this = std::move(s);
}

QSeries& QSeries::operator-=(const QSeries& other) {
  return *this += other.map_coefficients([](const RatFunc& c) { return -c; });
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  // Known through min(a.order + b.min, b.order + a.min).
  const int lo = a.min_power_ + b.min_power_;
  const int hi = std::min(a.order() + b.min_power_, b.order() + a.min_power_);
  QSeries s(lo, hi);
  for (int n = lo; n <= hi; ++n) {
    RatFunc c;
    for (int i = a.min_power_; i <= n - b.min_power_; ++i) {
      const RatFunc& x = a.coeffs_[static_cast<std::size_t>(i - a.min_power_)];
      const RatFunc& y = b.coeffs_[static_cast<std::size_t>(n - i - b.min_power_)];
      if (x.is_zero() || y.is_zero()) continue;
      c += x * y;
    }
    s.coeffs_[static_cast<std::size_t>(n - lo)] = std::move(c);
  }
  return s;
}

QSeries series_div(const QSeries& a, const QSeries& b) {
  if (b.coefficients().empty() || b.coefficients().front().is_zero()) {
    throw std::domain_error("non-invertible series");
  }
  const int am = a.min_power();
  const int bm = b.min_power();
  const int len = std::min(a.order() - am, b.order() - bm);
  const RatFunc lead_inv = b.coefficients().front().inverse();
  std::vector<RatFunc> out(static_cast<std::size_t>(std::max(0, len + 1)));
  for (int k = 0; k <= len; ++k) {
    RatFunc c = a.coefficients()[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k; ++j) {
      const RatFunc& y = b.coefficients()[static_cast<std::size_t>(j)];
      const RatFunc& x = out[static_cast<std::size_t>(k - j)];
      if (x.is_zero() || y.is_zero()) continue;
      c -= x * y;
    }
    out[static_cast<std::size_t>(k)] = c * lead_inv;
  }
  return QSeries(am - bm, std::move(out));
}

Monomial cy_limit(const Monomial& m) {
  Exponents e = m.doubled();
  e[0] -= e[2];
  e[1] -= e[2];
  e[2] = 0;
  return Monomial::from_doubled(e);
}

std::string QSeries::to_string() const {
  std::string out;
  for (int n = min_power_; n <= order(); ++n) {
    const RatFunc& c = coeffs_[static_cast<std::size_t>(n - min_power_)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (n != 0) out += "*Q^" + std::to_string(n);
  }
  if (out.empty()) out = "0";
  return out + " + O(Q^" + std::to_string(order() + 1) + ")";
}

}  // namespace kvertex::exactalg
