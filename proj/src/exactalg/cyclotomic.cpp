#include "kvertex/exactalg/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace kvertex::exactalg {

namespace {

std::vector<Integer> compute_cyclotomic(int d) {
  // x^d - 1 divided by Phi_e for every proper divisor e of d.
  std::vector<Integer> poly(static_cast<std::size_t>(d) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(d)] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    const auto& f = cyclotomic_coefficients(e);
    const std::size_t df = f.size() - 1;
    const std::size_t dp = poly.size() - 1;
    std::vector<Integer> q(dp - df + 1, 0);
    for (std::size_t k = dp + 1; k-- > df;) {
      Integer c = poly[k];
      q[k - df] = c;
      for (std::size_t i = 0; i <= df; ++i) poly[k - df + i] -= c * f[i];
    }
    poly = std::move(q);
  }
  return poly;
}

bool is_prime_power(int d, int& prime) {
  for (int p = 2; p <= d; ++p) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    prime = p;
    return d == 1;
  }
  return false;
}

}  // namespace

const std::vector<Integer>& cyclotomic_coefficients(int d) {
  if (d < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, std::vector<Integer>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  std::vector<Integer> coeffs;
  if (d == 1) {
    coeffs = {-1, 1};
  } else {
    coeffs = compute_cyclotomic(d);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(d, std::move(coeffs)).first->second;
}

Integer cyclotomic_at_one(int d) {
  if (d == 1) return 0;
  int p = 0;
  if (is_prime_power(d, p)) return p;
  return 1;
}

LaurentPoly CycloFactor::polynomial() const {
  const auto& c = cyclotomic_coefficients(order);
  std::vector<Term> terms;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0) terms.push_back({base.pow(static_cast<std::int32_t>(k)), Rational(c[k])});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

int CycloFactor::degree() const {
  return static_cast<int>(cyclotomic_coefficients(order).size()) - 1;
}

std::pair<Monomial, int> primitive_root(const Monomial& m) {
  const std::int32_t g = exponent_gcd(m);
  if (g == 0) throw std::invalid_argument("primitive root of the unit monomial");
  Exponents e{};
  for (std::size_t i = 0; i < kNumVars; ++i) e[i] = m.doubled()[i] / g;
  Monomial base = Monomial::from_doubled(e);
  if (base.is_lex_positive()) return {base, g};
  return {base.inverse(), -g};
}

std::vector<CycloFactor> factor_binomial(const Monomial& base, int power) {
  std::vector<CycloFactor> out;
  for (int d = 1; d <= power; ++d) {
    if (power % d == 0) out.push_back({base, d});
  }
  return out;
}

std::vector<CycloFactor> factor_cyclotomic_power(const Monomial& z, int order, int power) {
  // Roots of Phi_order(z^power) are the z of multiplicative order e with
  // e / gcd(e, power) == order.
  std::vector<CycloFactor> out;
  const int n = order * power;
  for (int e = 1; e <= n; ++e) {
    if (n % e == 0 && e / std::gcd(e, power) == order) out.push_back({z, e});
  }
  return out;
}

LaurentPoly multiply_by_factor(const LaurentPoly& p, const CycloFactor& f, int k) {
  LaurentPoly out = p;
  const LaurentPoly poly = f.polynomial();
  for (int i = 0; i < k; ++i) {
    LaurentPoly next;
    for (const auto& t : poly.terms()) next.add_scaled(out, t.monomial, t.coefficient);
    out = std::move(next);
  }
  return out;
}

std::optional<LaurentPoly> divide_by_factor(const LaurentPoly& p, const CycloFactor& f) {
  if (p.is_zero()) return LaurentPoly{};
  const auto& fc = cyclotomic_coefficients(f.order);
  const int deg = static_cast<int>(fc.size()) - 1;
  std::size_t pivot = 0;
  while (f.base.doubled()[pivot] == 0) ++pivot;
  const std::int32_t step = f.base.doubled()[pivot];

  // Group terms into cosets of the subgroup generated by base.
  struct Coset {
    std::map<std::int64_t, Rational> coeffs;
  };
  std::unordered_map<Monomial, Coset, MonomialHash> cosets;
  for (const auto& t : p.terms()) {
    const std::int32_t e = t.monomial.doubled()[pivot];
    std::int32_t j = e >= 0 ? e / step : -((-e + step - 1) / step);
    Monomial rep = t.monomial / f.base.pow(j);
    cosets[rep].coeffs[j] = t.coefficient;
  }

  std::vector<Term> quotient;
  for (auto& [rep, coset] : cosets) {
    const std::int64_t lo = coset.coeffs.begin()->first;
    const std::int64_t hi = coset.coeffs.rbegin()->first;
    if (hi - lo < deg) return std::nullopt;
    std::vector<Rational> dense(static_cast<std::size_t>(hi - lo + 1), 0);
    for (auto& [j, c] : coset.coeffs) dense[static_cast<std::size_t>(j - lo)] = c;
    // Phi_d is monic, so synthetic division from the top is exact.
    for (std::int64_t k = hi - lo; k >= deg; --k) {
      Rational c = dense[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      for (int i = 0; i <= deg; ++i) {
        if (fc[static_cast<std::size_t>(i)] != 0) {
          dense[static_cast<std::size_t>(k - deg + i)] -= c * fc[static_cast<std::size_t>(i)];
        }
      }
      quotient.push_back({rep * f.base.pow(static_cast<std::int32_t>(k - deg + lo)), c});
    }
    for (int k = 0; k < deg; ++k) {
      if (dense[static_cast<std::size_t>(k)] != 0) return std::nullopt;
    }
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

}  // namespace kvertex::exactalg
