#include "kvertex/qcombi/quantum.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace kvertex::qcombi {

using exactalg::Monomial;
using exactalg::Rational;

LaurentPoly kappa_power_half(int k) { return LaurentPoly(Monomial::kappa_half().pow(k)); }

LaurentPoly neg_sqrt_kappa_power(int k) {
  return kappa_power_half(k).times(Rational(k % 2 == 0 ? 1 : -1));
}

LaurentPoly quantum_int(int n) {
  if (n == 0) return {};
  if (n < 0) return -quantum_int(-n);
  static std::mutex mu;
  static std::map<int, LaurentPoly> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<exactalg::Term> terms;
  const Rational sign(n % 2 == 1 ? 1 : -1);
  for (int k = 0; k < n; ++k) {
    terms.push_back({Monomial::kappa_half().pow(n - 1 - 2 * k), sign});
  }
  return cache[n] = LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly quantum_factorial(int n) {
  if (n < 0) throw std::invalid_argument("quantum factorial of a negative integer");
  LaurentPoly out(1);
  for (int k = 2; k <= n; ++k) out *= quantum_int(k);
  return out;
}

Rational at_kappa_one(const LaurentPoly& p) { return p.coefficient_sum(); }

}  // namespace kvertex::qcombi
