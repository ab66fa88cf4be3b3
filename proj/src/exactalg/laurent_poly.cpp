#include "kvertex/exactalg/laurent_poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace kvertex::exactalg {

namespace {

bool by_monomial(const Term& a, const Term& b) { return a.monomial < b.monomial; }

// Merges c*m*b into a (both sorted); returns the sorted sum.
std::vector<Term> merge_scaled(const std::vector<Term>& a, const std::vector<Term>& b,
                               const Monomial& m, const Rational& c) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Monomial mb = b[j].monomial * m;
    if (i == a.size() || mb < a[i].monomial) {
      out.push_back({mb, b[j].coefficient * c});
      ++j;
    } else if (a[i].monomial < mb) {
      out.push_back(a[i++]);
    } else {
      Rational s = a[i].coefficient + b[j].coefficient * c;
      if (s != 0) out.push_back({mb, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

LaurentPoly::LaurentPoly(int c) : LaurentPoly(Rational(c)) {}

LaurentPoly::LaurentPoly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), by_monomial);
  LaurentPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_unit());
}

Rational LaurentPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, by_monomial);
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

Rational LaurentPoly::coefficient_sum() const {
  Rational s = 0;
  for (const auto& t : terms_) s += t.coefficient;
  return s;
}

bool LaurentPoly::is_free_of(Var v) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [v](const Term& t) { return t.monomial.doubled(v) == 0; });
}

bool LaurentPoly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coefficient.get_den() == 1; });
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    p.terms_.push_back({it->monomial.inverse(), it->coefficient});
  }
  return p;
}

LaurentPoly LaurentPoly::times(const Monomial& m) const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.monomial *= m;
  return p;
}

LaurentPoly LaurentPoly::times(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.coefficient *= c;
  return p;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (k != 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::map_monomials(
    const std::function<Monomial(const Monomial&)>& f) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({f(t.monomial), t.coefficient});
  return from_terms(std::move(out));
}

std::optional<LaurentPoly> LaurentPoly::exact_divide(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return LaurentPoly{};
  if (divisor.is_monomial()) {
    const auto& d = divisor.terms_[0];
    return times(d.monomial.inverse()).times(Rational(1) / d.coefficient);
  }
  // Per-variable degree is a valuation, so quotient exponents lie in a box.
  Exponents lo{};
  Exponents hi{};
  for (std::size_t v = 0; v < kNumVars; ++v) {
    auto range = [v](const std::vector<Term>& ts) {
      std::int32_t mn = ts[0].monomial.doubled()[v];
      std::int32_t mx = mn;
      for (const auto& t : ts) {
        mn = std::min(mn, t.monomial.doubled()[v]);
        mx = std::max(mx, t.monomial.doubled()[v]);
      }
      return std::pair{mn, mx};
    };
    auto [amin, amax] = range(terms_);
    auto [bmin, bmax] = range(divisor.terms_);
    lo[v] = amin - bmin;
    hi[v] = amax - bmax;
    if (lo[v] > hi[v]) return std::nullopt;
  }
  const Term& dl = divisor.leading();
  std::vector<Term> rem = terms_;
  std::vector<Term> quotient;
  while (!rem.empty()) {
    const Term& rl = rem.back();
    Monomial qm = rl.monomial / dl.monomial;
    for (std::size_t v = 0; v < kNumVars; ++v) {
      if (qm.doubled()[v] < lo[v] || qm.doubled()[v] > hi[v]) return std::nullopt;
    }
    Rational qc = rl.coefficient / dl.coefficient;
    rem = merge_scaled(rem, divisor.terms_, qm, -qc);
    quotient.push_back({qm, std::move(qc)});
  }
  std::reverse(quotient.begin(), quotient.end());
  LaurentPoly q;
  q.terms_ = std::move(quotient);
  return q;
}

Rational LaurentPoly::content() const {
  if (terms_.empty()) return 0;
  Integer num = 0;
  Integer den = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coefficient.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  terms_ = merge_scaled(terms_, other.terms_, Monomial{}, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  terms_ = merge_scaled(terms_, other.terms_, Monomial{}, -1);
  return *this;
}

void LaurentPoly::add_scaled(const LaurentPoly& other, const Monomial& m,
                             const Rational& c) {
  if (c == 0) return;
  terms_ = merge_scaled(terms_, other.terms_, m, c);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() <= 4) {
    LaurentPoly out;
    for (const auto& t : small.terms_) out.add_scaled(large, t.monomial, t.coefficient);
    return out;
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : small.terms_) {
    for (const auto& y : large.terms_) {
      acc[x.monomial * y.monomial] += x.coefficient * y.coefficient;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(), by_monomial);
  LaurentPoly out;
  out.terms_ = std::move(terms);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coefficient < 0;
    Rational mag = neg ? Rational(-t.coefficient) : t.coefficient;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const bool unit = t.monomial.is_unit();
    if (mag != 1 || unit) {
      out += exactalg::to_string(mag);
      if (!unit) out += '*';
    }
    if (!unit) out += t.monomial.to_string();
  }
  return out;
}

}  // namespace kvertex::exactalg
