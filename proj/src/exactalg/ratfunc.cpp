#include "kvertex/exactalg/ratfunc.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace kvertex::exactalg {

namespace {

int euler_phi(int d) {
  return static_cast<int>(cyclotomic_coefficients(d).size()) - 1;
}

LaurentPoly expand(const RatFunc::CycloMap& cyclo, const RatFunc::GeneralMap& general,
                   LaurentPoly p = LaurentPoly(1)) {
  for (const auto& [f, e] : cyclo) p = multiply_by_factor(p, f, e);
  for (const auto& [g, e] : general) p *= g.pow(static_cast<unsigned>(e));
  return p;
}

template <typename Map>
void add_factor(Map& m, const typename Map::key_type& f, int e) {
  if (e == 0) return;
  auto& slot = m[f];
  slot += e;
  if (slot == 0) m.erase(f);
}

}  // namespace

bool RatFunc::PolyLess::operator()(const LaurentPoly& a, const LaurentPoly& b) const {
  const auto ta = a.terms();
  const auto tb = b.terms();
  return std::lexicographical_compare(
      ta.begin(), ta.end(), tb.begin(), tb.end(), [](const Term& x, const Term& y) {
        if (x.monomial != y.monomial) return x.monomial < y.monomial;
        return x.coefficient < y.coefficient;
      });
}

RatFunc::RatFunc(LaurentPoly numerator) : num_(std::move(numerator)) {}

RatFunc RatFunc::from_factors(LaurentPoly numerator, CycloMap cyclo) {
  RatFunc r;
  r.num_ = std::move(numerator);
  for (auto& [f, e] : cyclo) {
    if (e < 0) throw std::invalid_argument("negative denominator exponent");
    if (e > 0) r.cyclo_.emplace(f, e);
  }
  r.reduce();
  return r;
}

RatFunc RatFunc::normalize(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("division by zero");
  return RatFunc(num) * RatFunc(den).inverse();
}

void RatFunc::factor_into(const LaurentPoly& p, LaurentPoly& unit_part, CycloMap& cyclo,
                          GeneralMap& general) {
  const Rational content = p.content();
  const Monomial low = p.trailing().monomial;
  LaurentPoly q = p.times(low.inverse()).times(Rational(1) / content);
  Rational scalar = content;

  bool progress = true;
  while (progress && !q.is_constant()) {
    progress = false;
    // Any cyclotomic factor in base x leaves a term x^j (j > 0) in the
    // coset of 1, since q has trailing monomial 1.
    std::map<Monomial, int> bases;
    for (const auto& t : q.terms()) {
      if (t.monomial.is_unit()) continue;
      auto [x, g] = primitive_root(t.monomial);
      if (g <= 0) continue;
      auto& best = bases[x];
      best = std::max(best, g);
    }
    for (const auto& [x, top] : bases) {
      // phi(d) >= sqrt(d / 2), so phi(d) <= top forces d <= 2 top^2.
      for (int d = 1; d <= 2 * top * top && !progress; ++d) {
        if (euler_phi(d) > top) continue;
        const CycloFactor f{x, d};
        if (auto quotient = divide_by_factor(q, f)) {
          add_factor(cyclo, f, 1);
          q = std::move(*quotient);
          progress = true;
        }
      }
      if (progress) break;
    }
  }
  if (q.is_constant()) {
    scalar *= q.constant_term();
  } else {
    const Rational lead = q.leading().coefficient;
    scalar *= lead;
    add_factor(general, q.times(Rational(1) / lead), 1);
  }
  unit_part = LaurentPoly(low, scalar);
}

void RatFunc::reduce_against(LaurentPoly& num, CycloMap& cyclo, GeneralMap& general) {
  if (num.is_zero()) {
    cyclo.clear();
    general.clear();
    return;
  }
  for (auto it = cyclo.begin(); it != cyclo.end();) {
    while (it->second > 0) {
      auto q = divide_by_factor(num, it->first);
      if (!q) break;
      num = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? cyclo.erase(it) : std::next(it);
  }
  for (auto it = general.begin(); it != general.end();) {
    while (it->second > 0) {
      auto q = num.exact_divide(it->first);
      if (!q) break;
      num = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? general.erase(it) : std::next(it);
  }
}

void RatFunc::reduce() { reduce_against(num_, cyclo_, general_); }

LaurentPoly RatFunc::denominator() const { return expand(cyclo_, general_); }

const LaurentPoly& RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial");
  return num_;
}

bool RatFunc::is_free_of(Var v) const {
  if (!num_.is_free_of(v)) return false;
  for (const auto& [f, e] : cyclo_) {
    if (f.base.doubled(v) != 0) return false;
  }
  for (const auto& [g, e] : general_) {
    if (!g.is_free_of(v)) return false;
  }
  return true;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("division by zero");
  LaurentPoly unit;
  RatFunc r;
  factor_into(num_, unit, r.cyclo_, r.general_);
  const Term& u = unit.terms()[0];
  r.num_ = expand(cyclo_, general_)
               .times(u.monomial.inverse())
               .times(Rational(1) / u.coefficient);
  return r;
}

RatFunc RatFunc::bar() const {
  return map_monomials([](const Monomial& m) { return m.inverse(); });
}

RatFunc RatFunc::times(const Monomial& m) const {
  RatFunc r = *this;
  r.num_ = r.num_.times(m);
  return r;
}

RatFunc RatFunc::times(const Rational& c) const {
  if (c == 0) return {};
  RatFunc r = *this;
  r.num_ = r.num_.times(c);
  return r;
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(k));
  if (k == 0) return r;
  for (const auto& [f, e] : cyclo_) r.cyclo_.emplace(f, e * k);
  for (const auto& [g, e] : general_) r.general_.emplace(g, e * k);
  return r;
}

RatFunc RatFunc::map_monomials(const std::function<Monomial(const Monomial&)>& f) const {
  RatFunc r;
  r.num_ = num_.map_monomials(f);
  LaurentPoly unit_inverse(1);
  for (const auto& [factor, e] : cyclo_) {
    const Monomial y = f(factor.base);
    if (y.is_unit()) {
      const Integer v = cyclotomic_at_one(factor.order);
      if (v == 0) throw std::domain_error("singular specialization");
      Rational inv(1);
      for (int i = 0; i < e; ++i) inv /= Rational(v);
      unit_inverse = unit_inverse.times(inv);
      continue;
    }
    auto [z, g] = primitive_root(y);
    if (g < 0) {
      // Phi_d(w^-1) = w^-phi(d) Phi_d(w) for d > 1 and -w^-1 Phi_1(w) for d = 1.
      const Monomial w = z.pow(-g);
      if (factor.order == 1) {
        unit_inverse = unit_inverse.times(w.pow(e)).times(Rational(e % 2 == 0 ? 1 : -1));
      } else {
        unit_inverse = unit_inverse.times(w.pow(euler_phi(factor.order) * e));
      }
      g = -g;
    }
    for (const auto& piece : factor_cyclotomic_power(z, factor.order, g)) {
      add_factor(r.cyclo_, piece, e);
    }
  }
  for (const auto& [g, e] : general_) {
    const LaurentPoly mapped = g.map_monomials(f);
    if (mapped.is_zero()) throw std::domain_error("singular specialization");
    LaurentPoly unit;
    CycloMap c;
    GeneralMap gm;
    factor_into(mapped, unit, c, gm);
    const Term& u = unit.terms()[0];
    for (int i = 0; i < e; ++i) {
      unit_inverse = unit_inverse.times(u.monomial.inverse()).times(Rational(1) / u.coefficient);
    }
    for (const auto& [cf, ce] : c) add_factor(r.cyclo_, cf, ce * e);
    for (const auto& [gf, ge] : gm) add_factor(r.general_, gf, ge * e);
  }
  r.num_ *= unit_inverse;
  r.reduce();
  return r;
}

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  if (num_.is_zero() || other.num_.is_zero()) {
    *this = RatFunc{};
    return *this;
  }
  // Both operands are reduced, so only cross terms can cancel.
  CycloMap other_cyclo = other.cyclo_;
  GeneralMap other_general = other.general_;
  LaurentPoly other_num = other.num_;
  reduce_against(num_, other_cyclo, other_general);
  reduce_against(other_num, cyclo_, general_);
  num_ *= other_num;
  for (const auto& [f, e] : other_cyclo) add_factor(cyclo_, f, e);
  for (const auto& [g, e] : other_general) add_factor(general_, g, e);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& other) { return *this *= other.inverse(); }

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (other.num_.is_zero()) return *this;
  if (num_.is_zero()) {
    *this = other;
    return *this;
  }
  if (is_polynomial() && other.is_polynomial()) {
    num_ += other.num_;
    return *this;
  }
  CycloMap lcm = cyclo_;
  CycloMap shared;
  CycloMap mine_missing;
  CycloMap other_missing;
  for (const auto& [f, e] : other.cyclo_) {
    auto it = lcm.find(f);
    if (it == lcm.end()) {
      lcm.emplace(f, e);
      mine_missing.emplace(f, e);
    } else {
      shared.emplace(f, std::min(it->second, e));
      if (e > it->second) mine_missing.emplace(f, e - it->second);
      if (it->second > e) other_missing.emplace(f, it->second - e);
      it->second = std::max(it->second, e);
    }
  }
  for (const auto& [f, e] : cyclo_) {
    if (!other.cyclo_.contains(f)) other_missing.emplace(f, e);
  }
  GeneralMap glcm = general_;
  GeneralMap gmine_missing;
  GeneralMap gother_missing;
  for (const auto& [g, e] : other.general_) {
    auto it = glcm.find(g);
    if (it == glcm.end()) {
      glcm.emplace(g, e);
      gmine_missing.emplace(g, e);
    } else {
      if (e > it->second) gmine_missing.emplace(g, e - it->second);
      if (it->second > e) gother_missing.emplace(g, it->second - e);
      it->second = std::max(it->second, e);
    }
  }
  for (const auto& [g, e] : general_) {
    if (!other.general_.contains(g)) gother_missing.emplace(g, e);
  }

  LaurentPoly sum = expand(mine_missing, gmine_missing, num_);
  sum += expand(other_missing, gother_missing, other.num_);
  num_ = std::move(sum);
  cyclo_ = std::move(lcm);
  general_ = std::move(glcm);
  if (num_.is_zero()) {
    cyclo_.clear();
    general_.clear();
    return *this;
  }
  // A factor present on one side only cannot divide the sum.
  for (auto it = cyclo_.begin(); it != cyclo_.end();) {
    if (shared.contains(it->first)) {
      while (it->second > 0) {
        auto q = divide_by_factor(num_, it->first);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
    }
    it = it->second == 0 ? cyclo_.erase(it) : std::next(it);
  }
  if (!general_.empty()) {
    CycloMap none;
    reduce_against(num_, none, general_);
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.general_.empty() && b.general_.empty()) {
    return a.num_ == b.num_ && a.cyclo_ == b.cyclo_;
  }
  return (a - b).is_zero();
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + denominator().to_string() + ")";
}

}  // namespace kvertex::exactalg
