#include "kvertex/vertexk/vertex.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <optional>
#include <unordered_map>

namespace kvertex::vertexk {

using exactalg::CycloFactor;
using exactalg::Monomial;
using exactalg::Rational;
using exactalg::Var;

namespace {

LaurentPoly one_minus(const Monomial& m) { return LaurentPoly(1) - LaurentPoly(m); }

// a * b for integer coefficients, accumulated in machine words.
LaurentPoly int_product(const LaurentPoly& a, const LaurentPoly& b) {
  auto integral = [](const LaurentPoly& p) {
    for (const auto& t : p.terms()) {
      if (t.coefficient.get_den() != 1 || !t.coefficient.get_num().fits_sint_p()) return false;
    }
    return true;
  };
  if (!integral(a) || !integral(b)) return a * b;
  std::unordered_map<Monomial, long long, exactalg::MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    const long cx = x.coefficient.get_num().get_si();
    for (const auto& y : b.terms()) acc[x.monomial * y.monomial] += cx * y.coefficient.get_num().get_si();
  }
  std::vector<exactalg::Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, Rational(static_cast<long>(c))});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

// f / (1 - t_axis) if exact. Along each line in the t_axis direction the
// quotient coefficients are the prefix sums of f's coefficients.
std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& f, Var axis) {
  const auto k = static_cast<std::size_t>(axis);
  std::map<exactalg::Exponents, std::map<int, Rational>> lines;
  for (const auto& t : f.terms()) {
    exactalg::Exponents key = t.monomial.doubled();
    const int e = key[k];
    key[k] = e & 1;  // keep the parity class apart
    lines[key][e] += t.coefficient;
  }
  std::vector<exactalg::Term> out;
  for (const auto& [key, line] : lines) {
    Rational acc = 0;
    const int last = line.rbegin()->first;
    for (int e = line.begin()->first; e <= last; e += 2) {
      auto it = line.find(e);
      if (it != line.end()) acc += it->second;
      if (acc != 0) {
        exactalg::Exponents d = key;
        d[k] = e;
        out.push_back({Monomial::from_doubled(d), acc});
      }
    }
    if (acc != 0) return std::nullopt;
  }
  return LaurentPoly::from_terms(std::move(out));
}

const LaurentPoly& kappa_defect() {
  static const LaurentPoly p = one_minus(Monomial::t(1, 0, 0)) * one_minus(Monomial::t(0, 1, 0)) *
                               one_minus(Monomial::t(0, 0, 1));
  return p;
}

}  // namespace

LaurentPoly leg_tangent(const boxconfig::Partition& leg, int axis) {
  const LaurentPoly q = boxconfig::leg_character(leg, axis);
  if (q.is_zero()) return {};
  const auto [a, b] = boxconfig::transverse_axes(axis);
  const Monomial inv = (Monomial::variable(a) * Monomial::variable(b)).inverse();
  const LaurentPoly qb = q.bar();
  const LaurentPoly defect = one_minus(Monomial::variable(a)) * one_minus(Monomial::variable(b));
  return q + qb.times(inv) - (q * qb * defect).times(inv);
}

RatFunc f_term(const RatFunc& q) {
  const Monomial kinv = Monomial::kappa().inverse();
  const RatFunc qb = q.bar();
  return q - qb.times(kinv) + (q * qb * RatFunc(kappa_defect())).times(kinv);
}

LaurentPoly f_term(const LaurentPoly& qa, const LaurentPoly& qb) {
  const Monomial kinv = Monomial::kappa().inverse();
  const LaurentPoly bar_a = qa.bar();
  return qb - bar_a.times(kinv) + (qb * bar_a * kappa_defect()).times(kinv);
}

LaurentPoly vertex_character(const BoxConfig& c) {
  if (c.leg_count() == 0) {
    const LaurentPoly q = boxconfig::character_parts(c).poly;
    return f_term(q, q);
  }
  // With D = (1-t1)(1-t2)(1-t3), Q D and bar(Q) D = -kappa bar(Q D) are
  // Laurent polynomials and V D = Q D - bar(Q) D / kappa + (Q D)(bar(Q) D) / kappa
  // - sum_i T_i D / (1 - t_i). Divide D back out one binomial at a time.
  const auto parts = boxconfig::character_parts(c);
  LaurentPoly qd = parts.poly * kappa_defect();
  LaurentPoly tails;
  for (int axis = 0; axis < 3; ++axis) {
    const auto& leg = c.legs()[static_cast<std::size_t>(axis)];
    if (leg.empty()) continue;
    LaurentPoly others(1);
    for (int b = 0; b < 3; ++b) {
      if (b != axis) others *= one_minus(Monomial::variable(static_cast<Var>(b)));
    }
    qd += parts.leg_chars[static_cast<std::size_t>(axis)] * others;
    tails += leg_tangent(leg, axis) * others;
  }
  const Monomial kinv = Monomial::kappa().inverse();
  const LaurentPoly qbd = qd.bar().times(Monomial::kappa()).times(Rational(-1));
  LaurentPoly vd = qd - qbd.times(kinv) + int_product(qd, qbd).times(kinv) - tails;
  for (int axis = 0; axis < 3; ++axis) {
    auto q = divide_one_minus(vd, static_cast<Var>(axis));
    if (!q) throw std::domain_error("pole not cleared");
    vd = std::move(*q);
  }
  return vd;
}

std::vector<std::string> character_violations(const LaurentPoly& v) {
  std::vector<std::string> out;
  if (!v.has_integer_coefficients()) out.emplace_back("non-integer coefficient");
  if (v.constant_term() != 0) out.emplace_back("trivial weight present");
  if (v.bar() != v.times(Monomial::kappa()).times(Rational(-1))) out.emplace_back("symmetry bar(V) = -kappa V fails");
  if (v.coefficient_sum() != 0) out.emplace_back("nonzero rank");
  return out;
}

exactalg::FactoredTerm fixed_point_factors(const LaurentPoly& v) {
  // w^{1/2} - w^{-1/2} = w^{-1/2} (w - 1) and w - 1 = prod_{d | g} Phi_d(x)
  // for w = x^g, x primitive and lex-positive.
  std::map<CycloFactor, long> exps;
  exactalg::FactoredTerm out;
  for (const auto& t : v.terms()) {
    if (t.monomial.is_unit()) throw std::domain_error("non-isolated contribution");
    if (t.coefficient.get_den() != 1) {
      throw std::domain_error("non-integer character coefficient");
    }
    const long n = t.coefficient.get_num().get_si();
    auto [x, g] = exactalg::primitive_root(t.monomial);
    Monomial u = t.monomial.sqrt().inverse();
    if (g < 0) {
      u = t.monomial.sqrt();
      if (n % 2 != 0) out.sign = -out.sign;
      g = -g;
    }
    out.unit = out.unit * u.pow(static_cast<std::int32_t>(-n));
    for (int d = 1; d <= g; ++d) {
      if (g % d == 0) exps[CycloFactor{x, d}] += n;
    }
  }
  for (const auto& [f, e] : exps) {
    if (e != 0) out.factors.emplace_back(f, static_cast<int>(-e));
  }
  return out;
}

RatFunc fixed_point_weight(const LaurentPoly& v) { return exactalg::to_ratfunc(fixed_point_factors(v)); }

std::string kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::DT: return "DT";
    case SeriesKind::PT: return "PT";
    case SeriesKind::QUOT2: return "QUOT2";
  }
  return "?";
}

RatFunc sum_weights(const std::vector<LaurentPoly>& characters, const RunOptions& opts) {
  std::vector<exactalg::FactoredTerm> terms;
  terms.reserve(characters.size());
  for (const auto& c : characters) terms.push_back(fixed_point_factors(c));
  exactalg::SumOptions so;
  so.jobs = std::max(1u, opts.jobs);
  so.allow_modular = opts.modular;
  return exactalg::sum_factored(terms, so);
}

VertexSeries dt_vertex_series(const Legs& legs, int order, const RunOptions& opts) {
  const int n_min = boxconfig::minimal_volume(legs);
  if (order < n_min) throw std::invalid_argument("order below the minimal volume " + std::to_string(n_min));
  VertexSeries out{SeriesKind::DT, legs, QSeries(n_min, order)};
  for (int n = n_min; n <= order; ++n) {
    std::vector<LaurentPoly> chars;
    boxconfig::for_each_config(legs, n, [&](const BoxConfig& c) { chars.push_back(vertex_character(c)); });
    out.series.set_coefficient(n, sum_weights(chars, opts));
  }
  return out;
}

int guard_order() {
  if (const char* env = std::getenv("KVERTEX_GUARD_ORDER")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 20) return static_cast<int>(v);
    throw std::invalid_argument("KVERTEX_GUARD_ORDER must be an integer in [0, 20]");
  }
  return 2;
}

VertexSeries pt_vertex_series(const Legs& legs, int order, const RunOptions& opts) {
  const int n_min = boxconfig::minimal_volume(legs);
  if (order < n_min) throw std::invalid_argument("order below the minimal volume " + std::to_string(n_min));
  const int wide = order + guard_order();
  const QSeries dt = dt_vertex_series(legs, wide, opts).series;
  const QSeries dt0 = dt_vertex_series(Legs{}, wide - n_min, opts).series;
  return {SeriesKind::PT, legs, exactalg::series_div(dt, dt0).truncated(order)};
}

LaurentPoly quot2_character(const BoxConfig& a, const BoxConfig& b, const Framing& framing) {
  const std::array<LaurentPoly, 2> q{boxconfig::character_parts(a).poly, boxconfig::character_parts(b).poly};
  const std::array<Monomial, 2> w{framing.w1, framing.w2};
  LaurentPoly v;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) v += f_term(q[i], q[j]).times(w[j] / w[i]);
  }
  return v;
}

QSeries quot2_series_at(int order, const Framing& framing, const RunOptions& opts) {
  if (order < 0) throw std::invalid_argument("negative order");
  QSeries s(0, order);
  for (int m = 0; m <= order; ++m) {
    std::vector<LaurentPoly> chars;
    for (const auto& p : boxconfig::enumerate_quot_pairs(m)) chars.push_back(quot2_character(p.first, p.second, framing));
    s.set_coefficient(m, sum_weights(chars, opts));
  }
  return s;
}

VertexSeries quot2_vertex_series(int order, const RunOptions& opts) {
  const Framing a{Monomial{}, Monomial::variable(Var::w1)};
  const Framing b{Monomial{}, Monomial::variable(Var::w1, 2) * Monomial::t(1, 0, 0)};
  const QSeries sa = quot2_series_at(order, a, opts);
  const QSeries sb = quot2_series_at(order, b, opts);
  for (int m = 0; m <= order; ++m) {
    if (!(sa.coefficient(m) == sb.coefficient(m)) || !sa.coefficient(m).is_free_of(Var::w1)) {
      throw std::runtime_error("rigidity violation at Q^" + std::to_string(m));
    }
  }
  return {SeriesKind::QUOT2, Legs{}, sa};
}

std::vector<Rational> cy_constancy_check(const VertexSeries& s) {
  for (const auto& leg : s.legs) {
    if (!leg.empty()) throw std::invalid_argument("legs present");
  }
  std::vector<Rational> out;
  for (int n = s.series.min_power(); n <= s.series.order(); ++n) {
    const RatFunc c = s.series.coefficient(n).map_monomials(exactalg::cy_limit);
    if (!c.is_constant()) throw std::domain_error("non-constant CY-limit coefficient at Q^" + std::to_string(n));
    out.push_back(c.as_polynomial().constant_term());
  }
  return out;
}

std::vector<exactalg::Integer> macmahon_signed(int order) {
  // prod (1 - x^m)^{-m} via the recurrence n a_n = sum_{k=1}^n sigma_2(k) a_{n-k},
  // then x = -Q.
  std::vector<exactalg::Integer> a(static_cast<std::size_t>(order + 1), 0);
  a[0] = 1;
  for (int n = 1; n <= order; ++n) {
    exactalg::Integer s = 0;
    for (int k = 1; k <= n; ++k) {
      exactalg::Integer sigma = 0;
      for (int d = 1; d <= k; ++d) {
        if (k % d == 0) sigma += d * d;
      }
      s += sigma * a[static_cast<std::size_t>(n - k)];
    }
    a[static_cast<std::size_t>(n)] = s / n;
  }
  for (int n = 1; n <= order; n += 2) a[static_cast<std::size_t>(n)] = -a[static_cast<std::size_t>(n)];
  return a;
}

}  // namespace kvertex::vertexk
