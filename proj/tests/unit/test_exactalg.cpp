#include <random>

#include "doctest.h"
#include "kvertex/exactalg/qseries.hpp"
#include "kvertex/exactalg/ratfunc.hpp"

using namespace kvertex::exactalg;

namespace {

LaurentPoly var(Var v) { return LaurentPoly::variable(v); }

LaurentPoly random_poly(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> ex(-2, 2);
  std::uniform_int_distribution<int> co(-3, 3);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Exponents e{};
    for (int k = 0; k < 3; ++k) e[k] = 2 * ex(rng);
    ts.push_back({Monomial::from_doubled(e), Rational(co(rng))});
  }
  return LaurentPoly::from_terms(std::move(ts));
}

// 1 - m for a random nontrivial monomial m.
LaurentPoly random_binomial(std::mt19937& rng) {
  std::uniform_int_distribution<int> ex(-2, 2);
  for (;;) {
    Exponents e{};
    for (int k = 0; k < 3; ++k) e[k] = 2 * ex(rng);
    Monomial m = Monomial::from_doubled(e);
    if (!m.is_unit()) return LaurentPoly(1) - LaurentPoly(m);
  }
}

RatFunc random_ratfunc(std::mt19937& rng) {
  RatFunc r(random_poly(rng, 3));
  std::uniform_int_distribution<int> nd(0, 2);
  for (int i = nd(rng); i > 0; --i) r /= RatFunc(random_binomial(rng));
  return r;
}

}  // namespace

TEST_CASE("monomial group") {
  Monomial k = Monomial::kappa();
  CHECK(k.sqrt() * k.sqrt() == k);
  CHECK((k / k).is_unit());
  CHECK(Monomial::kappa_half().to_string() == "t1^(1/2) t2^(1/2) t3^(1/2)");
  CHECK(Monomial::t(1, -1, 0).to_string() == "t1 t2^(-1)");
}

TEST_CASE("laurent arithmetic") {
  LaurentPoly x = var(Var::t1), y = var(Var::t2);
  LaurentPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  auto q = p.exact_divide(x + y);
  REQUIRE(q);
  CHECK(*q == x - y);
  CHECK_FALSE(p.exact_divide(x + 2).has_value());
  CHECK(x.bar() * x == LaurentPoly(1));
}

TEST_CASE("cyclotomic factors") {
  CHECK(cyclotomic_coefficients(6) == std::vector<Integer>{1, -1, 1});
  CHECK(cyclotomic_at_one(1) == 0);
  CHECK(cyclotomic_at_one(9) == 3);
  CHECK(cyclotomic_at_one(6) == 1);
  auto fs = factor_binomial(Monomial::t(1, 0, 0), 6);
  CHECK(fs.size() == 4);
  LaurentPoly prod(1);
  for (auto& f : fs) prod *= f.polynomial();
  CHECK(prod == var(Var::t1).pow(6) - 1);
}

TEST_CASE("rational function normal form") {
  LaurentPoly x = var(Var::t1), y = var(Var::t2);
  RatFunc a = RatFunc::normalize(x * x - 1, x - 1);
  CHECK(a.is_polynomial());
  CHECK(a.as_polynomial() == x + 1);
  RatFunc b = RatFunc::normalize(LaurentPoly(1), 1 - x) + RatFunc::normalize(x, x - 1);
  CHECK(b == RatFunc(1));
  RatFunc c = RatFunc::normalize(LaurentPoly(1), x * y - 1);
  CHECK(c.bar() == RatFunc::normalize(x * y, 1 - x * y));
  CHECK_THROWS_AS(RatFunc::normalize(x, LaurentPoly()), std::domain_error);
  RatFunc d = RatFunc::normalize(LaurentPoly(1), x - 1);
  CHECK_THROWS_WITH((void)d.map_monomials([](const Monomial& m) {
    Exponents e = m.doubled();
    e[0] = 0;
    return Monomial::from_doubled(e);
  }), "singular specialization");
  // Substitution into a finite value: 1/(1+t1) at t1 = 1.
  RatFunc e = RatFunc::normalize(LaurentPoly(1), 1 + x);
  auto v = e.map_monomials([](const Monomial& m) {
    Exponents ex = m.doubled();
    ex[0] = 0;
    return Monomial::from_doubled(ex);
  });
  CHECK(v == RatFunc(Rational(1, 2)));
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!b.is_zero()) {
      CHECK((a / b) * b == a);
    }
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
  }
}

TEST_CASE("normal form is canonical") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
    RatFunc s1 = a + b;
    RatFunc s2 = (a * b + b * b) / b;
    if (b.is_zero()) continue;
    CHECK(s1.numerator() == s2.numerator());
    CHECK(s1.cyclo_factors() == s2.cyclo_factors());
  }
}

TEST_CASE("truncated series") {
  const RatFunc x(var(Var::t1));
  // 1 / (1 - x Q) = sum x^n Q^n
  QSeries a(0, {RatFunc(1), RatFunc(0) - x, RatFunc(0), RatFunc(0)});
  const QSeries inv = a.inverse();
  for (int n = 0; n <= 3; ++n) CHECK(inv.coefficient(n) == RatFunc(LaurentPoly(Monomial::variable(Var::t1, n))));
  CHECK((a * inv).truncated(3) == QSeries::constant(RatFunc(1), 3));
  CHECK(series_div(a, a) == QSeries::constant(RatFunc(1), 3));
  CHECK(a.rescale_q(RatFunc(2)).coefficient(1) == RatFunc(-2) * x);
  CHECK_THROWS_AS((void)a.coefficient(4), std::out_of_range);
  CHECK(a.coefficient(-1).is_zero());
  const QSeries z(1, {RatFunc(1)});
  CHECK_THROWS_AS((void)series_div(a, QSeries(0, {RatFunc(0), RatFunc(1)})), std::domain_error);
  CHECK(series_div(z, z).coefficient(0) == RatFunc(1));
  CHECK(cy_limit(Monomial::kappa()).is_unit());
}
