#include <set>

#include "doctest.h"
#include "kvertex/boxconfig/boxconfig.hpp"

using namespace kvertex::boxconfig;
using kvertex::exactalg::LaurentPoly;
using kvertex::exactalg::Monomial;
using kvertex::exactalg::RatFunc;
using kvertex::exactalg::Var;

namespace {

// Coefficients of prod_{m>=1} (1 - q^m)^{-m} by repeated series multiplication.
std::vector<long long> plane_partition_counts(int n) {
  std::vector<long long> c(static_cast<std::size_t>(n + 1), 0);
  c[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 0; k < m; ++k) {
      // multiply by 1/(1 - q^m) once per copy
      for (int i = m; i <= n; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - m)];
    }
  }
  return c;
}

// Order ideals of size n in N^3, grown box by box and deduplicated.
std::size_t brute_force_ideals(int n) {
  std::set<std::set<Box>> level{{}};
  for (int k = 0; k < n; ++k) {
    std::set<std::set<Box>> next;
    for (const auto& ideal : level) {
      std::set<Box> candidates{{0, 0, 0}};
      for (const auto& b : ideal) {
        for (int a = 0; a < 3; ++a) {
          Box c = b;
          ++c[static_cast<std::size_t>(a)];
          candidates.insert(c);
        }
      }
      for (const auto& c : candidates) {
        if (ideal.count(c)) continue;
        bool ok = true;
        for (int a = 0; a < 3 && ok; ++a) {
          Box d = c;
          if (d[static_cast<std::size_t>(a)] == 0) continue;
          --d[static_cast<std::size_t>(a)];
          ok = ideal.count(d) > 0;
        }
        if (!ok) continue;
        auto grown = ideal;
        grown.insert(c);
        next.insert(std::move(grown));
      }
    }
    level = std::move(next);
  }
  return level.size();
}

bool is_order_ideal(const BoxConfig& c) {
  for (const auto& b : c.core()) {
    for (int a = 0; a < 3; ++a) {
      Box d = b;
      if (d[static_cast<std::size_t>(a)] == 0) continue;
      --d[static_cast<std::size_t>(a)];
      if (!c.contains(d)) return false;
    }
  }
  return true;
}

LaurentPoly t(int a, int b, int c) { return LaurentPoly(Monomial::t(a, b, c)); }

}  // namespace

TEST_CASE("legs parsing") {
  const Legs l = parse_legs("3,1;2;1,1");
  CHECK(l[0] == Partition({3, 1}));
  CHECK(l[1] == Partition({2}));
  CHECK(l[2] == Partition({1, 1}));
  CHECK(legs_to_string(l) == "3,1;2;1,1");
  CHECK(parse_legs(";;")[0].empty());
  CHECK_THROWS(parse_legs("1;2"));
  CHECK_THROWS(parse_legs("1,2;;"));
  CHECK_THROWS(parse_legs("a;;"));
}

TEST_CASE("plane partition counts match the brute-force oracle") {
  const auto counts = plane_partition_counts(10);
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 3);
  CHECK(counts[3] == 6);
  CHECK(counts[4] == 13);
  for (int n = 0; n <= 6; ++n) CHECK(brute_force_ideals(n) == static_cast<std::size_t>(counts[static_cast<std::size_t>(n)]));
  for (int n = 0; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(enumerate_configs(Legs{}, n).size() == static_cast<std::size_t>(counts[static_cast<std::size_t>(n)]));
  }
}

TEST_CASE("enumeration emits distinct valid configurations") {
  for (const char* legs : {";;", "1;;", "2;;", "1,1;;", "1;1;", "1;1;1", "2;1,1;"}) {
    const Legs l = parse_legs(legs);
    const int nmin = minimal_volume(l);
    for (int n = nmin; n <= nmin + 3; ++n) {
      CAPTURE(legs);
      CAPTURE(n);
      const auto configs = enumerate_configs(l, n);
      std::set<std::vector<Box>> seen;
      for (const auto& c : configs) {
        CHECK_NOTHROW(c.validate());
        CHECK(is_order_ideal(c));
        CHECK(renormalized_volume(c) == n);
        CHECK(renormalized_volume(c.with_bound(c.bound() + 1)) == n);
        CHECK(character(c) == character(c.with_bound(c.bound() + 1)));
        CHECK(seen.insert(c.with_bound(c.bound() + 2).core()).second);
      }
      if (n == nmin) CHECK(!configs.empty());
    }
    CHECK(enumerate_configs(l, nmin - 1).empty());
  }
}

TEST_CASE("removing a maximal box lowers the volume by one") {
  const Legs l = parse_legs("1;2;");
  const int n = minimal_volume(l) + 3;
  for (const auto& c : enumerate_configs(l, n)) {
    for (const auto& b : c.core()) {
      if (in_any_leg(l, b)) continue;
      bool maximal = true;
      for (int a = 0; a < 3; ++a) {
        Box up = b;
        ++up[static_cast<std::size_t>(a)];
        if (c.contains(up)) maximal = false;
      }
      if (!maximal) continue;
      std::vector<Box> core;
      for (const auto& x : c.core()) {
        if (x != b) core.push_back(x);
      }
      const BoxConfig smaller(l, c.bound(), core);
      CHECK_NOTHROW(smaller.validate());
      CHECK(renormalized_volume(smaller) == n - 1);
    }
  }
}

TEST_CASE("volume and character examples") {
  const BoxConfig box(Legs{}, 3, {{0, 0, 0}});
  CHECK(renormalized_volume(box) == 1);
  CHECK(character(box) == RatFunc(1));

  const Legs one = parse_legs("1;;");
  const auto cyl = enumerate_configs(one, 0);
  REQUIRE(cyl.size() == 1);
  CHECK(renormalized_volume(cyl[0]) == 0);
  CHECK(character(cyl[0]) == RatFunc(1) / RatFunc(1 - LaurentPoly::variable(Var::t1)));

  const BoxConfig wide = cyl[0].with_bound(cyl[0].bound() + 2);
  std::vector<Box> core = wide.core();
  core.push_back({0, 1, 0});
  const BoxConfig bumped(one, wide.bound(), core);
  CHECK_NOTHROW(bumped.validate());
  CHECK(renormalized_volume(bumped) == 1);

  const BoxConfig column(Legs{}, 4, {{0, 0, 0}, {0, 0, 1}});
  CHECK(character(column) == RatFunc(1 + t(0, 0, 1)));

  CHECK(minimal_volume(Legs{}) == 0);
  CHECK(minimal_volume(one) == 0);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(BoxConfig(Legs{}, 4, {{0, 0, 1}}).validate(), std::invalid_argument);
  const Legs one = parse_legs("1;;");
  CHECK_THROWS_AS(BoxConfig(one, 4, {{0, 0, 0}, {1, 0, 0}}).validate(), std::domain_error);
}

TEST_CASE("quot pairs") {
  CHECK(enumerate_quot_pairs(0).size() == 1);
  CHECK(enumerate_quot_pairs(1).size() == 2);
  CHECK(enumerate_quot_pairs(2).size() == 7);
  const auto counts = plane_partition_counts(4);
  for (int m = 0; m <= 4; ++m) {
    long long expected = 0;
    for (int k = 0; k <= m; ++k) expected += counts[static_cast<std::size_t>(k)] * counts[static_cast<std::size_t>(m - k)];
    CHECK(enumerate_quot_pairs(m).size() == static_cast<std::size_t>(expected));
  }
}
