#include "doctest.h"
#include "kvertex/exactalg/monomial.hpp"
#include "kvertex/qcombi/identities.hpp"
#include "kvertex/qcombi/partition.hpp"
#include "kvertex/qcombi/words.hpp"

using namespace kvertex;
using namespace kvertex::qcombi;
using exactalg::Monomial;
using exactalg::Rational;

namespace {

LaurentPoly s_pow(int k) { return kappa_power_half(k); }

}  // namespace

TEST_CASE("partitions") {
  CHECK(Partition::parse("3,1").size() == 4);
  CHECK(Partition::parse("").empty());
  CHECK_THROWS(Partition::parse("1,3"));
  CHECK_THROWS(Partition::parse("2,x"));
  CHECK(Partition::parse("3,1").conjugate() == Partition::parse("2,1,1"));
  CHECK(partitions_of(5).size() == 7);
}

TEST_CASE("quantum integers") {
  CHECK(quantum_int(1) == LaurentPoly(1));
  CHECK(quantum_int(0).is_zero());
  CHECK(quantum_int(2) == -s_pow(1) - s_pow(-1));
  CHECK(quantum_int(3) == s_pow(2) + 1 + s_pow(-2));
  CHECK(quantum_factorial(0) == LaurentPoly(1));
  CHECK(quantum_factorial(2) == -s_pow(1) - s_pow(-1));
  CHECK(quantum_factorial(3) == (-s_pow(1) - s_pow(-1)) * (s_pow(2) + 1 + s_pow(-2)));
  CHECK_THROWS_AS(quantum_factorial(-1), std::invalid_argument);
}

TEST_CASE("quantum integer at kappa = 1") {
  for (int n = -20; n <= 20; ++n) {
    const int sign = ((n - 1) % 2 == 0) ? 1 : -1;
    CHECK(at_kappa_one(quantum_int(n)) == Rational(sign * n));
  }
}

TEST_CASE("quantum integer difference identity") {
  for (int a = -10; a <= 10; ++a) {
    for (int b = -10; b <= 10; ++b) {
      LaurentPoly rhs = neg_sqrt_kappa_power(0);
      rhs = s_pow(b).times(Rational(b % 2 == 0 ? 1 : -1)) * quantum_int(a) -
            s_pow(a).times(Rational(a % 2 == 0 ? 1 : -1)) * quantum_int(b);
      CHECK(quantum_int(a - b) == rhs);
    }
  }
}

TEST_CASE("quantum Jacobi identity") {
  for (int A = -8; A <= 8; ++A) {
    for (int B = -8; B <= 8; ++B) {
      for (int C = -8; C <= 8; ++C) {
        CHECK(quantum_int(A + C) * quantum_int(B) ==
              quantum_int(A) * quantum_int(B - C) + quantum_int(A + B) * quantum_int(C));
      }
    }
  }
}

TEST_CASE("word enumeration") {
  auto w = enumerate_words({1, 1});
  REQUIRE(w.size() == 2);
  CHECK(w[0].to_string() == "12");
  CHECK(w[1].to_string() == "21");
  auto w2 = enumerate_words({2, 1});
  REQUIRE(w2.size() == 3);
  CHECK(w2[0].to_string() == "112");
  CHECK(w2[1].to_string() == "121");
  CHECK(w2[2].to_string() == "211");
  CHECK(enumerate_words({1, 1, 1}).size() == 6);
  CHECK(enumerate_words({2, 3, 1}).size() == multinomial({2, 3, 1}));
}

TEST_CASE("word inversion statistic") {
  CHECK(c_word(Word({1, 1, 2, 2}), 1, 2) == 4);
  CHECK(c_word(Word({1, 2, 1, 2}), 1, 2) == 2);
  CHECK(c_word(Word({2, 1}), 1, 2) == -1);
  for (const auto& w : enumerate_words({2, 2, 1})) {
    CHECK(c_word(w, 1, 2) == -c_word(w, 2, 1));
    CHECK(c_word(w.reversed(), 1, 3) == -c_word(w, 1, 3));
  }
}

TEST_CASE("inversion parity is constant over rearrangements") {
  for (const std::vector<int>& m : {std::vector<int>{2, 3}, {3, 1, 2}, {2, 2, 2}}) {
    const int l = static_cast<int>(m.size());
    for (int i = 1; i <= l; ++i) {
      for (int j = 1; j <= l; ++j) {
        if (i == j) continue;
        const int parity = ((m[i - 1] * m[j - 1]) % 2);
        for (const auto& w : enumerate_words(m)) CHECK(((c_word(w, i, j) % 2) + 2) % 2 == parity);
      }
    }
  }
}

TEST_CASE("quiver pairing matches the word statistic") {
  CHECK(c_Q({1, 1, 1}, {0, 1, 1}) == 1);
  CHECK(c_Q({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK_THROWS_AS(c_Q({1, 2}, {1, 2, 3}), std::invalid_argument);
  Word w12({1, 2});
  CHECK(c_Q(word_dim_vector(w12, 1), word_dim_vector(w12, 2)) == 1);
  for (const std::vector<int>& m : {std::vector<int>{2, 2}, {1, 2, 2}, {2, 1, 1, 1}}) {
    const int l = static_cast<int>(m.size());
    for (const auto& w : enumerate_words(m)) {
      for (int i = 1; i <= l; ++i) {
        for (int j = 1; j <= l; ++j) {
          if (i != j) CHECK(c_Q(word_dim_vector(w, i), word_dim_vector(w, j)) == c_word(w, i, j));
        }
      }
    }
  }
}

TEST_CASE("restricted word sums") {
  CHECK(restricted_word_sum(WordOrder::LT, {1, 1}) == quantum_int(2));
  CHECK(restricted_word_sum(WordOrder::GT, {1, 1}) == quantum_int(2));
  CHECK(restricted_word_sum(WordOrder::B, {1, 1}) == quantum_int(2));
  CHECK(restricted_word_sum(WordOrder::LT_ALL, {1, 1}) == quantum_int(0));
}

TEST_CASE("identity examples") {
  auto r = check_identity(Identity::QBINOM, {1, 1});
  CHECK(r.verdict);
  CHECK(r.lhs == exactalg::RatFunc(quantum_int(2)));
  auto r2 = check_identity(Identity::QBINOM, {1, 2});
  CHECK(r2.verdict);
  CHECK(r2.lhs == exactalg::RatFunc(quantum_int(3)));
  auto r3 = check_identity(Identity::MOCHIZUKI, {1}, 2);
  CHECK(r3.verdict);
  CHECK(r3.lhs == exactalg::RatFunc(quantum_int(2)));
  CHECK_THROWS_AS(check_identity(Identity::MOCHIZUKI, {3}, 2), std::invalid_argument);
  CHECK_THROWS_AS(check_identity(Identity::JOYCE_B, {2}, 2), std::invalid_argument);
  CHECK(parse_identity("joyce-b") == Identity::JOYCE_B);
}

TEST_CASE("small identity suites") {
  SuiteRange small{6, 2, 4, 6};
  for (Identity id : {Identity::QBINOM, Identity::QMULTINOM, Identity::MOCHIZUKI, Identity::JOYCE_LT,
                      Identity::JOYCE_B}) {
    for (const auto& [m, N] : suite_instances(id, small)) {
      CHECK_MESSAGE(check_identity(id, m, N).verdict, identity_name(id), " N=", N);
    }
  }
}
