#include "kvertex/exactalg/monomial.hpp"

#include <numeric>
#include <stdexcept>

namespace kvertex::exactalg {

namespace {
constexpr std::array<const char*, kNumVars> kNames = {"t1", "t2", "t3", "w1",
                                                      "w2"};
}

Monomial Monomial::variable(Var v, std::int32_t power) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = 2 * power;
  return from_doubled(e);
}

Monomial Monomial::kappa() { return from_doubled({2, 2, 2, 0, 0}); }

Monomial Monomial::kappa_half() { return from_doubled({1, 1, 1, 0, 0}); }

Monomial Monomial::t(std::int32_t a, std::int32_t b, std::int32_t c) {
  return from_doubled({2 * a, 2 * b, 2 * c, 0, 0});
}

bool Monomial::is_unit() const {
  for (auto e : doubled_) {
    if (e != 0) return false;
  }
  return true;
}

bool Monomial::is_integral() const {
  for (auto e : doubled_) {
    if (e % 2 != 0) return false;
  }
  return true;
}

bool Monomial::is_lex_positive() const {
  for (auto e : doubled_) {
    if (e != 0) return e > 0;
  }
  return false;
}

Monomial Monomial::sqrt() const {
  if (!is_integral()) {
    throw std::domain_error("square root of a half-integral monomial " +
                            to_string());
  }
  Exponents e{};
  for (std::size_t i = 0; i < kNumVars; ++i) e[i] = doubled_[i] / 2;
  return from_doubled(e);
}

Monomial Monomial::inverse() const {
  Exponents e{};
  for (std::size_t i = 0; i < kNumVars; ++i) e[i] = -doubled_[i];
  return from_doubled(e);
}

Monomial Monomial::pow(std::int32_t k) const {
  Exponents e{};
  for (std::size_t i = 0; i < kNumVars; ++i) e[i] = doubled_[i] * k;
  return from_doubled(e);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r *= b;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  return a * b.inverse();
}

Monomial& Monomial::operator*=(const Monomial& other) {
  for (std::size_t i = 0; i < kNumVars; ++i) doubled_[i] += other.doubled_[i];
  return *this;
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const auto e = doubled_[i];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += kNames[i];
    if (e == 2) continue;
    out += '^';
    if (e % 2 == 0) {
      if (e < 0) {
        out += '(' + std::to_string(e / 2) + ')';
      } else {
        out += std::to_string(e / 2);
      }
    } else {
      out += '(' + std::to_string(e) + "/2)";
    }
  }
  return out.empty() ? "1" : out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto e : m.doubled()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(e)) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::int32_t exponent_gcd(const Monomial& m) {
  std::int32_t g = 0;
  for (auto e : m.doubled()) g = std::gcd(g, e < 0 ? -e : e);
  return g;
}

}  // namespace kvertex::exactalg
