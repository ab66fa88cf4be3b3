#include "kvertex/boxconfig/boxconfig.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kvertex::boxconfig {

using exactalg::LaurentPoly;
using exactalg::Monomial;
using exactalg::RatFunc;
using exactalg::Rational;
using exactalg::Var;

Legs parse_legs(const std::string& text) {
  Legs legs;
  std::vector<std::string> slots;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      slots.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  slots.push_back(cur);
  if (slots.size() != 3) throw std::invalid_argument("legs must have three ';'-separated slots: '" + text + "'");
  for (std::size_t i = 0; i < 3; ++i) legs[i] = Partition::parse(slots[i]);
  return legs;
}

std::string legs_to_string(const Legs& legs) {
  return legs[0].to_string() + ";" + legs[1].to_string() + ";" + legs[2].to_string();
}

bool in_leg(const Partition& leg, int axis, const Box& b) {
  switch (axis) {
    case 0: return b[2] < leg.part(b[1]);
    case 1: return b[2] < leg.part(b[0]);
    default: return b[1] < leg.part(b[0]);
  }
}

bool in_any_leg(const Legs& legs, const Box& b) {
  for (int i = 0; i < 3; ++i) {
    if (!legs[static_cast<std::size_t>(i)].empty() && in_leg(legs[static_cast<std::size_t>(i)], i, b)) return true;
  }
  return false;
}

BoxConfig::BoxConfig(Legs legs, int bound, std::vector<Box> core)
    : legs_(std::move(legs)), bound_(bound), core_(std::move(core)) {
  std::sort(core_.begin(), core_.end());
}

bool BoxConfig::contains(const Box& b) const {
  for (int c : b) {
    if (c < 0) return false;
  }
  if (b[0] >= bound_ || b[1] >= bound_ || b[2] >= bound_) return in_any_leg(legs_, b);
  return std::binary_search(core_.begin(), core_.end(), b);
}

int BoxConfig::leg_count() const {
  return static_cast<int>(std::count_if(legs_.begin(), legs_.end(), [](const Partition& p) { return !p.empty(); }));
}

void BoxConfig::validate() const {
  for (const Box& b : core_) {
    for (int k = 0; k < 3; ++k) {
      if (b[k] < 0 || b[k] >= bound_) throw std::invalid_argument("box outside the bounding cube");
      Box p = b;
      if (--p[k] >= 0 && !contains(p)) throw std::invalid_argument("not an order ideal");
    }
  }
  // The two outer slabs of each axis must agree with the leg cylinders.
  for (int axis = 0; axis < 3; ++axis) {
    for (int slab = std::max(0, bound_ - 2); slab < bound_; ++slab) {
      for (int u = 0; u < bound_; ++u) {
        for (int v = 0; v < bound_; ++v) {
          Box b{};
          b[static_cast<std::size_t>(axis)] = slab;
          b[static_cast<std::size_t>((axis + 1) % 3)] = u;
          b[static_cast<std::size_t>((axis + 2) % 3)] = v;
          const bool have = std::binary_search(core_.begin(), core_.end(), b);
          if (have != in_any_leg(legs_, b)) throw std::domain_error("bound too small");
        }
      }
    }
  }
}

BoxConfig BoxConfig::with_bound(int new_bound) const {
  std::vector<Box> core;
  for (const Box& b : core_) {
    if (b[0] < new_bound && b[1] < new_bound && b[2] < new_bound) core.push_back(b);
  }
  for (int x = 0; x < new_bound; ++x) {
    for (int y = 0; y < new_bound; ++y) {
      for (int z = 0; z < new_bound; ++z) {
        if (x < bound_ && y < bound_ && z < bound_) continue;
        if (in_any_leg(legs_, {x, y, z})) core.push_back({x, y, z});
      }
    }
  }
  return BoxConfig(legs_, new_bound, std::move(core));
}

std::string BoxConfig::to_json() const {
  std::ostringstream out;
  out << "{\"legs\":[";
  for (std::size_t i = 0; i < 3; ++i) {
    out << (i ? "," : "") << "[";
    const auto& parts = legs_[i].parts();
    for (std::size_t k = 0; k < parts.size(); ++k) out << (k ? "," : "") << parts[k];
    out << "]";
  }
  out << "],\"B\":" << bound_ << ",\"core\":[";
  for (std::size_t i = 0; i < core_.size(); ++i) {
    out << (i ? "," : "") << "[" << core_[i][0] << "," << core_[i][1] << "," << core_[i][2] << "]";
  }
  out << "]}";
  return out.str();
}

int renormalized_volume(const BoxConfig& c) {
  c.validate();
  int legs = 0;
  for (const auto& p : c.legs()) legs += p.size();
  return static_cast<int>(c.core().size()) - c.bound() * legs;
}

namespace {

int leg_reach(const Legs& legs) {
  int reach = 0;
  for (const auto& p : legs) reach = std::max({reach, p.length(), p.part(0)});
  return reach;
}

std::vector<Box> cylinder_union(const Legs& legs, int bound) {
  std::vector<Box> out;
  for (int x = 0; x < bound; ++x) {
    for (int y = 0; y < bound; ++y) {
      for (int z = 0; z < bound; ++z) {
        if (in_any_leg(legs, {x, y, z})) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

}  // namespace

int minimal_volume(const Legs& legs) {
  const int bound = leg_reach(legs) + 2;
  int total = 0;
  for (const auto& p : legs) total += p.size();
  return static_cast<int>(cylinder_union(legs, bound).size()) - bound * total;
}

int stabilization_bound(const Legs& legs, int n) {
  return std::max(0, n - minimal_volume(legs)) + leg_reach(legs) + 2;
}

void for_each_config(const Legs& legs, int n, const std::function<void(const BoxConfig&)>& visit) {
  const int extra = n - minimal_volume(legs);
  if (extra < 0) return;
  const int B = stabilization_bound(legs, n);
  const auto index = [B](const Box& b) { return (static_cast<std::size_t>(b[0]) * B + b[1]) * B + b[2]; };
  std::vector<char> occupied(static_cast<std::size_t>(B) * B * B, 0);
  std::vector<Box> base = cylinder_union(legs, B);
  for (const Box& b : base) occupied[index(b)] = 1;
  std::vector<Box> added;

  const auto addable = [&](const Box& b) {
    if (occupied[index(b)]) return false;
    for (int k = 0; k < 3; ++k) {
      Box p = b;
      if (--p[k] >= 0 && !occupied[index(p)]) return false;
    }
    return true;
  };

  // Extra boxes never reach the two outer slabs, so scanning [0, B-2)^3 suffices.
  const int lim = B - 2;
  std::function<void(std::size_t, int)> dfs = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      std::vector<Box> core = base;
      core.insert(core.end(), added.begin(), added.end());
      visit(BoxConfig(legs, B, std::move(core)));
      return;
    }
    const std::size_t total = static_cast<std::size_t>(lim) * lim * lim;
    for (std::size_t pos = start; pos < total; ++pos) {
      const Box b{static_cast<int>(pos / (static_cast<std::size_t>(lim) * lim)),
                  static_cast<int>((pos / lim) % lim), static_cast<int>(pos % lim)};
      if (!addable(b)) continue;
      occupied[index(b)] = 1;
      added.push_back(b);
      dfs(pos + 1, remaining - 1);
      added.pop_back();
      occupied[index(b)] = 0;
    }
  };
  dfs(0, extra);
}

std::vector<BoxConfig> enumerate_configs(const Legs& legs, int n) {
  std::vector<BoxConfig> out;
  for_each_config(legs, n, [&](const BoxConfig& c) { out.push_back(c); });
  return out;
}

std::pair<Var, Var> transverse_axes(int axis) {
  switch (axis) {
    case 0: return {Var::t2, Var::t3};
    case 1: return {Var::t1, Var::t3};
    default: return {Var::t1, Var::t2};
  }
}

LaurentPoly leg_character(const Partition& leg, int axis) {
  const auto [a, b] = transverse_axes(axis);
  std::vector<exactalg::Term> terms;
  for (const auto& [r, s] : leg.cells()) {
    terms.push_back({Monomial::variable(a, r) * Monomial::variable(b, s), Rational(1)});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

CharacterParts character_parts(const BoxConfig& c) {
  CharacterParts out;
  std::vector<exactalg::Term> terms;
  for (const Box& b : c.core()) terms.push_back({Monomial::t(b[0], b[1], b[2]), Rational(1)});
  // t^B / (1 - t) = 1 / (1 - t) - (1 + t + ... + t^{B-1}).
  for (int axis = 0; axis < 3; ++axis) {
    const Partition& leg = c.legs()[static_cast<std::size_t>(axis)];
    out.leg_chars[static_cast<std::size_t>(axis)] = leg_character(leg, axis);
    if (leg.empty()) continue;
    for (const auto& t : out.leg_chars[static_cast<std::size_t>(axis)].terms()) {
      for (int x = 0; x < c.bound(); ++x) {
        terms.push_back({t.monomial * Monomial::variable(static_cast<Var>(axis), x), Rational(-1)});
      }
    }
  }
  out.poly = LaurentPoly::from_terms(std::move(terms));
  return out;
}

RatFunc character(const BoxConfig& c) {
  const CharacterParts parts = character_parts(c);
  RatFunc q(parts.poly);
  for (int axis = 0; axis < 3; ++axis) {
    const auto& leg = parts.leg_chars[static_cast<std::size_t>(axis)];
    if (leg.is_zero()) continue;
    q += RatFunc::normalize(leg, LaurentPoly(1) - LaurentPoly::variable(static_cast<Var>(axis)));
  }
  return q;
}

std::vector<BoxConfig> plane_partitions(int n) { return enumerate_configs(Legs{}, n); }

std::vector<QuotPair> enumerate_quot_pairs(int m) {
  std::vector<QuotPair> out;
  for (int k = m; k >= 0; --k) {
    const auto first = plane_partitions(k);
    const auto second = plane_partitions(m - k);
    for (const auto& a : first) {
      for (const auto& b : second) out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace kvertex::boxconfig
