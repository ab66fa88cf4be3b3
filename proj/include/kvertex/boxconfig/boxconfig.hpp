#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kvertex/exactalg/ratfunc.hpp"
#include "kvertex/qcombi/partition.hpp"

namespace kvertex::boxconfig {

using qcombi::Partition;
using Box = std::array<int, 3>;
using Legs = std::array<Partition, 3>;

/// Parses "3,1;2;1,1" (three semicolon-separated partitions, empty slot = empty partition).
Legs parse_legs(const std::string& text);
std::string legs_to_string(const Legs& legs);

/// True if the box lies in the infinite cylinder of leg `axis` (0-based).
/// Axis 1 leg occupies (x, r, s) with s < lambda_r, axis 2 (r, y, s), axis 3 (r, s, z).
bool in_leg(const Partition& leg, int axis, const Box& b);
bool in_any_leg(const Legs& legs, const Box& b);

/// Torus-fixed configuration: order ideal `core` inside [0, B)^3 that agrees
/// with the leg cylinders on the two outermost slabs of every axis.
class BoxConfig {
 public:
  BoxConfig() = default;
  /// Core boxes are sorted; no validity checks (see validate()).
  BoxConfig(Legs legs, int bound, std::vector<Box> core);

  [[nodiscard]] const Legs& legs() const { return legs_; }
  [[nodiscard]] int bound() const { return bound_; }
  [[nodiscard]] const std::vector<Box>& core() const { return core_; }
  [[nodiscard]] bool contains(const Box& b) const;
  [[nodiscard]] int leg_count() const;

  /// Throws std::invalid_argument ("not an order ideal") or
  /// std::domain_error ("bound too small").
  void validate() const;
  /// Same configuration described inside [0, new_bound)^3.
  [[nodiscard]] BoxConfig with_bound(int new_bound) const;
  [[nodiscard]] std::string to_json() const;

  friend bool operator==(const BoxConfig&, const BoxConfig&) = default;

 private:
  Legs legs_;
  int bound_ = 0;
  std::vector<Box> core_;
};

/// |core| - B (|lambda| + |mu| + |nu|); throws "bound too small" if the
/// configuration is not stabilized on its outer slabs.
int renormalized_volume(const BoxConfig& c);

/// Minimal renormalized volume over all configurations with these legs.
int minimal_volume(const Legs& legs);

/// Automatic bound for enumerating volume n.
int stabilization_bound(const Legs& legs, int n);

/// Depth-first enumeration of all configurations of volume n, each exactly
/// once, in canonical order (extra boxes added in increasing lex order).
void for_each_config(const Legs& legs, int n, const std::function<void(const BoxConfig&)>& visit);
std::vector<BoxConfig> enumerate_configs(const Legs& legs, int n);

/// Generating character Q_pi as polynomial part plus leg tails:
/// Q_pi = poly + sum_i Q_{lambda_i}(t', t'') / (1 - t_i).
struct CharacterParts {
  exactalg::LaurentPoly poly;
  std::array<exactalg::LaurentPoly, 3> leg_chars;  // Q_{lambda_i} in the transverse variables
};
CharacterParts character_parts(const BoxConfig& c);
exactalg::RatFunc character(const BoxConfig& c);

/// Q_lambda(t', t'') for the leg along `axis` written in the transverse variables.
exactalg::LaurentPoly leg_character(const Partition& leg, int axis);
/// Transverse variable pair (t', t'') of an axis: (t2, t3), (t1, t3), (t1, t2).
std::pair<exactalg::Var, exactalg::Var> transverse_axes(int axis);

/// Plane partitions of n as 0-leg configurations.
std::vector<BoxConfig> plane_partitions(int n);

struct QuotPair {
  BoxConfig first;
  BoxConfig second;
};
/// Ordered pairs of plane partitions with |pi1| + |pi2| = m.
std::vector<QuotPair> enumerate_quot_pairs(int m);

}  // namespace kvertex::boxconfig
