#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kvertex/exactalg/ratfunc.hpp"
#include "kvertex/vertexk/vertex.hpp"

namespace kvertex::wallcross {

using exactalg::LaurentPoly;
using exactalg::RatFunc;

/// Q: the on-wall class Q~_m. N: a generic framed class N~_m.
/// D and P are N~ symbols standing for DT-side and PT-side invariants.
enum class SymbolKind : char { Q = 'Q', N = 'N', D = 'D', P = 'P' };

struct Symbol {
  SymbolKind kind = SymbolKind::Q;
  int index = 0;
  [[nodiscard]] std::string to_string() const;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

inline Symbol Qt(int m) { return {SymbolKind::Q, m}; }

/// Sorted (symbol, positive exponent) pairs; empty is the constant monomial.
using SymbolMonomial = std::vector<std::pair<Symbol, int>>;

/// Polynomial in commuting symbols with exact coefficients. Coefficients are
/// rational in kappa^{1/2}; after collapse they are Laurent polynomials.
class FormalExpr {
 public:
  FormalExpr() = default;
  FormalExpr(RatFunc c);  // NOLINT(google-explicit-constructor)
  FormalExpr(int c) : FormalExpr(RatFunc(c)) {}  // NOLINT
  static FormalExpr symbol(Symbol s);
  static FormalExpr monomial(SymbolMonomial m, RatFunc c);

  [[nodiscard]] const std::map<SymbolMonomial, RatFunc>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] RatFunc coefficient(const SymbolMonomial& m) const;
  /// The value when no symbol occurs.
  [[nodiscard]] std::optional<RatFunc> constant_value() const;
  [[nodiscard]] FormalExpr scaled(const RatFunc& c) const;
  /// Replaces every symbol for which `f` returns a value; others stay formal.
  [[nodiscard]] FormalExpr substitute(
      const std::function<std::optional<FormalExpr>(const Symbol&)>& f) const;
  [[nodiscard]] FormalExpr map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const;

  FormalExpr& operator+=(const FormalExpr& other);
  FormalExpr& operator-=(const FormalExpr& other);
  friend FormalExpr operator+(FormalExpr a, const FormalExpr& b) { return a += b; }
  friend FormalExpr operator-(FormalExpr a, const FormalExpr& b) { return a -= b; }
  friend FormalExpr operator*(const FormalExpr& a, const FormalExpr& b);
  friend bool operator==(const FormalExpr& a, const FormalExpr& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] std::string to_string() const;
  /// {"terms": [{"symbols": [["Q",1],...], "coefficient": {...}}]}
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  void add_term(const SymbolMonomial& m, const RatFunc& c);
  std::map<SymbolMonomial, RatFunc> terms_;
};

/// Truncated series in Q with FormalExpr coefficients at frame dimension N.
class FormalQSeries {
 public:
  FormalQSeries() = default;
  FormalQSeries(int frame_dim, int min_power, int order);

  [[nodiscard]] int frame_dim() const { return frame_dim_; }
  [[nodiscard]] int min_power() const { return min_power_; }
  [[nodiscard]] int order() const { return min_power_ + static_cast<int>(coeffs_.size()) - 1; }
  /// Zero below min_power; throws std::out_of_range beyond order.
  [[nodiscard]] FormalExpr coefficient(int n) const;
  void set_coefficient(int n, FormalExpr c);
  [[nodiscard]] FormalQSeries truncated(int order) const;
  /// Requires min_power 0 and a symbol-free invertible constant term.
  [[nodiscard]] FormalQSeries inverse() const;
  [[nodiscard]] FormalQSeries map(const std::function<FormalExpr(const FormalExpr&)>& f) const;
  /// Lowest power where the two differ, if any (compared through the common order).
  [[nodiscard]] std::optional<int> first_difference(const FormalQSeries& other) const;
  friend FormalQSeries operator*(const FormalQSeries& a, const FormalQSeries& b);
  friend bool operator==(const FormalQSeries&, const FormalQSeries&) = default;
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  int frame_dim_ = 0;
  int min_power_ = 0;
  std::vector<FormalExpr> coeffs_;
};

/// sum_{n > n0} Q^n X_n for symbol kind X, through `order`.
FormalQSeries symbol_series(SymbolKind kind, int order, int N, int n0 = -1);
/// 1 + sum_{m >= 1} Q^m Q~_m.
FormalQSeries qtilde_series(int order, int N);

struct WOptions {
  /// Passed to the word sum; anything but 1 is a deliberately wrong control.
  int inner_offset = 1;
  /// Keep only compositions with at most this many parts (0 keeps all).
  int max_parts = 0;
};

/// W_{m,N}: compositions of m weighted by c'_<(m, N-m) [N-m]!/[N]! prod [m_i-1]! Q~_{m_i}.
/// Throws std::invalid_argument unless 1 <= m <= N-1.
FormalExpr W(int m, int N, const WOptions& opts = {});

enum class Side { Minus, Plus };
enum class PlusPrefactor {
  /// [N-m-1]!/[N-1]!, under which W^+ is independent of N.
  Corrected,
  /// [N-m]!/[N-1]! as printed; carries an extra factor [N-m].
  Printed,
};

/// W^-: c_< with [N-m-1]!/[N]!. W^+: b_< with the chosen prefactor.
/// Throws std::invalid_argument unless 1 <= m <= N-1.
FormalExpr W_pm(Side side, int m, int N, PlusPrefactor pre = PlusPrefactor::Corrected);

/// 1 + sum_{m=1}^{order} Q^m W(m, N).
FormalQSeries W_series(int order, int N, const WOptions& opts = {});
FormalQSeries W_pm_series(Side side, int order, int N, PlusPrefactor pre = PlusPrefactor::Corrected);

/// PT-side series in DT symbols D_k (k > n0) and Q~ symbols:
/// P_n = sum_{j, m} (-1)^j [N-|m|]! prod[m_i-1]! / [N]! c'_>(m, N-|m|) D_{n-|m|} prod Q~_{m_i}.
/// Throws std::invalid_argument when order - n0 - 1 > N - 1.
FormalQSeries mochizuki_iterate(int order, int N, int n0 = -1);

struct CheckResult {
  bool verdict = false;
  /// Lowest Q power that failed, when the verdict is false.
  std::optional<int> failing_power;
  std::string detail;
};

/// mochizuki_iterate equals (sum Q^n D_n)(sum Q^n Q~_n)^{-1} through `order`.
CheckResult mochizuki_check(int order, int N, int n0 = -1);

/// (sum Q^n P_n)(sum Q^m W(m,N)) equals (sum Q^n P_n)(sum Q^m Q~_m), and
/// substituting the Mochizuki expression for P_n returns sum Q^n D_n.
CheckResult joyce_check_detailed(int order, int N, const WOptions& opts = {}, int n0 = -1);
bool joyce_check(int order, int N, const WOptions& opts = {}, int n0 = -1);

/// sum Q^m W^+ equals (sum (-Q s)^n Q~_n)(sum (-Q/s)^n Q~_n), s = kappa^{1/2}.
CheckResult rank2_formal_check(int order, int N, PlusPrefactor pre = PlusPrefactor::Corrected);

/// Q~_m -> hilb coefficient of Q^m in sum Q^m W^+(m, N), compared with the
/// rank-2 vertex. `quot` is computed when not supplied.
CheckResult rank2_bridge_detailed(int order, int N, const vertexk::VertexSeries& hilb,
                                  const exactalg::QSeries* quot = nullptr,
                                  const vertexk::RunOptions& run = {},
                                  PlusPrefactor pre = PlusPrefactor::Corrected);
bool rank2_bridge(int order, int N, const vertexk::VertexSeries& hilb);

/// Relation dt_empty = quot2 * (1 + sum Q^m W^-(m, N)) after substituting
/// Q~_m -> hilb coefficients.
CheckResult dt_side_check(int order, int N, const vertexk::VertexSeries& hilb,
                          const exactalg::QSeries& quot);

/// kappa -> 1 in every coefficient.
FormalExpr classical_limit(const FormalExpr& e);

}  // namespace kvertex::wallcross
