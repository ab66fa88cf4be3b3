#pragma once

#include <string>
#include <vector>

#include "kvertex/boxconfig/boxconfig.hpp"
#include "kvertex/exactalg/factored_sum.hpp"
#include "kvertex/exactalg/qseries.hpp"

namespace kvertex::vertexk {

using boxconfig::BoxConfig;
using boxconfig::Legs;
using exactalg::LaurentPoly;
using exactalg::QSeries;
using exactalg::RatFunc;

/// T_lambda = Q + bar(Q)/(t' t'') - Q bar(Q) (1 - t')(1 - t'') / (t' t'').
LaurentPoly leg_tangent(const boxconfig::Partition& leg, int axis);

/// F(Q) = Q - bar(Q)/kappa + Q bar(Q) (1-t1)(1-t2)(1-t3)/kappa.
RatFunc f_term(const RatFunc& q);
/// F(Q_a -> Q_b) = Q_b - bar(Q_a)/kappa + Q_b bar(Q_a) (1-t1)(1-t2)(1-t3)/kappa.
LaurentPoly f_term(const LaurentPoly& qa, const LaurentPoly& qb);

/// V = F(Q_pi) - sum_i T_{lambda_i} / (1 - t_i). Throws
/// std::domain_error("pole not cleared") if V is not a Laurent polynomial.
LaurentPoly vertex_character(const BoxConfig& c);

/// Failures of the character invariants (integer coefficients, no trivial
/// weight, bar(V) = -kappa V, rank zero); empty when all hold.
std::vector<std::string> character_violations(const LaurentPoly& v);

/// prod_w (w^{1/2} - w^{-1/2})^{-n_w}. Throws std::domain_error
/// ("non-isolated contribution") if the unit monomial occurs.
RatFunc fixed_point_weight(const LaurentPoly& v);
/// The same weight in factored form.
exactalg::FactoredTerm fixed_point_factors(const LaurentPoly& v);

enum class SeriesKind { DT, PT, QUOT2 };
std::string kind_name(SeriesKind k);

struct VertexSeries {
  SeriesKind kind = SeriesKind::DT;
  Legs legs;
  QSeries series;
};

struct RunOptions {
  unsigned jobs = 1;
  /// Modular summation with verification (see exactalg::sum_factored);
  /// false forces the symbolic path.
  bool modular = true;
};

/// Sum of the weights of all configurations, exact.
RatFunc sum_weights(const std::vector<LaurentPoly>& characters, const RunOptions& opts = {});

VertexSeries dt_vertex_series(const Legs& legs, int order, const RunOptions& opts = {});

/// Guard order for quotient series: KVERTEX_GUARD_ORDER or 2.
int guard_order();

/// DT(legs) / DT(empty), computed with the guard order and re-truncated.
VertexSeries pt_vertex_series(const Legs& legs, int order, const RunOptions& opts = {});

/// Framing as monomials (w1, w2).
struct Framing {
  exactalg::Monomial w1;
  exactalg::Monomial w2;
};

/// V for a pair of plane partitions with framing weights.
LaurentPoly quot2_character(const BoxConfig& a, const BoxConfig& b, const Framing& framing);

/// Rank-2 vertex through `order`, computed at the given framing.
QSeries quot2_series_at(int order, const Framing& framing, const RunOptions& opts = {});

/// Computes at two distinct framings, (1, w1) and (1, w1^2 t1), and throws
/// std::runtime_error("rigidity violation at Q^m") if they differ.
VertexSeries quot2_vertex_series(int order, const RunOptions& opts = {});

/// t3 -> (t1 t2)^-1 on every coefficient; each must become a rational
/// constant. Throws std::invalid_argument("legs present") for series with
/// legs and std::domain_error naming the power for non-constant coefficients.
std::vector<exactalg::Rational> cy_constancy_check(const VertexSeries& s);

/// Coefficients of prod_{m>=1} (1 - (-Q)^m)^{-m} through Q^order.
std::vector<exactalg::Integer> macmahon_signed(int order);

}  // namespace kvertex::vertexk
