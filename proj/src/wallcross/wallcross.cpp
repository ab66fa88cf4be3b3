#include "kvertex/wallcross/wallcross.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kvertex/qcombi/identities.hpp"
#include "kvertex/qcombi/quantum.hpp"

namespace kvertex::wallcross {

using exactalg::Monomial;
using exactalg::Rational;
using qcombi::WordOrder;

namespace {

void for_each_composition(int m, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      visit(parts);
      return;
    }
    for (int p = 1; p <= left; ++p) {
      parts.push_back(p);
      rec(left - p);
      parts.pop_back();
    }
  };
  rec(m);
}

SymbolMonomial multiply(const SymbolMonomial& a, const SymbolMonomial& b) {
  SymbolMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

SymbolMonomial qtilde_product(const std::vector<int>& parts) {
  std::map<Symbol, int> count;
  for (int p : parts) ++count[Qt(p)];
  return {count.begin(), count.end()};
}

RatFunc qfact(int n) { return RatFunc(qcombi::quantum_factorial(n)); }

RatFunc s_power(int k) { return RatFunc(qcombi::neg_sqrt_kappa_power(k)); }

void check_range(int m, int N) {
  if (m < 1 || m > N - 1) {
    throw std::invalid_argument("wall term needs 1 <= m <= N-1 (m=" + std::to_string(m) +
                                ", N=" + std::to_string(N) + ")");
  }
}

// Dense coefficients in powers of kappa^{1/2}; nullopt if p involves anything else.
std::optional<nlohmann::json> kappa_array(const LaurentPoly& p) {
  if (p.is_zero()) return nlohmann::json{{"lowest_half_power", 0}, {"coefficients", nlohmann::json::array()}};
  std::vector<std::pair<int, Rational>> entries;
  for (const auto& t : p.terms()) {
    const auto& d = t.monomial.doubled();
    if (d[0] != d[1] || d[1] != d[2] || d[3] != 0 || d[4] != 0) return std::nullopt;
    entries.emplace_back(d[0], t.coefficient);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const int lo = entries.front().first;
  std::vector<std::string> dense(static_cast<std::size_t>(entries.back().first - lo + 1), "0");
  for (const auto& [k, c] : entries) dense[static_cast<std::size_t>(k - lo)] = exactalg::to_string(c);
  return nlohmann::json{{"lowest_half_power", lo}, {"coefficients", dense}};
}

nlohmann::json coefficient_json(const RatFunc& c) {
  nlohmann::json out{{"text", c.to_string()}};
  auto num = kappa_array(c.numerator());
  auto den = kappa_array(c.denominator());
  if (num && den) {
    out["numerator"] = *num;
    out["denominator"] = *den;
  }
  return out;
}

}  // namespace

std::string Symbol::to_string() const {
  return std::string(1, static_cast<char>(kind)) + "_" + std::to_string(index);
}

FormalExpr::FormalExpr(RatFunc c) {
  if (!c.is_zero()) terms_.emplace(SymbolMonomial{}, std::move(c));
}

FormalExpr FormalExpr::symbol(Symbol s) { return monomial({{s, 1}}, RatFunc(1)); }

FormalExpr FormalExpr::monomial(SymbolMonomial m, RatFunc c) {
  FormalExpr e;
  e.add_term(m, c);
  return e;
}

void FormalExpr::add_term(const SymbolMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc FormalExpr::coefficient(const SymbolMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc(0) : it->second;
}

std::optional<RatFunc> FormalExpr::constant_value() const {
  if (terms_.empty()) return RatFunc(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

FormalExpr FormalExpr::scaled(const RatFunc& c) const {
  FormalExpr out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

FormalExpr FormalExpr::substitute(const std::function<std::optional<FormalExpr>(const Symbol&)>& f) const {
  FormalExpr out;
  for (const auto& [m, c] : terms_) {
    FormalExpr prod(c);
    SymbolMonomial kept;
    for (const auto& [s, e] : m) {
      auto v = f(s);
      if (!v) {
        kept.emplace_back(s, e);
        continue;
      }
      for (int k = 0; k < e; ++k) prod = prod * *v;
    }
    out += prod * monomial(kept, RatFunc(1));
  }
  return out;
}

FormalExpr FormalExpr::map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const {
  FormalExpr out;
  for (const auto& [m, c] : terms_) out.add_term(m, f(c));
  return out;
}

FormalExpr& FormalExpr::operator+=(const FormalExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

FormalExpr& FormalExpr::operator-=(const FormalExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

FormalExpr operator*(const FormalExpr& a, const FormalExpr& b) {
  FormalExpr out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  return out;
}

std::string FormalExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (const auto& [s, e] : m) {
      os << "*" << s.to_string();
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

nlohmann::json FormalExpr::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json syms = nlohmann::json::array();
    for (const auto& [s, e] : m) syms.push_back({std::string(1, static_cast<char>(s.kind)), s.index, e});
    terms.push_back({{"symbols", syms}, {"coefficient", coefficient_json(c)}});
  }
  return nlohmann::json{{"terms", terms}};
}

FormalQSeries::FormalQSeries(int frame_dim, int min_power, int order)
    : frame_dim_(frame_dim), min_power_(min_power) {
  if (order < min_power - 1) throw std::invalid_argument("series order below min power");
  coeffs_.resize(static_cast<std::size_t>(order - min_power + 1));
}

FormalExpr FormalQSeries::coefficient(int n) const {
  if (n < min_power_) return {};
  if (n > order()) throw std::out_of_range("coefficient beyond series order");
  return coeffs_[static_cast<std::size_t>(n - min_power_)];
}

void FormalQSeries::set_coefficient(int n, FormalExpr c) {
  if (n < min_power_ || n > order()) throw std::out_of_range("coefficient outside series range");
  coeffs_[static_cast<std::size_t>(n - min_power_)] = std::move(c);
}

FormalQSeries FormalQSeries::truncated(int order) const {
  FormalQSeries out(frame_dim_, min_power_, std::min(order, this->order()));
  for (int n = min_power_; n <= out.order(); ++n) out.set_coefficient(n, coefficient(n));
  return out;
}

FormalQSeries FormalQSeries::inverse() const {
  if (min_power_ != 0 || coeffs_.empty()) throw std::domain_error("non-invertible series");
  auto a0 = coeffs_[0].constant_value();
  if (!a0 || a0->is_zero()) throw std::domain_error("non-invertible series");
  const RatFunc inv0 = a0->inverse();
  FormalQSeries out(frame_dim_, 0, order());
  out.set_coefficient(0, FormalExpr(inv0));
  for (int n = 1; n <= order(); ++n) {
    FormalExpr acc;
    for (int k = 1; k <= n; ++k) acc += coefficient(k) * out.coefficient(n - k);
    out.set_coefficient(n, acc.scaled(-inv0));
  }
  return out;
}

FormalQSeries FormalQSeries::map(const std::function<FormalExpr(const FormalExpr&)>& f) const {
  FormalQSeries out = *this;
  for (auto& c : out.coeffs_) c = f(c);
  return out;
}

std::optional<int> FormalQSeries::first_difference(const FormalQSeries& other) const {
  const int lo = std::min(min_power_, other.min_power_);
  const int hi = std::min(order(), other.order());
  for (int n = lo; n <= hi; ++n) {
    if (!(coefficient(n) == other.coefficient(n))) return n;
  }
  return std::nullopt;
}

FormalQSeries operator*(const FormalQSeries& a, const FormalQSeries& b) {
  const int lo = a.min_power_ + b.min_power_;
  const int hi = std::min(a.order() + b.min_power_, b.order() + a.min_power_);
  FormalQSeries out(a.frame_dim_, lo, hi);
  for (int n = lo; n <= hi; ++n) {
    FormalExpr acc;
    for (int i = a.min_power_; i <= n - b.min_power_; ++i) acc += a.coefficient(i) * b.coefficient(n - i);
    out.set_coefficient(n, std::move(acc));
  }
  return out;
}

nlohmann::json FormalQSeries::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = min_power_; n <= order(); ++n) coeffs.push_back({{"power", n}, {"value", coefficient(n).to_json()}});
  return nlohmann::json{{"frame_dim", frame_dim_}, {"min_power", min_power_}, {"order", order()}, {"coefficients", coeffs}};
}

FormalQSeries symbol_series(SymbolKind kind, int order, int N, int n0) {
  FormalQSeries out(N, n0 + 1, order);
  for (int n = n0 + 1; n <= order; ++n) out.set_coefficient(n, FormalExpr::symbol({kind, n}));
  return out;
}

FormalQSeries qtilde_series(int order, int N) {
  FormalQSeries out(N, 0, order);
  if (order >= 0) out.set_coefficient(0, FormalExpr(1));
  for (int n = 1; n <= order; ++n) out.set_coefficient(n, FormalExpr::symbol(Qt(n)));
  return out;
}

FormalExpr W(int m, int N, const WOptions& opts) {
  check_range(m, N);
  FormalExpr out;
  const RatFunc pre = qfact(N - m) / qfact(N);
  for_each_composition(m, [&](const std::vector<int>& parts) {
    if (opts.max_parts > 0 && static_cast<int>(parts.size()) > opts.max_parts) return;
    std::vector<int> word = parts;
    word.push_back(N - m);
    LaurentPoly c = qcombi::restricted_word_sum(WordOrder::LT, word, opts.inner_offset);
    for (int p : parts) c *= qcombi::quantum_factorial(p - 1);
    out += FormalExpr::monomial(qtilde_product(parts), RatFunc(c) * pre);
  });
  return out;
}

FormalExpr W_pm(Side side, int m, int N, PlusPrefactor pre) {
  check_range(m, N);
  RatFunc factor;
  WordOrder kind;
  if (side == Side::Minus) {
    kind = WordOrder::LT_ALL;
    factor = qfact(N - m - 1) / qfact(N);
  } else {
    kind = WordOrder::B;
    factor = (pre == PlusPrefactor::Corrected ? qfact(N - m - 1) : qfact(N - m)) / qfact(N - 1);
  }
  FormalExpr out;
  for_each_composition(m, [&](const std::vector<int>& parts) {
    std::vector<int> word = parts;
    word.push_back(N - m);
    LaurentPoly c = qcombi::restricted_word_sum(kind, word);
    for (int p : parts) c *= qcombi::quantum_factorial(p - 1);
    out += FormalExpr::monomial(qtilde_product(parts), RatFunc(c) * factor);
  });
  return out;
}

FormalQSeries W_series(int order, int N, const WOptions& opts) {
  FormalQSeries out(N, 0, order);
  out.set_coefficient(0, FormalExpr(1));
  for (int m = 1; m <= order; ++m) out.set_coefficient(m, W(m, N, opts));
  return out;
}

FormalQSeries W_pm_series(Side side, int order, int N, PlusPrefactor pre) {
  FormalQSeries out(N, 0, order);
  out.set_coefficient(0, FormalExpr(1));
  for (int m = 1; m <= order; ++m) out.set_coefficient(m, W_pm(side, m, N, pre));
  return out;
}

FormalQSeries mochizuki_iterate(int order, int N, int n0) {
  const int span = order - n0 - 1;
  if (span > N - 1) {
    throw std::invalid_argument("order " + std::to_string(order) + " exceeds frame capacity N=" +
                                std::to_string(N));
  }
  FormalQSeries out(N, n0 + 1, order);
  if (span < 0) return out;
  // Weight of each composition, independent of n.
  std::vector<std::pair<std::vector<int>, FormalExpr>> walls{{{}, FormalExpr(1)}};
  for (int total = 1; total <= span; ++total) {
    const RatFunc pre = qfact(N - total) / qfact(N);
    for_each_composition(total, [&](const std::vector<int>& parts) {
      std::vector<int> word = parts;
      word.push_back(N - total);
      LaurentPoly c = qcombi::restricted_word_sum(WordOrder::GT, word);
      for (int p : parts) c *= qcombi::quantum_factorial(p - 1);
      if (parts.size() % 2 == 1) c = -c;
      walls.emplace_back(parts, FormalExpr::monomial(qtilde_product(parts), RatFunc(c) * pre));
    });
  }
  for (int n = n0 + 1; n <= order; ++n) {
    FormalExpr acc;
    for (const auto& [parts, weight] : walls) {
      int size = 0;
      for (int p : parts) size += p;
      if (n - size <= n0) continue;
      acc += weight * FormalExpr::symbol({SymbolKind::D, n - size});
    }
    out.set_coefficient(n, std::move(acc));
  }
  return out;
}

namespace {

CheckResult compare(const FormalQSeries& got, const FormalQSeries& want, const std::string& what) {
  CheckResult r;
  auto diff = got.first_difference(want);
  r.verdict = !diff.has_value();
  if (diff) {
    r.failing_power = *diff;
    r.detail = what + " differs at Q^" + std::to_string(*diff) + ": " + got.coefficient(*diff).to_string() +
               " vs " + want.coefficient(*diff).to_string();
  }
  return r;
}

}  // namespace

CheckResult mochizuki_check(int order, int N, int n0) {
  const FormalQSeries pt = mochizuki_iterate(order, N, n0);
  const FormalQSeries expected =
      symbol_series(SymbolKind::D, order, N, n0) * qtilde_series(order - n0 - 1, N).inverse();
  return compare(pt, expected, "Mochizuki PT series");
}

CheckResult joyce_check_detailed(int order, int N, const WOptions& opts, int n0) {
  const int span = order - n0 - 1;
  if (span > N - 1) {
    throw std::invalid_argument("order " + std::to_string(order) + " exceeds frame capacity N=" +
                                std::to_string(N));
  }
  if (span < 0) return {true, std::nullopt, ""};
  const FormalQSeries pt = symbol_series(SymbolKind::P, order, N, n0);
  const FormalQSeries lhs = pt * W_series(span, N, opts);
  CheckResult r = compare(lhs, pt * qtilde_series(span, N), "Joyce W series");
  if (!r.verdict) return r;
  // Feed the Mochizuki expression for P_n back in; the DT symbols must return.
  const FormalQSeries moch = mochizuki_iterate(order, N, n0);
  const FormalQSeries back = lhs.map([&](const FormalExpr& e) {
    return e.substitute([&](const Symbol& s) -> std::optional<FormalExpr> {
      if (s.kind != SymbolKind::P) return std::nullopt;
      return moch.coefficient(s.index);
    });
  });
  return compare(back, symbol_series(SymbolKind::D, order, N, n0), "Joyce/Mochizuki round trip");
}

bool joyce_check(int order, int N, const WOptions& opts, int n0) {
  return joyce_check_detailed(order, N, opts, n0).verdict;
}

CheckResult rank2_formal_check(int order, int N, PlusPrefactor pre) {
  FormalQSeries a(N, 0, order), b(N, 0, order);
  a.set_coefficient(0, FormalExpr(1));
  b.set_coefficient(0, FormalExpr(1));
  for (int n = 1; n <= order; ++n) {
    a.set_coefficient(n, FormalExpr::symbol(Qt(n)).scaled(s_power(n)));
    b.set_coefficient(n, FormalExpr::symbol(Qt(n)).scaled(s_power(-n)));
  }
  return compare(W_pm_series(Side::Plus, order, N, pre), a * b, "W+ series");
}

namespace {

void require_hilb(const vertexk::VertexSeries& hilb, int order) {
  bool empty = true;
  for (const auto& l : hilb.legs) empty = empty && l.empty();
  if (hilb.kind != vertexk::SeriesKind::DT || !empty || hilb.series.order() < order) {
    throw std::invalid_argument("hilb must be the 0-leg DT series through Q^" + std::to_string(order));
  }
}

exactalg::QSeries evaluate(const FormalQSeries& f, const exactalg::QSeries& hilb) {
  exactalg::QSeries out(f.min_power(), f.order());
  for (int n = f.min_power(); n <= f.order(); ++n) {
    const FormalExpr v = f.coefficient(n).substitute([&](const Symbol& s) -> std::optional<FormalExpr> {
      if (s.kind != SymbolKind::Q) return std::nullopt;
      return FormalExpr(hilb.coefficient(s.index));
    });
    auto c = v.constant_value();
    if (!c) throw std::domain_error("unsubstituted symbol at Q^" + std::to_string(n));
    out.set_coefficient(n, *c);
  }
  return out;
}

CheckResult compare_series(const exactalg::QSeries& got, const exactalg::QSeries& want, int order,
                           const std::string& what) {
  for (int n = 0; n <= order; ++n) {
    if (!(got.coefficient(n) == want.coefficient(n))) {
      return {false, n, what + " differs at Q^" + std::to_string(n)};
    }
  }
  return {true, std::nullopt, ""};
}

}  // namespace

CheckResult rank2_bridge_detailed(int order, int N, const vertexk::VertexSeries& hilb,
                                  const exactalg::QSeries* quot, const vertexk::RunOptions& run,
                                  PlusPrefactor pre) {
  if (order > N - 1) throw std::invalid_argument("order exceeds frame capacity");
  require_hilb(hilb, order);
  exactalg::QSeries computed;
  if (quot == nullptr) {
    computed = vertexk::quot2_vertex_series(order, run).series;
    quot = &computed;
  }
  const exactalg::QSeries lhs = evaluate(W_pm_series(Side::Plus, order, N, pre), hilb.series);
  return compare_series(lhs, *quot, order, "W+ with Hilb coefficients vs rank-2 vertex");
}

bool rank2_bridge(int order, int N, const vertexk::VertexSeries& hilb) {
  return rank2_bridge_detailed(order, N, hilb).verdict;
}

CheckResult dt_side_check(int order, int N, const vertexk::VertexSeries& hilb, const exactalg::QSeries& quot) {
  if (order > N - 1) throw std::invalid_argument("order exceeds frame capacity");
  require_hilb(hilb, order);
  const exactalg::QSeries w = evaluate(W_pm_series(Side::Minus, order, N), hilb.series);
  return compare_series((quot * w).truncated(order), hilb.series, order, "rank-2 vertex times W- vs DT");
}

FormalExpr classical_limit(const FormalExpr& e) {
  return e.map_coefficients([](const RatFunc& c) { return c.map_monomials([](const Monomial&) { return Monomial{}; }); });
}

}  // namespace kvertex::wallcross
