#include "kvertex/exactalg/factored_sum.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace kvertex::exactalg {

RatFunc to_ratfunc(const FactoredTerm& t) {
  LaurentPoly num(t.unit, Rational(t.sign));
  RatFunc::CycloMap den;
  for (const auto& [f, e] : t.factors) {
    if (e > 0) {
      num = multiply_by_factor(num, f, e);
    } else if (e < 0) {
      den[f] -= e;
    }
  }
  return RatFunc::from_factors(std::move(num), std::move(den));
}

RatFunc sum_factored_exact(const std::vector<FactoredTerm>& terms) {
  std::vector<RatFunc> items;
  items.reserve(terms.size());
  for (const auto& t : terms) items.push_back(to_ratfunc(t));
  if (items.empty()) return {};
  while (items.size() > 1) {
    std::vector<RatFunc> next;
    next.reserve(items.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < items.size(); i += 2) next.push_back(items[i] + items[i + 1]);
    if (items.size() % 2 == 1) next.push_back(std::move(items.back()));
    items = std::move(next);
  }
  return items.front();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Arithmetic modulo the Mersenne prime 2^61 - 1.
struct Mersenne {
  static constexpr u64 p = (u64{1} << 61) - 1;
  [[nodiscard]] static u64 mul(u64 a, u64 b) {
    const u128 x = static_cast<u128>(a) * b;
    u64 r = (static_cast<u64>(x) & p) + static_cast<u64>(x >> 61);
    r = (r & p) + (r >> 61);
    return r >= p ? r - p : r;
  }
  [[nodiscard]] u64 modulus() const { return p; }
};

// Arithmetic modulo an arbitrary prime below 2^63.
struct Generic {
  u64 p;
  [[nodiscard]] u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  [[nodiscard]] u64 modulus() const { return p; }
};

template <class F>
u64 add(const F& f, u64 a, u64 b) {
  const u64 r = a + b;
  return r >= f.modulus() ? r - f.modulus() : r;
}

template <class F>
u64 sub(const F& f, u64 a, u64 b) {
  return a >= b ? a - b : a + f.modulus() - b;
}

template <class F>
u64 power(const F& f, u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = f.mul(r, a);
    a = f.mul(a, a);
    e >>= 1;
  }
  return r;
}

template <class F>
u64 inverse(const F& f, u64 a) {
  if (a == 0) throw std::domain_error("modular inverse of zero");
  return power(f, a, f.modulus() - 2);
}

template <class F>
u64 from_signed(const F& f, long long v) {
  const long long m = static_cast<long long>(f.modulus());
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

template <class F>
u64 from_integer(const F& f, const Integer& z) {
  return static_cast<u64>(mpz_fdiv_ui(z.get_mpz_t(), f.modulus()));
}

// Signed exponent power using a precomputed inverse.
template <class F>
u64 signed_power(const F& f, u64 a, u64 a_inv, long long e) {
  return e >= 0 ? power(f, a, static_cast<u64>(e)) : power(f, a_inv, static_cast<u64>(-e));
}

struct PreparedTerm {
  int sign;
  Exponents unit;
  std::vector<std::pair<int, int>> num;  // (factor index, exponent > 0)
  std::vector<std::pair<int, int>> den;
};

struct Prepared {
  std::vector<CycloFactor> factors;
  std::vector<int> degree;        // phi(d)
  std::vector<int> max_den;       // largest denominator exponent of each factor
  std::vector<PreparedTerm> terms;
  std::array<int, kNumVars> radius{};  // largest |exponent| per variable
};

Prepared prepare(const std::vector<FactoredTerm>& terms) {
  Prepared P;
  std::map<CycloFactor, int> index;
  for (const auto& t : terms) {
    PreparedTerm pt{t.sign, t.unit.doubled(), {}, {}};
    for (std::size_t k = 0; k < kNumVars; ++k) P.radius[k] = std::max(P.radius[k], std::abs(pt.unit[k]));
    std::map<CycloFactor, int> merged;
    for (const auto& [f, e] : t.factors) merged[f] += e;
    for (const auto& [f, e] : merged) {
      if (e == 0) continue;
      auto [it, fresh] = index.emplace(f, static_cast<int>(P.factors.size()));
      if (fresh) {
        P.factors.push_back(f);
        P.degree.push_back(f.degree());
        P.max_den.push_back(0);
        for (std::size_t k = 0; k < kNumVars; ++k) {
          P.radius[k] = std::max(P.radius[k], std::abs(f.base.doubled()[k]));
        }
      }
      const int id = it->second;
      if (e > 0) {
        pt.num.emplace_back(id, e);
      } else {
        pt.den.emplace_back(id, -e);
        P.max_den[static_cast<std::size_t>(id)] = std::max(P.max_den[static_cast<std::size_t>(id)], -e);
      }
    }
    P.terms.push_back(std::move(pt));
  }
  return P;
}

// Evaluates the sum at a point described by per-variable power tables
// (pw[k][e] = s_k^e for |e| <= radius[k]).
template <class F>
class Evaluator {
 public:
  Evaluator(const Prepared& P, F f) : P_(P), f_(f), fval_(P.factors.size()) {
    for (const auto& fac : P.factors) {
      std::vector<u64> c;
      for (const auto& z : cyclotomic_coefficients(fac.order)) c.push_back(from_integer(f_, z));
      coeffs_.push_back(std::move(c));
    }
    nums_.resize(P.terms.size());
    dens_.resize(P.terms.size());
    prefix_.resize(P.terms.size());
  }

  [[nodiscard]] const F& field() const { return f_; }
  [[nodiscard]] const std::vector<u64>& factor_values() const { return fval_; }

  u64 monomial(const std::array<const u64*, kNumVars>& pw, const Exponents& e) const {
    u64 v = 1;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      if (e[k] != 0) v = f_.mul(v, pw[k][e[k]]);
    }
    return v;
  }

  // Returns false if some denominator vanishes at the point.
  bool eval(const std::array<const u64*, kNumVars>& pw, u64& out) {
    if (!prepare_terms(pw)) return false;
    u64 total = 0;
    for (std::size_t i = 0; i < P_.terms.size(); ++i) total = add(f_, total, f_.mul(nums_[i], dens_[i]));
    out = total;
    return true;
  }

  // Individual term values.
  bool term_values(const std::array<const u64*, kNumVars>& pw, std::vector<u64>& out) {
    if (!prepare_terms(pw)) return false;
    out.resize(P_.terms.size());
    for (std::size_t i = 0; i < P_.terms.size(); ++i) out[i] = f_.mul(nums_[i], dens_[i]);
    return true;
  }

  // prod_f Phi_f^{mult_f} from the factor values of the last eval().
  u64 factor_product(const std::vector<int>& mult) const {
    u64 v = 1;
    for (std::size_t i = 0; i < mult.size(); ++i) {
      for (int r = 0; r < mult[i]; ++r) v = f_.mul(v, fval_[i]);
    }
    return v;
  }

 private:
  // Fills nums_ and dens_ (inverted denominators) for every term.
  bool prepare_terms(const std::array<const u64*, kNumVars>& pw) {
    for (std::size_t i = 0; i < P_.factors.size(); ++i) {
      const u64 y = monomial(pw, P_.factors[i].base.doubled());
      const auto& c = coeffs_[i];
      u64 v = c.back();
      for (std::size_t j = c.size() - 1; j-- > 0;) v = add(f_, f_.mul(v, y), c[j]);
      fval_[i] = v;
    }
    u64 running = 1;
    for (std::size_t i = 0; i < P_.terms.size(); ++i) {
      const auto& t = P_.terms[i];
      u64 num = monomial(pw, t.unit);
      if (t.sign < 0) num = sub(f_, 0, num);
      for (const auto& [id, e] : t.num) {
        for (int r = 0; r < e; ++r) num = f_.mul(num, fval_[static_cast<std::size_t>(id)]);
      }
      u64 den = 1;
      for (const auto& [id, e] : t.den) {
        for (int r = 0; r < e; ++r) den = f_.mul(den, fval_[static_cast<std::size_t>(id)]);
      }
      if (den == 0) return false;
      nums_[i] = num;
      dens_[i] = den;
      prefix_[i] = running;
      running = f_.mul(running, den);
    }
    // Batch inversion through prefix products.
    u64 inv = inverse(f_, running);
    for (std::size_t i = P_.terms.size(); i-- > 0;) {
      const u64 d = dens_[i];
      dens_[i] = f_.mul(inv, prefix_[i]);
      inv = f_.mul(inv, d);
    }
    return true;
  }

  const Prepared& P_;
  F f_;
  std::vector<std::vector<u64>> coeffs_;
  std::vector<u64> fval_;
  std::vector<u64> nums_;
  std::vector<u64> dens_;
  std::vector<u64> prefix_;
};

// Power table s^e for e in [-r, r], stored centered.
template <class F>
struct PowerTable {
  std::vector<u64> data;
  int r = 0;
  void build(const F& f, u64 s, int radius) {
    r = radius;
    data.assign(static_cast<std::size_t>(2 * r + 1), 1);
    const u64 s_inv = inverse(f, s);
    for (int e = 1; e <= r; ++e) {
      data[static_cast<std::size_t>(r + e)] = f.mul(data[static_cast<std::size_t>(r + e - 1)], s);
      data[static_cast<std::size_t>(r - e)] = f.mul(data[static_cast<std::size_t>(r - e + 1)], s_inv);
    }
  }
  [[nodiscard]] const u64* center() const { return data.data() + r; }
};

// Coefficients (ascending) of the polynomial through (x_j, v_j); O(n^2).
template <class F>
std::vector<u64> interpolate(const F& f, const std::vector<u64>& x, std::vector<u64> v,
                             const std::function<u64(std::size_t, std::size_t)>& inv_diff) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      v[i] = f.mul(sub(f, v[i], v[i - 1]), inv_diff(i, i - j));
      if (i == j) break;
    }
  }
  std::vector<u64> poly(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // poly = poly * (z - x_i) + v_i
    for (std::size_t k = n - 1; k > 0; --k) poly[k] = sub(f, poly[k - 1], f.mul(poly[k], x[i]));
    poly[0] = sub(f, 0, f.mul(poly[0], x[i]));
    poly[0] = add(f, poly[0], v[i]);
  }
  return poly;
}

int top_of(const CycloFactor& fac, int phi, const std::array<long long, kNumVars>& a) {
  long long w = 0;
  for (std::size_t k = 0; k < kNumVars; ++k) w += a[k] * fac.base.doubled()[k];
  return static_cast<int>(std::max<long long>(0, w) * phi);
}

int bot_of(const CycloFactor& fac, int phi, const std::array<long long, kNumVars>& a) {
  long long w = 0;
  for (std::size_t k = 0; k < kNumVars; ++k) w += a[k] * fac.base.doubled()[k];
  return static_cast<int>(std::min<long long>(0, w) * phi);
}

// Range [lo, hi] of the weight-a degree of sum(terms) * prod Phi^{mult}.
std::pair<long long, long long> degree_range(const Prepared& P, const std::vector<int>& mult,
                                             const std::array<long long, kNumVars>& a) {
  long long lo = 0;
  long long hi = 0;
  bool first = true;
  for (const auto& t : P.terms) {
    long long u = 0;
    for (std::size_t k = 0; k < kNumVars; ++k) u += a[k] * t.unit[k];
    long long tlo = u;
    long long thi = u;
    for (const auto& [id, e] : t.num) {
      tlo += static_cast<long long>(e) * bot_of(P.factors[static_cast<std::size_t>(id)], P.degree[static_cast<std::size_t>(id)], a);
      thi += static_cast<long long>(e) * top_of(P.factors[static_cast<std::size_t>(id)], P.degree[static_cast<std::size_t>(id)], a);
    }
    for (const auto& [id, e] : t.den) {
      tlo -= static_cast<long long>(e) * bot_of(P.factors[static_cast<std::size_t>(id)], P.degree[static_cast<std::size_t>(id)], a);
      thi -= static_cast<long long>(e) * top_of(P.factors[static_cast<std::size_t>(id)], P.degree[static_cast<std::size_t>(id)], a);
    }
    lo = first ? tlo : std::min(lo, tlo);
    hi = first ? thi : std::max(hi, thi);
    first = false;
  }
  for (std::size_t i = 0; i < mult.size(); ++i) {
    lo += static_cast<long long>(mult[i]) * bot_of(P.factors[i], P.degree[i], a);
    hi += static_cast<long long>(mult[i]) * top_of(P.factors[i], P.degree[i], a);
  }
  return {lo, hi};
}

// Exact long division in F_p[z]; returns false if g does not divide p.
template <class F>
bool divide_in_place(const F& f, std::vector<u64>& p, const std::vector<u64>& g) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.empty()) return true;
  std::size_t dg = g.size() - 1;
  while (g[dg] == 0) --dg;
  if (p.size() - 1 < dg) return false;
  const u64 lead_inv = inverse(f, g[dg]);
  std::vector<u64> r = p;
  std::vector<u64> q(r.size() - dg, 0);
  for (std::size_t i = r.size(); i-- > dg;) {
    const u64 c = f.mul(r[i], lead_inv);
    q[i - dg] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      if (g[j] != 0) r[i - dg + j] = sub(f, r[i - dg + j], f.mul(c, g[j]));
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (r[i] != 0) return false;
  }
  p = std::move(q);
  return true;
}

class ModularSummer {
 public:
  ModularSummer(const Prepared& P, const SumOptions& opts, std::mt19937_64& rng)
      : P_(P), opts_(opts), rng_(rng) {}

  // Multiplicity of each factor in the reduced denominator.
  std::vector<int> probe_denominator(std::size_t& points) {
    const Mersenne f;
    const auto a = choose_direction();
    auto [lo, hi] = degree_range(P_, P_.max_den, a);
    const std::size_t m = static_cast<std::size_t>(hi - lo + 1);
    points = m;
    std::array<u64, kNumVars> c{};
    for (auto& ci : c) ci = random_unit(f);

    Evaluator<Mersenne> ev(P_, f);
    std::vector<u64> xs(m);
    std::vector<u64> vals(m);
    std::array<PowerTable<Mersenne>, kNumVars> tables;
    for (std::size_t j = 0; j < m; ++j) {
      const u64 z = j + 1;
      const u64 z_inv = inverse(f, z);
      std::array<const u64*, kNumVars> pw{};
      for (std::size_t k = 0; k < kNumVars; ++k) {
        const u64 s = f.mul(c[k], signed_power(f, z, z_inv, a[k]));
        tables[k].build(f, s, P_.radius[k]);
        pw[k] = tables[k].center();
      }
      u64 v = 0;
      if (!ev.eval(pw, v)) throw std::domain_error("probe hit a pole");
      v = f.mul(v, ev.factor_product(P_.max_den));
      xs[j] = z;
      vals[j] = f.mul(v, signed_power(f, z, z_inv, -lo));
    }
    std::vector<u64> inv_small(m + 1, 0);
    for (std::size_t j = 1; j <= m; ++j) inv_small[j] = inverse(f, j);
    std::vector<u64> poly = interpolate<Mersenne>(
        f, xs, vals, [&](std::size_t i, std::size_t k) { return inv_small[i - k]; });

    std::vector<int> mult = P_.max_den;
    bool zero = std::all_of(poly.begin(), poly.end(), [](u64 v) { return v == 0; });
    if (zero) {
      std::fill(mult.begin(), mult.end(), 0);
      return mult;
    }
    for (std::size_t i = 0; i < P_.factors.size(); ++i) {
      if (mult[i] == 0) continue;
      const auto g = curve_image(f, P_.factors[i], c, a);
      while (mult[i] > 0 && divide_in_place(f, poly, g)) --mult[i];
    }
    return mult;
  }

  // Numerator N = D * sum, interpolated on its degree box.
  LaurentPoly interpolate_numerator(const std::vector<int>& mult, std::size_t& grid_points) {
    const Mersenne f;
    std::array<int, kNumVars> lo{};
    std::array<int, kNumVars> step{};
    std::array<int, kNumVars> count{};
    const auto parity = parity_vector(mult);
    for (std::size_t k = 0; k < kNumVars; ++k) {
      std::array<long long, kNumVars> a{};
      a[k] = 1;
      auto [l, h] = degree_range(P_, mult, a);
      step[k] = 1;
      if (parity[k] >= 0) {
        step[k] = 2;
        if (((l - parity[k]) % 2 + 2) % 2 != 0) ++l;
        if (((h - parity[k]) % 2 + 2) % 2 != 0) --h;
      }
      if (h < l) return {};
      lo[k] = static_cast<int>(l);
      count[k] = static_cast<int>((h - l) / step[k] + 1);
    }

    // Nodes with distinct step-th powers.
    std::array<std::vector<u64>, kNumVars> nodes;
    std::array<std::vector<u64>, kNumVars> node_pow;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      std::map<u64, bool> seen;
      while (static_cast<int>(nodes[k].size()) < count[k]) {
        const u64 s = (count[k] == 1 && P_.radius[k] == 0 && lo[k] == 0) ? 1 : random_unit(f);
        const u64 u = step[k] == 2 ? f.mul(s, s) : s;
        if (seen.count(u)) continue;
        seen[u] = true;
        nodes[k].push_back(s);
        node_pow[k].push_back(u);
      }
    }
    std::array<std::vector<PowerTable<Mersenne>>, kNumVars> tables;
    std::array<std::vector<u64>, kNumVars> shift;  // s^{-lo}
    for (std::size_t k = 0; k < kNumVars; ++k) {
      for (u64 s : nodes[k]) {
        PowerTable<Mersenne> t;
        t.build(f, s, P_.radius[k]);
        tables[k].push_back(std::move(t));
        shift[k].push_back(signed_power(f, s, inverse(f, s), -lo[k]));
      }
    }
    std::size_t total = 1;
    for (int c : count) total *= static_cast<std::size_t>(c);
    grid_points = total;
    std::vector<u64> values(total);

    const unsigned jobs = std::max(1u, std::min<unsigned>(opts_.jobs, static_cast<unsigned>(total)));
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](unsigned w) {
      try {
        Evaluator<Mersenne> ev(P_, f);
        for (std::size_t idx = w; idx < total; idx += jobs) {
          std::size_t rest = idx;
          std::array<std::size_t, kNumVars> j{};
          for (std::size_t k = kNumVars; k-- > 0;) {
            j[k] = rest % static_cast<std::size_t>(count[k]);
            rest /= static_cast<std::size_t>(count[k]);
          }
          std::array<const u64*, kNumVars> pw{};
          u64 sh = 1;
          for (std::size_t k = 0; k < kNumVars; ++k) {
            pw[k] = tables[k][j[k]].center();
            sh = f.mul(sh, shift[k][j[k]]);
          }
          u64 v = 0;
          if (!ev.eval(pw, v)) throw std::domain_error("grid point hit a pole");
          values[idx] = f.mul(f.mul(v, ev.factor_product(mult)), sh);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    // Tensor-product interpolation, one axis at a time.
    std::size_t stride = 1;
    for (std::size_t k = kNumVars; k-- > 0;) {
      const std::size_t n = static_cast<std::size_t>(count[k]);
      if (n > 1) {
        std::vector<u64> inv_diff(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t l = 0; l < i; ++l) inv_diff[i * n + l] = inverse(f, sub(f, node_pow[k][i], node_pow[k][l]));
        }
        std::vector<u64> line(n);
        for (std::size_t base = 0; base < total; ++base) {
          if ((base / stride) % n != 0) continue;
          for (std::size_t i = 0; i < n; ++i) line[i] = values[base + i * stride];
          const auto coeffs = interpolate<Mersenne>(
              f, node_pow[k], line, [&](std::size_t i, std::size_t l) { return inv_diff[i * n + l]; });
          for (std::size_t i = 0; i < n; ++i) values[base + i * stride] = coeffs[i];
        }
      }
      stride *= n;
    }

    std::vector<Term> terms;
    const u64 half = Mersenne::p / 2;
    for (std::size_t idx = 0; idx < total; ++idx) {
      const u64 v = values[idx];
      if (v == 0) continue;
      std::size_t rest = idx;
      Exponents e{};
      for (std::size_t k = kNumVars; k-- > 0;) {
        const int j = static_cast<int>(rest % static_cast<std::size_t>(count[k]));
        rest /= static_cast<std::size_t>(count[k]);
        e[k] = lo[k] + step[k] * j;
      }
      Rational c = v > half ? -Rational(Integer(std::to_string(Mersenne::p - v))) : Rational(Integer(std::to_string(v)));
      terms.push_back({Monomial::from_doubled(e), c});
    }
    return LaurentPoly::from_terms(std::move(terms));
  }

  // Checks D * sum == N at random points modulo an independent prime.
  bool verify(const std::vector<int>& mult, const LaurentPoly& numerator, int rounds) {
    static const u64 p2 = [] {
      Integer q = Integer(1) << 62;
      q += 1000003;
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      return static_cast<u64>(q.get_ui());
    }();
    const Generic f{p2};
    Evaluator<Generic> ev(P_, f);
    int done = 0;
    int tries = 0;
    while (done < rounds) {
      if (++tries > 4 * rounds + 10) return false;
      std::array<u64, kNumVars> s{};
      std::array<u64, kNumVars> s_inv{};
      std::array<PowerTable<Generic>, kNumVars> tables;
      std::array<const u64*, kNumVars> pw{};
      for (std::size_t k = 0; k < kNumVars; ++k) {
        s[k] = random_unit(f);
        s_inv[k] = inverse(f, s[k]);
        tables[k].build(f, s[k], P_.radius[k]);
        pw[k] = tables[k].center();
      }
      u64 v = 0;
      if (!ev.eval(pw, v)) continue;
      const u64 lhs = f.mul(v, ev.factor_product(mult));
      u64 rhs = 0;
      for (const auto& t : numerator.terms()) {
        u64 m = from_integer(f, t.coefficient.get_num());
        for (std::size_t k = 0; k < kNumVars; ++k) {
          const int e = t.monomial.doubled()[k];
          if (e != 0) m = f.mul(m, signed_power(f, s[k], s_inv[k], e));
        }
        rhs = add(f, rhs, m);
      }
      if (lhs != rhs) return false;
      ++done;
    }
    return true;
  }

 private:
  template <class F>
  u64 random_unit(const F& f) {
    std::uniform_int_distribution<u64> dist(2, f.modulus() - 2);
    return dist(rng_);
  }

  // Integer weight vector with a.x != 0 for every denominator base,
  // minimizing the probe degree.
  std::array<long long, kNumVars> choose_direction() {
    std::array<long long, kNumVars> best{};
    long long best_cost = -1;
    for (int attempt = 0; attempt < 1600; ++attempt) {
      if (attempt % 400 == 0 && best_cost >= 0) break;
      const int width = 3 << (attempt / 400);
      std::uniform_int_distribution<int> dist(-width, width);
      std::array<long long, kNumVars> a{};
      for (std::size_t k = 0; k < kNumVars; ++k) a[k] = P_.radius[k] == 0 ? 0 : dist(rng_);
      bool ok = true;
      for (std::size_t i = 0; i < P_.factors.size() && ok; ++i) {
        if (P_.max_den[i] == 0) continue;
        long long w = 0;
        for (std::size_t k = 0; k < kNumVars; ++k) w += a[k] * P_.factors[i].base.doubled()[k];
        ok = w != 0;
      }
      if (!ok) continue;
      auto [lo, hi] = degree_range(P_, P_.max_den, a);
      if (best_cost < 0 || hi - lo < best_cost) {
        best_cost = hi - lo;
        best = a;
      }
    }
    if (best_cost < 0) throw std::domain_error("no admissible probe direction");
    return best;
  }

  // Phi_d(c^x z^{a.x}) as a polynomial in z (up to a unit).
  static std::vector<u64> curve_image(const Mersenne& f, const CycloFactor& fac,
                                      const std::array<u64, kNumVars>& c,
                                      const std::array<long long, kNumVars>& a) {
    long long w = 0;
    u64 cx = 1;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      const int e = fac.base.doubled()[k];
      w += a[k] * e;
      if (e != 0) cx = f.mul(cx, signed_power(f, c[k], inverse(f, c[k]), e));
    }
    if (w < 0) {
      w = -w;
      cx = inverse(f, cx);
    }
    const auto& coeffs = cyclotomic_coefficients(fac.order);
    std::vector<u64> g(static_cast<std::size_t>(w) * (coeffs.size() - 1) + 1, 0);
    u64 cp = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      g[static_cast<std::size_t>(w) * i] = f.mul(from_integer(f, coeffs[i]), cp);
      cp = f.mul(cp, cx);
    }
    return g;
  }

  // Parity of the numerator in each variable (0, 1), or -1 if mixed.
  // Every term and the denominator are tested under s_k -> -s_k at a
  // random point; a wrong guess is caught by verification.
  std::array<int, kNumVars> parity_vector(const std::vector<int>& mult) {
    std::array<int, kNumVars> out{};
    const Mersenne f;
    Evaluator<Mersenne> ev(P_, f);
    std::array<u64, kNumVars> s{};
    for (auto& v : s) v = random_unit(f);
    std::vector<u64> base_vals;
    std::vector<u64> flip_vals;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      if (P_.radius[k] == 0) {
        out[k] = 0;
        continue;
      }
      std::array<PowerTable<Mersenne>, kNumVars> tables;
      std::array<const u64*, kNumVars> pw{};
      for (std::size_t j = 0; j < kNumVars; ++j) {
        tables[j].build(f, s[j], P_.radius[j]);
        pw[j] = tables[j].center();
      }
      if (!ev.term_values(pw, base_vals)) throw std::domain_error("parity probe hit a pole");
      const u64 d0 = ev.factor_product(mult);
      tables[k].build(f, sub(f, 0, s[k]), P_.radius[k]);
      pw[k] = tables[k].center();
      if (!ev.term_values(pw, flip_vals)) throw std::domain_error("parity probe hit a pole");
      const u64 d1 = ev.factor_product(mult);
      auto classify = [&](u64 a, u64 b) {
        if (a == 0 && b == 0) return -2;
        if (a == b) return 0;
        if (add(f, a, b) == 0) return 1;
        return -1;
      };
      int par = classify(d0, d1);
      int spar = -2;
      for (std::size_t i = 0; i < base_vals.size() && spar != -1; ++i) {
        const int c = classify(base_vals[i], flip_vals[i]);
        if (c == -2) continue;
        if (c == -1 || (spar >= 0 && spar != c)) {
          spar = -1;
        } else {
          spar = c;
        }
      }
      if (par < 0 || spar == -1) {
        out[k] = -1;
      } else {
        out[k] = (par + std::max(spar, 0)) % 2;
      }
    }
    return out;
  }

  const Prepared& P_;
  const SumOptions& opts_;
  std::mt19937_64& rng_;
};

}  // namespace

RatFunc sum_factored(const std::vector<FactoredTerm>& terms, const SumOptions& opts, SumReport* report) {
  SumReport local;
  SumReport& rep = report ? *report : local;
  rep = {};
  if (!opts.allow_modular || terms.size() < opts.modular_threshold) return sum_factored_exact(terms);
  const Prepared P = prepare(terms);
  if (std::all_of(P.max_den.begin(), P.max_den.end(), [](int e) { return e == 0; })) {
    return sum_factored_exact(terms);
  }
  std::mt19937_64 rng(opts.seed);
  for (int attempt = 1; attempt <= 3; ++attempt) {
    rep.attempts = attempt;
    try {
      ModularSummer ms(P, opts, rng);
      const std::vector<int> mult = ms.probe_denominator(rep.probe_points);
      LaurentPoly num = ms.interpolate_numerator(mult, rep.grid_points);
      if (!ms.verify(mult, num, 3)) continue;
      RatFunc::CycloMap den;
      for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] > 0) den.emplace(P.factors[i], mult[i]);
      }
      rep.modular = true;
      return RatFunc::from_factors(std::move(num), std::move(den));
    } catch (const std::domain_error&) {
      continue;  // unlucky random point; retry
    }
  }
  rep.modular = false;
  return sum_factored_exact(terms);
}

}  // namespace kvertex::exactalg
