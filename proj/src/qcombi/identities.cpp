#include "kvertex/qcombi/identities.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

#include "kvertex/qcombi/partition.hpp"
#include "kvertex/qcombi/words.hpp"

namespace kvertex::qcombi {

using exactalg::Monomial;
using exactalg::RatFunc;
using exactalg::Rational;

namespace {

bool satisfies(WordOrder kind, const std::vector<int>& first, int l) {
  // first[i] is o_{i+1}.
  switch (kind) {
    case WordOrder::GT:
      for (int i = 0; i + 2 < l; ++i) {
        if (first[static_cast<std::size_t>(i)] <= first[static_cast<std::size_t>(i + 1)]) return false;
      }
      return true;
    case WordOrder::LT:
      for (int i = 0; i + 2 < l; ++i) {
        if (first[static_cast<std::size_t>(i)] >= first[static_cast<std::size_t>(i + 1)]) return false;
      }
      return true;
    case WordOrder::LT_ALL:
      for (int i = 0; i + 1 < l; ++i) {
        if (first[static_cast<std::size_t>(i)] >= first[static_cast<std::size_t>(i + 1)]) return false;
      }
      return true;
    case WordOrder::B:
      if (l >= 2 && first[static_cast<std::size_t>(l - 1)] >= first[0]) return false;
      for (int i = 0; i + 2 < l; ++i) {
        if (first[static_cast<std::size_t>(i)] >= first[static_cast<std::size_t>(i + 1)]) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

LaurentPoly restricted_word_sum(WordOrder kind, const std::vector<int>& m, int inner_offset) {
  const int l = static_cast<int>(m.size());
  if (l < 1) throw std::invalid_argument("restricted word sum needs at least one letter");
  for (int i = 0; i + 1 < l; ++i) {
    if (m[static_cast<std::size_t>(i)] < 1) throw std::invalid_argument("multiplicities must be positive");
  }
  if (m.back() < 0) throw std::invalid_argument("negative remainder multiplicity");
  // An absent remainder letter has no first occurrence; constraints that
  // mention it cannot hold.
  if (m.back() == 0 && (kind == WordOrder::LT_ALL || kind == WordOrder::B) && l >= 2) return {};

  // Tally argument tuples, then evaluate quantum integers once per tuple.
  std::map<std::vector<int>, long long> tally;
  std::vector<int> first(static_cast<std::size_t>(l));
  std::vector<int> args(static_cast<std::size_t>(std::max(0, l - 1)));
  std::vector<int> seen(static_cast<std::size_t>(l));
  for_each_word(m, [&](const Word& w) {
    std::fill(first.begin(), first.end(), 0);
    const auto& letters = w.letters();
    for (std::size_t a = 0; a < letters.size(); ++a) {
      auto& f = first[static_cast<std::size_t>(letters[a] - 1)];
      if (f == 0) f = static_cast<int>(a) + 1;
    }
    if (!satisfies(kind, first, l)) return;
    // c_{i,j} = sum over j-positions of (#i before) - (#i after).
    std::vector<int> c(static_cast<std::size_t>(l * l), 0);
    std::fill(seen.begin(), seen.end(), 0);
    for (int letter : letters) {
      const int j = letter - 1;
      for (int i = 0; i < l; ++i) {
        if (i == j) continue;
        c[static_cast<std::size_t>(i * l + j)] += 2 * seen[static_cast<std::size_t>(i)] - m[static_cast<std::size_t>(i)];
      }
      ++seen[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i + 1 < l; ++i) {
      int s = 0;
      for (int j = i + inner_offset; j < l; ++j) s += c[static_cast<std::size_t>(i * l + j)];
      args[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] - s;
    }
    ++tally[args];
  });

  LaurentPoly total;
  for (const auto& [a, count] : tally) {
    LaurentPoly term(Rational(static_cast<long>(count)));
    for (int x : a) {
      term *= quantum_int(x);
      if (term.is_zero()) break;
    }
    total += term;
  }
  return total;
}

LaurentPoly symmetrized_word_sum(WordOrder kind, const std::vector<int>& m, int remainder) {
  std::vector<int> perm = m;
  std::sort(perm.begin(), perm.end());
  // Each distinct arrangement appears prod(mult!) times in S_k.
  long stabilizer = 1;
  for (std::size_t i = 0; i < perm.size();) {
    std::size_t j = i;
    while (j < perm.size() && perm[j] == perm[i]) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) stabilizer *= static_cast<long>(k);
    i = j;
  }
  LaurentPoly total;
  do {
    std::vector<int> full = perm;
    full.push_back(remainder);
    total += restricted_word_sum(kind, full);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total.times(Rational(stabilizer));
}

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::QBINOM: return "QBINOM";
    case Identity::QMULTINOM: return "QMULTINOM";
    case Identity::MOCHIZUKI: return "MOCHIZUKI";
    case Identity::JOYCE_LT: return "JOYCE_LT";
    case Identity::JOYCE_B: return "JOYCE_B";
  }
  return "?";
}

Identity parse_identity(const std::string& name) {
  std::string upper;
  for (char ch : name) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  std::replace(upper.begin(), upper.end(), '-', '_');
  for (Identity id : {Identity::QBINOM, Identity::QMULTINOM, Identity::MOCHIZUKI, Identity::JOYCE_LT,
                      Identity::JOYCE_B}) {
    if (identity_name(id) == upper) return id;
  }
  throw std::invalid_argument("unknown identity suite '" + name + "'");
}

namespace {

RatFunc factorial_ratio(const std::vector<int>& top, const std::vector<int>& bottom) {
  LaurentPoly num(1);
  LaurentPoly den(1);
  for (int n : top) num *= quantum_factorial(n);
  for (int n : bottom) den *= quantum_factorial(n);
  return RatFunc::normalize(num, den);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

IdentityResult check_identity(Identity prop, const std::vector<int>& m, int N) {
  IdentityResult r{prop, m, N, false, {}, {}};
  const int total = std::accumulate(m.begin(), m.end(), 0);
  for (int x : m) require(x >= 1, "multiplicities must be positive");
  switch (prop) {
    case Identity::QBINOM:
    case Identity::QMULTINOM: {
      if (prop == Identity::QBINOM) require(m.size() == 2, "QBINOM takes (m, n)");
      r.N = 0;
      // Sign (-1)^{sum_i m_i sum_{j<i} m_j}; weight kappa^{sum_{i<j} c_ij / 2}.
      long sign_exp = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) sign_exp += static_cast<long>(m[i]) * m[j];
      }
      std::map<int, long long> tally;
      const int l = static_cast<int>(m.size());
      for_each_word(m, [&](const Word& w) {
        int c = 0;
        for (int i = 1; i <= l; ++i) {
          for (int j = i + 1; j <= l; ++j) c += c_word(w, i, j);
        }
        ++tally[c];
      });
      LaurentPoly lhs;
      for (const auto& [c, count] : tally) lhs += kappa_power_half(c).times(Rational(static_cast<long>(count)));
      if (sign_exp % 2 != 0) lhs = -lhs;
      r.lhs = RatFunc(lhs);
      std::vector<int> bottom(m.begin(), m.end());
      r.rhs = factorial_ratio({total}, bottom);
      break;
    }
    case Identity::MOCHIZUKI:
    case Identity::JOYCE_LT:
    case Identity::JOYCE_B: {
      require(N > 0, "frame size N must be positive");
      require(N >= total, "N must be at least |m|");
      const int k = static_cast<int>(m.size());
      std::vector<int> bottom;
      for (int x : m) bottom.push_back(x - 1);
      if (prop == Identity::JOYCE_B) {
        require(k >= 1, "JOYCE_B needs at least one part");
        require(N >= total + 1, "JOYCE_B needs N > |m|");
        r.lhs = RatFunc(symmetrized_word_sum(WordOrder::B, m, N - total));
        bottom.push_back(N - total - 1);
        RatFunc pre = factorial_ratio({N - 1}, bottom);
        LaurentPoly tail;
        if (k == 1) {
          tail = neg_sqrt_kappa_power(m[0]) + neg_sqrt_kappa_power(-m[0]);
        } else if (k == 2) {
          tail = neg_sqrt_kappa_power(m[0] - m[1]) + neg_sqrt_kappa_power(m[1] - m[0]);
        }
        r.rhs = pre * RatFunc(tail);
      } else {
        const WordOrder kind = prop == Identity::MOCHIZUKI ? WordOrder::GT : WordOrder::LT;
        r.lhs = RatFunc(symmetrized_word_sum(kind, m, N - total));
        bottom.push_back(N - total);
        RatFunc pre = factorial_ratio({N}, bottom);
        long factor = 1;
        if (prop == Identity::MOCHIZUKI) {
          for (int i = 2; i <= k; ++i) factor *= i;
        } else {
          factor = k <= 1 ? 1 : 0;
        }
        r.rhs = pre.times(Rational(factor));
      }
      break;
    }
  }
  r.verdict = r.lhs == r.rhs;
  return r;
}

std::vector<std::pair<std::vector<int>, int>> suite_instances(Identity prop, const SuiteRange& range) {
  std::vector<std::pair<std::vector<int>, int>> out;
  switch (prop) {
    case Identity::QBINOM:
      for (int s = 2; s <= range.max_n; ++s) {
        for (int a = 1; a < s; ++a) out.push_back({{a, s - a}, 0});
      }
      break;
    case Identity::QMULTINOM:
      // Every composition of every total 1..max_n (order matters for the sign).
      for (int s = 1; s <= range.max_n; ++s) {
        for (unsigned mask = 0; mask < (1u << (s - 1)); ++mask) {
          std::vector<int> comp;
          int run = 1;
          for (int b = 0; b < s - 1; ++b) {
            if (mask & (1u << b)) {
              comp.push_back(run);
              run = 1;
            } else {
              ++run;
            }
          }
          comp.push_back(run);
          out.push_back({comp, 0});
        }
      }
      break;
    default: {
      // Both sides are symmetric in m, so multisets cover all compositions.
      const int min_len = prop == Identity::JOYCE_B ? 1 : 0;
      for (int s = 0; s <= range.max_m; ++s) {
        for (const auto& p : partitions_of(s)) {
          if (p.length() < min_len || p.length() > range.max_len) continue;
          for (int N = std::max(1, s + 1); N <= range.max_N; ++N) out.push_back({p.parts(), N});
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace kvertex::qcombi
