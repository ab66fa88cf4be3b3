#pragma once

#include <string>
#include <vector>

#include "kvertex/exactalg/ratfunc.hpp"
#include "kvertex/qcombi/quantum.hpp"

namespace kvertex::qcombi {

/// Ordering constraint on first occurrences o_i for an l-letter word:
/// GT: o_1 > ... > o_{l-1};  LT: o_1 < ... < o_{l-1};
/// LT_ALL: o_1 < ... < o_l;  B: o_l < o_1 < ... < o_{l-1}.
enum class WordOrder { GT, LT, LT_ALL, B };

/// Sum over constrained w in R(m) of prod_{i<l} [m_i - sum_{j>i} c_{i,j}(w)].
/// The last slot is the remainder letter and may have multiplicity 0.
/// `inner_offset` != 1 starts the inner sum at j = i + inner_offset; it only
/// exists to build deliberately wrong negative controls.
LaurentPoly restricted_word_sum(WordOrder kind, const std::vector<int>& m, int inner_offset = 1);

/// Sum over all sigma in S_k of restricted_word_sum(kind, (m_sigma, remainder)).
LaurentPoly symmetrized_word_sum(WordOrder kind, const std::vector<int>& m, int remainder);

enum class Identity { QBINOM, QMULTINOM, MOCHIZUKI, JOYCE_LT, JOYCE_B };

std::string identity_name(Identity id);
/// Accepts "qbinom", "qmultinom", "mochizuki", "joyce_lt", "joyce_b" (case-insensitive).
Identity parse_identity(const std::string& name);

struct IdentityResult {
  Identity prop;
  std::vector<int> m;  // (m, n) for QBINOM, the composition otherwise
  int N = 0;           // frame size; unused for QBINOM and QMULTINOM
  bool verdict = false;
  exactalg::RatFunc lhs;
  exactalg::RatFunc rhs;
};

/// LHS by exhaustive enumeration, RHS by closed form. Throws
/// std::invalid_argument for out-of-range arguments.
IdentityResult check_identity(Identity prop, const std::vector<int>& m, int N = 0);

/// Instances of a suite: QBINOM m + n <= max_n; QMULTINOM compositions of
/// every total <= max_n; the three word-sum identities use multisets m with
/// at most max_len parts, |m| <= max_m and |m| < N <= max_N.
struct SuiteRange {
  int max_n = 9;
  int max_len = 3;
  int max_m = 6;
  int max_N = 10;
};
std::vector<std::pair<std::vector<int>, int>> suite_instances(Identity prop, const SuiteRange& range);

}  // namespace kvertex::qcombi
