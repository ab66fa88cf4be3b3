#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kvertex::qcombi {

/// Rearrangement of 1^{m_1} 2^{m_2} ... l^{m_l}; letters are 1-based.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters);

  [[nodiscard]] const std::vector<int>& letters() const { return letters_; }
  [[nodiscard]] int length() const { return static_cast<int>(letters_.size()); }
  [[nodiscard]] int alphabet() const { return alphabet_; }
  [[nodiscard]] std::vector<int> multiplicities() const;
  /// 1-based positions of letter i, ascending.
  [[nodiscard]] std::vector<int> occurrences(int i) const;
  /// First occurrence of letter i (1-based); 0 when i is absent.
  [[nodiscard]] int first(int i) const;
  [[nodiscard]] Word reversed() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
  int alphabet_ = 0;
};

/// Visits every rearrangement of the multiset word in lexicographic order.
/// Zero multiplicities are allowed (the letter simply never occurs).
void for_each_word(const std::vector<int>& m, const std::function<void(const Word&)>& visit);
std::vector<Word> enumerate_words(const std::vector<int>& m);

/// Multinomial coefficient |m|! / prod m_i!.
std::uint64_t multinomial(const std::vector<int>& m);

/// #{(a,b) in O_i x O_j : a < b} - #{(a,b) : a > b}.
int c_word(const Word& w, int i, int j);

/// Entries e_1 .. e_{N+1}.
using DimVector = std::vector<int>;

/// e_a = #{b in O_i : b <= a} for a = 1..N, plus an appended stable entry e_{N+1} = e_N.
DimVector word_dim_vector(const Word& w, int i);

/// Sum over a = 1..N of e_a f_{a+1} - f_a e_{a+1}. Throws
/// std::invalid_argument on length mismatch or vectors shorter than 2.
int c_Q(const DimVector& e, const DimVector& f);

}  // namespace kvertex::qcombi
