#include "kvertex/qcombi/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace kvertex::qcombi {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int l : letters_) {
    if (l < 1) throw std::invalid_argument("word letters are 1-based");
    alphabet_ = std::max(alphabet_, l);
  }
}

std::vector<int> Word::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(alphabet_), 0);
  for (int l : letters_) ++m[static_cast<std::size_t>(l - 1)];
  return m;
}

std::vector<int> Word::occurrences(int i) const {
  std::vector<int> out;
  for (int a = 0; a < length(); ++a) {
    if (letters_[static_cast<std::size_t>(a)] == i) out.push_back(a + 1);
  }
  return out;
}

int Word::first(int i) const {
  for (int a = 0; a < length(); ++a) {
    if (letters_[static_cast<std::size_t>(a)] == i) return a + 1;
  }
  return 0;
}

Word Word::reversed() const {
  Word w = *this;
  std::reverse(w.letters_.begin(), w.letters_.end());
  return w;
}

std::string Word::to_string() const {
  std::string out;
  for (int l : letters_) {
    if (alphabet_ > 9 && !out.empty()) out += ' ';
    out += std::to_string(l);
  }
  return out;
}

void for_each_word(const std::vector<int>& m, const std::function<void(const Word&)>& visit) {
  std::vector<int> letters;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw std::invalid_argument("negative multiplicity");
    letters.insert(letters.end(), static_cast<std::size_t>(m[i]), static_cast<int>(i) + 1);
  }
  do {
    visit(Word(letters));
  } while (std::next_permutation(letters.begin(), letters.end()));
}

std::vector<Word> enumerate_words(const std::vector<int>& m) {
  std::vector<Word> out;
  for_each_word(m, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::uint64_t multinomial(const std::vector<int>& m) {
  std::uint64_t result = 1;
  int total = 0;
  for (int mi : m) {
    for (int k = 1; k <= mi; ++k) {
      ++total;
      result = result * static_cast<std::uint64_t>(total) / static_cast<std::uint64_t>(k);
    }
  }
  return result;
}

int c_word(const Word& w, int i, int j) {
  int seen_i = 0;
  int total_i = 0;
  for (int l : w.letters()) total_i += (l == i);
  int c = 0;
  for (int l : w.letters()) {
    if (l == i) {
      ++seen_i;
    } else if (l == j) {
      c += seen_i - (total_i - seen_i);
    }
  }
  return c;
}

DimVector word_dim_vector(const Word& w, int i) {
  DimVector e;
  int count = 0;
  for (int l : w.letters()) {
    count += (l == i);
    e.push_back(count);
  }
  e.push_back(count);
  return e;
}

int c_Q(const DimVector& e, const DimVector& f) {
  if (e.size() != f.size()) throw std::invalid_argument("dimension vector length mismatch");
  if (e.size() < 2) throw std::invalid_argument("dimension vectors need N+1 >= 2 entries");
  int c = 0;
  for (std::size_t a = 0; a + 1 < e.size(); ++a) c += e[a] * f[a + 1] - f[a] * e[a + 1];
  return c;
}

}  // namespace kvertex::qcombi
