#include "kvertex/qcombi/partition.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace kvertex::qcombi {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos == text.size()) return out;
  for (;;) {
    std::size_t end = text.find(',', pos);
    std::string_view item = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw std::invalid_argument("malformed integer list: '" + std::string(text) + "'");
    }
    out.push_back(v);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

Partition Partition::parse(std::string_view text) { return Partition(parse_int_list(text)); }

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> out;
  for (int c = 0; c < part(0); ++c) {
    int h = 0;
    while (h < length() && parts_[static_cast<std::size_t>(h)] > c) ++h;
    out.push_back(h);
  }
  return Partition(std::move(out));
}

std::vector<std::pair<int, int>> Partition::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < length(); ++r) {
    for (int s = 0; s < parts_[static_cast<std::size_t>(r)]; ++s) out.emplace_back(r, s);
  }
  return out;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

}  // namespace kvertex::qcombi
