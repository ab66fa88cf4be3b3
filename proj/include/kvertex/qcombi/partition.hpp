#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kvertex::qcombi {

/// Integer partition, parts weakly decreasing and positive.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  /// Parses "3,1" (empty string is the empty partition).
  static Partition parse(std::string_view text);

  [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
  [[nodiscard]] int size() const;
  [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] int part(int r) const { return r < length() ? parts_[static_cast<std::size_t>(r)] : 0; }
  [[nodiscard]] Partition conjugate() const;
  /// Cells (r, s) with s < parts[r], row-major.
  [[nodiscard]] std::vector<std::pair<int, int>> cells() const;
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);

/// Parses a comma-separated list of integers ("" gives an empty list).
std::vector<int> parse_int_list(std::string_view text);

}  // namespace kvertex::qcombi
