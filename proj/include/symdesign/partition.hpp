#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace symdesign {

/// A partition of n: weakly decreasing positive parts. Zero parts are
/// dropped on construction, so "(4,0)" and "(4)" denote the same value.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  /// Parses "(3,2,1)", "3,2,1" or "[3, 2, 1]".
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return n_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  int columns() const { return parts_.empty() ? 0 : parts_.front(); }
  int row_length(int r) const { return r < rows() ? parts_[r] : 0; }

  Partition conjugate() const;
  bool is_self_conjugate() const { return *this == conjugate(); }

  /// Rows whose last box can be removed leaving a partition.
  std::vector<int> removable_rows() const;
  Partition remove_box(int row) const;

  std::string str() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// All partitions of n with at most max_rows rows, reverse-lexicographic
/// ((4) before (3,1) before (2,2)).
std::vector<Partition> partitions(int n, int max_rows);

/// Number of charge sectors of n qudits with local dimension d.
int count_sectors(int n, int d);

/// Hook-length formula. Throws std::overflow_error past 64 bits.
std::uint64_t dim_irrep(const Partition& lambda);

/// Number of semistandard tableaux with entries in 1..d (hook-content
/// formula); zero when lambda has more than d rows.
std::uint64_t multiplicity(const Partition& lambda, int d);

/// Sum of column - row over all boxes.
std::int64_t content_sum(const Partition& lambda);

/// Restriction to S_m: the multiset of shapes reached by deleting
/// n - m removable corners, counted by deletion chains.
std::map<Partition, std::uint64_t> branch_restrict(const Partition& lambda, int m);

}  // namespace symdesign
