#pragma once

#include <string>
#include <vector>

#include "symdesign/partition.hpp"

namespace symdesign {

struct Box {
  int row = 0;
  int col = 0;
  int content() const { return col - row; }
  bool operator==(const Box&) const = default;
};

/// Standard filling of a shape by 1..n. Holds the position of each entry.
class StandardTableau {
 public:
  /// rows[r][c] is the entry in row r, column c (1-based entries).
  StandardTableau(Partition shape, std::vector<std::vector<int>> rows);

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int size() const { return shape_.size(); }

  /// Box holding entry j (1-based).
  const Box& box_of(int j) const { return boxes_.at(j - 1); }

  /// Tableau with j and j+1 exchanged; standard only if they share
  /// neither a row nor a column.
  bool can_swap(int j) const;
  StandardTableau swapped(int j) const;

  std::string str() const;

  bool operator==(const StandardTableau& o) const { return rows_ == o.rows_; }

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
  std::vector<Box> boxes_;
};

/// values[j-1] = content of the box holding j.
using ContentVector = std::vector<int>;

ContentVector contents(const StandardTableau& t);

/// All standard tableaux in last-letter order: sorted by the row of n,
/// then the row of n-1, ..., with lower rows first.
std::vector<StandardTableau> standard_tableaux(const Partition& lambda);

}  // namespace symdesign
