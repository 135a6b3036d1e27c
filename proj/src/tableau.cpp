#include "symdesign/tableau.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace symdesign {

StandardTableau::StandardTableau(Partition shape, std::vector<std::vector<int>> rows)
    : shape_(std::move(shape)), rows_(std::move(rows)) {
  const int n = shape_.size();
  if (static_cast<int>(rows_.size()) != shape_.rows()) throw std::invalid_argument("tableau rows do not match shape");
  boxes_.assign(n, Box{-1, -1});
  for (int r = 0; r < shape_.rows(); ++r) {
    if (static_cast<int>(rows_[r].size()) != shape_.row_length(r)) {
      throw std::invalid_argument("tableau row length does not match shape " + shape_.str());
    }
    for (int c = 0; c < shape_.row_length(r); ++c) {
      const int v = rows_[r][c];
      if (v < 1 || v > n || boxes_[v - 1].row != -1) throw std::invalid_argument("tableau entries must be a permutation of 1..n");
      boxes_[v - 1] = Box{r, c};
      if (c > 0 && rows_[r][c - 1] >= v) throw std::invalid_argument("tableau rows must increase");
      if (r > 0 && rows_[r - 1][c] >= v) throw std::invalid_argument("tableau columns must increase");
    }
  }
}

bool StandardTableau::can_swap(int j) const {
  const Box& a = box_of(j);
  const Box& b = box_of(j + 1);
  return a.row != b.row && a.col != b.col;
}

StandardTableau StandardTableau::swapped(int j) const {
  auto rows = rows_;
  const Box& a = box_of(j);
  const Box& b = box_of(j + 1);
  std::swap(rows[a.row][a.col], rows[b.row][b.col]);
  return StandardTableau(shape_, std::move(rows));
}

std::string StandardTableau::str() const {
  std::string s = "{";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      if (c) s += ',';
      s += std::to_string(rows_[r][c]);
    }
    s += ']';
  }
  return s + "}";
}

ContentVector contents(const StandardTableau& t) {
  ContentVector v(t.size());
  for (int j = 1; j <= t.size(); ++j) v[j - 1] = t.box_of(j).content();
  return v;
}

std::vector<StandardTableau> standard_tableaux(const Partition& lambda) {
  // Build by placing n, n-1, ... into removable corners. The descent visits
  // rows from the bottom up, which is exactly last-letter order.
  const int n = lambda.size();
  std::vector<StandardTableau> out;
  std::vector<std::vector<int>> rows(lambda.rows());
  for (int r = 0; r < lambda.rows(); ++r) rows[r].assign(lambda.row_length(r), 0);

  std::function<void(const Partition&, int)> place = [&](const Partition& shape, int value) {
    if (value == 0) {
      out.emplace_back(lambda, rows);
      return;
    }
    auto corners = shape.removable_rows();
    std::sort(corners.rbegin(), corners.rend());
    for (int r : corners) {
      rows[r][shape.row_length(r) - 1] = value;
      place(shape.remove_box(r), value - 1);
    }
  };
  if (n > 0) place(lambda, n);
  return out;
}

}  // namespace symdesign
