#include "symdesign/frame_potential.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "symdesign/partition.hpp"

namespace symdesign {

namespace {

using boost::multiprecision::cpp_int;

std::int64_t to_int64(const cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("frame potential exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

void require_n(int n) {
  if (n < 2) throw std::invalid_argument("frame potential needs n >= 2, got " + std::to_string(n));
}

}  // namespace

std::int64_t frame_potential_exact_k2(int n) {
  require_n(n);
  const auto shapes = partitions(n, 2);
  cpp_int total = 0;
  for (const auto& a : shapes) {
    const cpp_int ma = multiplicity(a, 2);
    const int fourth_moment = dim_irrep(a) >= 2 ? 2 : 1;
    total += ma * ma * ma * ma * fourth_moment;
    for (const auto& b : shapes) {
      if (a == b) continue;
      const cpp_int mb = multiplicity(b, 2);
      total += 2 * ma * ma * mb * mb;
    }
  }
  return to_int64(total);
}

std::int64_t frame_potential_paper_k2(int n) {
  require_n(n);
  const int rmax = n / 2;
  auto m = [n](int r) { return cpp_int(n - 2 * r + 1); };
  cpp_int total = pow(cpp_int(n + 1), 4);
  for (int r = 1; r <= rmax; ++r) total += 2 * pow(m(r), 4);
  for (int r = 0; r <= rmax; ++r) {
    for (int s = 0; s <= rmax; ++s) {
      if (r != s) total += 2 * m(r) * m(r) * m(s) * m(s);
    }
  }
  return to_int64(total);
}

std::int64_t commutant_dim_k1(int n) {
  if (n < 1) throw std::invalid_argument("commutant_dim_k1 needs n >= 1");
  cpp_int total = 0;
  for (const auto& p : partitions(n, 2)) {
    const cpp_int m = multiplicity(p, 2);
    total += m * m;
  }
  return to_int64(total);
}

std::vector<std::vector<std::int64_t>> phase_basis_matrix(int n, int l_max) {
  require_n(n);
  if (l_max < 0) throw std::invalid_argument("phase basis needs l_max >= 0");
  const auto shapes = partitions(n, 2);
  std::vector<std::vector<std::int64_t>> v(l_max + 1, std::vector<std::int64_t>(shapes.size()));
  for (std::size_t c = 0; c < shapes.size(); ++c) {
    const std::int64_t s = content_sum(shapes[c]);
    cpp_int power = 1;
    for (int l = 0; l <= l_max; ++l) {
      v[l][c] = to_int64(power);
      power *= s;
    }
  }
  return v;
}

int phase_basis_rank(int n, int l_max) {
  require_n(n);
  if (l_max < 0) throw std::invalid_argument("phase basis needs l_max >= 0");
  // Powers are built directly as big integers so large l_max cannot overflow.
  const auto shapes = partitions(n, 2);
  const std::size_t rows = static_cast<std::size_t>(l_max) + 1;
  const std::size_t cols = shapes.size();
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    const cpp_int s = content_sum(shapes[c]);
    cpp_int power = 1;
    for (std::size_t l = 0; l < rows; ++l) {
      a[l][c] = power;
      power *= s;
    }
  }
  // Bareiss fraction-free elimination.
  int rank = 0;
  cpp_int prev = 1;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace symdesign
