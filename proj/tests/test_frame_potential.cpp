#include <gtest/gtest.h>

#include <set>

#include "symdesign/frame_potential.hpp"
#include "symdesign/partition.hpp"

using namespace symdesign;

namespace {

// Independent sum over qubit sectors with per-sector fourth moment 2, or 1 for one-dimensional irreps.
std::int64_t direct_k2(int n) {
  std::vector<std::int64_t> m, dims;
  for (const auto& p : partitions(n, 2)) {
    m.push_back(static_cast<std::int64_t>(multiplicity(p, 2)));
    dims.push_back(static_cast<std::int64_t>(dim_irrep(p)));
  }
  std::int64_t total = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    total += m[a] * m[a] * m[a] * m[a] * (dims[a] >= 2 ? 2 : 1);
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (a != b) total += 2 * m[a] * m[a] * m[b] * m[b];
    }
  }
  return total;
}

}  // namespace

TEST(FramePotential, ExactValues) {
  EXPECT_EQ(frame_potential_exact_k2(2), 118);
  EXPECT_EQ(frame_potential_exact_k2(3), 544);
  for (int n = 2; n <= 12; ++n) EXPECT_EQ(frame_potential_exact_k2(n), direct_k2(n)) << n;
}

TEST(FramePotential, ClosedFormDiffersOnlyAtTwo) {
  EXPECT_EQ(frame_potential_paper_k2(2), 119);
  EXPECT_EQ(frame_potential_paper_k2(3), 544);
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(frame_potential_paper_k2(n), frame_potential_exact_k2(n)) << n;
}

TEST(FramePotential, FirstOrderCommutant) {
  EXPECT_EQ(commutant_dim_k1(2), 10);
  EXPECT_EQ(commutant_dim_k1(3), 20);
  for (int n = 2; n <= 10; ++n) {
    std::int64_t s = 0;
    for (const auto& p : partitions(n, 2)) s += static_cast<std::int64_t>(multiplicity(p, 2) * multiplicity(p, 2));
    EXPECT_EQ(commutant_dim_k1(n), s);
  }
}

// A Vandermonde matrix has rank min(rows, distinct nodes).
TEST(FramePotential, PhaseBasisRank) {
  for (int n = 2; n <= 12; ++n) {
    std::set<std::int64_t> nodes;
    for (int r = 0; r <= n / 2; ++r) nodes.insert(content_sum(Partition(r ? std::vector<int>{n - r, r} : std::vector<int>{n})));
    for (int l = 0; l <= 8; ++l) {
      EXPECT_EQ(phase_basis_rank(n, l), std::min<int>(l + 1, nodes.size())) << n << " " << l;
    }
  }
  const auto v = phase_basis_matrix(4, 2);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1], (std::vector<std::int64_t>{6, 2, 0}));
  EXPECT_EQ(v[2], (std::vector<std::int64_t>{36, 4, 0}));
}
