#include <gtest/gtest.h>

#include <random>

#include "symdesign/kron.hpp"
#include "symdesign/rng.hpp"

using namespace symdesign;
using Eigen::MatrixXd;

namespace {

MatrixXd random_matrix(int r, int c, SplitMix64& rng, double density = 0.5) {
  MatrixXd m = MatrixXd::Zero(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (rng.uniform() < density) m(i, j) = rng.uniform() - 0.5;
    }
  }
  return m;
}

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

TEST(Kron, CsrRoundTrip) {
  SplitMix64 rng(1);
  const MatrixXd m = random_matrix(7, 5, rng, 0.3);
  const auto csr = CsrMatrix::from_dense(m);
  EXPECT_EQ(csr.rows, 7);
  EXPECT_EQ(csr.cols, 5);
  EXPECT_EQ((csr.to_dense() - m).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(CsrMatrix::identity(4).max_row_nnz(), 1);
}

TEST(Kron, ApplyAxisMatchesExplicitKronecker) {
  SplitMix64 rng(2);
  const std::vector<std::size_t> dims{3, 4, 2, 5};
  const TensorLayout layout(dims);
  ASSERT_EQ(layout.size(), 120u);
  std::vector<double> x(layout.size());
  for (auto& v : x) v = rng.uniform() - 0.5;
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size());
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    const MatrixXd a = random_matrix(dims[axis], dims[axis], rng);
    MatrixXd full = MatrixXd::Identity(1, 1);
    for (std::size_t f = 0; f < dims.size(); ++f) {
      full = kron(full, f == axis ? a : MatrixXd::Identity(dims[f], dims[f]));
    }
    const Eigen::VectorXd expect = full * xv;
    std::vector<double> ys(x.size()), yp(x.size());
    kernels::serial::apply_axis(CsrMatrix::from_dense(a), layout, axis, x, ys);
    kernels::parallel::apply_axis(CsrMatrix::from_dense(a), layout, axis, x, yp);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(ys[i], expect[i], 1e-14);
      EXPECT_EQ(ys[i], yp[i]);
    }
  }
}

TEST(Kron, Unravel) {
  const TensorLayout layout({2, 3, 4});
  EXPECT_EQ(layout.unravel(0), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(layout.unravel(23), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(layout.unravel(5), (std::vector<std::size_t>{0, 1, 1}));
}

TEST(Kron, ReductionsAreThreadCountIndependent) {
  SplitMix64 rng(3);
  std::vector<double> x(200003), y(200003);
  for (auto& v : x) v = rng.uniform() - 0.5;
  for (auto& v : y) v = rng.uniform() - 0.5;
  const double serial = kernels::serial::dot(x, y);
  for (int t : {1, 2, 3}) {
    set_worker_count(t);
    EXPECT_EQ(kernels::parallel::dot(x, y), serial);
  }
  set_worker_count(0);
  std::vector<double> a = y, b = y;
  kernels::serial::axpy(0.25, x, a);
  kernels::parallel::axpy(0.25, x, b);
  EXPECT_EQ(a, b);
  EXPECT_NEAR(kernels::norm(x), std::sqrt(serial * 0 + kernels::serial::dot(x, x)), 1e-12);
}
