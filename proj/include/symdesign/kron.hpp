#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symdesign {

/// Compressed-row real matrix. Used for every per-factor operator that is
/// applied along one axis of a tensor-product block.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  std::vector<double> val;

  static CsrMatrix identity(int n);
  static CsrMatrix from_dense(const Eigen::MatrixXd& m, double drop_below = 0.0);
  Eigen::MatrixXd to_dense() const;
  int max_row_nnz() const;
};

/// Row-major layout of a tensor with the given axis extents; axis 0 is
/// the slowest index.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return size_; }
  std::size_t left(std::size_t axis) const { return left_[axis]; }
  std::size_t right(std::size_t axis) const { return right_[axis]; }

  std::vector<std::size_t> unravel(std::size_t flat) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  std::size_t size_ = 1;
};

// Two implementations of every kernel: `serial` is the reference kept for
// testing and benchmarks, `parallel` is the OpenMP version the library uses.
// Reductions in both sum fixed-size chunks in index order, so results do not
// depend on the thread count.
namespace kernels {

namespace serial {
/// y = (I x ... x A x ... x I) x with A on `axis`. y is overwritten.
void apply_axis(const CsrMatrix& a, const TensorLayout& layout, std::size_t axis, std::span<const double> x,
                std::span<double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
}  // namespace serial

namespace parallel {
void apply_axis(const CsrMatrix& a, const TensorLayout& layout, std::size_t axis, std::span<const double> x,
                std::span<double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
}  // namespace parallel

using parallel::apply_axis;
using parallel::axpy;
using parallel::dot;

double norm(std::span<const double> x);
void scale(double alpha, std::span<double> x);

}  // namespace kernels

/// Sets the OpenMP worker count used by the parallel kernels (0 = runtime default).
void set_worker_count(int threads);
int worker_count();

}  // namespace symdesign
