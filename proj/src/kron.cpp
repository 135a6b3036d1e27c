#include "symdesign/kron.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace symdesign {

CsrMatrix CsrMatrix::identity(int n) {
  CsrMatrix m;
  m.rows = m.cols = n;
  m.row_ptr.resize(n + 1);
  m.col.resize(n);
  m.val.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    m.row_ptr[i + 1] = i + 1;
    m.col[i] = i;
  }
  return m;
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& d, double drop_below) {
  CsrMatrix m;
  m.rows = static_cast<int>(d.rows());
  m.cols = static_cast<int>(d.cols());
  m.row_ptr.assign(1, 0);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (std::abs(d(i, j)) > drop_below) {
        m.col.push_back(j);
        m.val.push_back(d(i, j));
      }
    }
    m.row_ptr.push_back(static_cast<int>(m.col.size()));
  }
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) d(i, col[p]) += val[p];
  }
  return d;
}

int CsrMatrix::max_row_nnz() const {
  int best = 0;
  for (int i = 0; i < rows; ++i) best = std::max(best, row_ptr[i + 1] - row_ptr[i]);
  return best;
}

TensorLayout::TensorLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  const std::size_t r = dims_.size();
  left_.assign(r, 1);
  right_.assign(r, 1);
  for (std::size_t a = 0; a < r; ++a) {
    if (dims_[a] == 0) throw std::invalid_argument("tensor axis of extent zero");
    size_ *= dims_[a];
  }
  for (std::size_t a = 1; a < r; ++a) left_[a] = left_[a - 1] * dims_[a - 1];
  for (std::size_t a = r - 1; a-- > 0;) right_[a] = right_[a + 1] * dims_[a + 1];
}

std::vector<std::size_t> TensorLayout::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t a = dims_.size(); a-- > 0;) {
    idx[a] = flat % dims_[a];
    flat /= dims_[a];
  }
  return idx;
}

namespace kernels {

namespace {

constexpr std::size_t kChunk = 4096;

void check_axis(const CsrMatrix& a, const TensorLayout& layout, std::size_t axis, std::size_t nx, std::size_t ny) {
  if (axis >= layout.rank()) throw std::out_of_range("apply_axis: axis out of range");
  if (static_cast<std::size_t>(a.rows) != layout.dims()[axis] || a.rows != a.cols) {
    throw std::invalid_argument("apply_axis: factor does not match axis extent");
  }
  if (nx != layout.size() || ny != layout.size()) throw std::invalid_argument("apply_axis: vector size mismatch");
}

}  // namespace

namespace serial {

void apply_axis(const CsrMatrix& a, const TensorLayout& layout, std::size_t axis, std::span<const double> x,
                std::span<double> y) {
  check_axis(a, layout, axis, x.size(), y.size());
  const std::size_t d = layout.dims()[axis];
  const std::size_t left = layout.left(axis);
  const std::size_t right = layout.right(axis);
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      double* out = y.data() + (l * d + i) * right;
      std::fill(out, out + right, 0.0);
      for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
        const double v = a.val[p];
        const double* in = x.data() + (l * d + a.col[p]) * right;
        for (std::size_t r = 0; r < right; ++r) out[r] += v * in[r];
      }
    }
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t chunks = (x.size() + kChunk - 1) / kChunk;
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    double s = 0.0;
    const std::size_t end = std::min(x.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) s += x[i] * y[i];
    total += s;
  }
  return total;
}

}  // namespace serial

namespace parallel {

void apply_axis(const CsrMatrix& a, const TensorLayout& layout, std::size_t axis, std::span<const double> x,
                std::span<double> y) {
  check_axis(a, layout, axis, x.size(), y.size());
  const std::size_t d = layout.dims()[axis];
  const std::size_t left = layout.left(axis);
  const std::size_t right = layout.right(axis);
  const std::size_t outer = left * d;
  const double* xin = x.data();
  double* yout = y.data();
#pragma omp parallel for schedule(static) if (outer * right > 8192)
  for (std::size_t li = 0; li < outer; ++li) {
    const std::size_t l = li / d;
    const std::size_t i = li % d;
    double* out = yout + li * right;
    std::fill(out, out + right, 0.0);
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const double v = a.val[p];
      const double* in = xin + (l * d + a.col[p]) * right;
#pragma omp simd
      for (std::size_t r = 0; r < right; ++r) out[r] += v * in[r];
    }
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* xp = x.data();
  double* yp = y.data();
#pragma omp parallel for simd schedule(static) if (n > 8192)
  for (std::size_t i = 0; i < n; ++i) yp[i] += alpha * xp[i];
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static) if (chunks > 2)
  for (std::size_t c = 0; c < chunks; ++c) {
    double s = 0.0;
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) s += x[i] * y[i];
    partial[c] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace parallel

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

}  // namespace kernels

void set_worker_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace symdesign
