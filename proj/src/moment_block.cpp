#include "symdesign/moment_block.hpp"

#include <stdexcept>

namespace symdesign {

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::swap_only: return "swap_only";
    case BlockKind::yjm_only: return "yjm_only";
    case BlockKind::cqa_step: return "cqa_step";
    case BlockKind::bulk_hamiltonian: return "bulk_hamiltonian";
    case BlockKind::all_to_all_hamiltonian: return "all_to_all_hamiltonian";
    case BlockKind::brickwork_step: return "brickwork_step";
  }
  return "unknown";
}

bool is_channel(BlockKind kind) {
  return kind == BlockKind::swap_only || kind == BlockKind::yjm_only || kind == BlockKind::cqa_step ||
         kind == BlockKind::brickwork_step;
}

bool is_hamiltonian(BlockKind kind) {
  return kind == BlockKind::bulk_hamiltonian || kind == BlockKind::all_to_all_hamiltonian;
}

MomentBlock::MomentBlock(SectorTuple tuple, BlockKind kind, std::size_t dim, Matvec apply, Matvec apply_transpose,
                         std::size_t dense_threshold)
    : tuple_(std::move(tuple)), kind_(kind), dim_(dim), apply_(std::move(apply)), apply_t_(std::move(apply_transpose)) {
  if (dim_ <= dense_threshold) dense_ = std::make_shared<const Eigen::MatrixXd>(materialize(dense_threshold));
}

void MomentBlock::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("MomentBlock::apply: size mismatch");
  if (dense_) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), dim_);
    Eigen::Map<Eigen::VectorXd> yv(y.data(), dim_);
    yv.noalias() = *dense_ * xv;
    return;
  }
  apply_(x, y);
}

void MomentBlock::apply_transpose(std::span<const double> x, std::span<double> y) const {
  if (!apply_t_) return apply(x, y);
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("MomentBlock::apply_transpose: size mismatch");
  if (dense_) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), dim_);
    Eigen::Map<Eigen::VectorXd> yv(y.data(), dim_);
    yv.noalias() = dense_->transpose() * xv;
    return;
  }
  apply_t_(x, y);
}

std::vector<double> MomentBlock::operator()(const std::vector<double>& x) const {
  std::vector<double> y(dim_);
  apply(x, y);
  return y;
}

const Eigen::MatrixXd& MomentBlock::dense() const {
  if (!dense_) throw std::logic_error("MomentBlock of dimension " + std::to_string(dim_) + " is matrix-free");
  return *dense_;
}

Eigen::MatrixXd MomentBlock::materialize(std::size_t cap) const {
  if (dense_) return *dense_;
  if (dim_ > cap) {
    throw std::length_error("block dimension " + std::to_string(dim_) + " exceeds the dense cap " +
                            std::to_string(cap));
  }
  Eigen::MatrixXd m(dim_, dim_);
  std::vector<double> e(dim_, 0.0);
  std::vector<double> col(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    apply_(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
  }
  return m;
}

}  // namespace symdesign
