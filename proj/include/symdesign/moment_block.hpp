#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symdesign/sector.hpp"

namespace symdesign {

enum class BlockKind { swap_only, yjm_only, cqa_step, bulk_hamiltonian, all_to_all_hamiltonian, brickwork_step };

std::string to_string(BlockKind kind);
bool is_channel(BlockKind kind);
bool is_hamiltonian(BlockKind kind);

using Matvec = std::function<void(std::span<const double>, std::span<double>)>;

/// Real operator on one sector-tuple block. Blocks up to the dense
/// threshold are materialized at construction; larger ones stay matrix-free.
class MomentBlock {
 public:
  /// `apply_transpose` may be empty for symmetric operators.
  MomentBlock(SectorTuple tuple, BlockKind kind, std::size_t dim, Matvec apply, Matvec apply_transpose,
              std::size_t dense_threshold);

  const SectorTuple& tuple() const { return tuple_; }
  BlockKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool symmetric() const { return !apply_t_; }
  bool is_dense() const { return dense_ != nullptr; }

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_transpose(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator()(const std::vector<double>& x) const;

  /// The stored dense matrix; throws if the block is matrix-free.
  const Eigen::MatrixXd& dense() const;
  /// Dense copy built column by column; throws std::length_error above `cap`.
  Eigen::MatrixXd materialize(std::size_t cap) const;

 private:
  SectorTuple tuple_;
  BlockKind kind_;
  std::size_t dim_;
  Matvec apply_;
  Matvec apply_t_;
  std::shared_ptr<const Eigen::MatrixXd> dense_;
};

}  // namespace symdesign
