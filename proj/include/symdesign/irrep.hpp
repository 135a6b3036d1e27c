#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "symdesign/kron.hpp"
#include "symdesign/partition.hpp"
#include "symdesign/tableau.hpp"

namespace symdesign {

/// Selects the Young orthogonal form or a deliberately corrupted copy used
/// by the verification suite to prove that its checks detect faults.
/// The corrupted copy negates 1/r on basis vectors that mix with a partner.
enum class YorVariant { standard, flipped_diagonal_sign };

/// S_n irrep in the Young orthogonal form, basis in last-letter order.
///
/// The adjacent transposition (j, j+1) sends v_T to (1/r) v_T + sqrt(1 - 1/r^2) v_T'
/// with axial distance r = c_T(j+1) - c_T(j) and T' = T with j, j+1 swapped.
/// When T' is not standard, |r| = 1 and v_T is an eigenvector with eigenvalue 1/r.
class IrrepAction {
 public:
  IrrepAction(const Partition& shape, YorVariant variant);

  const Partition& shape() const { return shape_; }
  int n() const { return shape_.size(); }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<StandardTableau>& basis() const { return basis_; }

  /// Matrix of (j, j+1) for 1 <= j < n; at most two nonzeros per row.
  const CsrMatrix& adj(int j) const;
  /// Diagonal of the YJM element X_j for 1 <= j <= n.
  const std::vector<int>& yjm(int j) const;

  int index_of(const StandardTableau& t) const;

 private:
  Partition shape_;
  std::vector<StandardTableau> basis_;
  std::vector<CsrMatrix> adj_;
  std::vector<std::vector<int>> yjm_;
  std::map<std::vector<std::vector<int>>, int> index_;
};

using IrrepPtr = std::shared_ptr<const IrrepAction>;

/// Builds the irrep of lambda; rejects shapes whose box count differs from n.
IrrepPtr build_irrep(const Partition& lambda, int n, YorVariant variant = YorVariant::standard);

/// Matrix of the transposition (i, j), i < j, as the conjugation chain
/// t_{j-1} ... t_{i+1} t_i t_{i+1} ... t_{j-1}.
CsrMatrix transposition_matrix(const IrrepAction& rep, int i, int j);

/// Diagonal of X_j (entries are box contents of j).
std::vector<int> yjm_matrix(const IrrepAction& rep, int j);

/// Scalar by which the sum of all transpositions acts on the irrep.
std::int64_t central_sum_eigenvalue(const Partition& lambda);

/// JSON document: shape, basis as row lists, adjacent matrices as (row, col, value) triplets.
std::string irrep_to_json(const IrrepAction& rep, int indent = 2);

/// Thread-safe memo of built irreps, keyed by shape.
class IrrepCache {
 public:
  explicit IrrepCache(YorVariant variant = YorVariant::standard) : variant_(variant) {}
  IrrepPtr get(const Partition& lambda);

 private:
  YorVariant variant_;
  std::mutex mu_;
  std::map<Partition, IrrepPtr> reps_;
};

}  // namespace symdesign
