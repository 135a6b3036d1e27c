#include "symdesign/irrep.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace symdesign {

IrrepAction::IrrepAction(const Partition& shape, YorVariant variant)
    : shape_(shape), basis_(standard_tableaux(shape)) {
  const int n = shape_.size();
  const int dim = this->dim();
  for (int t = 0; t < dim; ++t) index_[basis_[t].rows()] = t;

  std::vector<ContentVector> content(dim);
  for (int t = 0; t < dim; ++t) content[t] = contents(basis_[t]);

  for (int j = 1; j < n; ++j) {
    CsrMatrix m;
    m.rows = m.cols = dim;
    m.row_ptr.assign(1, 0);
    for (int t = 0; t < dim; ++t) {
      const int r = content[t][j] - content[t][j - 1];
      double diag = 1.0 / r;
      int partner = -1;
      if (basis_[t].can_swap(j)) partner = index_of(basis_[t].swapped(j));
      // Negating every diagonal entry would give an equivalent representation
      // (sign twist plus a basis sign change), so only mixing pairs are hit.
      if (variant == YorVariant::flipped_diagonal_sign && partner >= 0) diag = -diag;
      // Keep columns sorted within the row.
      if (partner >= 0 && partner < t) {
        m.col.push_back(partner);
        m.val.push_back(std::sqrt(1.0 - 1.0 / (static_cast<double>(r) * r)));
      }
      m.col.push_back(t);
      m.val.push_back(diag);
      if (partner > t) {
        m.col.push_back(partner);
        m.val.push_back(std::sqrt(1.0 - 1.0 / (static_cast<double>(r) * r)));
      }
      m.row_ptr.push_back(static_cast<int>(m.col.size()));
    }
    adj_.push_back(std::move(m));
  }

  yjm_.assign(n, std::vector<int>(dim));
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < dim; ++t) yjm_[j][t] = content[t][j];
  }
}

const CsrMatrix& IrrepAction::adj(int j) const {
  if (j < 1 || j >= n()) throw std::out_of_range("adjacent transposition index out of range");
  return adj_[j - 1];
}

const std::vector<int>& IrrepAction::yjm(int j) const {
  if (j < 1 || j > n()) throw std::out_of_range("YJM index out of range");
  return yjm_[j - 1];
}

int IrrepAction::index_of(const StandardTableau& t) const {
  auto it = index_.find(t.rows());
  if (it == index_.end()) throw std::invalid_argument("tableau not in basis: " + t.str());
  return it->second;
}

IrrepPtr build_irrep(const Partition& lambda, int n, YorVariant variant) {
  if (lambda.size() != n) {
    throw std::invalid_argument("build_irrep: " + lambda.str() + " is not a partition of " + std::to_string(n));
  }
  return std::make_shared<const IrrepAction>(lambda, variant);
}

CsrMatrix transposition_matrix(const IrrepAction& rep, int i, int j) {
  if (i < 1 || j > rep.n() || i >= j) throw std::out_of_range("transposition_matrix: need 1 <= i < j <= n");
  if (j == i + 1) return rep.adj(i);
  Eigen::MatrixXd m = rep.adj(i).to_dense();
  for (int s = i + 1; s < j; ++s) {
    const Eigen::MatrixXd t = rep.adj(s).to_dense();
    m = t * m * t;
  }
  return CsrMatrix::from_dense(m, 1e-13);
}

std::vector<int> yjm_matrix(const IrrepAction& rep, int j) { return rep.yjm(j); }

std::int64_t central_sum_eigenvalue(const Partition& lambda) { return content_sum(lambda); }

std::string irrep_to_json(const IrrepAction& rep, int indent) {
  nlohmann::json doc;
  doc["shape"] = rep.shape().parts();
  doc["n"] = rep.n();
  doc["dim"] = rep.dim();
  auto& basis = doc["basis"] = nlohmann::json::array();
  for (const auto& t : rep.basis()) basis.push_back(t.rows());
  auto& adj = doc["adjacent"] = nlohmann::json::array();
  for (int j = 1; j < rep.n(); ++j) {
    const CsrMatrix& m = rep.adj(j);
    nlohmann::json triplets = nlohmann::json::array();
    for (int r = 0; r < m.rows; ++r) {
      for (int p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) triplets.push_back({r, m.col[p], m.val[p]});
    }
    adj.push_back({{"j", j}, {"entries", triplets}});
  }
  auto& yjm = doc["yjm"] = nlohmann::json::array();
  for (int j = 1; j <= rep.n(); ++j) yjm.push_back(rep.yjm(j));
  return doc.dump(indent);
}

IrrepPtr IrrepCache::get(const Partition& lambda) {
  std::lock_guard lock(mu_);
  auto it = reps_.find(lambda);
  if (it != reps_.end()) return it->second;
  auto rep = build_irrep(lambda, lambda.size(), variant_);
  reps_.emplace(lambda, rep);
  return rep;
}

}  // namespace symdesign
