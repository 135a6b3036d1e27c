#include "symdesign/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "symdesign/bounds.hpp"
#include "symdesign/frame_potential.hpp"
#include "symdesign/moments.hpp"
#include "symdesign/oracle.hpp"
#include "symdesign/spectra.hpp"

namespace symdesign {

namespace {

struct Outcome {
  bool pass;
  std::string observed;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Outcome max_error(double err, double tol, const std::string& where = {}) {
  return {err <= tol, "max error " + fmt(err) + (where.empty() ? "" : " at " + where)};
}

std::vector<IrrepPtr> all_irreps(int n_max, IrrepCache& cache) {
  std::vector<IrrepPtr> out;
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : partitions(n, n)) out.push_back(cache.get(p));
  }
  return out;
}

Outcome orthogonal_involution(const std::vector<IrrepPtr>& reps) {
  double worst = 0.0;
  std::string where;
  for (const auto& rep : reps) {
    for (int j = 1; j < rep->n(); ++j) {
      const Eigen::MatrixXd a = rep->adj(j).to_dense();
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
      const double e = std::max({(a - a.transpose()).cwiseAbs().maxCoeff(), (a * a.transpose() - id).cwiseAbs().maxCoeff(),
                                 (a * a - id).cwiseAbs().maxCoeff()});
      if (rep->adj(j).max_row_nnz() > 2) return {false, "more than two nonzeros per row in " + rep->shape().str()};
      if (e > worst) {
        worst = e;
        where = rep->shape().str() + " j=" + std::to_string(j);
      }
    }
  }
  return max_error(worst, 1e-12, where);
}

Outcome braid(const std::vector<IrrepPtr>& reps) {
  double worst = 0.0;
  std::string where;
  for (const auto& rep : reps) {
    const int n = rep->n();
    std::vector<Eigen::MatrixXd> a(n);
    for (int j = 1; j < n; ++j) a[j] = rep->adj(j).to_dense();
    for (int i = 1; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double e = j == i + 1 ? (a[i] * a[j] * a[i] - a[j] * a[i] * a[j]).cwiseAbs().maxCoeff()
                                    : (a[i] * a[j] - a[j] * a[i]).cwiseAbs().maxCoeff();
        if (e > worst) {
          worst = e;
          where = rep->shape().str() + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    }
  }
  return max_error(worst, 1e-12, where);
}

Outcome yjm_recursion(const std::vector<IrrepPtr>& reps) {
  double worst = 0.0;
  std::string where;
  for (const auto& rep : reps) {
    for (int j = 1; j < rep->n(); ++j) {
      const Eigen::MatrixXd t = rep->adj(j).to_dense();
      const auto& xj = rep->yjm(j);
      const auto& xn = rep->yjm(j + 1);
      Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rep->dim(), rep->dim());
      Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(rep->dim(), rep->dim());
      for (int i = 0; i < rep->dim(); ++i) {
        lhs(i, i) = xn[i];
        mid(i, i) = xj[i];
      }
      const double e = (lhs - (t * mid * t + t)).cwiseAbs().maxCoeff();
      if (e > worst) {
        worst = e;
        where = rep->shape().str() + " j=" + std::to_string(j);
      }
    }
  }
  return max_error(worst, 1e-12, where);
}

Outcome yjm_sum_of_transpositions(const std::vector<IrrepPtr>& reps) {
  double worst = 0.0;
  std::string where;
  for (const auto& rep : reps) {
    const auto central = static_cast<double>(central_sum_eigenvalue(rep->shape()));
    std::vector<double> total(rep->dim(), 0.0);
    for (int j = 1; j <= rep->n(); ++j) {
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rep->dim(), rep->dim());
      for (int i = 1; i < j; ++i) sum += transposition_matrix(*rep, i, j).to_dense();
      const auto& x = rep->yjm(j);
      for (int t = 0; t < rep->dim(); ++t) {
        sum(t, t) -= x[t];
        total[t] += x[t];
      }
      const double e = sum.cwiseAbs().maxCoeff();
      if (e > worst) {
        worst = e;
        where = rep->shape().str() + " X_" + std::to_string(j);
      }
    }
    for (double v : total) {
      if (std::abs(v - central) > worst) {
        worst = std::abs(v - central);
        where = rep->shape().str() + " central sum";
      }
    }
  }
  return max_error(worst, 1e-10, where);
}

Outcome contents_separate(const std::vector<IrrepPtr>& reps) {
  for (const auto& rep : reps) {
    std::map<std::vector<int>, int> seen;
    for (int t = 0; t < rep->dim(); ++t) {
      std::vector<int> key;
      for (int j = 1; j <= rep->n(); ++j) key.push_back(rep->yjm(j)[t]);
      if (key.front() != 0) return {false, "X_1 nonzero on " + rep->shape().str()};
      if (key != contents(rep->basis()[t])) return {false, "YJM diagonal differs from contents on " + rep->shape().str()};
      if (!seen.emplace(key, t).second) return {false, "repeated content vector in " + rep->shape().str()};
    }
  }
  return {true, "all content vectors distinct"};
}

// Restricting to S_m groups the basis by the positions of m+1..n; within a
// group the first m-1 generators must act as the irrep of the shape of 1..m.
Outcome restriction(const std::vector<IrrepPtr>& reps, IrrepCache& cache) {
  double worst = 0.0;
  std::string where;
  for (const auto& rep : reps) {
    const int n = rep->n();
    for (int m = 2; m < n; ++m) {
      std::vector<std::vector<std::vector<int>>> upper(rep->dim());
      std::vector<IrrepPtr> sub_rep(rep->dim());
      std::vector<int> sub_index(rep->dim());
      for (int t = 0; t < rep->dim(); ++t) {
        const auto& rows = rep->basis()[t].rows();
        std::vector<std::vector<int>> low;
        std::vector<int> lengths;
        upper[t].resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          std::vector<int> keep;
          for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (rows[r][c] <= m) {
              keep.push_back(rows[r][c]);
            } else {
              upper[t][r].push_back(rows[r][c] * 1000 + static_cast<int>(c));
            }
          }
          if (!keep.empty()) {
            lengths.push_back(static_cast<int>(keep.size()));
            low.push_back(keep);
          }
        }
        const Partition mu(lengths);
        sub_rep[t] = cache.get(mu);
        sub_index[t] = sub_rep[t]->index_of(StandardTableau(mu, low));
      }
      for (int j = 1; j < m; ++j) {
        const Eigen::MatrixXd a = rep->adj(j).to_dense();
        for (int s = 0; s < rep->dim(); ++s) {
          for (int t = 0; t < rep->dim(); ++t) {
            double expect = 0.0;
            if (upper[s] == upper[t]) {
              expect = sub_rep[s]->adj(j).to_dense()(sub_index[s], sub_index[t]);
            }
            const double e = std::abs(a(s, t) - expect);
            if (e > worst) {
              worst = e;
              where = rep->shape().str() + " m=" + std::to_string(m) + " j=" + std::to_string(j);
            }
          }
        }
      }
    }
  }
  return max_error(worst, 1e-12, where);
}

Outcome schur_weyl(int n_max_2, int n_max_3) {
  for (int d = 2; d <= 3; ++d) {
    const int n_max = d == 2 ? n_max_2 : n_max_3;
    for (int n = 1; n <= n_max; ++n) {
      std::uint64_t total = 0;
      for (const auto& p : partitions(n, d)) total += multiplicity(p, d) * dim_irrep(p);
      if (total != static_cast<std::uint64_t>(std::pow(d, n))) {
        return {false, "n=" + std::to_string(n) + " d=" + std::to_string(d) + " sum " + std::to_string(total)};
      }
    }
  }
  return {true, "exact"};
}

Outcome tableau_counts(int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : partitions(n, n)) {
      if (standard_tableaux(p).size() != dim_irrep(p)) return {false, p.str()};
    }
  }
  return {true, "exact"};
}

Outcome branching_dims(int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : partitions(n, n)) {
      for (int m = 1; m <= n; ++m) {
        std::uint64_t total = 0;
        for (const auto& [mu, count] : branch_restrict(p, m)) total += count * dim_irrep(mu);
        if (total != dim_irrep(p)) return {false, p.str() + " m=" + std::to_string(m)};
      }
    }
  }
  return {true, "exact"};
}

Outcome qubit_sector_count() {
  for (int n = 1; n <= 30; ++n) {
    if (count_sectors(n, 2) != n / 2 + 1) return {false, "n=" + std::to_string(n)};
  }
  return {true, "exact for n <= 30"};
}

Outcome content_multisets(int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : partitions(n, n)) {
      std::vector<int> shape_contents;
      for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.row_length(r); ++c) shape_contents.push_back(c - r);
      }
      std::sort(shape_contents.begin(), shape_contents.end());
      for (const auto& t : standard_tableaux(p)) {
        auto cv = contents(t);
        std::sort(cv.begin(), cv.end());
        if (cv != shape_contents) return {false, t.str()};
      }
    }
  }
  return {true, "exact"};
}

std::vector<SectorTuple> small_tuples(int n_max, int d, int k, std::size_t max_dim) {
  std::vector<SectorTuple> out;
  for (int n = 2; n <= n_max; ++n) {
    for (const auto& t : enumerate_tuples(n, d, k, true)) {
      if (t.block_dim() <= max_dim) out.push_back(t);
    }
  }
  return out;
}

Outcome twirl_idempotent(const std::vector<SectorTuple>& tuples, IrrepCache& cache) {
  double worst = 0.0;
  std::string where;
  for (const auto& t : tuples) {
    BlockContext ctx(t, cache);
    for (const auto& pair : Geometry(GeometryKind::all_to_all, t.n()).pairs()) {
      const Eigen::MatrixXd m = twirl_swap_k(ctx, pair).dense();
      const double e = std::max((m * m - m).cwiseAbs().maxCoeff(), (m - m.transpose()).cwiseAbs().maxCoeff());
      if (e > worst) {
        worst = e;
        where = t.str();
      }
    }
  }
  return max_error(worst, 1e-10, where);
}

Outcome channel_spectra(const std::vector<SectorTuple>& tuples, IrrepCache& cache) {
  double worst = 0.0;
  std::string where;
  for (const auto& t : tuples) {
    BlockContext ctx(t, cache);
    for (auto g : {GeometryKind::open_chain, GeometryKind::periodic_chain, GeometryKind::all_to_all}) {
      for (auto e : {Ensemble::swap_only, Ensemble::cqa}) {
        const Eigen::MatrixXd m = step_channel(ctx, Geometry(g, t.n()), e).dense();
        const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        const double err = std::max({asym, -lo, hi - 1.0, 0.0});
        if (err > worst) {
          worst = err;
          where = t.str() + " " + to_string(g);
        }
      }
    }
  }
  return max_error(worst, 1e-9, where);
}

Outcome yjm_absorbs(const std::vector<SectorTuple>& tuples, IrrepCache& cache) {
  double worst = 0.0;
  for (const auto& t : tuples) {
    BlockContext ctx(t, cache);
    const Eigen::MatrixXd y = twirl_yjm(ctx).dense();
    const Eigen::MatrixXd c = step_channel(ctx, Geometry(GeometryKind::open_chain, t.n()), Ensemble::cqa).dense();
    worst = std::max({worst, (y * c * y - c).cwiseAbs().maxCoeff(), (y * y - y).cwiseAbs().maxCoeff()});
  }
  return max_error(worst, 1e-12);
}

Outcome identity_fixed(const std::vector<SectorTuple>& tuples, IrrepCache& cache) {
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& t : tuples) {
    if (t.ket != t.bra) continue;
    BlockContext ctx(t, cache);
    const auto& layout = ctx.layout();
    const int k = ctx.k();
    std::vector<double> v(layout.size(), 0.0);
    for (std::size_t flat = 0; flat < layout.size(); ++flat) {
      const auto idx = layout.unravel(flat);
      bool diag = true;
      for (int f = 0; f < k; ++f) diag = diag && idx[f] == idx[f + k];
      if (diag) v[flat] = 1.0;
    }
    for (auto g : {GeometryKind::open_chain, GeometryKind::all_to_all}) {
      for (auto e : {Ensemble::swap_only, Ensemble::cqa}) {
        const auto out = step_channel(ctx, Geometry(g, t.n()), e)(v);
        for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(out[i] - v[i]));
      }
    }
    ++checked;
  }
  auto o = max_error(worst, 1e-12);
  o.observed += " over " + std::to_string(checked) + " tuples";
  return o;
}

Outcome window_invariance(IrrepCache& cache, std::size_t max_dim) {
  double worst = 0.0;
  for (const auto& t : enumerate_tuples(5, 2, 2, true)) {
    if (t.block_dim() > max_dim) continue;
    BlockContext ctx(t, cache);
    for (int m = 2; m <= 4; ++m) {
      const auto a = dense_spectrum(bulk_hamiltonian(ctx, m, 1));
      const auto b = dense_spectrum(bulk_hamiltonian(ctx, m, 2));
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
  }
  return max_error(worst, 1e-9);
}

Outcome unit_count_vs_rank(const std::vector<SectorTuple>& tuples, IrrepCache& cache) {
  for (const auto& t : tuples) {
    BlockContext ctx(t, cache);
    for (auto e : {Ensemble::swap_only, Ensemble::cqa}) {
      const auto block = step_channel(ctx, Geometry(GeometryKind::open_chain, t.n()), e);
      const std::size_t count = unit_eigenspace_dim(block, 1e-6);
      Eigen::MatrixXd shifted = block.dense() - Eigen::MatrixXd::Identity(block.dim(), block.dim());
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(shifted);
      qr.setThreshold(1e-8);
      const std::size_t nullity = block.dim() - static_cast<std::size_t>(qr.rank());
      if (count != nullity) {
        return {false, t.str() + ": eigen count " + std::to_string(count) + " vs null space " + std::to_string(nullity)};
      }
    }
  }
  return {true, "counts agree on " + std::to_string(tuples.size()) + " tuples"};
}

Outcome aggregate_commutant(IrrepCache& cache) {
  std::uint64_t total = 0;
  for (const auto& t : enumerate_tuples(3, 2, 2, false)) {
    BlockContext ctx(t, cache);
    const auto block = step_channel(ctx, Geometry(GeometryKind::open_chain, 3), Ensemble::cqa);
    total += t.multiplicity_weight(2) * unit_eigenspace_dim(block, 1e-6);
  }
  const auto expect = static_cast<std::uint64_t>(frame_potential_exact_k2(3));
  return {total == expect, "weighted unit count " + std::to_string(total) + ", expected " + std::to_string(expect)};
}

Outcome frame_potentials() {
  for (int n = 3; n <= 12; ++n) {
    if (frame_potential_exact_k2(n) != frame_potential_paper_k2(n)) return {false, "differ at n=" + std::to_string(n)};
  }
  const auto diff = frame_potential_paper_k2(2) - frame_potential_exact_k2(2);
  return {diff == 1, "n=2 differs by " + std::to_string(diff)};
}

Outcome phase_ranks() {
  for (int n = 2; n <= 20; ++n) {
    if (phase_basis_rank(n, n / 2) != n / 2 + 1) return {false, "n=" + std::to_string(n)};
  }
  return {true, "full rank for 2 <= n <= 20"};
}

Outcome bound_arithmetic() {
  const bool ok = knabe_bound_exact(2, ExactRational(3, 8)) == ExactRational(-11, 48) &&
                  all_to_all_bound_exact(6, 4, ExactRational(9, 10)) == ExactRational(4, 5) &&
                  std::abs(knabe_bound(2, 0.375).value + 11.0 / 48.0) < 1e-15 && !knabe_bound(2, 0.375).valid &&
                  detectability_bound(4.0).value == 0.5 && convergence_steps(2, 10, 2, 0.01, 0.1) == 2120 &&
                  one_design_steps(5, 2, 0.01) == 47;
  return {ok, ok ? "worked examples reproduced" : "worked example mismatch"};
}

Outcome quadrature_agreement(IrrepCache& cache) {
  double worst = 0.0;
  for (const char* text : {"(2,1);(2,1)", "(2,1),(2,1);(2,1),(2,1)", "(2,1),(3);(2,1),(2,1)"}) {
    const auto t = SectorTuple::parse(text);
    BlockContext ctx(t, cache);
    std::vector<Eigen::MatrixXd> taus;
    for (const auto& m : ctx.transposition(1, 3)) taus.push_back(m.to_dense());
    const Eigen::MatrixXd q = oracle::twirl_quadrature(taus, t.k(), 64);
    worst = std::max(worst, (q - twirl_swap_k(ctx, {1, 3}).dense()).cwiseAbs().maxCoeff());
  }
  return max_error(worst, 1e-10);
}

Outcome full_channel(int n, int k, Ensemble e) {
  const auto r = oracle::full_channel_eigencheck(n, 2, k, e);
  const bool ok = r.max_deviation <= 1e-8 && r.unit_count == r.block_unit_count;
  return {ok, "unit count " + std::to_string(r.unit_count) + " (blocks " + std::to_string(r.block_unit_count) +
                  "), spectrum deviation " + fmt(r.max_deviation)};
}

}  // namespace

std::vector<InvariantResult> run_invariants(const VerifyOptions& opts,
                                            const std::function<void(const InvariantResult&)>& progress) {
  std::vector<InvariantResult> results;
  auto run = [&](const std::string& module, const std::string& id, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    InvariantResult r{module, id, false, "", 0.0};
    try {
      const Outcome o = fn();
      r.pass = o.pass;
      r.observed = o.observed;
    } catch (const std::exception& e) {
      r.observed = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(r);
    if (progress) progress(r);
  };

  const int n_rep = opts.quick ? 5 : 7;
  const int n_comb = opts.quick ? 5 : 8;
  IrrepCache cache(opts.variant);
  const auto reps = all_irreps(n_rep, cache);

  run("snpart", "schur_weyl_dimension", [&] { return schur_weyl(n_comb, opts.quick ? 5 : 8); });
  run("snpart", "dim_equals_tableau_count", [&] { return tableau_counts(n_comb); });
  run("snpart", "branching_preserves_dimension", [&] { return branching_dims(n_rep); });
  run("snpart", "qubit_sector_count", [&] { return qubit_sector_count(); });
  run("snpart", "content_multiset_is_shape_determined", [&] { return content_multisets(n_comb); });

  run("yor", "orthogonal_symmetric_involution", [&] { return orthogonal_involution(reps); });
  run("yor", "braid_relations", [&] { return braid(reps); });
  run("yor", "yjm_recursion", [&] { return yjm_recursion(reps); });
  run("yor", "yjm_is_sum_of_transpositions", [&] { return yjm_sum_of_transpositions(reps); });
  run("yor", "contents_separate_basis", [&] { return contents_separate(reps); });
  run("yor", "restriction_block_structure", [&] { return restriction(reps, cache); });

  const auto tuples = small_tuples(opts.quick ? 4 : 5, 2, 2, opts.quick ? 256 : 1296);
  run("moments", "swap_twirl_idempotent", [&] { return twirl_idempotent(tuples, cache); });
  run("moments", "channel_spectrum_in_unit_interval", [&] { return channel_spectra(tuples, cache); });
  run("moments", "yjm_twirl_absorbs", [&] { return yjm_absorbs(tuples, cache); });
  run("moments", "identity_is_fixed", [&] { return identity_fixed(tuples, cache); });
  run("moments", "bulk_window_position_invariance", [&] { return window_invariance(cache, opts.quick ? 256 : 1296); });

  run("spectra", "unit_count_matches_null_space", [&] { return unit_count_vs_rank(tuples, cache); });
  run("spectra", "weighted_unit_count_equals_frame_potential", [&] { return aggregate_commutant(cache); });
  run("spectra", "frame_potential_formulas", [&] { return frame_potentials(); });
  run("spectra", "phase_basis_full_rank", [&] { return phase_ranks(); });
  run("spectra", "bound_arithmetic", [&] { return bound_arithmetic(); });

  run("oracle", "permutation_homomorphism", [&] {
    double e = 0.0;
    for (auto [n, d] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{4, 3}}) {
      e = std::max(e, oracle::homomorphism_error(oracle::FullSpaceModel(n, d), 100, opts.seed));
    }
    return max_error(e, 0.0);
  });
  run("oracle", "swap_from_pauli_average", [&] {
    return max_error(std::max(oracle::swap_identity_error(2), oracle::swap_identity_error(3)), 1e-12);
  });
  run("oracle", "isotypic_decomposition", [&] {
    for (auto [n, d] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 3}}) {
      const auto r = oracle::full_decomposition_check(n, d);
      if (!r.ok) return Outcome{false, "n=" + std::to_string(n) + " d=" + std::to_string(d)};
    }
    return Outcome{true, "traces and dimensions exact"};
  });
  run("oracle", "twirl_matches_quadrature", [&] { return quadrature_agreement(cache); });
  run("oracle", "full_channel_k1", [&] { return full_channel(3, 1, Ensemble::swap_only); });
  if (!opts.quick) {
    run("oracle", "full_channel_k2_swap", [&] { return full_channel(3, 2, Ensemble::swap_only); });
    run("oracle", "full_channel_k2_cqa", [&] { return full_channel(3, 2, Ensemble::cqa); });
  }
  return results;
}

}  // namespace symdesign
