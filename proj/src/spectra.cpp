#include "symdesign/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace symdesign {

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::automatic: return "auto";
    case SolveMode::dense: return "dense";
    case SolveMode::iterative: return "iterative";
  }
  return "unknown";
}

SolveMode parse_solve_mode(const std::string& name) {
  if (name == "auto" || name == "automatic") return SolveMode::automatic;
  if (name == "dense") return SolveMode::dense;
  if (name == "iterative") return SolveMode::iterative;
  throw std::invalid_argument("unknown solver mode '" + name + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tol(double tol) {
  if (!(tol > 0.0 && tol < 0.5)) throw std::invalid_argument("unit tolerance must lie in (0, 0.5)");
}

bool use_dense(const MomentBlock& block, const SpectralOptions& opts) {
  switch (opts.mode) {
    case SolveMode::dense: return true;
    case SolveMode::iterative: return false;
    case SolveMode::automatic: return block.dim() <= opts.dense_limit;
  }
  return true;
}

// Fills unit_dim, second_eigenvalue, gap and tolerance_tie from a full
// ascending spectrum.
void summarize(const std::vector<double>& evals, bool hamiltonian, double tol, SpectralReport& r) {
  if (hamiltonian) {
    auto kernel = [&](double t) { return static_cast<std::size_t>(std::count_if(evals.begin(), evals.end(), [&](double v) { return v < t; })); };
    r.unit_dim = kernel(tol);
    r.tolerance_tie = kernel(tol / 10) != r.unit_dim;
    r.gap = r.unit_dim < evals.size() ? evals[r.unit_dim] : kInf;
    r.second_eigenvalue = r.gap;
  } else {
    auto unit = [&](double t) { return static_cast<std::size_t>(std::count_if(evals.begin(), evals.end(), [&](double v) { return v > 1.0 - t; })); };
    r.unit_dim = unit(tol);
    r.tolerance_tie = unit(tol / 10) != r.unit_dim;
    if (r.unit_dim < evals.size()) {
      r.second_eigenvalue = evals[evals.size() - 1 - r.unit_dim];
      r.gap = 1.0 - r.second_eigenvalue;
    } else {
      r.second_eigenvalue = -kInf;
      r.gap = kInf;
    }
  }
}

}  // namespace

std::vector<double> dense_spectrum(const MomentBlock& block, std::size_t cap) {
  if (!block.symmetric()) throw std::invalid_argument("dense_spectrum: block is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (block.is_dense()) {
    es.compute(block.dense(), Eigen::EigenvaluesOnly);
  } else {
    es.compute(block.materialize(cap), Eigen::EigenvaluesOnly);
  }
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

SpectralReport spectral_gap(const MomentBlock& block, const SpectralOptions& opts) {
  if (!block.symmetric()) {
    throw std::invalid_argument("spectral_gap: " + to_string(block.kind()) + " block is not symmetric; use singular_gap");
  }
  check_tol(opts.unit_tol);
  const bool hamiltonian = is_hamiltonian(block.kind());
  SpectralReport r;
  r.tuple = block.tuple().str();
  r.kind = block.kind();
  r.dim = block.dim();

  if (use_dense(block, opts)) {
    r.solver = SolveMode::dense;
    summarize(dense_spectrum(block, std::max(opts.dense_limit, block.dim())), hamiltonian, opts.unit_tol, r);
    return r;
  }

  r.solver = SolveMode::iterative;
  const double tol = opts.unit_tol;
  Matvec op = [&block](std::span<const double> x, std::span<double> y) { block.apply(x, y); };
  std::function<bool(double)> in_unit;
  if (hamiltonian) {
    in_unit = [tol](double v) { return v < tol; };
  } else {
    in_unit = [tol](double v) { return v > 1.0 - tol; };
  }
  const auto out = lanczos_extreme(op, block.dim(), hamiltonian ? Spectrum::smallest : Spectrum::largest, in_unit,
                                   block.dim(), opts.lanczos);
  r.iterations = out.matvecs;
  r.residual = out.worst_residual;
  if (!out.converged) {
    throw std::runtime_error("iterative solver did not converge on " + r.tuple + " after " +
                             std::to_string(out.matvecs) + " matvecs");
  }
  std::vector<double> found;
  for (const auto& p : out.pairs) found.push_back(p.value);
  std::sort(found.begin(), found.end());
  // Pairs found are the unit (or kernel) block plus at most one more value,
  // so summarizing them as a partial spectrum gives the same answers.
  summarize(found, hamiltonian, tol, r);
  return r;
}

std::size_t unit_eigenspace_dim(const MomentBlock& block, double tol, const SpectralOptions& opts) {
  if (!is_channel(block.kind())) throw std::invalid_argument("unit_eigenspace_dim: block is not a channel");
  check_tol(tol);
  SpectralOptions o = opts;
  o.unit_tol = tol;
  return block.symmetric() ? spectral_gap(block, o).unit_dim : singular_gap(block, o).unit_dim;
}

SpectralReport singular_gap(const MomentBlock& block, const SpectralOptions& opts) {
  check_tol(opts.unit_tol);
  SpectralReport r;
  r.tuple = block.tuple().str();
  r.kind = block.kind();
  r.dim = block.dim();
  const double tol = opts.unit_tol;
  std::vector<double> sv;

  if (use_dense(block, opts)) {
    r.solver = SolveMode::dense;
    const Eigen::MatrixXd a = block.materialize(std::max(opts.dense_limit, block.dim()));
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    sv.assign(s.data(), s.data() + s.size());
  } else {
    r.solver = SolveMode::iterative;
    Matvec gram = [&block](std::span<const double> x, std::span<double> y) {
      std::vector<double> tmp(x.size());
      block.apply(x, tmp);
      block.apply_transpose(tmp, y);
    };
    const double cut = (1.0 - tol) * (1.0 - tol);
    const auto out = lanczos_extreme(gram, block.dim(), Spectrum::largest, [cut](double v) { return v > cut; },
                                     block.dim(), opts.lanczos);
    r.iterations = out.matvecs;
    r.residual = out.worst_residual;
    if (!out.converged) throw std::runtime_error("iterative singular-value solve did not converge on " + r.tuple);
    for (const auto& p : out.pairs) sv.push_back(std::sqrt(std::max(0.0, p.value)));
  }
  std::sort(sv.begin(), sv.end());
  summarize(sv, false, tol, r);
  return r;
}

}  // namespace symdesign
