#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symdesign/lanczos.hpp"
#include "symdesign/moment_block.hpp"

namespace symdesign {

enum class SolveMode { automatic, dense, iterative };

std::string to_string(SolveMode mode);
SolveMode parse_solve_mode(const std::string& name);

struct SpectralOptions {
  SolveMode mode = SolveMode::automatic;
  /// Channels: eigenvalues above 1 - unit_tol count as unit. Hamiltonians:
  /// eigenvalues below unit_tol count as kernel.
  double unit_tol = 1e-6;
  /// automatic mode solves densely up to this dimension.
  std::size_t dense_limit = 4096;
  LanczosOptions lanczos{};
};

struct SpectralReport {
  std::string tuple;
  BlockKind kind = BlockKind::swap_only;
  std::size_t dim = 0;
  /// Channels: 1 - second_eigenvalue. Hamiltonians: smallest eigenvalue
  /// above the kernel. +inf when no such eigenvalue exists.
  double gap = 0.0;
  /// Channels: largest eigenvalue outside the unit eigenspace (largest
  /// singular value for brickwork). Hamiltonians: equal to gap.
  double second_eigenvalue = 0.0;
  /// Unit-eigenspace dimension for channels, kernel dimension for Hamiltonians.
  std::size_t unit_dim = 0;
  SolveMode solver = SolveMode::dense;
  long iterations = 0;
  double residual = 0.0;
  /// Set when recounting at unit_tol / 10 gives a different unit_dim.
  bool tolerance_tie = false;
};

/// Gap of a symmetric channel or Hamiltonian block. Throws
/// std::invalid_argument for non-symmetric blocks (see singular_gap) and
/// std::runtime_error if the iterative solver does not converge.
SpectralReport spectral_gap(const MomentBlock& block, const SpectralOptions& opts = {});

/// Number of eigenvalues above 1 - tol of a channel block; tol in (0, 0.5).
std::size_t unit_eigenspace_dim(const MomentBlock& block, double tol = 1e-6, const SpectralOptions& opts = {});

/// Singular-value analysis of a non-symmetric channel such as a brickwork
/// step: second_eigenvalue holds the largest singular value below 1 and
/// unit_dim the number of unit singular values.
SpectralReport singular_gap(const MomentBlock& block, const SpectralOptions& opts = {});

/// Full sorted (ascending) spectrum of a symmetric block, densely.
std::vector<double> dense_spectrum(const MomentBlock& block, std::size_t cap = 8192);

}  // namespace symdesign
