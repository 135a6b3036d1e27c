#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "symdesign/moment_block.hpp"

namespace symdesign {

struct LanczosOptions {
  std::size_t krylov_dim = 60;
  int max_restarts = 400;
  /// Converged when ||A v - theta v|| <= residual_tol * max(1, |theta|).
  double residual_tol = 1e-8;
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
};

enum class Spectrum { largest, smallest };

struct LanczosOutcome {
  /// Converged pairs in the order they were locked (descending for
  /// `largest`, ascending for `smallest`).
  std::vector<EigenPair> pairs;
  long matvecs = 0;
  int restarts = 0;
  bool converged = false;
  double worst_residual = 0.0;
};

/// Restarted Lanczos with full reorthogonalization and locking, for a real
/// symmetric operator. Extreme eigenpairs are locked one after another;
/// the run stops after locking the first pair for which `keep_going(value)`
/// is false, or after `max_pairs` pairs. Every restart after a lock mixes in
/// a fresh random direction so degenerate eigenvalues are not missed, and a
/// final pass from a fresh random start confirms that nothing beyond the
/// last pair was skipped.
LanczosOutcome lanczos_extreme(const Matvec& op, std::size_t dim, Spectrum which,
                               const std::function<bool(double)>& keep_going, std::size_t max_pairs,
                               const LanczosOptions& opts = {});

}  // namespace symdesign
