#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "symdesign/moments.hpp"
#include "symdesign/spectra.hpp"

namespace symdesign {

/// How the bulk width m of a Knabe scan maps to a Hamiltonian window:
/// `qubits` uses m qubits (m - 1 projections), `projections` uses m
/// projections (m + 1 qubits).
enum class WindowConvention { qubits, projections };

std::string to_string(WindowConvention c);

struct ScanOptions {
  int d = 2;
  int k = 2;
  /// Rows whose largest block exceeds this dimension are reported infeasible.
  std::size_t max_block_dim = 40000;
  /// Empty: all sector tuples. Otherwise these tuples (branch-reduced when
  /// they have more boxes than the window).
  std::vector<SectorTuple> tuples;
  SpectralOptions spectral{.mode = SolveMode::automatic, .unit_tol = 1e-6, .dense_limit = 1500, .lanczos = {}};
  AssemblyOptions assembly{.dense_threshold = 1500};
};

/// Minimum over tuples of one spectral quantity.
struct MinGap {
  bool feasible = true;
  std::string note;
  double gap = std::numeric_limits<double>::infinity();
  double second_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  std::size_t unit_dim = 0;
  std::size_t dim = 0;
  std::string tuple;
  std::size_t tuples_evaluated = 0;
};

struct ScanRow {
  int m_or_n = 0;
  std::string label;  // "proj", "qubit", "all-to-all", "brickwork"
  MinGap result;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  bool valid = false;
};

using RowSink = std::function<void(const ScanRow&)>;

/// Tuples of n-box shapes a scan minimizes over: all tuples (deduplicated)
/// or the user's, branch-reduced to n boxes.
std::vector<SectorTuple> scan_tuples(int n, const ScanOptions& opts);

/// Minimum gap over tuples of an arbitrary Hamiltonian or channel family.
using BlockBuilder = std::function<MomentBlock(const BlockContext&)>;
MinGap minimize_gap(int n, const BlockBuilder& build, bool singular, const ScanOptions& opts);

/// Smallest gap of the open chain on n qudits, i.e. of the bulk window of
/// width n (branching makes the window gap independent of the host size).
MinGap open_chain_gap(int n, const ScanOptions& opts);

/// Knabe scan over m in [m_lo, m_hi]. For each m, one row per requested
/// convention (projections first). Rows are passed to `sink` as they finish.
std::vector<ScanRow> bulk_gap_scan(int m_lo, int m_hi, const std::vector<WindowConvention>& conventions,
                                   const ScanOptions& opts, const RowSink& sink = {},
                                   const std::function<bool(int, const std::string&)>& skip = {});

/// Minimized gap of sum_{i<j} (I - T^{(ij)}) for n in [n_lo, n_hi].
std::vector<ScanRow> all_to_all_gap_scan(int n_lo, int n_hi, const ScanOptions& opts, const RowSink& sink = {},
                                         const std::function<bool(int, const std::string&)>& skip = {});

/// Brickwork: largest second singular value over tuples of P_even P_odd
/// for n in [n_lo, n_hi]; threshold holds the detectability bound computed
/// from the open-chain gap, valid says whether the measurement obeys it.
std::vector<ScanRow> brickwork_scan(int n_lo, int n_hi, const ScanOptions& opts, const RowSink& sink = {},
                                    const std::function<bool(int, const std::string&)>& skip = {});

/// Least-squares exponent alpha of gap ~ c n^{-alpha} over feasible rows.
std::optional<double> power_law_exponent(const std::vector<std::pair<int, double>>& points);

}  // namespace symdesign
