#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symdesign/moments.hpp"
#include "symdesign/rng.hpp"

// Brute-force ground truth on the full Hilbert space and by Monte Carlo.
// Nothing here uses the block machinery except where a result is explicitly
// compared against it.
namespace symdesign::oracle {

/// n qudits of local dimension d, with S_n acting by permuting tensor slots.
class FullSpaceModel {
 public:
  FullSpaceModel(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t dim() const { return dim_; }

  /// perm[i] is the image of slot i (0-based). Returns the image index of
  /// every computational basis state: |x_1..x_n> -> |x_{perm^-1(1)}..x_{perm^-1(n)}>.
  std::vector<std::size_t> index_map(const std::vector<int>& perm) const;
  Eigen::MatrixXd matrix(const std::vector<int>& perm) const;
  /// Transposition of slots i and j (1-based).
  Eigen::MatrixXd transposition(int i, int j) const;

 private:
  int n_;
  int d_;
  std::size_t dim_;
};

/// Composition (a after b) of 0-based permutations.
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> random_permutation(int n, SplitMix64& rng);

/// Largest entry deviation of matrix(a o b) - matrix(a) matrix(b) over
/// `pairs` random permutation pairs.
double homomorphism_error(const FullSpaceModel& model, int pairs, std::uint64_t seed);

struct SectorCheck {
  Partition shape;
  std::uint64_t multiplicity = 0;
  std::uint64_t irrep_dim = 0;
  double projector_trace = 0.0;
  double idempotence_error = 0.0;  // -1 when the projector was not materialized
};

struct DecompositionReport {
  int n = 0;
  int d = 0;
  std::uint64_t total = 0;  // sum of multiplicity * irrep dimension
  std::uint64_t expected = 0;
  std::vector<SectorCheck> sectors;
  bool ok = false;
};

/// Checks sum m d = d^n and that each isotypic projector
/// (d_lambda / n!) sum_sigma chi(sigma) P(sigma) has trace m d. Characters
/// come from products of the orthogonal-form matrices. Requires d^n <= 4096.
DecompositionReport full_decomposition_check(int n, int d);

/// Character of sigma (0-based image list) in the given irrep.
double character(const IrrepAction& rep, const std::vector<int>& perm);

/// Trapezoid rule for (1/2pi) int (e^{-it tau_f}) (x) ... (x) (e^{+it tau_f}) dt
/// over 2k factors (ket factors first, bra factors conjugated). With a single
/// tau, it is used on every factor. Throws if a tau is not an involution.
/// `max_imag` receives the largest imaginary magnitude of the result.
Eigen::MatrixXd twirl_quadrature(const std::vector<Eigen::MatrixXd>& taus, int k, int steps,
                                 double* max_imag = nullptr);

/// Haar-random unitary by QR of a complex Gaussian matrix with the
/// diagonal phases of R fixed.
Eigen::MatrixXcd haar_unitary(int dim, SplitMix64& rng);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

/// E|tr U|^{2k} for U = (+)_lambda I_m (x) V_lambda on n qubits with
/// independent Haar V_lambda. Samples are split over `chunks` fixed streams
/// keyed by (seed, chunk) and merged in order, so the estimate does not
/// depend on the thread count. Rejects fewer than 100 samples.
McEstimate frame_potential_mc(int n, int k, long samples, std::uint64_t seed, int chunks = 64);

struct FullChannelReport {
  std::size_t dim = 0;
  std::size_t unit_count = 0;
  std::size_t block_unit_count = 0;  // multiplicity-weighted
  std::vector<double> full_spectrum;
  std::vector<double> block_spectrum;
  double max_deviation = 0.0;  // sorted spectra, entrywise
};

/// Builds the one-step channel on the full (d^n)^{2k} operator space from
/// full-space permutation matrices, by quadrature over each swap gate and,
/// for cqa, a joint eigenbasis of the full-space YJM operators. Counts
/// eigenvalues >= 1 - unit_tol and, when `compare_blocks` is set, compares
/// the spectrum against the multiplicity-weighted union of block spectra.
FullChannelReport full_channel_eigencheck(int n, int d, int k, Ensemble ensemble,
                                          GeometryKind geometry = GeometryKind::open_chain,
                                          bool compare_blocks = true, double unit_tol = 1e-6,
                                          YjmPairs pairs = YjmPairs::inclusive);

/// Entrywise deviation of (1/d) sum_P P (x) P^dagger over clock-and-shift
/// operators from the swap operator on C^d (x) C^d.
double swap_identity_error(int d);

}  // namespace symdesign::oracle
