#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "symdesign/irrep.hpp"
#include "symdesign/kron.hpp"
#include "symdesign/moment_block.hpp"
#include "symdesign/sector.hpp"

namespace symdesign {

using Rational = boost::rational<std::int64_t>;

enum class GeometryKind { open_chain, periodic_chain, all_to_all, brickwork };
enum class Ensemble { swap_only, cqa };

/// Which second-order YJM products X_a X_b generate the YJM twirl:
/// inclusive takes a <= b, exclusive takes a < b (a, b in 2..n).
enum class YjmPairs { inclusive, exclusive };

struct Geometry {
  GeometryKind variant = GeometryKind::open_chain;
  int n = 2;

  Geometry(GeometryKind v, int qudits);
  /// Transposition pairs (i, j), 1-based, that one random-walk step samples from.
  std::vector<std::pair<int, int>> pairs() const;
  static GeometryKind parse(const std::string& name);
};

std::string to_string(GeometryKind g);
Ensemble parse_ensemble(const std::string& name);

struct AssemblyOptions {
  std::size_t dense_threshold = 4096;
  /// Hard cap on any block dimension (memory guard for matrix-free vectors).
  std::size_t max_dim = std::size_t{1} << 25;
  YjmPairs yjm_pairs = YjmPairs::inclusive;
};

/// (1/2pi) int_0^{2pi} cos^p t sin^q t dt, exactly; zero for odd p or q.
Rational trig_moment(int cos_power, int sin_power);

/// Coefficients of the k-fold swap twirl in the expansion over I/tau
/// patterns. Bit f of the key set means tau on factor f (ket factors
/// 0..k-1, bra factors k..2k-1). Patterns with zero coefficient are omitted.
std::map<unsigned, Rational> twirl_swap_coefficients(int k);

/// Irreps and tensor layout of one sector tuple.
class BlockContext {
 public:
  BlockContext(SectorTuple tuple, IrrepCache& cache);

  const SectorTuple& tuple() const { return tuple_; }
  int k() const { return tuple_.k(); }
  int n() const { return tuple_.n(); }
  int factor_count() const { return 2 * tuple_.k(); }
  const IrrepAction& rep(int factor) const { return *reps_.at(factor); }
  const TensorLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.size(); }

  /// Transposition (i, j) in each factor's irrep.
  std::vector<CsrMatrix> transposition(int i, int j) const;

 private:
  SectorTuple tuple_;
  std::vector<IrrepPtr> reps_;
  TensorLayout layout_;
};

/// Applies the k-fold twirl over exp(-i t tau) for one transposition, given
/// the per-factor matrices of tau. Stateless between calls.
class SwapTwirl {
 public:
  SwapTwirl(const TensorLayout& layout, std::vector<CsrMatrix> taus, int k);
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  TensorLayout layout_;
  std::vector<CsrMatrix> taus_;
  int k_;
  // weight of the pattern class with s taus in total (only even s contribute)
  std::vector<double> class_weight_;
};

MomentBlock twirl_swap_k(const BlockContext& ctx, std::pair<int, int> pair, const AssemblyOptions& opts = {});

/// 0/1 diagonal of the second-order YJM twirl in the product tableau basis.
std::vector<unsigned char> yjm_twirl_mask(const BlockContext& ctx, YjmPairs pairs);
MomentBlock twirl_yjm(const BlockContext& ctx, const AssemblyOptions& opts = {});

/// One random-walk step. swap_only: uniform average of swap twirls over the
/// geometry's pairs. cqa: Y S Y with Y the YJM twirl and S that average.
MomentBlock step_channel(const BlockContext& ctx, const Geometry& geometry, Ensemble ensemble,
                         const AssemblyOptions& opts = {});

/// The two brickwork layer projections: odd pairs (1,2),(3,4),... and even
/// pairs (2,3),(4,5),...
std::pair<MomentBlock, MomentBlock> brickwork_layers(const BlockContext& ctx, const AssemblyOptions& opts = {});
/// P_even * P_odd (odd layer applied first). Not symmetric.
MomentBlock brickwork_step(const BlockContext& ctx, const AssemblyOptions& opts = {});

/// sum_{i=j}^{j+m-2} (I - T^{(i,i+1)}): the bulk window on qudits j..j+m-1.
MomentBlock bulk_hamiltonian(const BlockContext& ctx, int m, int j, const AssemblyOptions& opts = {});
/// sum_{i<j} (I - T^{(i,j)}).
MomentBlock all_to_all_hamiltonian(const BlockContext& ctx, const AssemblyOptions& opts = {});

/// Tuples of m-box shapes into which the block of `tuple` decomposes when
/// only S_m (acting on qudits 1..m) is retained.
std::vector<SectorTuple> branch_reduced_tuples(const SectorTuple& tuple, int m);

}  // namespace symdesign
