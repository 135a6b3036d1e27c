#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symdesign/partition.hpp"

namespace symdesign {

/// One block of U^{(x)k} (x) conj(U)^{(x)k}: k ket shapes and k bra shapes,
/// all partitions of the same n. Tensor factor order is ket..., bra....
struct SectorTuple {
  std::vector<Partition> ket;
  std::vector<Partition> bra;

  int k() const { return static_cast<int>(ket.size()); }
  int n() const { return ket.empty() ? 0 : ket.front().size(); }
  std::vector<Partition> factors() const;

  /// Throws std::invalid_argument on mismatched k or box counts.
  void validate() const;

  /// Product of irrep dimensions over all 2k factors (overflow-checked).
  std::uint64_t block_dim() const;
  /// Product of the multiplicities m_lambda over all 2k factors.
  std::uint64_t multiplicity_weight(int d) const;

  /// Representative under simultaneous reordering of ket and bra factors
  /// and ket/bra exchange; equivalent tuples have identical spectra.
  SectorTuple canonical() const;

  /// "(2,1),(2,1);(2,1),(2,1)"
  std::string str() const;
  /// Accepts str() output, optionally wrapped in one more pair of parentheses.
  static SectorTuple parse(std::string_view text);

  auto operator<=>(const SectorTuple&) const = default;
  bool operator==(const SectorTuple&) const = default;
};

/// Every tuple of 2k shapes drawn from partitions(n, d). With `dedupe`,
/// one canonical representative per equivalence class.
std::vector<SectorTuple> enumerate_tuples(int n, int d, int k, bool dedupe);

/// All tuples whose factors are drawn from the given shapes.
std::vector<SectorTuple> tuples_from_shapes(const std::vector<Partition>& shapes, int k, bool dedupe);

/// Reads one tuple per non-empty, non-# line.
std::vector<SectorTuple> read_tuples_file(const std::string& path);

}  // namespace symdesign
