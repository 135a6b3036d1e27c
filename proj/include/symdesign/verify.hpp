#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symdesign/irrep.hpp"

namespace symdesign {

struct InvariantResult {
  std::string module;
  std::string id;
  bool pass = false;
  std::string observed;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Restricts every check to n <= 5 and skips the 4096-dim full-space channel.
  bool quick = false;
  /// Irreps used by the representation and moment checks.
  YorVariant variant = YorVariant::standard;
  std::uint64_t seed = 20240601;
};

/// Runs the desk-scale invariant suite. Each result is also passed to
/// `progress` as soon as it is known.
std::vector<InvariantResult> run_invariants(const VerifyOptions& opts,
                                            const std::function<void(const InvariantResult&)>& progress = {});

}  // namespace symdesign
