#include <gtest/gtest.h>

#include <cmath>

#include "symdesign/moments.hpp"
#include "symdesign/scans.hpp"
#include "symdesign/spectra.hpp"

using namespace symdesign;

namespace {

SpectralOptions with_mode(SolveMode m) {
  SpectralOptions o;
  o.mode = m;
  return o;
}

}  // namespace

TEST(Spectra, DenseAndIterativeAgreeOnChannels) {
  IrrepCache cache;
  for (const char* text : {"(3,1),(3,1);(3,1),(3,1)", "(3,2),(4,1);(3,2),(4,1)"}) {
    BlockContext ctx(SectorTuple::parse(text), cache);
    const auto block = step_channel(ctx, Geometry(GeometryKind::open_chain, ctx.n()), Ensemble::cqa);
    const auto d = spectral_gap(block, with_mode(SolveMode::dense));
    const auto it = spectral_gap(block, with_mode(SolveMode::iterative));
    EXPECT_EQ(d.unit_dim, it.unit_dim) << text;
    EXPECT_NEAR(d.second_eigenvalue, it.second_eigenvalue, 1e-8) << text;
    EXPECT_NEAR(d.gap, 1.0 - d.second_eigenvalue, 1e-15);
    EXPECT_EQ(it.solver, SolveMode::iterative);
    EXPECT_FALSE(d.tolerance_tie);
  }
}

TEST(Spectra, DenseAndIterativeAgreeOnHamiltonians) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3,2),(3,2);(4,1),(3,2)"), cache);
  const auto block = bulk_hamiltonian(ctx, 5, 1);
  const auto d = spectral_gap(block, with_mode(SolveMode::dense));
  const auto it = spectral_gap(block, with_mode(SolveMode::iterative));
  EXPECT_EQ(d.unit_dim, it.unit_dim);
  EXPECT_NEAR(d.gap, it.gap, 1e-8);
  EXPECT_EQ(d.gap, d.second_eigenvalue);
}

TEST(Spectra, TrivialBlocks) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3),(3);(3),(3)"), cache);
  const auto r = spectral_gap(step_channel(ctx, Geometry(GeometryKind::open_chain, 3), Ensemble::swap_only));
  EXPECT_EQ(r.unit_dim, 1u);
  EXPECT_TRUE(std::isinf(r.gap));
  const auto h = spectral_gap(bulk_hamiltonian(ctx, 3, 1));
  EXPECT_EQ(h.unit_dim, 1u);
  EXPECT_TRUE(std::isinf(h.gap));
}

TEST(Spectra, UnitDimensionValidatesTolerance) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(2,1),(2,1);(2,1),(2,1)"), cache);
  const auto block = step_channel(ctx, Geometry(GeometryKind::open_chain, 3), Ensemble::swap_only);
  EXPECT_THROW(unit_eigenspace_dim(block, 0.0), std::invalid_argument);
  EXPECT_THROW(unit_eigenspace_dim(block, 0.7), std::invalid_argument);
  EXPECT_EQ(unit_eigenspace_dim(block), spectral_gap(block).unit_dim);
}

TEST(Spectra, NonSymmetricNeedsSingularAnalysis) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3,1),(3,1);(3,1),(3,1)"), cache);
  const auto step = brickwork_step(ctx);
  EXPECT_THROW(spectral_gap(step), std::invalid_argument);
  const auto d = singular_gap(step, with_mode(SolveMode::dense));
  const auto it = singular_gap(step, with_mode(SolveMode::iterative));
  EXPECT_EQ(d.unit_dim, it.unit_dim);
  EXPECT_NEAR(d.second_eigenvalue, it.second_eigenvalue, 1e-7);
  EXPECT_LT(d.second_eigenvalue, 1.0);
  EXPECT_GT(d.second_eigenvalue, 0.0);
}

TEST(Spectra, ParseSolveMode) {
  EXPECT_EQ(parse_solve_mode("auto"), SolveMode::automatic);
  EXPECT_EQ(parse_solve_mode("dense"), SolveMode::dense);
  EXPECT_EQ(parse_solve_mode("iterative"), SolveMode::iterative);
  EXPECT_THROW(parse_solve_mode("magic"), std::invalid_argument);
}

TEST(Scans, OpenChainGaps) {
  ScanOptions opts;
  EXPECT_NEAR(open_chain_gap(2, opts).gap, 1.0, 1e-12);
  EXPECT_NEAR(open_chain_gap(3, opts).gap, 0.375, 1e-12);
  EXPECT_NEAR(open_chain_gap(4, opts).gap, 0.152612972457540, 1e-10);
}

TEST(Scans, ProjectionRowsComeFirst) {
  ScanOptions opts;
  std::vector<std::string> labels;
  const auto rows = bulk_gap_scan(2, 3, {WindowConvention::qubits, WindowConvention::projections}, opts,
                                  [&](const ScanRow& r) { labels.push_back(r.label); });
  EXPECT_EQ(labels, (std::vector<std::string>{"proj", "qubit", "proj", "qubit"}));
  EXPECT_NEAR(rows[0].result.gap, 0.375, 1e-12);
  EXPECT_NEAR(rows[0].bound, -11.0 / 48.0, 1e-12);
  EXPECT_FALSE(rows[0].valid);
  EXPECT_NEAR(rows[1].result.gap, 1.0, 1e-12);
  EXPECT_TRUE(rows[1].valid);
}

TEST(Scans, CapMarksRowInfeasible) {
  ScanOptions opts;
  opts.max_block_dim = 10;
  const auto g = open_chain_gap(4, opts);
  EXPECT_FALSE(g.feasible);
  EXPECT_FALSE(g.note.empty());
}

TEST(Scans, UserTuplesAreBranchReduced) {
  ScanOptions opts;
  opts.tuples = {SectorTuple::parse("(3,1),(3,1);(3,1),(3,1)")};
  const auto t = scan_tuples(3, opts);
  EXPECT_FALSE(t.empty());
  for (const auto& x : t) EXPECT_EQ(x.n(), 3);
  opts.tuples = {SectorTuple::parse("(2);(2)")};
  EXPECT_THROW(scan_tuples(3, opts), std::invalid_argument);
}

TEST(Scans, PowerLawExponent) {
  std::vector<std::pair<int, double>> pts;
  for (int n = 3; n <= 9; ++n) pts.emplace_back(n, 2.5 * std::pow(n, -1.7));
  EXPECT_NEAR(*power_law_exponent(pts), 1.7, 1e-12);
  EXPECT_FALSE(power_law_exponent({{3, 0.1}}).has_value());
}
