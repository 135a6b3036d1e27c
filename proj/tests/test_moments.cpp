#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "symdesign/moments.hpp"
#include "symdesign/oracle.hpp"
#include "symdesign/spectra.hpp"
#include "symdesign/tableau.hpp"

using namespace symdesign;
using Eigen::MatrixXd;

namespace {

double max_abs(const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

std::set<long> rounded_eigenvalues(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  std::set<long> out;
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.insert(std::lround(es.eigenvalues()[i] * 1e8));
  return out;
}

unsigned mask_of(const std::string& pattern) {
  unsigned m = 0;
  for (std::size_t f = 0; f < pattern.size(); ++f) {
    if (pattern[f] == 't') m |= 1u << f;
  }
  return m;
}

}  // namespace

TEST(Moments, TrigMoments) {
  EXPECT_EQ(trig_moment(0, 0), Rational(1));
  EXPECT_EQ(trig_moment(2, 0), Rational(1, 2));
  EXPECT_EQ(trig_moment(4, 0), Rational(3, 8));
  EXPECT_EQ(trig_moment(2, 2), Rational(1, 8));
  EXPECT_EQ(trig_moment(0, 4), Rational(3, 8));
  EXPECT_EQ(trig_moment(1, 1), Rational(0));
  EXPECT_EQ(trig_moment(3, 0), Rational(0));
}

// k = 2 twirl: 3/8 for IIII and tttt, 1/8 for patterns with one tau on each
// side, -1/8 for both taus on one side; factor order ket ket bra bra.
TEST(Moments, SecondOrderSwapCoefficients) {
  const auto c = twirl_swap_coefficients(2);
  const std::map<unsigned, Rational> expect{
      {mask_of("IIII"), Rational(3, 8)},  {mask_of("tttt"), Rational(3, 8)},  {mask_of("ItIt"), Rational(1, 8)},
      {mask_of("IttI"), Rational(1, 8)},  {mask_of("tIIt"), Rational(1, 8)},  {mask_of("tItI"), Rational(1, 8)},
      {mask_of("IItt"), Rational(-1, 8)}, {mask_of("ttII"), Rational(-1, 8)},
  };
  EXPECT_EQ(c, expect);
}

TEST(Moments, FirstOrderSwapCoefficients) {
  const auto c = twirl_swap_coefficients(1);
  const std::map<unsigned, Rational> expect{{0u, Rational(1, 2)}, {3u, Rational(1, 2)}};
  EXPECT_EQ(c, expect);
}

TEST(Moments, CoefficientsSumToOneOnTrivialFactors) {
  for (int k = 1; k <= 4; ++k) {
    Rational total(0);
    for (const auto& [mask, v] : twirl_swap_coefficients(k)) total += v;
    EXPECT_EQ(total, Rational(1)) << k;
  }
}

TEST(Moments, GeometryPairs) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(Geometry(GeometryKind::open_chain, 4).pairs(), (P{{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(Geometry(GeometryKind::periodic_chain, 3).pairs(), (P{{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(Geometry(GeometryKind::periodic_chain, 2).pairs(), (P{{1, 2}}));
  EXPECT_EQ(Geometry(GeometryKind::all_to_all, 3).pairs(), (P{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_THROW(Geometry::parse("ring"), std::invalid_argument);
  EXPECT_EQ(Geometry::parse("all-to-all"), GeometryKind::all_to_all);
}

TEST(Moments, SwapTwirlMatchesQuadrature) {
  IrrepCache cache;
  for (const char* text : {"(2,1);(2,1)", "(2,1),(3);(2,1),(2,1)", "(2,1,1),(3,1);(2,2),(3,1)",
                           "(2,1),(2,1),(2,1);(2,1),(3),(2,1)"}) {
    const auto t = SectorTuple::parse(text);
    BlockContext ctx(t, cache);
    for (const auto& pair : Geometry(GeometryKind::all_to_all, t.n()).pairs()) {
      std::vector<MatrixXd> taus;
      for (const auto& m : ctx.transposition(pair.first, pair.second)) taus.push_back(m.to_dense());
      double imag = 1.0;
      const MatrixXd q = oracle::twirl_quadrature(taus, t.k(), 4 * t.k() + 4, &imag);
      EXPECT_LT(imag, 1e-12);
      const MatrixXd b = twirl_swap_k(ctx, pair).dense();
      EXPECT_LT(max_abs(q - b), 1e-12) << text;
      EXPECT_LT(max_abs(b * b - b), 1e-12) << text;
      EXPECT_LT(max_abs(b - b.transpose()), 1e-14) << text;
    }
  }
}

TEST(Moments, MatrixFreeAgreesWithDense) {
  IrrepCache cache;
  const auto t = SectorTuple::parse("(3,1),(2,2);(3,1),(2,1,1)");
  BlockContext ctx(t, cache);
  const auto dense = step_channel(ctx, Geometry(GeometryKind::open_chain, 4), Ensemble::cqa);
  AssemblyOptions lazy;
  lazy.dense_threshold = 0;
  const auto free = step_channel(ctx, Geometry(GeometryKind::open_chain, 4), Ensemble::cqa, lazy);
  ASSERT_TRUE(dense.is_dense());
  ASSERT_FALSE(free.is_dense());
  EXPECT_LT(max_abs(dense.dense() - free.materialize(1000)), 1e-13);
}

// Independent mask: recompute pair sums of contents from the tableaux.
TEST(Moments, YjmMaskMatchesContentProducts) {
  IrrepCache cache;
  for (const char* text : {"(2,1),(2,1);(2,1),(2,1)", "(3,1),(2,2);(3,1),(2,2)", "(3,2),(3,2);(4,1),(3,2)"}) {
    const auto t = SectorTuple::parse(text);
    BlockContext ctx(t, cache);
    for (auto pairs : {YjmPairs::inclusive, YjmPairs::exclusive}) {
      const auto mask = yjm_twirl_mask(ctx, pairs);
      ASSERT_EQ(mask.size(), ctx.dim());
      std::size_t ones = 0;
      for (std::size_t idx = 0; idx < ctx.dim(); ++idx) {
        const auto digits = ctx.layout().unravel(idx);
        bool keep = true;
        for (int a = 2; a <= t.n() && keep; ++a) {
          for (int b = (pairs == YjmPairs::inclusive ? a : a + 1); b <= t.n() && keep; ++b) {
            long ket = 0, bra = 0;
            for (int f = 0; f < 2 * t.k(); ++f) {
              const auto cv = contents(ctx.rep(f).basis()[digits[f]]);
              (f < t.k() ? ket : bra) += static_cast<long>(cv[a - 1]) * cv[b - 1];
            }
            keep = ket == bra;
          }
        }
        EXPECT_EQ(mask[idx], keep ? 1 : 0) << text << " " << idx;
        ones += keep;
      }
      // Configurations with identical ket and bra tableaux always survive.
      if (t.ket == t.bra) EXPECT_GT(ones, 0u);
    }
  }
}

TEST(Moments, ChannelsAreContractions) {
  IrrepCache cache;
  const auto t = SectorTuple::parse("(3,1),(2,2);(3,1),(3,1)");
  BlockContext ctx(t, cache);
  for (auto geom : {GeometryKind::open_chain, GeometryKind::periodic_chain, GeometryKind::all_to_all}) {
    for (auto e : {Ensemble::swap_only, Ensemble::cqa}) {
      const auto block = step_channel(ctx, Geometry(geom, 4), e);
      const auto spec = dense_spectrum(block);
      EXPECT_GE(spec.front(), -1e-12);
      EXPECT_LE(spec.back(), 1.0 + 1e-12);
    }
  }
}

TEST(Moments, TrivialTupleIsFixed) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3),(3);(3),(3)"), cache);
  const auto block = step_channel(ctx, Geometry(GeometryKind::open_chain, 3), Ensemble::cqa);
  EXPECT_NEAR(block.dense()(0, 0), 1.0, 1e-15);
}

TEST(Moments, BrickworkLayersAreProjections) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3,1),(3,1);(3,1),(2,2)"), cache);
  const auto [odd, even] = brickwork_layers(ctx);
  for (const auto* p : {&odd, &even}) {
    const MatrixXd m = p->dense();
    EXPECT_LT(max_abs(m * m - m), 1e-12);
    EXPECT_LT(max_abs(m - m.transpose()), 1e-14);
  }
  const auto step = brickwork_step(ctx);
  EXPECT_FALSE(step.symmetric());
  EXPECT_LT(max_abs(step.dense() - even.dense() * odd.dense()), 1e-13);
}

TEST(Moments, BulkWindowSmallCases) {
  IrrepCache cache;
  double best = 1e9;
  for (const auto& t : enumerate_tuples(3, 2, 2, true)) {
    BlockContext ctx(t, cache);
    const auto spec = dense_spectrum(bulk_hamiltonian(ctx, 3, 1));
    for (double v : spec) {
      if (v > 1e-9) best = std::min(best, v);
    }
  }
  EXPECT_NEAR(best, 0.375, 1e-12);
  BlockContext ctx(SectorTuple::parse("(2,1),(3);(2,1),(3)"), cache);
  EXPECT_THROW(bulk_hamiltonian(ctx, 3, 2), std::out_of_range);
  EXPECT_THROW(bulk_hamiltonian(ctx, 1, 1), std::out_of_range);
}

TEST(Moments, WindowPositionDoesNotChangeSpectrum) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3,2),(4,1);(3,2),(3,2)"), cache);
  const MatrixXd a = bulk_hamiltonian(ctx, 3, 1).dense();
  const MatrixXd b = bulk_hamiltonian(ctx, 3, 3).dense();
  Eigen::SelfAdjointEigenSolver<MatrixXd> ea(a), eb(b);
  EXPECT_LT((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Moments, BranchReductionPreservesEigenvalueSet) {
  IrrepCache cache;
  const auto t = SectorTuple::parse("(3,2),(4,1);(3,2),(3,2)");
  BlockContext ctx(t, cache);
  const auto whole = rounded_eigenvalues(bulk_hamiltonian(ctx, 3, 1).dense());
  std::set<long> parts;
  for (const auto& r : branch_reduced_tuples(t, 3)) {
    EXPECT_EQ(r.n(), 3);
    BlockContext rc(r, cache);
    const auto s = rounded_eigenvalues(bulk_hamiltonian(rc, 3, 1).dense());
    parts.insert(s.begin(), s.end());
  }
  EXPECT_EQ(whole, parts);
}

TEST(Moments, AllToAllHamiltonianHasPositiveGap) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(2,1),(2,1);(2,1),(2,1)"), cache);
  const auto spec = dense_spectrum(all_to_all_hamiltonian(ctx));
  EXPECT_GE(spec.front(), -1e-12);
  EXPECT_LE(spec.back(), 6.0 + 1e-12);
}
