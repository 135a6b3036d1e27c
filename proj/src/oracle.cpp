#include "symdesign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "symdesign/spectra.hpp"

namespace symdesign::oracle {

namespace {

using cd = std::complex<double>;

std::size_t checked_pow(int base, int exp, std::size_t cap) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= static_cast<std::size_t>(base);
    if (v > cap) throw std::length_error("full-space dimension exceeds the oracle cap");
  }
  return v;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Applies the same matrix m to every axis of each column of `a`, where a
// column is a tensor with `axes` axes of extent m.cols().
void transform_columns(Eigen::MatrixXd& a, const Eigen::MatrixXd& m, int axes) {
  const Eigen::Index e = m.cols();
  const Eigen::Index dim = a.rows();
  Eigen::VectorXd tmp(dim);
#pragma omp parallel for schedule(static) firstprivate(tmp)
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    Eigen::Index right = dim;
    for (int axis = 0; axis < axes; ++axis) {
      right /= e;
      const Eigen::Index left = dim / (right * e);
      auto col = a.col(c);
      tmp.setZero();
      for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index i = 0; i < e; ++i) {
          for (Eigen::Index j = 0; j < e; ++j) {
            const double mij = m(i, j);
            if (mij == 0.0) continue;
            const Eigen::Index out0 = (l * e + i) * right;
            const Eigen::Index in0 = (l * e + j) * right;
            for (Eigen::Index r = 0; r < right; ++r) tmp(out0 + r) += mij * col(in0 + r);
          }
        }
      }
      col = tmp;
    }
  }
}

std::size_t count_cycles(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
  }
  return cycles;
}

}  // namespace

FullSpaceModel::FullSpaceModel(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 1) throw std::invalid_argument("FullSpaceModel needs n, d >= 1");
  dim_ = checked_pow(d, n, std::size_t{1} << 20);
}

std::vector<std::size_t> FullSpaceModel::index_map(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation has the wrong length");
  std::vector<std::size_t> map(dim_);
  std::vector<int> digits(n_);
  std::vector<int> out(n_);
  for (std::size_t x = 0; x < dim_; ++x) {
    std::size_t rest = x;
    for (int s = n_ - 1; s >= 0; --s) {
      digits[s] = static_cast<int>(rest % d_);
      rest /= d_;
    }
    // slot i's content moves to slot perm[i]
    for (int i = 0; i < n_; ++i) out[perm[i]] = digits[i];
    std::size_t y = 0;
    for (int s = 0; s < n_; ++s) y = y * d_ + out[s];
    map[x] = y;
  }
  return map;
}

Eigen::MatrixXd FullSpaceModel::matrix(const std::vector<int>& perm) const {
  const auto map = index_map(perm);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (std::size_t x = 0; x < dim_; ++x) m(map[x], x) = 1.0;
  return m;
}

Eigen::MatrixXd FullSpaceModel::transposition(int i, int j) const {
  if (i < 1 || j > n_ || i >= j) throw std::out_of_range("transposition slots out of range");
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[i - 1], perm[j - 1]);
  return matrix(perm);
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

double homomorphism_error(const FullSpaceModel& model, int pairs, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const auto a = random_permutation(model.n(), rng);
    const auto b = random_permutation(model.n(), rng);
    const Eigen::MatrixXd lhs = model.matrix(compose(a, b));
    const Eigen::MatrixXd rhs = model.matrix(a) * model.matrix(b);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double character(const IrrepAction& rep, const std::vector<int>& perm) {
  // Bubble-sort perm into the identity; the adjacent swaps spell out sigma
  // (or its inverse, which has the same real character).
  std::vector<int> arr(perm);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(rep.dim(), rep.dim());
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t j = 0; j + 1 < arr.size(); ++j) {
      if (arr[j] > arr[j + 1]) {
        std::swap(arr[j], arr[j + 1]);
        m = m * rep.adj(static_cast<int>(j) + 1).to_dense();
        swapped = true;
      }
    }
  }
  return m.trace();
}

DecompositionReport full_decomposition_check(int n, int d) {
  const std::size_t dim = checked_pow(d, n, 4096);
  if (n > 8) throw std::length_error("full_decomposition_check: n! too large");
  FullSpaceModel model(n, d);
  DecompositionReport rep;
  rep.n = n;
  rep.d = d;
  rep.expected = dim;
  const bool materialize = dim <= 256;

  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const double order = static_cast<double>(perms.size());

  bool ok = true;
  for (const auto& shape : partitions(n, n)) {
    SectorCheck s;
    s.shape = shape;
    s.multiplicity = multiplicity(shape, d);
    s.irrep_dim = dim_irrep(shape);
    const auto irrep = build_irrep(shape, n);
    Eigen::MatrixXd proj;
    if (materialize) proj = Eigen::MatrixXd::Zero(dim, dim);
    double trace = 0.0;
    for (const auto& perm : perms) {
      const double chi = character(*irrep, perm);
      trace += chi * std::pow(static_cast<double>(d), static_cast<double>(count_cycles(perm)));
      if (materialize && chi != 0.0) proj += chi * model.matrix(perm);
    }
    const double scale = static_cast<double>(s.irrep_dim) / order;
    s.projector_trace = scale * trace;
    if (materialize) {
      proj *= scale;
      s.idempotence_error = (proj * proj - proj).cwiseAbs().maxCoeff();
      ok = ok && s.idempotence_error < 1e-9 && std::abs(proj.trace() - s.projector_trace) < 1e-8;
    } else {
      s.idempotence_error = -1.0;
    }
    ok = ok && std::abs(s.projector_trace - static_cast<double>(s.multiplicity * s.irrep_dim)) < 1e-8;
    rep.total += s.multiplicity * s.irrep_dim;
    rep.sectors.push_back(s);
  }
  rep.ok = ok && rep.total == rep.expected;
  return rep;
}

Eigen::MatrixXd twirl_quadrature(const std::vector<Eigen::MatrixXd>& taus, int k, int steps, double* max_imag) {
  if (k < 1) throw std::invalid_argument("twirl_quadrature: k must be positive");
  if (steps < 1) throw std::invalid_argument("twirl_quadrature: steps must be positive");
  const std::size_t factors = 2 * static_cast<std::size_t>(k);
  if (taus.size() != 1 && taus.size() != factors) {
    throw std::invalid_argument("twirl_quadrature: need one tau or one per factor");
  }
  for (const auto& t : taus) {
    if (t.rows() != t.cols()) throw std::invalid_argument("twirl_quadrature: tau must be square");
    const Eigen::MatrixXd sq = t * t - Eigen::MatrixXd::Identity(t.rows(), t.cols());
    if (sq.cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("twirl_quadrature: tau is not an involution");
  }
  auto tau = [&](std::size_t f) -> const Eigen::MatrixXd& { return taus.size() == 1 ? taus[0] : taus[f]; };

  Eigen::MatrixXcd acc;
  for (int s = 0; s < steps; ++s) {
    const double t = 2.0 * std::numbers::pi * s / steps;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
    for (std::size_t f = 0; f < factors; ++f) {
      const auto& tf = tau(f);
      const cd sine = f < static_cast<std::size_t>(k) ? cd(0, -std::sin(t)) : cd(0, std::sin(t));
      const Eigen::MatrixXcd g =
          std::cos(t) * Eigen::MatrixXcd::Identity(tf.rows(), tf.cols()) + sine * tf.cast<cd>();
      term = kron(term, g);
    }
    if (s == 0) {
      acc = term;
    } else {
      acc += term;
    }
  }
  acc /= static_cast<double>(steps);
  if (max_imag) *max_imag = acc.imag().cwiseAbs().maxCoeff();
  return acc.real();
}

Eigen::MatrixXcd haar_unitary(int dim, SplitMix64& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = cd(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const cd rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : cd(1.0);
  }
  return q;
}

McEstimate frame_potential_mc(int n, int k, long samples, std::uint64_t seed, int chunks) {
  if (samples < 100) throw std::invalid_argument("frame_potential_mc: need at least 100 samples");
  if (n < 1 || n > 8) throw std::invalid_argument("frame_potential_mc: n must lie in 1..8");
  if (k < 1) throw std::invalid_argument("frame_potential_mc: k must be positive");
  if (chunks < 1) throw std::invalid_argument("frame_potential_mc: chunks must be positive");
  struct Sector {
    double mult;
    int dim;
  };
  std::vector<Sector> sectors;
  for (const auto& p : partitions(n, 2)) {
    sectors.push_back({static_cast<double>(multiplicity(p, 2)), static_cast<int>(dim_irrep(p))});
  }
  struct Partial {
    double sum = 0.0, sum_c = 0.0, sq = 0.0, sq_c = 0.0;
    long count = 0;
  };
  auto kahan = [](double& s, double& c, double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  };
  std::vector<Partial> parts(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    SplitMix64 rng(seed, static_cast<std::uint64_t>(c));
    const long count = samples / chunks + (c < samples % chunks ? 1 : 0);
    Partial& p = parts[c];
    for (long s = 0; s < count; ++s) {
      cd tr = 0.0;
      for (const auto& sec : sectors) tr += sec.mult * haar_unitary(sec.dim, rng).trace();
      const double v = std::pow(std::norm(tr), k);
      kahan(p.sum, p.sum_c, v);
      kahan(p.sq, p.sq_c, v * v);
    }
    p.count = count;
  }
  double sum = 0.0, sum_c = 0.0, sq = 0.0, sq_c = 0.0;
  long total = 0;
  for (const auto& p : parts) {
    kahan(sum, sum_c, p.sum);
    kahan(sq, sq_c, p.sq);
    total += p.count;
  }
  const double mean = sum / total;
  const double var = std::max(0.0, (sq - total * mean * mean) / (total - 1));
  return {mean, std::sqrt(var / total), total, seed};
}

FullChannelReport full_channel_eigencheck(int n, int d, int k, Ensemble ensemble, GeometryKind geometry,
                                          bool compare_blocks, double unit_tol, YjmPairs pairs) {
  if (geometry == GeometryKind::brickwork) throw std::invalid_argument("full_channel_eigencheck: brickwork unsupported");
  if (k < 1) throw std::invalid_argument("full_channel_eigencheck: k must be positive");
  FullSpaceModel model(n, d);
  const int factors = 2 * k;
  const std::size_t dim = checked_pow(static_cast<int>(model.dim()), factors, 4096);
  const int axis_dim = static_cast<int>(model.dim());

  // The integrand is a trigonometric polynomial of degree 2k, so any step
  // count above 2k integrates it exactly.
  const int steps = 4 * k + 4;
  const auto gate_pairs = Geometry(geometry, n).pairs();
  Eigen::MatrixXd channel = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [i, j] : gate_pairs) {
    double imag = 0.0;
    channel += twirl_quadrature({model.transposition(i, j)}, k, steps, &imag);
    if (imag > 1e-10) throw std::runtime_error("full-space twirl has an imaginary part");
  }
  channel /= static_cast<double>(gate_pairs.size());

  if (ensemble == Ensemble::cqa) {
    // Joint eigenbasis of the full-space YJM operators X_j = sum_{i<j} (i j).
    std::vector<Eigen::MatrixXd> x(n + 1, Eigen::MatrixXd::Zero(axis_dim, axis_dim));
    Eigen::MatrixXd generic = Eigen::MatrixXd::Zero(axis_dim, axis_dim);
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) x[j] += model.transposition(i, j);
      generic += (1.0 / (j + std::numbers::sqrt2)) * x[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(generic);
    const Eigen::MatrixXd b = es.eigenvectors();
    std::vector<std::pair<int, int>> feats;
    for (int a = 2; a <= n; ++a) {
      for (int c = a; c <= n; ++c) {
        if (pairs == YjmPairs::exclusive && a == c) continue;
        feats.emplace_back(a, c);
      }
    }
    // feature[v][q] = c_v(a_q) c_v(b_q) for eigenbasis vector v
    std::vector<std::vector<long>> feature(axis_dim, std::vector<long>(feats.size()));
    for (int j = 2; j <= n; ++j) {
      const Eigen::MatrixXd diag = b.transpose() * x[j] * b;
      const double off = (diag - Eigen::MatrixXd(diag.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
      if (off > 1e-8) throw std::runtime_error("YJM operators not jointly diagonalized");
    }
    std::vector<std::vector<long>> content(axis_dim, std::vector<long>(n + 1, 0));
    for (int j = 2; j <= n; ++j) {
      const Eigen::MatrixXd diag = b.transpose() * x[j] * b;
      for (int v = 0; v < axis_dim; ++v) content[v][j] = std::lround(diag(v, v));
    }
    for (int v = 0; v < axis_dim; ++v) {
      for (std::size_t q = 0; q < feats.size(); ++q) {
        feature[v][q] = content[v][feats[q].first] * content[v][feats[q].second];
      }
    }
    // Move the swap average into the product eigenbasis, then mask.
    const Eigen::MatrixXd bt = b.transpose();
    transform_columns(channel, bt, factors);
    channel.transposeInPlace();
    transform_columns(channel, bt, factors);
    std::vector<char> keep(dim);
    std::vector<long> acc(feats.size());
    for (std::size_t flat = 0; flat < dim; ++flat) {
      std::fill(acc.begin(), acc.end(), 0L);
      std::size_t rest = flat;
      for (int f = factors - 1; f >= 0; --f) {
        const std::size_t v = rest % axis_dim;
        rest /= axis_dim;
        const long sign = f < k ? 1 : -1;
        for (std::size_t q = 0; q < feats.size(); ++q) acc[q] += sign * feature[v][q];
      }
      keep[flat] = std::all_of(acc.begin(), acc.end(), [](long a) { return a == 0; });
    }
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (!keep[r] || !keep[c]) channel(r, c) = 0.0;
      }
    }
  }

  FullChannelReport rep;
  rep.dim = dim;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(channel, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  rep.full_spectrum.assign(ev.data(), ev.data() + ev.size());
  rep.unit_count = static_cast<std::size_t>(
      std::count_if(rep.full_spectrum.begin(), rep.full_spectrum.end(), [&](double v) { return v >= 1.0 - unit_tol; }));

  if (compare_blocks) {
    IrrepCache cache;
    AssemblyOptions opts;
    opts.yjm_pairs = pairs;
    for (const auto& tuple : enumerate_tuples(n, d, k, false)) {
      BlockContext ctx(tuple, cache);
      const auto block = step_channel(ctx, Geometry(geometry, n), ensemble, opts);
      const auto spec = dense_spectrum(block);
      const std::uint64_t weight = tuple.multiplicity_weight(d);
      for (std::uint64_t w = 0; w < weight; ++w) rep.block_spectrum.insert(rep.block_spectrum.end(), spec.begin(), spec.end());
      rep.block_unit_count +=
          weight * static_cast<std::size_t>(std::count_if(spec.begin(), spec.end(), [&](double v) { return v >= 1.0 - unit_tol; }));
    }
    std::sort(rep.block_spectrum.begin(), rep.block_spectrum.end());
    if (rep.block_spectrum.size() != rep.full_spectrum.size()) {
      rep.max_deviation = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t i = 0; i < rep.full_spectrum.size(); ++i) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.full_spectrum[i] - rep.block_spectrum[i]));
      }
    }
  }
  return rep;
}

double swap_identity_error(int d) {
  if (d < 2) throw std::invalid_argument("swap_identity_error: d must be at least 2");
  const cd omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd clock = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::pow(omega, j);
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d * d, d * d);
  Eigen::MatrixXcd xa = Eigen::MatrixXcd::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Eigen::MatrixXcd zb = Eigen::MatrixXcd::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      const Eigen::MatrixXcd p = xa * zb;
      sum += kron(p, p.adjoint());
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  sum /= static_cast<double>(d);
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  }
  return (sum - swap).cwiseAbs().maxCoeff();
}

}  // namespace symdesign::oracle
