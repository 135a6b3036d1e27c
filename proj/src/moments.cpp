#include "symdesign/moments.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

namespace symdesign {

Geometry::Geometry(GeometryKind v, int qudits) : variant(v), n(qudits) {
  if (n < 2) throw std::invalid_argument("geometry needs n >= 2");
}

std::vector<std::pair<int, int>> Geometry::pairs() const {
  std::vector<std::pair<int, int>> p;
  switch (variant) {
    case GeometryKind::open_chain:
    case GeometryKind::brickwork:
      for (int j = 1; j < n; ++j) p.emplace_back(j, j + 1);
      break;
    case GeometryKind::periodic_chain:
      for (int j = 1; j < n; ++j) p.emplace_back(j, j + 1);
      if (n >= 3) p.emplace_back(1, n);
      break;
    case GeometryKind::all_to_all:
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) p.emplace_back(i, j);
      }
      break;
  }
  return p;
}

GeometryKind Geometry::parse(const std::string& name) {
  if (name == "open" || name == "open_chain") return GeometryKind::open_chain;
  if (name == "periodic" || name == "periodic_chain") return GeometryKind::periodic_chain;
  if (name == "all-to-all" || name == "all_to_all") return GeometryKind::all_to_all;
  if (name == "brickwork") return GeometryKind::brickwork;
  throw std::invalid_argument("unknown geometry '" + name + "'");
}

std::string to_string(GeometryKind g) {
  switch (g) {
    case GeometryKind::open_chain: return "open";
    case GeometryKind::periodic_chain: return "periodic";
    case GeometryKind::all_to_all: return "all-to-all";
    case GeometryKind::brickwork: return "brickwork";
  }
  return "unknown";
}

Ensemble parse_ensemble(const std::string& name) {
  if (name == "swap" || name == "swap_only") return Ensemble::swap_only;
  if (name == "cqa") return Ensemble::cqa;
  throw std::invalid_argument("unknown ensemble '" + name + "'");
}

Rational trig_moment(int cos_power, int sin_power) {
  if (cos_power < 0 || sin_power < 0) throw std::invalid_argument("trig_moment: negative power");
  if (cos_power % 2 || sin_power % 2) return Rational(0);
  // (p-1)!! (q-1)!! / (p+q)!!
  auto double_factorial = [](int v) {
    std::int64_t r = 1;
    for (int i = v; i > 1; i -= 2) r *= i;
    return r;
  };
  return Rational(double_factorial(cos_power - 1) * double_factorial(sin_power - 1),
                  double_factorial(cos_power + sin_power));
}

namespace {

// Coefficient of a pattern with `a` ket taus and `b` bra taus:
// (-i)^a (+i)^b times the trig moment of cos^{2k-a-b} sin^{a+b}.
Rational pattern_coefficient(int k, int a, int b) {
  const int s = a + b;
  if (s % 2) return Rational(0);
  const int sign = ((a % 2) ? -1 : 1) * (((s / 2) % 2) ? -1 : 1);
  return trig_moment(2 * k - s, s) * Rational(sign);
}

}  // namespace

std::map<unsigned, Rational> twirl_swap_coefficients(int k) {
  if (k < 1 || k > 8) throw std::invalid_argument("twirl_swap_coefficients: k must be in 1..8");
  std::map<unsigned, Rational> out;
  for (unsigned mask = 0; mask < (1u << (2 * k)); ++mask) {
    int a = 0;
    int b = 0;
    for (int f = 0; f < 2 * k; ++f) {
      if (mask & (1u << f)) (f < k ? a : b)++;
    }
    const Rational c = pattern_coefficient(k, a, b);
    if (c.numerator() != 0) out.emplace(mask, c);
  }
  return out;
}

BlockContext::BlockContext(SectorTuple tuple, IrrepCache& cache) : tuple_(std::move(tuple)) {
  tuple_.validate();
  std::vector<std::size_t> dims;
  for (const auto& shape : tuple_.factors()) {
    reps_.push_back(cache.get(shape));
    dims.push_back(static_cast<std::size_t>(reps_.back()->dim()));
  }
  layout_ = TensorLayout(std::move(dims));
}

std::vector<CsrMatrix> BlockContext::transposition(int i, int j) const {
  std::vector<CsrMatrix> out;
  for (const auto& rep : reps_) out.push_back(transposition_matrix(*rep, i, j));
  return out;
}

SwapTwirl::SwapTwirl(const TensorLayout& layout, std::vector<CsrMatrix> taus, int k)
    : layout_(layout), taus_(std::move(taus)), k_(k) {
  if (static_cast<int>(taus_.size()) != 2 * k_) throw std::invalid_argument("SwapTwirl: need one tau per factor");
  // With ket taus carrying a factor -1 while accumulating, every pattern in
  // the class of s taus has coefficient (-1)^{s/2} * moment(2k - s, s).
  class_weight_.assign(2 * k_ + 1, 0.0);
  for (int s = 0; s <= 2 * k_; s += 2) {
    const Rational m = trig_moment(2 * k_ - s, s) * Rational((s / 2) % 2 ? -1 : 1);
    class_weight_[s] = boost::rational_cast<double>(m);
  }
}

void SwapTwirl::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t dim = layout_.size();
  const int factors = 2 * k_;
  std::vector<std::vector<double>> w(factors + 1);
  w[0].assign(x.begin(), x.end());
  std::vector<double> tmp(dim);
  for (int f = 0; f < factors; ++f) {
    const double sign = f < k_ ? -1.0 : 1.0;
    for (int s = f; s >= 0; --s) {
      if (w[s].empty()) continue;
      kernels::apply_axis(taus_[f], layout_, f, w[s], tmp);
      if (w[s + 1].empty()) w[s + 1].assign(dim, 0.0);
      kernels::axpy(sign, tmp, w[s + 1]);
    }
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (int s = 0; s <= factors; s += 2) kernels::axpy(class_weight_[s], w[s], y);
}

namespace {

void check_dim(const BlockContext& ctx, const AssemblyOptions& opts) {
  if (ctx.dim() > opts.max_dim) {
    throw std::length_error("block dimension " + std::to_string(ctx.dim()) + " exceeds the configured cap " +
                            std::to_string(opts.max_dim));
  }
}

void check_pair(const BlockContext& ctx, std::pair<int, int> p) {
  if (p.first < 1 || p.second > ctx.n() || p.first >= p.second) {
    throw std::out_of_range("transposition pair out of range for n = " + std::to_string(ctx.n()));
  }
}

std::shared_ptr<const SwapTwirl> make_twirl(const BlockContext& ctx, std::pair<int, int> p) {
  check_pair(ctx, p);
  return std::make_shared<const SwapTwirl>(ctx.layout(), ctx.transposition(p.first, p.second), ctx.k());
}

std::vector<std::shared_ptr<const SwapTwirl>> make_twirls(const BlockContext& ctx,
                                                           const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::shared_ptr<const SwapTwirl>> out;
  for (const auto& p : pairs) out.push_back(make_twirl(ctx, p));
  return out;
}

// y = scale_identity * x + weight * sum_p T_p x
Matvec twirl_sum(std::vector<std::shared_ptr<const SwapTwirl>> twirls, double scale_identity, double weight) {
  return [twirls = std::move(twirls), scale_identity, weight](std::span<const double> x, std::span<double> y) {
    std::vector<double> tmp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = scale_identity * x[i];
    for (const auto& t : twirls) {
      t->apply(x, tmp);
      kernels::axpy(weight, tmp, y);
    }
  };
}

Matvec twirl_chain(std::vector<std::shared_ptr<const SwapTwirl>> twirls) {
  return [twirls = std::move(twirls)](std::span<const double> x, std::span<double> y) {
    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next(x.size());
    for (const auto& t : twirls) {
      t->apply(cur, next);
      cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), y.begin());
  };
}

}  // namespace

MomentBlock twirl_swap_k(const BlockContext& ctx, std::pair<int, int> pair, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  auto twirl = make_twirl(ctx, pair);
  Matvec mv = [twirl](std::span<const double> x, std::span<double> y) { twirl->apply(x, y); };
  return MomentBlock(ctx.tuple(), BlockKind::swap_only, ctx.dim(), std::move(mv), {}, opts.dense_threshold);
}

std::vector<unsigned char> yjm_twirl_mask(const BlockContext& ctx, YjmPairs pairs) {
  const int n = ctx.n();
  std::vector<std::pair<int, int>> feats;
  for (int a = 2; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      if (pairs == YjmPairs::exclusive && a == b) continue;
      feats.emplace_back(a, b);
    }
  }
  const int factors = ctx.factor_count();
  const std::size_t nf = feats.size();
  // feature[f][t * nf + q] = c_t(a_q) * c_t(b_q) for factor f, tableau t
  std::vector<std::vector<long>> feature(factors);
  for (int f = 0; f < factors; ++f) {
    const IrrepAction& rep = ctx.rep(f);
    feature[f].resize(rep.dim() * nf);
    for (int t = 0; t < rep.dim(); ++t) {
      for (std::size_t q = 0; q < nf; ++q) {
        feature[f][t * nf + q] = static_cast<long>(rep.yjm(feats[q].first)[t]) * rep.yjm(feats[q].second)[t];
      }
    }
  }
  const TensorLayout& layout = ctx.layout();
  std::vector<unsigned char> mask(layout.size());
#pragma omp parallel
  {
    std::vector<long> acc(nf);
#pragma omp for schedule(static)
    for (std::size_t flat = 0; flat < layout.size(); ++flat) {
      std::fill(acc.begin(), acc.end(), 0L);
      std::size_t rest = flat;
      for (int f = factors - 1; f >= 0; --f) {
        const std::size_t d = layout.dims()[f];
        const std::size_t t = rest % d;
        rest /= d;
        const long sign = f < ctx.k() ? 1 : -1;
        const long* row = feature[f].data() + t * nf;
        for (std::size_t q = 0; q < nf; ++q) acc[q] += sign * row[q];
      }
      mask[flat] = std::all_of(acc.begin(), acc.end(), [](long v) { return v == 0; }) ? 1 : 0;
    }
  }
  return mask;
}

MomentBlock twirl_yjm(const BlockContext& ctx, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  auto mask = std::make_shared<const std::vector<unsigned char>>(yjm_twirl_mask(ctx, opts.yjm_pairs));
  Matvec mv = [mask](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = (*mask)[i] ? x[i] : 0.0;
  };
  return MomentBlock(ctx.tuple(), BlockKind::yjm_only, ctx.dim(), std::move(mv), {}, opts.dense_threshold);
}

MomentBlock step_channel(const BlockContext& ctx, const Geometry& geometry, Ensemble ensemble,
                         const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  if (geometry.variant == GeometryKind::brickwork) {
    throw std::invalid_argument("step_channel: brickwork circuits use brickwork_step");
  }
  if (geometry.n != ctx.n()) throw std::invalid_argument("step_channel: geometry size differs from tuple box count");
  const auto pairs = geometry.pairs();
  Matvec average = twirl_sum(make_twirls(ctx, pairs), 0.0, 1.0 / static_cast<double>(pairs.size()));
  if (ensemble == Ensemble::swap_only) {
    return MomentBlock(ctx.tuple(), BlockKind::swap_only, ctx.dim(), std::move(average), {}, opts.dense_threshold);
  }
  auto mask = std::make_shared<const std::vector<unsigned char>>(yjm_twirl_mask(ctx, opts.yjm_pairs));
  Matvec sandwich = [mask, average](std::span<const double> x, std::span<double> y) {
    std::vector<double> masked(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) masked[i] = (*mask)[i] ? x[i] : 0.0;
    average(masked, y);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!(*mask)[i]) y[i] = 0.0;
    }
  };
  return MomentBlock(ctx.tuple(), BlockKind::cqa_step, ctx.dim(), std::move(sandwich), {}, opts.dense_threshold);
}

namespace {

std::vector<std::pair<int, int>> layer_pairs(int n, int first) {
  std::vector<std::pair<int, int>> p;
  for (int j = first; j < n; j += 2) p.emplace_back(j, j + 1);
  return p;
}

}  // namespace

std::pair<MomentBlock, MomentBlock> brickwork_layers(const BlockContext& ctx, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  if (ctx.n() < 3) throw std::invalid_argument("brickwork needs n >= 3");
  MomentBlock odd(ctx.tuple(), BlockKind::swap_only, ctx.dim(), twirl_chain(make_twirls(ctx, layer_pairs(ctx.n(), 1))),
                  {}, opts.dense_threshold);
  MomentBlock even(ctx.tuple(), BlockKind::swap_only, ctx.dim(),
                   twirl_chain(make_twirls(ctx, layer_pairs(ctx.n(), 2))), {}, opts.dense_threshold);
  return {std::move(odd), std::move(even)};
}

MomentBlock brickwork_step(const BlockContext& ctx, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  if (ctx.n() < 3) throw std::invalid_argument("brickwork needs n >= 3");
  auto odd = make_twirls(ctx, layer_pairs(ctx.n(), 1));
  auto even = make_twirls(ctx, layer_pairs(ctx.n(), 2));
  std::vector<std::shared_ptr<const SwapTwirl>> forward = odd;
  forward.insert(forward.end(), even.begin(), even.end());
  std::vector<std::shared_ptr<const SwapTwirl>> backward = even;
  backward.insert(backward.end(), odd.begin(), odd.end());
  return MomentBlock(ctx.tuple(), BlockKind::brickwork_step, ctx.dim(), twirl_chain(std::move(forward)),
                     twirl_chain(std::move(backward)), opts.dense_threshold);
}

MomentBlock bulk_hamiltonian(const BlockContext& ctx, int m, int j, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  if (m < 2 || j < 1 || j + m - 1 > ctx.n()) {
    throw std::out_of_range("bulk_hamiltonian: window [" + std::to_string(j) + ", " + std::to_string(j + m - 1) +
                            "] outside 1.." + std::to_string(ctx.n()));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = j; i <= j + m - 2; ++i) pairs.emplace_back(i, i + 1);
  const double terms = static_cast<double>(pairs.size());
  return MomentBlock(ctx.tuple(), BlockKind::bulk_hamiltonian, ctx.dim(), twirl_sum(make_twirls(ctx, pairs), terms, -1.0),
                     {}, opts.dense_threshold);
}

MomentBlock all_to_all_hamiltonian(const BlockContext& ctx, const AssemblyOptions& opts) {
  check_dim(ctx, opts);
  const auto pairs = Geometry(GeometryKind::all_to_all, ctx.n()).pairs();
  const double terms = static_cast<double>(pairs.size());
  return MomentBlock(ctx.tuple(), BlockKind::all_to_all_hamiltonian, ctx.dim(),
                     twirl_sum(make_twirls(ctx, pairs), terms, -1.0), {}, opts.dense_threshold);
}

std::vector<SectorTuple> branch_reduced_tuples(const SectorTuple& tuple, int m) {
  tuple.validate();
  const auto factors = tuple.factors();
  std::vector<std::vector<Partition>> options;
  for (const auto& p : factors) {
    std::vector<Partition> shapes;
    for (const auto& [shape, count] : branch_restrict(p, m)) shapes.push_back(shape);
    options.push_back(std::move(shapes));
  }
  std::set<SectorTuple> out;
  std::vector<std::size_t> idx(factors.size(), 0);
  const int k = tuple.k();
  while (true) {
    SectorTuple t;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      (static_cast<int>(f) < k ? t.ket : t.bra).push_back(options[f][idx[f]]);
    }
    out.insert(t);
    std::size_t f = factors.size();
    while (f > 0) {
      --f;
      if (++idx[f] < options[f].size()) break;
      idx[f] = 0;
      if (f == 0) return {out.begin(), out.end()};
    }
  }
}

}  // namespace symdesign
