#include "symdesign/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "symdesign/kron.hpp"
#include "symdesign/rng.hpp"

namespace symdesign {

namespace {

using Vec = std::vector<double>;

void orthogonalize(Vec& w, const std::vector<Vec>& basis) {
  for (const auto& u : basis) kernels::axpy(-kernels::dot(u, w), u, w);
}

struct Cycle {
  std::vector<Vec> v;
  Eigen::VectorXd theta;  // Ritz values, descending
  Eigen::MatrixXd s;      // Ritz vectors in the Krylov basis, same order
  double last_beta = 0.0;
};

class Solver {
 public:
  Solver(const Matvec& op, std::size_t dim, double sign, const LanczosOptions& opts)
      : op_(op), dim_(dim), sign_(sign), opts_(opts), rng_(opts.seed) {}

  Vec random_start() {
    std::normal_distribution<double> normal;
    Vec v(dim_);
    for (auto& x : v) x = normal(rng_);
    project_and_normalize(v);
    return v;
  }

  // Returns false if v has no component outside the locked space.
  bool project_and_normalize(Vec& v) {
    orthogonalize(v, locked_);
    orthogonalize(v, locked_);
    const double nv = kernels::norm(v);
    if (nv < 1e-300) return false;
    kernels::scale(1.0 / nv, v);
    return true;
  }

  void apply(const Vec& x, Vec& y) {
    op_(x, y);
    if (sign_ < 0) kernels::scale(-1.0, y);
    ++matvecs_;
  }

  Cycle run_cycle(Vec start) {
    Cycle c;
    const std::size_t room = dim_ - locked_.size();
    const std::size_t m = std::min(opts_.krylov_dim, room);
    std::vector<double> alpha;
    std::vector<double> beta;
    c.v.push_back(std::move(start));
    Vec w(dim_);
    for (std::size_t j = 0; j < m; ++j) {
      apply(c.v[j], w);
      alpha.push_back(kernels::dot(w, c.v[j]));
      for (int pass = 0; pass < 2; ++pass) {
        orthogonalize(w, locked_);
        orthogonalize(w, c.v);
      }
      const double b = kernels::norm(w);
      const double scale = std::max(1.0, std::abs(alpha.back()));
      if (j + 1 == m || b < 1e-12 * scale) {
        c.last_beta = b < 1e-12 * scale ? 0.0 : b;
        break;
      }
      beta.push_back(b);
      Vec next(w);
      kernels::scale(1.0 / b, next);
      c.v.push_back(std::move(next));
    }
    const std::size_t p = c.v.size();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < p; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < p) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    // Eigen sorts ascending; reverse to descending.
    c.theta = es.eigenvalues().reverse();
    c.s = es.eigenvectors().rowwise().reverse();
    return c;
  }

  Vec ritz_vector(const Cycle& c, Eigen::Index i) const {
    Vec y(dim_, 0.0);
    for (std::size_t r = 0; r < c.v.size(); ++r) kernels::axpy(c.s(static_cast<Eigen::Index>(r), i), c.v[r], y);
    return y;
  }

  double true_residual(const Vec& y, double theta) {
    Vec ay(dim_);
    apply(y, ay);
    kernels::axpy(-theta, y, ay);
    return kernels::norm(ay);
  }

  double tolerance(double theta) const { return opts_.residual_tol * std::max(1.0, std::abs(theta)); }

  std::vector<Vec>& locked() { return locked_; }
  long matvecs() const { return matvecs_; }

 private:
  const Matvec& op_;
  std::size_t dim_;
  double sign_;
  LanczosOptions opts_;
  SplitMix64 rng_;
  std::vector<Vec> locked_;
  long matvecs_ = 0;
};

}  // namespace

LanczosOutcome lanczos_extreme(const Matvec& op, std::size_t dim, Spectrum which,
                               const std::function<bool(double)>& keep_going, std::size_t max_pairs,
                               const LanczosOptions& opts) {
  if (dim == 0) throw std::invalid_argument("lanczos_extreme: empty operator");
  if (opts.krylov_dim < 2) throw std::invalid_argument("lanczos_extreme: krylov_dim must be at least 2");
  const double sign = which == Spectrum::largest ? 1.0 : -1.0;
  Solver solver(op, dim, sign, opts);
  LanczosOutcome out;
  Vec start = solver.random_start();
  int confirmations = 0;
  bool done = false;

  while (!done && out.restarts < opts.max_restarts) {
    ++out.restarts;
    if (solver.locked().size() == dim) break;
    Cycle c = solver.run_cycle(start);
    const Eigen::Index p = c.theta.size();
    bool locked_any = false;
    Eigen::Index first_open = p;
    for (Eigen::Index i = 0; i < p; ++i) {
      const double theta = c.theta(i);
      const double estimate = std::abs(c.last_beta * c.s(p - 1, i));
      if (estimate > solver.tolerance(theta)) {
        first_open = i;
        break;
      }
      Vec y = solver.ritz_vector(c, i);
      if (!solver.project_and_normalize(y)) {
        first_open = i;
        break;
      }
      const double res = solver.true_residual(y, theta);
      if (res > solver.tolerance(theta)) {
        first_open = i;
        break;
      }
      out.pairs.push_back({sign * theta, y, res});
      out.worst_residual = std::max(out.worst_residual, res);
      solver.locked().push_back(std::move(y));
      locked_any = true;
      if (!keep_going(sign * theta) || out.pairs.size() >= max_pairs || solver.locked().size() == dim) {
        done = true;
        break;
      }
    }

    if (done) {
      // Confirm from an independent random start that no eigenvalue beyond
      // the last locked one was skipped.
      if (out.pairs.size() >= max_pairs || solver.locked().size() == dim || confirmations >= 3) break;
      ++confirmations;
      const double last = sign * out.pairs.back().value;
      Cycle check = solver.run_cycle(solver.random_start());
      if (check.theta.size() > 0 && check.theta(0) > last + 10 * solver.tolerance(last)) {
        // A larger eigenvalue was missed: unlock the last pair and continue.
        solver.locked().pop_back();
        out.pairs.pop_back();
        start = solver.ritz_vector(check, 0);
        if (!solver.project_and_normalize(start)) start = solver.random_start();
        done = false;
        continue;
      }
      break;
    }

    // Restart from the leading unconverged Ritz directions.
    Vec next(dim, 0.0);
    for (Eigen::Index i = first_open; i < std::min<Eigen::Index>(p, first_open + 3); ++i) {
      kernels::axpy(1.0, solver.ritz_vector(c, i), next);
    }
    if (locked_any) {
      Vec noise = solver.random_start();
      const double nn = kernels::norm(next);
      kernels::axpy(0.1 * std::max(nn, 1.0), noise, next);
    }
    if (!solver.project_and_normalize(next)) next = solver.random_start();
    start = std::move(next);
  }

  out.matvecs = solver.matvecs();
  out.converged = done || solver.locked().size() == dim;
  return out;
}

}  // namespace symdesign
