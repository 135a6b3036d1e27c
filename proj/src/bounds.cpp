#include "symdesign/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace symdesign {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double knabe_threshold(int m) {
  require(m >= 2, "knabe: m must be at least 2");
  return 6.0 / ((m + 1.0) * (m + 2.0));
}

ExactRational knabe_bound_exact(int m, ExactRational local_gap) {
  require(m >= 2, "knabe: m must be at least 2");
  const long long mm = m;
  const ExactRational prefactor(5 * (mm * mm + 3 * mm + 1), 6 * (mm * mm + 2 * mm - 3));
  return prefactor * (local_gap - ExactRational(6, (mm + 1) * (mm + 2)));
}

BoundReport knabe_bound(int m, double local_gap) {
  require(m >= 2, "knabe: m must be at least 2");
  require(std::isfinite(local_gap) && local_gap >= 0.0, "knabe: local gap must be finite and nonnegative");
  const double mm = m;
  const double prefactor = 5.0 * (mm * mm + 3.0 * mm + 1.0) / (6.0 * (mm * mm + 2.0 * mm - 3.0));
  const double threshold = knabe_threshold(m);
  BoundReport r{"knabe", {{"m", mm}, {"local_gap", local_gap}, {"threshold", threshold}}, 0.0, false};
  r.value = prefactor * (local_gap - threshold);
  r.valid = local_gap > threshold && r.value > 0.0;
  return r;
}

ExactRational all_to_all_bound_exact(int n, int m, ExactRational gamma_m) {
  require(m >= 3 && n >= m, "all_to_all: need n >= m >= 3");
  return ExactRational(1) + ExactRational(n - 2, m - 2) * (gamma_m - ExactRational(1));
}

BoundReport all_to_all_bound(int n, int m, double gamma_m) {
  require(m >= 3 && n >= m, "all_to_all: need n >= m >= 3");
  require(std::isfinite(gamma_m), "all_to_all: gamma_m must be finite");
  BoundReport r{"all_to_all", {{"n", double(n)}, {"m", double(m)}, {"gamma_m", gamma_m}}, 0.0, false};
  r.value = 1.0 + (n - 2.0) / (m - 2.0) * (gamma_m - 1.0);
  r.valid = r.value > 0.0;
  return r;
}

BoundReport detectability_bound(double delta) {
  require(std::isfinite(delta) && delta >= 0.0, "detectability: delta must be nonnegative");
  BoundReport r{"detectability", {{"delta", delta}}, 1.0 / (delta / 4.0 + 1.0), false};
  r.valid = r.value > 0.0;
  return r;
}

long convergence_steps(int k, int n, int d, double epsilon, double delta) {
  require(k >= 1 && n >= 1 && d >= 1, "convergence_steps: k, n, d must be positive");
  require(delta > 0.0, "convergence_steps: delta must be positive");
  require(epsilon > 0.0 && epsilon < d, "convergence_steps: need 0 < epsilon < d");
  return static_cast<long>(std::ceil(2.0 * k * n / delta * std::log(d / epsilon)));
}

long one_design_steps(int n, int d, double epsilon) {
  require(n >= 2, "one_design_steps: n must be at least 2");
  require(d >= 2, "one_design_steps: d must be at least 2");
  require(epsilon > 0.0 && epsilon < 1.0, "one_design_steps: need 0 < epsilon < 1");
  return static_cast<long>(std::ceil((n - 1.0) * (2.0 * n * std::log(double(d)) + std::log(1.0 / epsilon))));
}

}  // namespace symdesign
