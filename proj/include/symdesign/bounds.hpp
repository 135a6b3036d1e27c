#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace symdesign {

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  /// False whenever the bound is non-positive or its preconditions fail.
  bool valid = false;
};

using ExactRational = boost::rational<long long>;

/// Local-gap threshold 6 / ((m+1)(m+2)).
double knabe_threshold(int m);

/// Finite-size criterion lifting the gap of an m-wide bulk to the periodic
/// chain: 5(m^2+3m+1) / (6(m^2+2m-3)) * (local_gap - threshold). m >= 2.
BoundReport knabe_bound(int m, double local_gap);
ExactRational knabe_bound_exact(int m, ExactRational local_gap);

/// 1 + (n-2)/(m-2) * (gamma_m - 1), for n >= m >= 3.
BoundReport all_to_all_bound(int n, int m, double gamma_m);
ExactRational all_to_all_bound_exact(int n, int m, ExactRational gamma_m);

/// Upper bound 1 / (delta/4 + 1) on the brickwork second singular value.
BoundReport detectability_bound(double delta);

/// ceil((2kn/delta) ln(d/epsilon)) steps for an epsilon-approximate k-design.
long convergence_steps(int k, int n, int d, double epsilon, double delta);

/// ceil((n-1)(2n ln d + ln(1/epsilon))) steps for the 1-design.
long one_design_steps(int n, int d, double epsilon);

}  // namespace symdesign
