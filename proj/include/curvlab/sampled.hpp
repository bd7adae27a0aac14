#pragma once

#include <vector>

#include "curvlab/model.hpp"

// Discrete calculus on uniformly sampled scalar functions. The concavity and
// differential-inequality margins here are what every comparison statement in
// the suite ultimately reduces to. Inequalities that hold in barrier sense are
// certified through central second differences up to a tolerance of order h;
// a confirmed violation is one whose margin survives step halving.

namespace curvlab {

struct SampledFunction {
  double t0 = 0.0;
  double h = 0.0;  // uniform step > 0
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double t(std::size_t i) const { return t0 + h * static_cast<double>(i); }
  void validate() const;
};

struct ConcavityReport {
  double worst_margin = 0.0;
  int witness_index = -1;   // sample index (or pair start) realizing the worst margin
  int witness_index2 = -1;  // second pair index for midpoint tests
  double h = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Default tolerance model: tol = C * h with C = 2 * (Lipschitz estimate of f).
double default_margin_tol(const SampledFunction& f);

// Worst over index pairs (i, j) with i + j even, j - i >= 2, of
//   f((t_i + t_j)/2) - (f(t_i) + f(t_j))/2.
// Restricting to even pair sums makes the midpoint a sample, so margins are
// exactly invariant under adding affine functions of t.
ConcavityReport midpoint_concavity(const SampledFunction& f, double tol);
ConcavityReport midpoint_concavity(const SampledFunction& f);

// Worst over interior samples of (1 - k f(t_i)) - (f(t_i+1) - 2 f(t_i) + f(t_i-1))/h^2,
// the discrete surrogate of f'' <= 1 - k f.
ConcavityReport ode_inequality_margin(const SampledFunction& f, Kappa k, double tol);
ConcavityReport ode_inequality_margin(const SampledFunction& f, Kappa k);

}  // namespace curvlab
