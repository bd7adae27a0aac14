#include "curvlab/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

void SampledFunction::validate() const {
  if (values.size() < 3) throw std::invalid_argument("SampledFunction: need m >= 2 intervals");
  if (!(h > 0)) throw std::invalid_argument("SampledFunction: step must be positive");
}

double default_margin_tol(const SampledFunction& f) {
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < f.values.size(); ++i)
    lip = std::max(lip, std::abs(f.values[i + 1] - f.values[i]) / f.h);
  return 2.0 * lip * f.h;
}

ConcavityReport midpoint_concavity(const SampledFunction& f, double tol) {
  f.validate();
  ConcavityReport rep;
  rep.h = f.h;
  rep.tol = tol;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(f.values.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; j += 2) {
      const int mid = (i + j) / 2;
      const double margin = f.values[mid] - 0.5 * (f.values[i] + f.values[j]);
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.witness_index = i;
        rep.witness_index2 = j;
      }
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

ConcavityReport midpoint_concavity(const SampledFunction& f) {
  return midpoint_concavity(f, default_margin_tol(f));
}

ConcavityReport ode_inequality_margin(const SampledFunction& f, Kappa k, double tol) {
  f.validate();
  ConcavityReport rep;
  rep.h = f.h;
  rep.tol = tol;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double h2 = f.h * f.h;
  for (std::size_t i = 1; i + 1 < f.values.size(); ++i) {
    const double second = (f.values[i + 1] - 2 * f.values[i] + f.values[i - 1]) / h2;
    const double margin = (1.0 - k.k * f.values[i]) - second;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness_index = static_cast<int>(i);
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

ConcavityReport ode_inequality_margin(const SampledFunction& f, Kappa k) {
  return ode_inequality_margin(f, k, default_margin_tol(f));
}

}  // namespace curvlab
