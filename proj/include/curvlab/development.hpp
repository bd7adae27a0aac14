#pragma once

#include <iosfwd>

#include "curvlab/curves.hpp"
#include "curvlab/space.hpp"

// Alexandrov development of a curve relative to a base point into the model
// surface M2_k: radial distances to the base and consecutive chords are
// preserved exactly, the base angle advances monotonically (turning side
// fixed to `left`). The development exists whenever the base stays off the
// curve and, for k > 0, within the model diameter.

namespace curvlab {

struct DevelopedCurve {
  Kappa k;
  std::vector<double> params;      // t_i along the source curve
  std::vector<double> radial;      // d(p, gamma(t_i)), preserved exactly
  std::vector<double> base_angle;  // beta_i, non-decreasing ("turning monotonically")

  std::size_t size() const { return params.size(); }
  ModelPoint point(std::size_t i) const { return ModelPoint{radial[i], base_angle[i]}; }

  // interior turning margins: pi - (angle at the sample between the incoming
  // chord and the base radius) - (same for the outgoing chord). Positive
  // margins bend the curve toward the base and keep the cone of development
  // convex; a straight model geodesic has margin 0.
  std::vector<double> turning_margins() const;
};

// Sample the curve at n+1 uniform parameters and develop it. Throws
// std::invalid_argument when the base point lies on the curve or (k > 0)
// beyond the model diameter, and std::runtime_error when no model triangle
// matches the radial/chord data (distance noise above tolerance).
DevelopedCurve develop(const Space& s, const Path& curve, const SpacePoint& p, Kappa k,
                       int n = 64);

// pass iff every interior sample turns weakly toward the base (cone of
// development locally convex), worst signed turning as margin
ConcavityReport is_convex_development(const DevelopedCurve& dev, double tol);

// columns: t, x, y, radial_distance, turning_angle (chart Cartesian coords)
void write_development_csv(const DevelopedCurve& dev, std::ostream& out);

}  // namespace curvlab
