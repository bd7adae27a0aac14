#pragma once

#include <vector>

#include "curvlab/model.hpp"

// Closed-form geometry of the metric cone over a circle. A Euclidean cone of
// total apex angle theta and the cone over a circle of circumference L are the
// same space (theta = L); both backends share this implementation.
//
// Distance realizes d^2 = r1^2 + r2^2 - 2 r1 r2 cos(min(delta, pi)) where
// delta is the arc metric on the base circle; pairs with delta >= pi connect
// through the apex (d = r1 + r2).

namespace curvlab {

struct ConePoint {
  double r = 0.0;    // slant radius >= 0; apex is r = 0
  double phi = 0.0;  // angular coordinate mod total angle
};

class ConeGeometry {
 public:
  explicit ConeGeometry(double total_angle);

  double total_angle() const { return theta_; }

  // wrap into [0, theta)
  double wrap(double phi) const;

  // arc metric on the base circle: min(|dphi|, theta - |dphi|)
  double arc(double phi1, double phi2) const;

  // signed angular step from phi1 to phi2 along the shorter arc; ties at
  // theta/2 resolve to the positive direction
  double signed_arc(double phi1, double phi2) const;

  double distance(const ConePoint& a, const ConePoint& b) const;

  // true when the minimizing geodesic from a to b passes through the apex
  // (arc separation >= pi, or an endpoint is the apex)
  bool through_apex(const ConePoint& a, const ConePoint& b) const;

  // chart angle at a of the minimizing geodesic toward b; the chart at a
  // non-apex point puts 0 on the outward radial direction and grows toward
  // increasing phi; the chart at the apex is the angular coordinate itself
  double direction_to(const ConePoint& a, const ConePoint& b) const;

  // Straight-line (geodesic) walk of given length from a point in chart
  // direction dir. Returns the polyline of chart sector transitions together
  // with the signed angular step of every segment; stops early at the apex
  // (hit_apex set) when the ray runs into it.
  struct Shot {
    std::vector<ConePoint> pts;
    std::vector<double> seg_dphi;
    bool hit_apex = false;
  };
  Shot shoot(const ConePoint& from, double dir, double length) const;

  // Interpolate along the unfolded straight segment from a to b where dphi is
  // the signed angular step of the segment (|dphi| < pi); s in [0, seg_len].
  ConePoint interpolate(const ConePoint& a, const ConePoint& b, double dphi, double s) const;

 private:
  double theta_;
};

}  // namespace curvlab
