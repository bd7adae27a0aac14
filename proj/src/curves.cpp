#include "curvlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

double upper_angle(const Space& s, const Path& a, const Path& b, double h) {
  const double la = a.length(), lb = b.length();
  if (!same_point(s, a.start(), b.start(), 1e-7 + 2 * s.distance_error_estimate()))
    throw std::invalid_argument("upper_angle: paths do not share a start point");
  if (h <= 0) h = 0.25 * std::min(la, lb);
  h = std::min(h, std::min(la, lb));
  if (h < 1e-9) throw std::invalid_argument("upper_angle: paths too short");
  auto theta = [&](double t) {
    const double d = s.distance(a.at(t), b.at(t));
    return angle_from_sides(Kappa(0), t, t, std::min(d, 2 * t));
  };
  const double t1 = theta(h), t2 = theta(h / 2), t4 = theta(h / 4);
  const double extrap = (8 * t4 - 6 * t2 + t1) / 3.0;
  return std::clamp(extrap, 0.0, M_PI);
}

Path concatenate(const Space& s, const Path& a, const Path& b, double tol) {
  if (tol < 0) tol = 1e-9 + 2 * s.distance_error_estimate();
  if (s.distance(a.end(), b.start()) > tol)
    throw std::invalid_argument("concatenate: endpoint mismatch beyond tolerance");
  Path out = a;
  out.kind = PathKind::quasi_geodesic_candidate;
  const double off = a.length();
  for (std::size_t i = 1; i < b.pts.size(); ++i) {
    out.pts.push_back(b.pts[i]);
    out.params.push_back(off + b.params[i]);
  }
  for (double d : b.cone_dphi) out.cone_dphi.push_back(d);
  for (int f : b.seg_face) out.seg_face.push_back(f);
  out.hit_boundary = a.hit_boundary || b.hit_boundary;
  out.hit_vertex = a.hit_vertex || b.hit_vertex;
  return out;
}

SampledFunction sample_rho_distance(const Space& s, const SpacePoint& p, const Path& sigma,
                                    Kappa k, int n) {
  if (n < 2) throw std::invalid_argument("sample_rho_distance: n >= 2");
  SampledFunction f;
  f.t0 = 0.0;
  f.h = sigma.length() / n;
  f.values.reserve(n + 1);
  for (int i = 0; i <= n; ++i) f.values.push_back(rho(k, s.distance(p, sigma.at(i * f.h))));
  return f;
}

SampledFunction sample_eta0(const Space& s, const SpacePoint& p, const Path& sigma, int n) {
  if (n < 2) throw std::invalid_argument("sample_eta0: n >= 2");
  SampledFunction f;
  f.t0 = 0.0;
  f.h = sigma.length() / n;
  f.values.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = i * f.h;
    const double d = s.distance(p, sigma.at(t));
    f.values.push_back(0.5 * d * d - 0.5 * t * t);
  }
  return f;
}

std::pair<double, double> distance_to_path(const Space& s, const SpacePoint& p, const Path& sigma,
                                           int coarse) {
  const double L = sigma.length();
  double best = std::numeric_limits<double>::infinity(), bt = 0;
  for (int i = 0; i <= coarse; ++i) {
    const double t = L * i / coarse;
    const double d = s.distance(p, sigma.at(t));
    if (d < best) {
      best = d;
      bt = t;
    }
  }
  // golden-section refinement around the coarse argmin
  double lo = std::max(0.0, bt - L / coarse), hi = std::min(L, bt + L / coarse);
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = s.distance(p, sigma.at(x1)), f2 = s.distance(p, sigma.at(x2));
  for (int it = 0; it < 60 && hi - lo > 1e-13 * (1 + L); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = s.distance(p, sigma.at(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = s.distance(p, sigma.at(x2));
    }
  }
  const double tm = 0.5 * (lo + hi);
  const double dm = s.distance(p, sigma.at(tm));
  if (dm < best) {
    best = dm;
    bt = tm;
  }
  return {best, bt};
}

}  // namespace curvlab
