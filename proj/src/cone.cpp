#include "curvlab/cone.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace curvlab {

namespace {
constexpr double kApexEps = 1e-14;
}

ConeGeometry::ConeGeometry(double total_angle) : theta_(total_angle) {
  if (!(total_angle > 0) || !std::isfinite(total_angle))
    throw std::invalid_argument("ConeGeometry: total angle must be positive");
}

double ConeGeometry::wrap(double phi) const {
  double w = std::fmod(phi, theta_);
  if (w < 0) w += theta_;
  return w;
}

double ConeGeometry::arc(double phi1, double phi2) const {
  const double d = std::abs(wrap(phi1) - wrap(phi2));
  return std::min(d, theta_ - d);
}

double ConeGeometry::signed_arc(double phi1, double phi2) const {
  const double fwd = wrap(phi2 - phi1);
  return fwd <= theta_ - fwd ? fwd : fwd - theta_;
}

double ConeGeometry::distance(const ConePoint& a, const ConePoint& b) const {
  if (a.r <= kApexEps || b.r <= kApexEps) return a.r + b.r;
  const double delta = std::min(arc(a.phi, b.phi), M_PI);
  return side_from_hinge(Kappa(0), ModelHinge{a.r, b.r, delta});
}

bool ConeGeometry::through_apex(const ConePoint& a, const ConePoint& b) const {
  if (a.r <= kApexEps || b.r <= kApexEps) return true;
  return arc(a.phi, b.phi) >= M_PI;
}

double ConeGeometry::direction_to(const ConePoint& a, const ConePoint& b) const {
  if (a.r <= kApexEps) return wrap(b.phi);
  if (through_apex(a, b)) return M_PI;  // inward radial
  const double sd = signed_arc(a.phi, b.phi);
  const Eigen::Vector2d p(a.r, 0.0);
  const Eigen::Vector2d q(b.r * std::cos(sd), b.r * std::sin(sd));
  const Eigen::Vector2d d = q - p;
  return std::atan2(d.y(), d.x());
}

ConeGeometry::Shot ConeGeometry::shoot(const ConePoint& from, double dir, double length) const {
  Shot out;
  if (from.r <= kApexEps) {
    // chart at the apex is the angular coordinate: a radial ray
    out.pts.push_back(ConePoint{0.0, wrap(dir)});
    out.pts.push_back(ConePoint{length, wrap(dir)});
    out.seg_dphi.push_back(0.0);
    return out;
  }
  // Walk straight in successive unfolded charts. Each chart puts the current
  // point at (r, 0) with the outward radial along +x; the straight run is cut
  // whenever its polar angle reaches beta_cap so every stored segment has
  // angular span < pi and stays inside one chart.
  const double beta_cap = std::min(0.9 * M_PI, 0.49 * theta_);
  ConePoint cur = from;
  double psi = std::remainder(dir, 2 * M_PI);
  double remaining = length;
  out.pts.push_back(cur);
  for (int guard = 0; guard < 64 && remaining > 1e-15; ++guard) {
    const double sgn = psi >= 0 ? 1.0 : -1.0;
    const double apsi = std::abs(psi);
    if (apsi > M_PI - 1e-12) {
      // aimed straight at the apex
      if (remaining <= cur.r - 1e-15) {
        out.pts.push_back(ConePoint{cur.r - remaining, cur.phi});
        out.seg_dphi.push_back(0.0);
        return out;
      }
      out.pts.push_back(ConePoint{0.0, cur.phi});
      out.seg_dphi.push_back(0.0);
      out.hit_apex = true;
      return out;
    }
    if (apsi <= beta_cap) {
      // whole remaining run fits into this chart
      const Eigen::Vector2d p(cur.r, 0.0);
      const Eigen::Vector2d x = p + remaining * Eigen::Vector2d(std::cos(psi), std::sin(psi));
      const double beta = std::atan2(x.y(), x.x());
      out.pts.push_back(ConePoint{x.norm(), wrap(cur.phi + beta)});
      out.seg_dphi.push_back(beta);
      return out;
    }
    // cut the run where its polar angle reaches sgn*beta_cap
    const double s_star = cur.r * std::sin(beta_cap) / std::sin(apsi - beta_cap);
    if (s_star >= remaining) {
      const Eigen::Vector2d p(cur.r, 0.0);
      const Eigen::Vector2d x = p + remaining * Eigen::Vector2d(std::cos(psi), std::sin(psi));
      const double beta = std::atan2(x.y(), x.x());
      out.pts.push_back(ConePoint{x.norm(), wrap(cur.phi + beta)});
      out.seg_dphi.push_back(beta);
      return out;
    }
    const double r_new = cur.r * std::sin(apsi) / std::sin(apsi - beta_cap);
    cur = ConePoint{r_new, wrap(cur.phi + sgn * beta_cap)};
    psi = sgn * (apsi - beta_cap);
    remaining -= s_star;
    out.pts.push_back(cur);
    out.seg_dphi.push_back(sgn * beta_cap);
  }
  return out;
}

ConePoint ConeGeometry::interpolate(const ConePoint& a, const ConePoint& b, double dphi, double s) const {
  const double seg = distance(a, b);
  if (seg <= kApexEps) return a;
  const double u = std::clamp(s / seg, 0.0, 1.0);
  if (a.r <= kApexEps) return ConePoint{u * b.r, b.phi};
  if (b.r <= kApexEps) return ConePoint{(1 - u) * a.r, a.phi};
  const Eigen::Vector2d p(a.r, 0.0);
  const Eigen::Vector2d q(b.r * std::cos(dphi), b.r * std::sin(dphi));
  const Eigen::Vector2d x = p + u * (q - p);
  const double rr = x.norm();
  if (rr <= kApexEps) return ConePoint{0.0, 0.0};
  return ConePoint{rr, wrap(a.phi + std::atan2(x.y(), x.x()))};
}

}  // namespace curvlab
