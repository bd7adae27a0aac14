#include "curvlab/model.hpp"

#include <algorithm>
#include <limits>

namespace curvlab {

namespace {

// Clamp tiny negative round-off to zero; anything worse is a caller bug.
double clamp_nonneg(double v, double tol, const char* what) {
  if (v < -tol) throw std::domain_error(what);
  return std::max(v, 0.0);
}

double sq(double x) { return x * x; }

// Versine helpers. hav(x) = sin^2(x/2); shav(x) = sinh^2(x/2).
double hav(double x) { return sq(std::sin(0.5 * x)); }
double shav(double x) { return sq(std::sinh(0.5 * x)); }

}  // namespace

double gen_cos(Kappa k, double t) {
  const double u = k.k * t * t;
  if (std::abs(u) < 1e-8) return 1.0 - u / 2.0 + u * u / 24.0;
  if (k.k > 0) return std::cos(std::sqrt(k.k) * t);
  return std::cosh(std::sqrt(-k.k) * t);
}

double gen_sin(Kappa k, double t) {
  const double u = k.k * t * t;
  if (std::abs(u) < 1e-8) return t * (1.0 - u / 6.0 + u * u / 120.0);
  const double s = std::sqrt(std::abs(k.k));
  if (k.k > 0) return std::sin(s * t) / s;
  return std::sinh(s * t) / s;
}

double rho(Kappa k, double x) {
  if (x < 0) throw std::domain_error("rho: negative length");
  if (k.k > 0 && x > M_PI / std::sqrt(k.k) * (1 + kEps) + kEps)
    throw std::domain_error("rho: length exceeds pi/sqrt(k)");
  const double u = k.k * x * x;
  if (std::abs(u) < 1e-8) {
    // (1 - gen_cos)/k expanded about k = 0; keeps rho continuous in k.
    return 0.5 * x * x * (1.0 - u / 12.0 + u * u / 360.0);
  }
  // half-angle forms: 1 - cos = 2 sin^2, cosh - 1 = 2 sinh^2 (no cancellation)
  if (k.k > 0) return 2.0 * sq(std::sin(0.5 * std::sqrt(k.k) * x)) / k.k;
  return 2.0 * sq(std::sinh(0.5 * std::sqrt(-k.k) * x)) / -k.k;
}

double rho_prime(Kappa k, double x) { return gen_sin(k, x); }

double side_from_hinge(Kappa k, const ModelHinge& h) {
  h.validate(k);
  const double a = h.l1, b = h.l2;
  const double s2 = sq(std::sin(0.5 * h.theta));  // hav(theta)
  // Below this scale the curvature is invisible at double precision.
  if (k.k == 0 || std::abs(k.k) * sq(a + b) < 1e-14)
    return std::sqrt(sq(a - b) + 4.0 * a * b * s2);
  const double s = std::sqrt(std::abs(k.k));
  if (k.k > 0) {
    // hav(c) = hav(a-b) + sin(a) sin(b) hav(theta), all sides scaled by s.
    const double hc = hav(s * (a - b)) + std::sin(s * a) * std::sin(s * b) * s2;
    return 2.0 * std::asin(std::min(1.0, std::sqrt(clamp_nonneg(hc, kEps, "side_from_hinge")))) / s;
  }
  // sinh^2(c/2) = sinh^2((a-b)/2) + sinh(a) sinh(b) sin^2(theta/2).
  const double hc = shav(s * (a - b)) + std::sinh(s * a) * std::sinh(s * b) * s2;
  return 2.0 * std::asinh(std::sqrt(clamp_nonneg(hc, kEps, "side_from_hinge"))) / s;
}

double angle_from_sides(Kappa k, double a, double b, double c) {
  if (a <= 0 || b <= 0) throw std::domain_error("angle_from_sides: sides must be positive");
  if (c < 0) throw std::domain_error("angle_from_sides: negative opposite side");
  const double scale = std::max({a, b, c, 1e-300});
  // half-angle products: the differences (c - |a-b|) and (a + b - c) enter
  // linearly, which keeps the inversion accurate at degenerate hinges
  const double m1 = c - (a - b), m2 = c + (a - b);  // c -/+ (a-b)
  const double p1 = (a + b) - c, p2 = (a + b) + c;
  const double tol = kEps * scale;
  if (k.k == 0 || std::abs(k.k) * sq(a + b) < 1e-14) {
    const double num = clamp_nonneg(m1, tol, "angle_from_sides: c < |a-b|") *
                       clamp_nonneg(m2, tol, "angle_from_sides: bad sides");
    const double den = clamp_nonneg(p1, tol, "angle_from_sides: c > a+b") * p2;
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
  }
  const double s = std::sqrt(std::abs(k.k));
  if (k.k > 0) {
    const double bound = M_PI / s;
    if (a > bound + kEps || b > bound + kEps || c > bound + kEps)
      throw std::domain_error("angle_from_sides: side exceeds pi/sqrt(k)");
    // hav(c)-hav(a-b) = sin(s*m1/2) sin(s*m2/2); hav(a+b)-hav(c) = sin(s*p1/2) sin(s*p2/2)
    const double num = std::sin(0.5 * s * clamp_nonneg(m1, tol, "angle_from_sides: c < |a-b|")) *
                       std::sin(0.5 * s * m2);
    const double den = std::sin(0.5 * s * clamp_nonneg(p1, tol, "angle_from_sides: c > a+b")) *
                       std::sin(0.5 * s * p2);
    return 2.0 * std::atan2(std::sqrt(clamp_nonneg(num, kEps, "angle_from_sides: no triangle")),
                            std::sqrt(clamp_nonneg(den, kEps, "angle_from_sides: no triangle")));
  }
  const double num = std::sinh(0.5 * s * clamp_nonneg(m1, tol, "angle_from_sides: c < |a-b|")) *
                     std::sinh(0.5 * s * m2);
  const double den = std::sinh(0.5 * s * clamp_nonneg(p1, tol, "angle_from_sides: c > a+b")) *
                     std::sinh(0.5 * s * p2);
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

double comparison_barrier(Kappa k, double f0, double df0, double t) {
  if (t < 0) throw std::domain_error("comparison_barrier: t < 0");
  return f0 * gen_cos(k, t) + df0 * gen_sin(k, t) + rho(k, t);
}

double model_distance(Kappa k, const ModelPoint& p, const ModelPoint& q) {
  double dbeta = std::abs(p.beta - q.beta);
  if (dbeta > M_PI) dbeta = M_PI;  // polar chart angle saturates at pi
  return side_from_hinge(k, ModelHinge{p.r, q.r, dbeta});
}

}  // namespace curvlab
