#pragma once

#include <cmath>
#include <stdexcept>

// Trigonometry of the constant-curvature model surfaces M2_k (plane, sphere,
// hyperbolic plane) plus the comparison function rho_k and the solution of the
// comparison ODE f'' = 1 - k f.  Everything here is closed form and is the
// numerical foundation the checkers compare against.
//
// Numerical policy: spherical/hyperbolic laws are evaluated in half-angle
// (versine) form, which stays accurate near theta in {0, pi} and for tiny
// sides; cosine-like arguments at the k>0 diameter bound pi/sqrt(k) are
// clamped by at most 1e-12.

namespace curvlab {

inline constexpr double kEps = 1e-12;

// Curvature of a model space. Any finite real; the suite mostly exercises
// {-1, 0, 1} plus rescalings.
struct Kappa {
  double k = 0.0;

  Kappa() = default;
  explicit Kappa(double value) : k(value) {
    if (!std::isfinite(value)) throw std::invalid_argument("Kappa: non-finite curvature");
  }

  // pi/sqrt(k) for k > 0, else +infinity.
  double diameter_bound() const {
    return k > 0 ? M_PI / std::sqrt(k) : std::numeric_limits<double>::infinity();
  }
};

// A hinge in the model space: two sides of lengths l1, l2 meeting at angle
// theta in [0, pi].
struct ModelHinge {
  double l1 = 0.0;
  double l2 = 0.0;
  double theta = 0.0;

  void validate(Kappa k) const {
    if (l1 < 0 || l2 < 0) throw std::invalid_argument("ModelHinge: negative side");
    if (theta < -kEps || theta > M_PI + kEps) throw std::invalid_argument("ModelHinge: theta outside [0, pi]");
    if (k.k > 0 && l1 + l2 > 2 * M_PI / std::sqrt(k.k) + kEps)
      throw std::invalid_argument("ModelHinge: l1 + l2 exceeds 2*pi/sqrt(k)");
  }
};

// A point of M2_k in the polar chart around a fixed base point: radius r from
// the base and chart angle beta. Used by developments; the chart choice is
// internal and never leaves the library.
struct ModelPoint {
  double r = 0.0;
  double beta = 0.0;
};

// Generalized cosine: cos(sqrt(k) t) for k > 0, cosh(sqrt(-k) t) for k < 0,
// 1 for k = 0.  Continuous in k (series near k = 0).
double gen_cos(Kappa k, double t);

// Generalized sine: sin(sqrt(k) t)/sqrt(k), sinh(sqrt(-k) t)/sqrt(-k), or t.
double gen_sin(Kappa k, double t);

// rho_k(x): x^2/2 for k = 0, (1 - cos(sqrt(k) x))/k for k > 0,
// (1 - cosh(sqrt(-k) x))/k for k < 0.  Non-negative, continuous in k.
// Throws std::domain_error for x < 0 or x beyond pi/sqrt(k) when k > 0.
double rho(Kappa k, double x);

// Derivative of rho_k: gen_sin(k, x).
double rho_prime(Kappa k, double x);

// Third side of the model triangle with sides l1, l2 and included angle
// theta (law of cosines in M2_k, versine form).
double side_from_hinge(Kappa k, const ModelHinge& h);

// The angle theta in [0, pi] with side_from_hinge(k, {a, b, theta}) == c.
// Throws std::domain_error when no model triangle with these sides exists.
double angle_from_sides(Kappa k, double a, double b, double c);

// Value at t >= 0 of the solution of f'' = 1 - k f, f(0) = f0, f'(0) = df0:
//   f(t) = f0 * gen_cos(k, t) + df0 * gen_sin(k, t) + rho(k, t).
// The caller fixes the sign of df0; for a hinge with angle theta at the
// moving end the first variation gives df0 = -rho_prime(k, l) * cos(theta),
// i.e. +rho_prime(k, l) * cos(pi - theta). That convention is used everywhere
// in the checkers.
double comparison_barrier(Kappa k, double f0, double df0, double t);

// Distance between two points of M2_k in the shared polar chart.
double model_distance(Kappa k, const ModelPoint& p, const ModelPoint& q);

}  // namespace curvlab
