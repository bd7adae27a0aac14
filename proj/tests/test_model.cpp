#include <doctest.h>

#include <cmath>

#include "curvlab/model.hpp"
#include "curvlab/rng.hpp"

using namespace curvlab;

TEST_CASE("rho case formula") {
  CHECK(rho(Kappa(0), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rho(Kappa(1), M_PI / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rho(Kappa(-1), 1.0) == doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-14));
  CHECK(rho(Kappa(0), 0.0) == 0.0);
  CHECK_THROWS_AS(rho(Kappa(1), M_PI + 1e-6), std::domain_error);
  CHECK_THROWS_AS(rho(Kappa(0), -0.5), std::domain_error);
  // boundary value pi/sqrt(k) is accepted
  CHECK(rho(Kappa(4), M_PI / 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rho is continuous in k at 0") {
  // |d rho/dk| = x^4/24 + O(k), so the gap at k = +-eps is about eps*x^4/24
  for (double x : {0.1, 1.0, 2.5}) {
    const double flat = rho(Kappa(0), x);
    const double slope = std::pow(x, 4) / 24.0;
    CHECK(std::abs(rho(Kappa(1e-9), x) - flat) < 2e-9 * std::max(1.0, slope));
    CHECK(std::abs(rho(Kappa(-1e-9), x) - flat) < 2e-9 * std::max(1.0, slope));
    // across the series/closed-form switch
    CHECK(std::abs(rho(Kappa(1e-6), x) - flat) < 2e-6 * std::max(1.0, slope));
  }
}

TEST_CASE("side_from_hinge exact values") {
  CHECK(side_from_hinge(Kappa(0), {3, 4, M_PI / 2}) == doctest::Approx(5.0).epsilon(1e-14));
  for (double th : {0.3, 1.0, 2.0, 3.0})
    CHECK(side_from_hinge(Kappa(1), {M_PI / 2, M_PI / 2, th}) == doctest::Approx(th).epsilon(1e-12));
  CHECK(side_from_hinge(Kappa(-1), {1, 1, M_PI}) == doctest::Approx(2.0).epsilon(1e-12));
  // degenerate hinges
  CHECK(side_from_hinge(Kappa(0), {1, 1, 0}) == doctest::Approx(0.0));
  CHECK(side_from_hinge(Kappa(1), {1, 1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("angle_from_sides exact values") {
  CHECK(angle_from_sides(Kappa(0), 1, 1, 1) == doctest::Approx(M_PI / 3).epsilon(1e-14));
  CHECK(angle_from_sides(Kappa(0), 3, 4, 5) == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK(angle_from_sides(Kappa(1), M_PI / 2, M_PI / 2, M_PI / 2) == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK_THROWS_AS(angle_from_sides(Kappa(0), 1, 1, 3), std::domain_error);
  CHECK_THROWS_AS(angle_from_sides(Kappa(0), 1, 1, -0.1), std::domain_error);
}

TEST_CASE("hinge round trip to 1e-12, 1000 hinges per k") {
  // theta values within 1e-3 of {0, pi} are excluded: there d(side)/d(theta)
  // vanishes and the angle is not recoverable from a double-valued side
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    auto rng = substream(12345, "model_round_trip");
    std::uniform_real_distribution<double> len(0.05, kv > 0 ? 0.995 * M_PI / 2 : 2.5);
    std::uniform_real_distribution<double> ang(1e-3, M_PI - 1e-3);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      ModelHinge h{len(rng), len(rng), ang(rng)};
      const double c = side_from_hinge(k, h);
      const double back = angle_from_sides(k, h.l1, h.l2, c);
      worst = std::max(worst, std::abs(back - h.theta));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("side_from_hinge strictly increasing in theta") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    const double l1 = 0.7, l2 = 1.2;
    double prev = side_from_hinge(k, {l1, l2, 0.01});
    for (double th = 0.11; th < M_PI; th += 0.1) {
      const double cur = side_from_hinge(k, {l1, l2, th});
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("k -> 0 limit of side_from_hinge") {
  auto rng = substream(7, "model_klimit");
  std::uniform_real_distribution<double> len(0.01, 2.0);
  std::uniform_real_distribution<double> ang(0.0, M_PI);
  for (int i = 0; i < 200; ++i) {
    ModelHinge h{len(rng), len(rng), ang(rng)};
    const double flat = side_from_hinge(Kappa(0), h);
    CHECK(std::abs(side_from_hinge(Kappa(1e-6), h) - flat) < 1e-4);
    CHECK(std::abs(side_from_hinge(Kappa(-1e-6), h) - flat) < 1e-4);
  }
}

TEST_CASE("comparison_barrier closed forms") {
  const double l = 1.7, th = 0.9;
  for (double t : {0.0, 0.25, 1.0, 2.0}) {
    CHECK(comparison_barrier(Kappa(0), l * l / 2, l * std::cos(th), t) ==
          doctest::Approx(l * l / 2 + t * l * std::cos(th) + t * t / 2).epsilon(1e-14));
    CHECK(comparison_barrier(Kappa(1), 0, 0, t) == doctest::Approx(1 - std::cos(t)).epsilon(1e-13));
  }
  CHECK(comparison_barrier(Kappa(0), 0, 0, 3) == doctest::Approx(4.5).epsilon(1e-14));
}

TEST_CASE("comparison_barrier satisfies f'' = 1 - k f") {
  // at step 1e-4 the cancellation noise of a central second difference is
  // about 4*ulp(f)/h^2, so 1e-8 is only meaningful for moderate |f|
  const double h = 1e-4;
  for (double kv : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    Kappa k(kv);
    for (double f0 : {0.0, 0.05}) {
      for (double df0 : {-0.05, 0.0, 0.05}) {
        for (double t = h; t < 0.31; t += 0.03) {
          const double fm = comparison_barrier(k, f0, df0, t - h);
          const double f = comparison_barrier(k, f0, df0, t);
          const double fp = comparison_barrier(k, f0, df0, t + h);
          const double second = (fp - 2 * f + fm) / (h * h);
          CHECK(std::abs(second - (1 - kv * f)) < 1e-8);
        }
      }
    }
  }
  // larger magnitudes, tolerance scaled to the cancellation limit
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    for (double t = h; t < 1.5; t += 0.13) {
      const double f = comparison_barrier(k, 0.4, 1.3, t);
      const double fm = comparison_barrier(k, 0.4, 1.3, t - h);
      const double fp = comparison_barrier(k, 0.4, 1.3, t + h);
      const double second = (fp - 2 * f + fm) / (h * h);
      CHECK(std::abs(second - (1 - kv * f)) < 1e-8 + 8 * 2.3e-16 * std::abs(f) / (h * h));
    }
  }
}

TEST_CASE("model_distance through polar chart") {
  // right triangle in the plane: base angle pi/2 between radii 3 and 4
  ModelPoint p{3.0, 0.0}, q{4.0, M_PI / 2};
  CHECK(model_distance(Kappa(0), p, q) == doctest::Approx(5.0).epsilon(1e-14));
}
