#include <doctest.h>

#include <cmath>

#include "curvlab/rng.hpp"
#include "curvlab/sampled.hpp"

using namespace curvlab;

namespace {

SampledFunction sample(double t0, double t1, int m, double (*f)(double)) {
  SampledFunction s;
  s.t0 = t0;
  s.h = (t1 - t0) / m;
  for (int i = 0; i <= m; ++i) s.values.push_back(f(s.t(i)));
  return s;
}

}  // namespace

TEST_CASE("midpoint concavity: concave passes, convex fails") {
  auto up = sample(0, 1, 16, +[](double t) { return -t * t; });
  CHECK(midpoint_concavity(up, 1e-12).pass);

  SampledFunction sq;
  sq.t0 = 0;
  sq.h = 0.25;
  sq.values = {0.0, 0.0625, 0.25, 0.5625, 1.0};  // t^2 on [0,1]
  auto rep = midpoint_concavity(sq, 1e-12);
  CHECK(!rep.pass);
  // worst pair is (0, 1): f(1/2) - (f(0)+f(1))/2 = 0.25 - 0.5
  CHECK(rep.worst_margin == doctest::Approx(-0.25));
  CHECK(rep.witness_index == 0);
  CHECK(rep.witness_index2 == 4);
}

TEST_CASE("midpoint concavity margins are exactly affine-invariant") {
  auto rng = substream(3, "sampled_affine");
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    SampledFunction f;
    f.t0 = -0.3;
    f.h = 0.1;
    for (int i = 0; i <= 20; ++i) f.values.push_back(uni(rng));
    SampledFunction g = f;
    const double alpha = uni(rng), beta = uni(rng);
    for (int i = 0; i <= 20; ++i) g.values[i] += alpha * g.t(i) + beta;
    const auto rf = midpoint_concavity(f, 0.0);
    const auto rg = midpoint_concavity(g, 0.0);
    CHECK(std::abs(rf.worst_margin - rg.worst_margin) < 1e-12);
  }
}

TEST_CASE("ode margin equality cases") {
  // k=0, f = t^2/2: second difference exactly 1, margin 0
  auto flat = sample(0, 2, 32, +[](double t) { return 0.5 * t * t; });
  auto rep = ode_inequality_margin(flat, Kappa(0), 1e-10);
  CHECK(rep.pass);
  CHECK(std::abs(rep.worst_margin) < 1e-10);

  // k=1, f = 1 - cos t: second difference ~ cos t = 1 - f, margin O(h^2)
  auto sph = sample(0.1, 1.6, 64, +[](double t) { return 1 - std::cos(t); });
  auto r2 = ode_inequality_margin(sph, Kappa(1));
  CHECK(r2.pass);
  CHECK(std::abs(r2.worst_margin) < 1e-3);

  // k=0, f = cosh t - 1 grows too fast: fails
  auto hyp = sample(0.5, 2.5, 64, +[](double t) { return std::cosh(t) - 1; });
  auto r3 = ode_inequality_margin(hyp, Kappa(0), 1e-6);
  CHECK(!r3.pass);
  CHECK(r3.worst_margin < -0.1);
}

TEST_CASE("ode margin with k=0 kills affine parts") {
  auto rng = substream(9, "sampled_ode_affine");
  std::uniform_real_distribution<double> uni(-1, 1);
  SampledFunction f;
  f.t0 = 0;
  f.h = 0.05;
  for (int i = 0; i <= 40; ++i) f.values.push_back(uni(rng));
  SampledFunction g = f;
  for (int i = 0; i <= 40; ++i) g.values[i] += 0.7 * g.t(i) - 0.2;
  const auto rf = ode_inequality_margin(f, Kappa(0), 0.0);
  const auto rg = ode_inequality_margin(g, Kappa(0), 0.0);
  CHECK(std::abs(rf.worst_margin - rg.worst_margin) < 1e-10);
}

TEST_CASE("default tolerance is 2 * Lipschitz * h") {
  SampledFunction f;
  f.t0 = 0;
  f.h = 0.5;
  f.values = {0.0, 1.0, 1.5, 1.75};
  CHECK(default_margin_tol(f) == doctest::Approx(2.0 * 2.0 * 0.5));
}

TEST_CASE("validation") {
  SampledFunction f;
  f.t0 = 0;
  f.h = 0.0;
  f.values = {1, 2, 3};
  CHECK_THROWS_AS(midpoint_concavity(f, 0.1), std::invalid_argument);
  SampledFunction g;
  g.h = 1;
  g.values = {1, 2};
  CHECK_THROWS_AS(ode_inequality_margin(g, Kappa(0), 0.1), std::invalid_argument);
}
