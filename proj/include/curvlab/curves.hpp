#pragma once

#include "curvlab/sampled.hpp"
#include "curvlab/space.hpp"

namespace curvlab {

// Comparison angle between two paths at their common start point: the
// extrapolated limit of the Euclidean angle of the triangle (a(s), start,
// b(s)) as s -> 0, via Richardson extrapolation on s in {h, h/2, h/4}.
// Defaults h to a quarter of the shorter path. Throws when the paths do not
// share a start or are too short to probe.
double upper_angle(const Space& s, const Path& a, const Path& b, double h = -1.0);

// Join two unit-speed paths end-to-start; the result is a quasi-geodesic
// candidate whose joint behaviour is judged by the checkers, not here.
Path concatenate(const Space& s, const Path& a, const Path& b, double tol = -1.0);

// f(t_i) = rho_k(d(p, sigma(t_i))) on n+1 uniform samples of sigma
SampledFunction sample_rho_distance(const Space& s, const SpacePoint& p, const Path& sigma,
                                    Kappa k, int n);

// eta0(t_i) = d(p, sigma(t_i))^2 / 2 - t_i^2 / 2
SampledFunction sample_eta0(const Space& s, const SpacePoint& p, const Path& sigma, int n);

// distance from p to the nearest sampled point of the path, refined locally;
// returns (distance, parameter of the argmin)
std::pair<double, double> distance_to_path(const Space& s, const SpacePoint& p, const Path& sigma,
                                           int coarse = 96);

}  // namespace curvlab
