#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "curvlab/cone.hpp"
#include "curvlab/mesh_geodesic.hpp"
#include "curvlab/trimesh.hpp"

// SpaceHandle facade: one immutable object per concrete singular space, with
// intrinsic distance / geodesic / shooting queries dispatched to the closed
// form (cones) or the mesh engine. Queries are read-only and parallel-safe;
// construction is single-threaded.

namespace curvlab {

enum class BackendKind { EuclideanCone, MetricConeOverCircle, TriMesh, RevolutionSurface };

using SpacePoint = std::variant<ConePoint, MeshPointLoc>;

enum class PathKind { minimizing_geodesic, quasi_geodesic_candidate, levelset_curve, generic };

class Space;

// Unit-speed polyline curve: breakpoints plus cumulative arc-length params.
// Cone paths carry the signed angular step per segment so interpolation can
// reproduce the unfolded straight line exactly; mesh paths carry the face of
// every segment.
struct Path {
  std::shared_ptr<const class SpaceImpl> impl;  // keeps the space alive
  PathKind kind = PathKind::generic;
  std::vector<SpacePoint> pts;
  std::vector<double> params;
  std::vector<double> cone_dphi;
  std::vector<int> seg_face;
  bool hit_boundary = false;
  bool hit_vertex = false;

  double length() const { return params.empty() ? 0.0 : params.back(); }
  const SpacePoint& start() const { return pts.front(); }
  const SpacePoint& end() const { return pts.back(); }
  SpacePoint at(double t) const;  // clamped arc-length interpolation
  Path reversed() const;
  Path sub(double t0, double t1) const;  // restriction, reparameterized from 0
};

class Space {
 public:
  // closed-form cone backends
  static Space euclidean_cone(double total_angle, double extent = 2.0);
  static Space metric_cone_over_circle(double circumference, double extent = 2.0);
  // mesh-carried backends; declared_curv is metadata only
  static Space tri_mesh(TriMesh mesh, std::optional<double> declared_curv,
                        std::string name = "mesh", GeodesicOptions opt = {});
  static Space revolution_surface(TriMesh mesh, std::optional<double> declared_curv,
                                  std::string name = "revolution", GeodesicOptions opt = {});

  BackendKind backend() const;
  const std::string& name() const;
  std::optional<double> declared_curvature_bound() const;

  bool is_mesh_backed() const;
  const TriMesh& mesh() const;                 // throws unless mesh-backed
  const GeodesicEngine& engine() const;        // throws unless mesh-backed
  const ConeGeometry& cone() const;            // throws unless cone-backed
  double extent() const;                       // sampling radius / line cap

  // intrinsic distance; exactly symmetric (arguments are canonically ordered)
  double distance(const SpacePoint& p, const SpacePoint& q) const;
  // 0 for closed-form backends, C*h for meshes
  double distance_error_estimate() const;

  Path geodesic(const SpacePoint& p, const SpacePoint& q) const;

  // chart angle at p of the minimizing geodesic toward q; mesh charts are the
  // layout frame of p's face, cone charts put 0 on the outward radial
  double direction_to(const SpacePoint& p, const SpacePoint& q) const;

  // straight (locally geodesic) walk from p in chart direction dir
  Path shoot(const SpacePoint& p, double dir, double length) const;

  // shoot in both directions +-dir from p: the maximal extension of a line
  // through p; returns a single path from the (-) end to the (+) end
  Path line_through(const SpacePoint& p, double dir, double half_length) const;

  SpacePoint random_point(std::mt19937_64& rng) const;

  // rescaled copy (all distances multiplied by lambda; declared curvature
  // bound divided by lambda^2)
  Space scaled(double lambda) const;

  Eigen::Vector3d position3(const SpacePoint& p) const;  // embedding, meshes only

  std::shared_ptr<const SpaceImpl> shared_impl() const { return impl_; }

 protected:
  std::shared_ptr<const SpaceImpl> impl_;
};

// total angle of the space of directions at p (2*pi at smooth points)
double point_total_angle(const Space& s, const SpacePoint& p);

bool same_point(const Space& s, const SpacePoint& a, const SpacePoint& b, double tol);

}  // namespace curvlab
