#include <doctest.h>

#include <cmath>

#include "curvlab/mesh_geodesic.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/trimesh.hpp"

using namespace curvlab;

namespace {

MeshPointLoc grid_point(const TriMesh& m, const GeodesicEngine& eng, double x, double y) {
  // locate (x, y) on a flat z=0 mesh by scanning faces
  for (int f = 0; f < m.n_faces(); ++f) {
    Eigen::Vector2d p(x, y);
    // flat grids: layout is congruent to the xy embedding, use barycentric in 3D
    const Eigen::Vector3d a = m.V[m.F[f][0]], b = m.V[m.F[f][1]], c = m.V[m.F[f][2]];
    const Eigen::Vector2d A(a.x(), a.y()), B(b.x(), b.y()), C(c.x(), c.y());
    const double det = (B - A).x() * (C - A).y() - (C - A).x() * (B - A).y();
    const double w1 = ((p - A).x() * (C - A).y() - (C - A).x() * (p - A).y()) / det;
    const double w2 = ((B - A).x() * (p - A).y() - (p - A).x() * (B - A).y()) / det;
    const double w0 = 1 - w1 - w2;
    if (w0 >= -1e-12 && w1 >= -1e-12 && w2 >= -1e-12) {
      MeshPointLoc loc;
      loc.face = f;
      loc.bary = Eigen::Vector3d(std::max(w0, 0.0), std::max(w1, 0.0), std::max(w2, 0.0));
      loc.bary /= loc.bary.sum();
      (void)eng;
      return loc;
    }
  }
  throw std::runtime_error("grid_point: not found");
}

}  // namespace

TEST_CASE("flat grid distances are Euclidean after straightening") {
  TriMesh m = make_square_grid(17, 1.0);
  GeodesicEngine eng(m);
  auto rng = substream(21, "geo_flat");
  std::uniform_real_distribution<double> uni(0.02, 0.98);
  double worst = 0;
  for (int i = 0; i < 60; ++i) {
    const double x0 = uni(rng), y0 = uni(rng), x1 = uni(rng), y1 = uni(rng);
    const auto a = grid_point(m, eng, x0, y0);
    const auto b = grid_point(m, eng, x1, y1);
    const double d = eng.distance(a, b);
    const double ref = std::hypot(x1 - x0, y1 - y0);
    worst = std::max(worst, std::abs(d - ref));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("flat grid diagonal (0,0)-(1,1)") {
  TriMesh m = make_square_grid(9, 1.0);
  GeodesicEngine eng(m);
  MeshPointLoc a, b;
  a.face = 0;
  a.bary = Eigen::Vector3d(1, 0, 0);  // a corner vertex of face 0 = (0,0)
  // find the face containing (1,1)
  b = grid_point(m, eng, 1.0, 1.0);
  CHECK(eng.distance(a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("sphere distances converge to great-circle arcs") {
  auto rng = substream(5, "geo_sphere");
  double prev_worst = -1;
  for (int lvl : {3, 4}) {
    TriMesh m = make_icosphere(lvl, 1.0);
    GeodesicEngine eng(m);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    auto rng2 = substream(5, "geo_sphere_pairs");  // same pairs at both levels
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
      // random faces, central points
      const int fa = static_cast<int>(uf(rng2) * m.n_faces()) % m.n_faces();
      const int fb = static_cast<int>(uf(rng2) * m.n_faces()) % m.n_faces();
      MeshPointLoc a, b;
      a.face = fa;
      b.face = fb;
      const Eigen::Vector3d pa = m.bary_point(fa, a.bary).normalized();
      const Eigen::Vector3d pb = m.bary_point(fb, b.bary).normalized();
      const double ref = std::acos(std::clamp(pa.dot(pb), -1.0, 1.0));
      if (ref < 0.3) continue;
      const double d = eng.distance(a, b);
      worst = std::max(worst, std::abs(d - ref));
    }
    if (prev_worst > 0) CHECK(prev_worst / worst >= 1.5);  // h-halving improves >= 1.5x
    prev_worst = worst;
    CHECK(worst < 0.02);
  }
  (void)rng;
}

TEST_CASE("cube: geodesic wrapping a face pair matches the unfolding oracle") {
  // points on adjacent faces of the unit cube: unfold the two faces into a
  // plane; when the straight segment crosses the shared edge it is the
  // geodesic
  TriMesh m = make_cube(9, 1.0);
  GeodesicEngine eng(m);
  // top face point (0.3, 0.4, 1), front face point (0.6, 0, 0.55)
  auto locate = [&](const Eigen::Vector3d& p) {
    for (int f = 0; f < m.n_faces(); ++f) {
      const Eigen::Vector3d A = m.V[m.F[f][0]], B = m.V[m.F[f][1]], C = m.V[m.F[f][2]];
      const double d11 = (B - A).squaredNorm(), d12 = (B - A).dot(C - A),
                   d22 = (C - A).squaredNorm();
      const Eigen::Vector3d d = p - A;
      const double r1 = d.dot(B - A), r2 = d.dot(C - A);
      const double det = d11 * d22 - d12 * d12;
      const double w1 = (d22 * r1 - d12 * r2) / det;
      const double w2 = (d11 * r2 - d12 * r1) / det;
      const double w0 = 1 - w1 - w2;
      // containment in the plane of the face
      if ((p - (A + w1 * (B - A) + w2 * (C - A))).norm() > 1e-9) continue;
      if (w0 < -1e-12 || w1 < -1e-12 || w2 < -1e-12) continue;
      MeshPointLoc loc;
      loc.face = f;
      loc.bary = Eigen::Vector3d(std::max(w0, 0.0), std::max(w1, 0.0), std::max(w2, 0.0));
      loc.bary /= loc.bary.sum();
      return loc;
    }
    throw std::runtime_error("locate: point not on the cube surface");
  };
  const MeshPointLoc a = locate({0.3, 0.4, 1.0});
  const MeshPointLoc b = locate({0.6, 0.0, 0.55});
  // unfold front face about the shared edge z=1,y=0 -> plane of the top face:
  // the front point (0.6, 0, 0.55) maps to (0.6, -(1 - 0.55), 1)
  const double ref = (Eigen::Vector2d(0.3, 0.4) - Eigen::Vector2d(0.6, -0.45)).norm();
  CHECK(eng.distance(a, b) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("symmetry is exact via canonical ordering at the Space level") {
  // engine-level paths may differ in round-off both ways; just check closeness
  TriMesh m = make_square_grid(9, 1.0);
  GeodesicEngine eng(m);
  auto a = grid_point(m, eng, 0.11, 0.22), b = grid_point(m, eng, 0.87, 0.66);
  CHECK(std::abs(eng.distance(a, b) - eng.distance(b, a)) < 1e-12);
}

TEST_CASE("graph distance is an upper bound refined by straightening") {
  TriMesh m = make_square_grid(13, 1.0);
  GeodesicEngine eng(m);
  auto a = grid_point(m, eng, 0.05, 0.08), b = grid_point(m, eng, 0.93, 0.77);
  const auto g = eng.graph_distances(a, {b});
  const double exact = eng.distance(a, b);
  CHECK(g[0] >= exact - 1e-12);
  CHECK(g[0] <= exact * 1.05);  // steiner=2 graph is within a few percent
}

TEST_CASE("multi-source distances: rim of a disk") {
  TriMesh m = make_disk(10, 48, 1.0);
  GeodesicEngine eng(m);
  std::vector<MeshPointLoc> sources;
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (!m.vboundary[v]) continue;
    MeshPointLoc loc;
    loc.face = m.vfaces[v][0];
    loc.bary = Eigen::Vector3d::Zero();
    loc.bary[m.corner_of(m.vfaces[v][0], v)] = 1.0;
    sources.push_back(loc);
  }
  const auto d = eng.multi_source_vertex_distances(sources);
  // center vertex (index 0 for make_disk) is at distance ~1 from the rim
  CHECK(d[0] == doctest::Approx(1.0).epsilon(5e-3));
  for (int v = 0; v < m.n_vertices(); ++v) {
    const double r = m.V[v].norm();
    CHECK(d[v] == doctest::Approx(1.0 - r).epsilon(1e-2).scale(1.0));
  }
}

TEST_CASE("shooting: straight line across a flat grid") {
  TriMesh m = make_square_grid(9, 1.0);
  GeodesicEngine eng(m);
  auto a = grid_point(m, eng, 0.21, 0.33);
  // chart angle of the +x direction in a's face frame: probe with a tiny
  // in-face target
  auto ax = grid_point(m, eng, 0.22, 0.33);
  // direction via the engine: shortest path within one face is a segment
  MeshTrack t0 = eng.shortest_path(a, ax);
  const double dir = track_start_direction(eng, t0);
  MeshTrack shot = shoot_on_mesh(m, eng, a, dir, 0.5);
  CHECK(shot.length == doctest::Approx(0.5).epsilon(1e-12));
  // endpoint should be (0.71, 0.33)
  const auto endp = waypoint_loc(m, shot.wps.back(), shot.seg_face.back());
  const Eigen::Vector3d p = m.bary_point(endp.face, endp.bary);
  CHECK(p.x() == doctest::Approx(0.71).epsilon(1e-9));
  CHECK(p.y() == doctest::Approx(0.33).epsilon(1e-9));
  // straightness: distance start-end equals length
  CHECK(eng.distance(a, endp) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("shooting stops at the boundary") {
  TriMesh m = make_square_grid(9, 1.0);
  GeodesicEngine eng(m);
  auto a = grid_point(m, eng, 0.52, 0.9);
  auto ay = grid_point(m, eng, 0.52, 0.95);
  const double dir = track_start_direction(eng, eng.shortest_path(a, ay));
  MeshTrack shot = shoot_on_mesh(m, eng, a, dir, 3.0);
  CHECK(shot.hit_boundary);
  CHECK(shot.length == doctest::Approx(0.1).epsilon(1e-9));
}
