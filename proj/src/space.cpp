#include "curvlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

constexpr double kApexEps = 1e-14;

}  // namespace

class SpaceImpl {
 public:
  BackendKind kind;
  std::string name;
  std::optional<double> declared_curv;
  double extent = 2.0;

  // cone
  std::optional<ConeGeometry> cone;

  // mesh
  std::unique_ptr<TriMesh> mesh;
  std::unique_ptr<GeodesicEngine> engine;
  std::vector<double> area_cum;  // cumulative face areas for sampling

  double face_area(int f) const {
    const auto L = engine->layout(f);
    return 0.5 * std::abs((L[1] - L[0]).x() * (L[2] - L[0]).y() -
                          (L[2] - L[0]).x() * (L[1] - L[0]).y());
  }
};

// --- factories -------------------------------------------------------------

static Space wrap(std::shared_ptr<SpaceImpl> impl);

Space Space::euclidean_cone(double total_angle, double extent) {
  auto impl = std::make_shared<SpaceImpl>();
  impl->kind = BackendKind::EuclideanCone;
  impl->name = "cone";
  impl->cone.emplace(total_angle);
  impl->extent = extent;
  if (total_angle <= 2 * M_PI + 1e-12) impl->declared_curv = 0.0;
  return wrap(std::move(impl));
}

Space Space::metric_cone_over_circle(double circumference, double extent) {
  auto impl = std::make_shared<SpaceImpl>();
  impl->kind = BackendKind::MetricConeOverCircle;
  impl->name = "metric_cone";
  impl->cone.emplace(circumference);
  impl->extent = extent;
  if (circumference <= 2 * M_PI + 1e-12) impl->declared_curv = 0.0;
  return wrap(std::move(impl));
}

Space Space::tri_mesh(TriMesh mesh, std::optional<double> declared_curv, std::string name,
                      GeodesicOptions opt) {
  auto impl = std::make_shared<SpaceImpl>();
  impl->kind = BackendKind::TriMesh;
  impl->name = std::move(name);
  impl->declared_curv = declared_curv;
  impl->mesh = std::make_unique<TriMesh>(std::move(mesh));
  impl->engine = std::make_unique<GeodesicEngine>(*impl->mesh, opt);
  double total = 0;
  for (int f = 0; f < impl->mesh->n_faces(); ++f) {
    total += impl->face_area(f);
    impl->area_cum.push_back(total);
  }
  return wrap(std::move(impl));
}

Space Space::revolution_surface(TriMesh mesh, std::optional<double> declared_curv, std::string name,
                                GeodesicOptions opt) {
  Space s = tri_mesh(std::move(mesh), declared_curv, std::move(name), opt);
  const_cast<SpaceImpl*>(s.shared_impl().get())->kind = BackendKind::RevolutionSurface;
  return s;
}

static Space wrap(std::shared_ptr<SpaceImpl> impl) {
  struct Access : Space {
    void set(std::shared_ptr<const SpaceImpl> i) { impl_ = std::move(i); }
  };
  Access a;
  a.set(std::move(impl));
  return a;
}

// --- accessors -------------------------------------------------------------

BackendKind Space::backend() const { return impl_->kind; }
const std::string& Space::name() const { return impl_->name; }
std::optional<double> Space::declared_curvature_bound() const { return impl_->declared_curv; }
bool Space::is_mesh_backed() const { return impl_->mesh != nullptr; }

const TriMesh& Space::mesh() const {
  if (!impl_->mesh) throw std::logic_error("Space::mesh: not a mesh backend");
  return *impl_->mesh;
}
const GeodesicEngine& Space::engine() const {
  if (!impl_->engine) throw std::logic_error("Space::engine: not a mesh backend");
  return *impl_->engine;
}
const ConeGeometry& Space::cone() const {
  if (!impl_->cone) throw std::logic_error("Space::cone: not a cone backend");
  return *impl_->cone;
}
double Space::extent() const {
  if (impl_->cone) return impl_->extent;
  double d = 0;
  for (const auto& p : impl_->mesh->V) d = std::max(d, p.norm());
  return 2 * d + impl_->mesh->max_edge;
}

double Space::distance_error_estimate() const {
  return impl_->engine ? impl_->engine->err_estimate() : 0.0;
}

Eigen::Vector3d Space::position3(const SpacePoint& p) const {
  if (const auto* mp = std::get_if<MeshPointLoc>(&p)) return mesh().bary_point(mp->face, mp->bary);
  const auto& cp = std::get<ConePoint>(p);
  // embed the cone with unit slant parameter
  const double theta = impl_->cone->total_angle();
  const double ratio = std::min(theta / (2 * M_PI), 1.0);
  const double rise = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  const double a = cp.phi / std::max(theta, 1e-300) * 2 * M_PI;
  return {cp.r * ratio * std::cos(a), cp.r * ratio * std::sin(a), cp.r * rise};
}

// canonical ordering key for exact symmetry of distance()
static bool point_less(const SpacePoint& a, const SpacePoint& b) {
  if (const auto* ca = std::get_if<ConePoint>(&a)) {
    const auto& cb = std::get<ConePoint>(b);
    if (ca->r != cb.r) return ca->r < cb.r;
    return ca->phi < cb.phi;
  }
  const auto& ma = std::get<MeshPointLoc>(a);
  const auto& mb = std::get<MeshPointLoc>(b);
  if (ma.face != mb.face) return ma.face < mb.face;
  for (int i = 0; i < 3; ++i)
    if (ma.bary[i] != mb.bary[i]) return ma.bary[i] < mb.bary[i];
  return false;
}

double Space::distance(const SpacePoint& p, const SpacePoint& q) const {
  if (point_less(q, p)) return distance(q, p);
  if (impl_->cone) return impl_->cone->distance(std::get<ConePoint>(p), std::get<ConePoint>(q));
  return impl_->engine->distance(std::get<MeshPointLoc>(p), std::get<MeshPointLoc>(q));
}

// --- paths ------------------------------------------------------------------

static Path cone_path_from(const Space& s, const std::vector<ConePoint>& pts,
                           const std::vector<double>& dphi, PathKind kind) {
  Path p;
  p.impl = s.shared_impl();
  p.kind = kind;
  const ConeGeometry& g = s.cone();
  p.params.push_back(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) p.pts.emplace_back(pts[i]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    p.params.push_back(p.params.back() + g.distance(pts[i], pts[i + 1]));
    p.cone_dphi.push_back(dphi[i]);
  }
  return p;
}

static Path mesh_path_from(const Space& s, const MeshTrack& t, PathKind kind) {
  Path p;
  p.impl = s.shared_impl();
  p.kind = kind;
  const TriMesh& m = s.mesh();
  for (std::size_t i = 0; i < t.wps.size(); ++i) {
    const int f = i < t.seg_face.size() ? t.seg_face[i] : t.seg_face.back();
    p.pts.emplace_back(waypoint_loc(m, t.wps[i], f));
  }
  p.params = t.cum;
  p.seg_face = t.seg_face;
  p.hit_boundary = t.hit_boundary;
  p.hit_vertex = t.hit_vertex;
  return p;
}

Path Space::geodesic(const SpacePoint& p, const SpacePoint& q) const {
  if (impl_->cone) {
    const ConeGeometry& g = *impl_->cone;
    const auto& a = std::get<ConePoint>(p);
    const auto& b = std::get<ConePoint>(q);
    if (g.through_apex(a, b)) {
      std::vector<ConePoint> pts;
      std::vector<double> dphi;
      if (a.r > kApexEps) {
        pts.push_back(a);
        pts.push_back(ConePoint{0.0, 0.0});
        dphi.push_back(0.0);
      } else {
        pts.push_back(ConePoint{0.0, 0.0});
      }
      if (b.r > kApexEps) {
        pts.push_back(b);
        dphi.push_back(0.0);
      }
      if (pts.size() < 2) {  // both at apex
        pts = {a, b};
        dphi = {0.0};
      }
      return cone_path_from(*this, pts, dphi, PathKind::minimizing_geodesic);
    }
    const double sd = g.signed_arc(a.phi, b.phi);
    return cone_path_from(*this, {a, b}, {sd}, PathKind::minimizing_geodesic);
  }
  MeshTrack t = impl_->engine->shortest_path(std::get<MeshPointLoc>(p), std::get<MeshPointLoc>(q));
  return mesh_path_from(*this, t, PathKind::minimizing_geodesic);
}

double Space::direction_to(const SpacePoint& p, const SpacePoint& q) const {
  if (impl_->cone) return impl_->cone->direction_to(std::get<ConePoint>(p), std::get<ConePoint>(q));
  // chart = layout frame of the first segment's face; for a face-interior p
  // this is p's own face
  MeshTrack t = impl_->engine->shortest_path(std::get<MeshPointLoc>(p), std::get<MeshPointLoc>(q));
  return track_start_direction(*impl_->engine, t);
}

Path Space::shoot(const SpacePoint& p, double dir, double length) const {
  if (impl_->cone) {
    auto shot = impl_->cone->shoot(std::get<ConePoint>(p), dir, length);
    Path out = cone_path_from(*this, shot.pts, shot.seg_dphi, PathKind::generic);
    out.hit_vertex = shot.hit_apex;
    return out;
  }
  MeshTrack t = shoot_on_mesh(*impl_->mesh, *impl_->engine, std::get<MeshPointLoc>(p), dir, length);
  return mesh_path_from(*this, t, PathKind::generic);
}

Path Space::line_through(const SpacePoint& p, double dir, double half_length) const {
  Path fwd = shoot(p, dir, half_length);
  double back_dir;
  if (impl_->cone) {
    back_dir = dir + M_PI;
    const auto& cp = std::get<ConePoint>(p);
    if (cp.r <= kApexEps) back_dir = impl_->cone->wrap(dir + impl_->cone->total_angle() / 2);
  } else {
    back_dir = dir + M_PI;
  }
  Path bwd = shoot(p, back_dir, half_length);
  // stitch: reverse bwd then append fwd
  Path out = bwd.reversed();
  const double off = out.length();
  for (std::size_t i = 1; i < fwd.pts.size(); ++i) {
    out.pts.push_back(fwd.pts[i]);
    out.params.push_back(off + fwd.params[i]);
    if (!fwd.cone_dphi.empty()) out.cone_dphi.push_back(fwd.cone_dphi[i - 1]);
    if (!fwd.seg_face.empty()) out.seg_face.push_back(fwd.seg_face[i - 1]);
  }
  out.kind = PathKind::generic;
  out.hit_boundary = fwd.hit_boundary || bwd.hit_boundary;
  out.hit_vertex = fwd.hit_vertex || bwd.hit_vertex;
  return out;
}

SpacePoint Space::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (impl_->cone) {
    const double r = impl_->extent * std::sqrt(uni(rng));
    const double phi = impl_->cone->total_angle() * uni(rng);
    return ConePoint{r, phi};
  }
  // area-weighted face, uniform barycentric
  const TriMesh& m = *impl_->mesh;
  const auto& cum = impl_->area_cum;
  const double x = uni(rng) * cum.back();
  const int f = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), x) - cum.begin());
  double u = uni(rng), v = uni(rng);
  if (u + v > 1) {
    u = 1 - u;
    v = 1 - v;
  }
  MeshPointLoc loc;
  loc.face = std::min(f, m.n_faces() - 1);
  loc.bary = Vector3d(1 - u - v, u, v);
  return loc;
}

Space Space::scaled(double lambda) const {
  if (!(lambda > 0)) throw std::invalid_argument("Space::scaled: lambda must be positive");
  if (impl_->cone) {
    auto impl = std::make_shared<SpaceImpl>();
    impl->kind = impl_->kind;
    impl->name = impl_->name + "_scaled";
    impl->cone.emplace(impl_->cone->total_angle());
    impl->extent = impl_->extent * lambda;
    if (impl_->declared_curv) impl->declared_curv = *impl_->declared_curv / (lambda * lambda);
    return wrap(std::move(impl));
  }
  TriMesh m = *impl_->mesh;
  m.scale(lambda);
  std::optional<double> k;
  if (impl_->declared_curv) k = *impl_->declared_curv / (lambda * lambda);
  Space s = tri_mesh(std::move(m), k, impl_->name + "_scaled", impl_->engine->options());
  return s;
}

// --- Path methods -----------------------------------------------------------

SpacePoint Path::at(double t) const {
  if (pts.empty()) throw std::logic_error("Path::at: empty path");
  if (pts.size() == 1) return pts[0];
  t = std::clamp(t, params.front(), params.back());
  // locate segment
  auto it = std::upper_bound(params.begin(), params.end(), t);
  std::size_t i = it == params.begin() ? 0 : (it - params.begin()) - 1;
  if (i + 1 >= pts.size()) i = pts.size() - 2;
  const double s = t - params[i];
  const double seg = params[i + 1] - params[i];
  if (seg <= 0) return pts[i];
  if (const auto* a = std::get_if<ConePoint>(&pts[i])) {
    const auto& b = std::get<ConePoint>(pts[i + 1]);
    const SpaceImpl* si = impl.get();
    return si->cone->interpolate(*a, b, cone_dphi[i], s);
  }
  const auto& a = std::get<MeshPointLoc>(pts[i]);
  const auto& b = std::get<MeshPointLoc>(pts[i + 1]);
  const int f = seg_face[i];
  // express both ends in the segment face and lerp barycentrically; segment
  // endpoints always lie on face f or on its boundary
  auto to_face = [&](const MeshPointLoc& loc) -> Vector3d {
    if (loc.face == f) return loc.bary;
    for (int c = 0; c < 3; ++c) {
      if (loc.bary[c] > 1 - 1e-12) {  // vertex coincidence
        const int v = impl->mesh->F[loc.face][c];
        const int c2 = impl->mesh->corner_of(f, v);
        if (c2 >= 0) {
          Vector3d bb = Vector3d::Zero();
          bb[c2] = 1;
          return bb;
        }
      }
    }
    for (int z = 0; z < 3; ++z) {
      if (loc.bary[z] < 1e-12) {  // edge coincidence
        const int slot = (z + 1) % 3;
        const int e = impl->mesh->fe[loc.face][slot];
        double tt = loc.bary[(z + 2) % 3];
        if (impl->mesh->F[loc.face][slot] != impl->mesh->edges[e].a) tt = 1.0 - tt;
        int s2 = -1;
        for (int i2 = 0; i2 < 3; ++i2)
          if (impl->mesh->fe[f][i2] == e) s2 = i2;
        if (s2 >= 0) {
          const double uu = (impl->mesh->F[f][s2] == impl->mesh->edges[e].a) ? tt : 1.0 - tt;
          Vector3d bb = Vector3d::Zero();
          bb[s2] = 1 - uu;
          bb[(s2 + 1) % 3] = uu;
          return bb;
        }
      }
    }
    throw std::logic_error("Path::at: segment endpoint not on segment face");
  };
  const Vector3d ba = to_face(a), bb = to_face(b);
  MeshPointLoc out;
  out.face = f;
  const double w = s / seg;
  out.bary = (1 - w) * ba + w * bb;
  return out;
}

Path Path::reversed() const {
  Path r;
  r.impl = impl;
  r.kind = kind;
  r.pts.assign(pts.rbegin(), pts.rend());
  const double L = length();
  r.params.resize(params.size());
  for (std::size_t i = 0; i < params.size(); ++i)
    r.params[i] = L - params[params.size() - 1 - i];
  r.cone_dphi.resize(cone_dphi.size());
  for (std::size_t i = 0; i < cone_dphi.size(); ++i)
    r.cone_dphi[i] = -cone_dphi[cone_dphi.size() - 1 - i];
  r.seg_face.assign(seg_face.rbegin(), seg_face.rend());
  r.hit_boundary = hit_boundary;
  r.hit_vertex = hit_vertex;
  return r;
}

Path Path::sub(double t0, double t1) const {
  if (t1 < t0) throw std::invalid_argument("Path::sub: t1 < t0");
  Path r;
  r.impl = impl;
  r.kind = kind;
  r.pts.push_back(at(t0));
  r.params.push_back(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (params[i] <= t0 + 1e-15 || params[i] >= t1 - 1e-15) continue;
    r.pts.push_back(pts[i]);
    r.params.push_back(params[i] - t0);
  }
  r.pts.push_back(at(t1));
  r.params.push_back(t1 - t0);
  // segment metadata: recompute faces / dphi from the parent segments
  if (!seg_face.empty()) {
    for (std::size_t i = 0; i + 1 < r.params.size(); ++i) {
      const double mid = t0 + 0.5 * (r.params[i] + r.params[i + 1]);
      auto it = std::upper_bound(params.begin(), params.end(), mid);
      std::size_t j = it == params.begin() ? 0 : (it - params.begin()) - 1;
      j = std::min(j, seg_face.size() - 1);
      r.seg_face.push_back(seg_face[j]);
    }
  }
  if (!cone_dphi.empty()) {
    const ConeGeometry& g = impl->cone.value();
    for (std::size_t i = 0; i + 1 < r.pts.size(); ++i) {
      const auto& a = std::get<ConePoint>(r.pts[i]);
      const auto& b = std::get<ConePoint>(r.pts[i + 1]);
      r.cone_dphi.push_back(g.through_apex(a, b) ? 0.0 : g.signed_arc(a.phi, b.phi));
    }
  }
  return r;
}

// --- misc helpers -----------------------------------------------------------

double point_total_angle(const Space& s, const SpacePoint& p) {
  if (const auto* cp = std::get_if<ConePoint>(&p)) {
    if (cp->r <= kApexEps) return s.cone().total_angle();
    return 2 * M_PI;
  }
  const auto& mp = std::get<MeshPointLoc>(p);
  const TriMesh& m = s.mesh();
  for (int c = 0; c < 3; ++c)
    if (mp.bary[c] > 1 - 1e-12) {
      const int v = m.F[mp.face][c];
      return m.vboundary[v] ? m.vertex_boundary_angle(v) : m.vertex_total_angle(v);
    }
  return 2 * M_PI;
}

bool same_point(const Space& s, const SpacePoint& a, const SpacePoint& b, double tol) {
  return s.distance(a, b) <= tol;
}

}  // namespace curvlab
