#include "curvlab/mesh_geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace curvlab {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBaryEps = 1e-12;

double cross2(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// signed area of (a,b,c): positive when c lies left of a->b
double tri2(const Vector2d& a, const Vector2d& b, const Vector2d& c) { return cross2(b - a, c - a); }

int common_edge(const TriMesh& m, int f, int g) {
  for (int i = 0; i < 3; ++i)
    if (m.other_face(m.fe[f][i], f) == g) return m.fe[f][i];
  return -1;
}

// faces containing a mesh point: one (interior), two (on an edge) or the
// whole fan (at a vertex)
std::vector<int> faces_containing(const TriMesh& m, const MeshPointLoc& loc) {
  int zero = -1, nz = 0;
  for (int i = 0; i < 3; ++i)
    if (loc.bary[i] < kBaryEps) {
      zero = i;
      ++nz;
    }
  if (nz == 0) return {loc.face};
  if (nz == 1) {
    const int slot = (zero + 1) % 3;
    const int g = m.other_face(m.fe[loc.face][slot], loc.face);
    if (g == -1) return {loc.face};
    return {loc.face, g};
  }
  int c = 0;
  for (int i = 0; i < 3; ++i)
    if (loc.bary[i] > loc.bary[c]) c = i;
  return m.vfaces[m.F[loc.face][c]];
}

// position of loc in the layout frame of face f; f must contain the point
// (same face, or a face sharing the edge/vertex the point sits on)
Vector2d loc_in_face(const TriMesh& m, const std::vector<std::array<Vector2d, 3>>& layouts,
                     const MeshPointLoc& loc, int f) {
  if (f == loc.face) {
    const auto& L = layouts[f];
    return loc.bary[0] * L[0] + loc.bary[1] * L[1] + loc.bary[2] * L[2];
  }
  int zero = -1, nz = 0;
  for (int i = 0; i < 3; ++i)
    if (loc.bary[i] < kBaryEps) {
      zero = i;
      ++nz;
    }
  if (nz == 1) {
    const int slot = (zero + 1) % 3;
    const int e = m.fe[loc.face][slot];
    double t = loc.bary[(zero + 2) % 3];  // param from F[slot] toward F[slot+1]
    if (m.F[loc.face][slot] != m.edges[e].a) t = 1.0 - t;
    int s2 = -1;
    for (int i = 0; i < 3; ++i)
      if (m.fe[f][i] == e) s2 = i;
    if (s2 < 0) throw std::logic_error("loc_in_face: face does not contain the edge");
    const double u = (m.F[f][s2] == m.edges[e].a) ? t : 1.0 - t;
    return (1 - u) * layouts[f][s2] + u * layouts[f][(s2 + 1) % 3];
  }
  if (nz == 2) {
    int c = 0;
    for (int i = 0; i < 3; ++i)
      if (loc.bary[i] > loc.bary[c]) c = i;
    const int v = m.F[loc.face][c];
    const int c2 = m.corner_of(f, v);
    if (c2 < 0) throw std::logic_error("loc_in_face: face does not contain the vertex");
    return layouts[f][c2];
  }
  throw std::logic_error("loc_in_face: point interior to another face");
}

struct Portal {
  int edge = -1;
  int lv = -1, rv = -1;
  Vector2d L{0, 0}, R{0, 0};
};

struct FunnelCorner {
  Vector2d p{0, 0};
  int vertex = -1;
  int portal = 0;
};

// classic funnel over unfolded portals; emits pinch corners in order
std::vector<FunnelCorner> run_funnel(const Vector2d& src, const std::vector<Portal>& portals,
                                     const Vector2d& dst, double scale) {
  std::vector<FunnelCorner> corners;
  const double eps = 1e-12 * scale * scale;
  const int m = static_cast<int>(portals.size());
  Vector2d apex = src, left = src, right = src;
  int apexIdx = 0, leftIdx = 0, rightIdx = 0;
  int leftV = -1, rightV = -1;
  auto close = [&](const Vector2d& a, const Vector2d& b) {
    return (a - b).squaredNorm() <= 1e-26 * scale * scale;
  };
  int guard = 0;
  const int guard_max = 8 * (m + 2) * (m + 2) + 64;
  for (int i = 1; i <= m + 1 && guard < guard_max; ++i, ++guard) {
    const Vector2d L = i <= m ? portals[i - 1].L : dst;
    const Vector2d R = i <= m ? portals[i - 1].R : dst;
    const int Lv = i <= m ? portals[i - 1].lv : -1;
    const int Rv = i <= m ? portals[i - 1].rv : -1;

    // tri2 > 0 means the probe point lies left of the ray; the right chain
    // tightens when the candidate moves left, the left chain when it moves
    // right, and an apex is emitted when a chain sweeps past the other side
    if (tri2(apex, right, R) >= -eps) {  // candidate tightens the right chain
      if (close(apex, right) || tri2(apex, left, R) <= eps) {
        right = R;
        rightIdx = i;
        rightV = Rv;
      } else {  // right sweeps over left: left becomes the new apex
        corners.push_back({left, leftV, leftIdx});
        apex = left;
        apexIdx = leftIdx;
        right = apex;
        rightIdx = apexIdx;
        rightV = leftV;
        i = apexIdx;
        continue;
      }
    }
    if (tri2(apex, left, L) <= eps) {
      if (close(apex, left) || tri2(apex, right, L) >= -eps) {
        left = L;
        leftIdx = i;
        leftV = Lv;
      } else {
        corners.push_back({right, rightV, rightIdx});
        apex = right;
        apexIdx = rightIdx;
        left = apex;
        leftIdx = apexIdx;
        leftV = rightV;
        i = apexIdx;
        continue;
      }
    }
  }
  return corners;
}

}  // namespace

// ---------------------------------------------------------------------------
// engine basics

struct GeodesicEngine::Scratch {
  const void* owner = nullptr;
  std::vector<double> dist;
  std::vector<int> parent;
  std::vector<int> parent_face;
  std::vector<std::uint32_t> stamp;
  std::uint32_t cur = 0;

  std::vector<double> dst_dist;
  std::vector<int> dst_parent;
  std::vector<int> dst_parent_face;

  void prepare(const void* eng, int n) {
    if (owner != eng || static_cast<int>(dist.size()) != n) {
      owner = eng;
      dist.assign(n, kInf);
      parent.assign(n, -1);
      parent_face.assign(n, -1);
      stamp.assign(n, 0);
      cur = 0;
    }
    ++cur;
    if (cur == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      cur = 1;
    }
  }
  bool fresh(int i) const { return stamp[i] == cur; }
  void touch(int i) { stamp[i] = cur; }
};

namespace {
GeodesicEngine::Scratch& scratch() {
  static thread_local GeodesicEngine::Scratch s;
  return s;
}
}  // namespace

GeodesicEngine::GeodesicEngine(const TriMesh& m, GeodesicOptions opt) : m_(m), opt_(opt) {
  if (opt_.steiner < 0) throw std::invalid_argument("GeodesicEngine: steiner >= 0");
  layouts_.resize(m_.n_faces());
  for (int f = 0; f < m_.n_faces(); ++f) layouts_[f] = m_.layout(f);
}

int GeodesicEngine::node_count() const {
  return m_.n_vertices() + static_cast<int>(m_.edges.size()) * opt_.steiner;
}

int GeodesicEngine::steiner_node(int e, int k) const {
  return m_.n_vertices() + e * opt_.steiner + k;
}

Eigen::Vector2d GeodesicEngine::node_pos2d(int f, int node) const {
  const auto& L = layouts_[f];
  if (node < m_.n_vertices()) return L[m_.corner_of(f, node)];
  const int e = (node - m_.n_vertices()) / opt_.steiner;
  const int k = (node - m_.n_vertices()) % opt_.steiner;
  const double frac = static_cast<double>(k + 1) / (opt_.steiner + 1);  // along edges[e].a -> b
  int s = -1;
  for (int i = 0; i < 3; ++i)
    if (m_.fe[f][i] == e) s = i;
  const double u = (m_.F[f][s] == m_.edges[e].a) ? frac : 1.0 - frac;
  return (1 - u) * L[s] + u * L[(s + 1) % 3];
}

Eigen::Vector3d GeodesicEngine::node_pos3d(int node) const {
  if (node < m_.n_vertices()) return m_.V[node];
  const int e = (node - m_.n_vertices()) / opt_.steiner;
  const int k = (node - m_.n_vertices()) % opt_.steiner;
  return m_.edge_point(e, static_cast<double>(k + 1) / (opt_.steiner + 1));
}

Eigen::Vector3d GeodesicEngine::bary_of_layout_point(int f, const Vector2d& p) const {
  const auto& L = layouts_[f];
  const double area = tri2(L[0], L[1], L[2]);
  Vector3d b;
  b[0] = tri2(p, L[1], L[2]) / area;
  b[1] = tri2(L[0], p, L[2]) / area;
  b[2] = tri2(L[0], L[1], p) / area;
  return b;
}

Eigen::Vector2d GeodesicEngine::layout_point(int f, const Vector3d& bary) const {
  const auto& L = layouts_[f];
  return bary[0] * L[0] + bary[1] * L[1] + bary[2] * L[2];
}

// ---------------------------------------------------------------------------
// graph search

void GeodesicEngine::search(const MeshPointLoc& src, const std::vector<MeshPointLoc>& dsts,
                            Scratch& s) const {
  const int n = node_count();
  s.prepare(this, n);

  using QItem = std::pair<double, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;

  const bool astar = dsts.size() == 1;
  Vector3d goal3 = Vector3d::Zero();
  if (astar) goal3 = m_.bary_point(dsts[0].face, dsts[0].bary);
  auto heur = [&](int node) { return astar ? (node_pos3d(node) - goal3).norm() : 0.0; };

  auto relax = [&](int node, double d, int par, int via_face) {
    if (s.fresh(node) && s.dist[node] <= d) return;
    s.touch(node);
    s.dist[node] = d;
    s.parent[node] = par;
    s.parent_face[node] = via_face;
    heap.emplace(d + heur(node), node);
  };

  s.dst_dist.assign(dsts.size(), kInf);
  s.dst_parent.assign(dsts.size(), -1);
  s.dst_parent_face.assign(dsts.size(), -1);

  // destinations grouped by face for O(1) lookup during expansion
  std::map<int, std::vector<std::pair<int, Vector2d>>> dst_by_face;
  for (std::size_t j = 0; j < dsts.size(); ++j)
    for (int f : faces_containing(m_, dsts[j]))
      dst_by_face[f].push_back({static_cast<int>(j), loc_in_face(m_, layouts_, dsts[j], f)});

  auto relax_dst = [&](int f, const Vector2d& pu, double du, int par) {
    auto it = dst_by_face.find(f);
    if (it == dst_by_face.end()) return;
    for (const auto& [j, q] : it->second) {
      const double d = du + (pu - q).norm();
      if (d < s.dst_dist[j]) {
        s.dst_dist[j] = d;
        s.dst_parent[j] = par;
        s.dst_parent_face[j] = f;
      }
    }
  };

  // seed from the source point (including a direct in-face run to dsts)
  for (int f : faces_containing(m_, src)) {
    const Vector2d p = loc_in_face(m_, layouts_, src, f);
    for (int i = 0; i < 3; ++i) relax(m_.F[f][i], (p - layouts_[f][i]).norm(), -2, f);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < opt_.steiner; ++k) {
        const int node = steiner_node(m_.fe[f][i], k);
        relax(node, (p - node_pos2d(f, node)).norm(), -2, f);
      }
    relax_dst(f, p, 0.0, -2);
  }

  std::vector<char> dst_done(dsts.size(), 0);
  std::size_t settled = 0;

  while (!heap.empty()) {
    const auto [prio, u] = heap.top();
    heap.pop();
    if (!s.fresh(u) || prio > s.dist[u] + heur(u) + 1e-12) continue;
    const double du = s.dist[u];

    if (astar) {
      if (prio >= s.dst_dist[0] - 1e-15) break;
    } else {
      for (std::size_t j = 0; j < dsts.size(); ++j)
        if (!dst_done[j] && s.dst_dist[j] <= du + 1e-15) {
          dst_done[j] = 1;
          ++settled;
        }
      if (!dsts.empty() && settled == dsts.size()) break;
    }

    const auto expand_face = [&](int f) {
      const Vector2d pu = node_pos2d(f, u);
      for (int i = 0; i < 3; ++i) {
        const int w = m_.F[f][i];
        if (w != u) relax(w, du + (pu - layouts_[f][i]).norm(), u, f);
      }
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < opt_.steiner; ++k) {
          const int w = steiner_node(m_.fe[f][i], k);
          if (w != u) relax(w, du + (pu - node_pos2d(f, w)).norm(), u, f);
        }
      relax_dst(f, pu, du, u);
    };
    if (u < m_.n_vertices()) {
      for (int f : m_.vfaces[u]) expand_face(f);
    } else {
      const int e = (u - m_.n_vertices()) / opt_.steiner;
      expand_face(m_.edges[e].f0);
      if (m_.edges[e].f1 != -1) expand_face(m_.edges[e].f1);
    }
  }
}

std::vector<double> GeodesicEngine::graph_distances(const MeshPointLoc& src,
                                                    const std::vector<MeshPointLoc>& dsts) const {
  auto& s = scratch();
  search(src, dsts, s);
  return s.dst_dist;
}

std::vector<double> GeodesicEngine::multi_source_vertex_distances(
    const std::vector<MeshPointLoc>& sources) const {
  auto& s = scratch();
  const int n = node_count();
  s.prepare(this, n);
  using QItem = std::pair<double, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;
  auto relax = [&](int node, double d) {
    if (s.fresh(node) && s.dist[node] <= d) return;
    s.touch(node);
    s.dist[node] = d;
    heap.emplace(d, node);
  };
  for (const auto& loc : sources)
    for (int f : faces_containing(m_, loc)) {
      const Vector2d p = loc_in_face(m_, layouts_, loc, f);
      for (int i = 0; i < 3; ++i) relax(m_.F[f][i], (p - layouts_[f][i]).norm());
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < opt_.steiner; ++k) {
          const int node = steiner_node(m_.fe[f][i], k);
          relax(node, (p - node_pos2d(f, node)).norm());
        }
    }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (!s.fresh(u) || d > s.dist[u] + 1e-15) continue;
    const auto expand_face = [&](int f) {
      const Vector2d pu = node_pos2d(f, u);
      for (int i = 0; i < 3; ++i) {
        const int w = m_.F[f][i];
        if (w != u) relax(w, d + (pu - layouts_[f][i]).norm());
      }
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < opt_.steiner; ++k) {
          const int w = steiner_node(m_.fe[f][i], k);
          if (w != u) relax(w, d + (pu - node_pos2d(f, w)).norm());
        }
    };
    if (u < m_.n_vertices()) {
      for (int f : m_.vfaces[u]) expand_face(f);
    } else {
      const int e = (u - m_.n_vertices()) / opt_.steiner;
      expand_face(m_.edges[e].f0);
      if (m_.edges[e].f1 != -1) expand_face(m_.edges[e].f1);
    }
  }
  std::vector<double> out(m_.n_vertices(), kInf);
  for (int v = 0; v < m_.n_vertices(); ++v)
    if (s.fresh(v)) out[v] = s.dist[v];
  return out;
}

// ---------------------------------------------------------------------------
// straightening

namespace {

// unfold the corridor into the frame of its first face
bool unfold_corridor(const TriMesh& m, const std::vector<std::array<Vector2d, 3>>& layouts,
                     const std::vector<int>& corridor, std::vector<std::array<Vector2d, 3>>& pos,
                     std::vector<Portal>& portals) {
  pos.assign(corridor.size(), {});
  portals.assign(corridor.size() - 1, Portal{});
  pos[0] = layouts[corridor[0]];
  for (std::size_t i = 1; i < corridor.size(); ++i) {
    const int f = corridor[i - 1], g = corridor[i];
    const int e = common_edge(m, f, g);
    if (e < 0) return false;
    const int ca = m.corner_of(f, m.edges[e].a), cb = m.corner_of(f, m.edges[e].b);
    const Vector2d A = pos[i - 1][ca], B = pos[i - 1][cb];
    const int ca2 = m.corner_of(g, m.edges[e].a), cb2 = m.corner_of(g, m.edges[e].b);
    const Vector2d A2 = layouts[g][ca2], B2 = layouts[g][cb2];
    const Vector2d u = B - A, u2 = B2 - A2;
    const double n2 = u2.squaredNorm();
    const double cosr = u2.dot(u) / n2;
    const double sinr = cross2(u2, u) / n2;
    for (int c = 0; c < 3; ++c) {
      const Vector2d d = layouts[g][c] - A2;
      pos[i][c] = Vector2d(A.x() + cosr * d.x() - sinr * d.y(), A.y() + sinr * d.x() + cosr * d.y());
    }
    int sft = -1;
    for (int c = 0; c < 3; ++c)
      if (m.fe[g][c] == e) sft = c;
    Portal p;
    p.edge = e;
    p.lv = m.F[g][sft];
    p.rv = m.F[g][(sft + 1) % 3];
    p.L = pos[i][sft];
    p.R = pos[i][(sft + 1) % 3];
    portals[i - 1] = p;
  }
  return true;
}

}  // namespace

MeshTrack GeodesicEngine::straighten(const MeshPointLoc& src, const MeshPointLoc& dst,
                                     std::vector<int> corridor) const {
  corridor.erase(std::unique(corridor.begin(), corridor.end()), corridor.end());

  std::set<int> locked;
  MeshTrack best;
  best.length = kInf;
  std::vector<int> best_portal_idx;
  std::vector<int> best_corridor;

  for (int iter = 0; iter <= opt_.max_flips; ++iter) {
    std::vector<std::array<Vector2d, 3>> pos;
    std::vector<Portal> portals;
    if (!unfold_corridor(m_, layouts_, corridor, pos, portals))
      throw std::logic_error("straighten: corridor not edge-adjacent");

    auto in_frame = [&](const MeshPointLoc& loc, std::size_t ci) {
      const Vector2d local = loc_in_face(m_, layouts_, loc, corridor[ci]);
      const Vector3d b = bary_of_layout_point(corridor[ci], local);
      return Vector2d(b[0] * pos[ci][0] + b[1] * pos[ci][1] + b[2] * pos[ci][2]);
    };
    const Vector2d s2 = in_frame(src, 0);
    const Vector2d d2 = in_frame(dst, corridor.size() - 1);

    const double scale = (s2 - d2).norm() + m_.max_edge;
    const auto corners = run_funnel(s2, portals, d2, scale);

    std::vector<FunnelCorner> chain;
    chain.push_back({s2, -1, 0});
    for (const auto& c : corners) chain.push_back(c);
    chain.push_back({d2, -1, static_cast<int>(portals.size()) + 1});

    MeshTrack t;
    std::vector<int> wp_portal;
    std::vector<Vector2d> wp2d;
    t.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Face, src.face, 0.0, src.bary});
    wp_portal.push_back(0);
    wp2d.push_back(s2);

    std::size_t seg = 0;
    for (int i = 1; i <= static_cast<int>(portals.size()); ++i) {
      while (seg + 2 < chain.size() && chain[seg + 1].portal <= i) ++seg;
      const Vector2d A = chain[seg].p, B = chain[seg + 1].p;
      const Portal& p = portals[i - 1];
      const Vector2d dir = B - A;
      const Vector2d pr = p.R - p.L;
      const double den = cross2(pr, dir);
      double u;
      if (std::abs(den) < 1e-30) {
        const double l2 = pr.squaredNorm();
        u = l2 > 0 ? pr.dot(A - p.L) / l2 : 0.0;
      } else {
        u = cross2(A - p.L, dir) / den;
      }
      u = std::clamp(u, 0.0, 1.0);
      const Vector2d X = p.L + u * pr;
      MeshWaypoint w;
      const double vtol = 1e-9;
      if (u <= vtol) {
        w.kind = MeshWaypoint::Kind::Vertex;
        w.id = p.lv;
      } else if (u >= 1 - vtol) {
        w.kind = MeshWaypoint::Kind::Vertex;
        w.id = p.rv;
      } else {
        w.kind = MeshWaypoint::Kind::Edge;
        w.id = p.edge;
        w.t = (m_.edges[p.edge].a == p.lv) ? u : 1.0 - u;
      }
      if (w.kind == MeshWaypoint::Kind::Vertex && t.wps.back().kind == MeshWaypoint::Kind::Vertex &&
          t.wps.back().id == w.id) {
        wp_portal.back() = i;
        continue;
      }
      t.wps.push_back(w);
      wp_portal.push_back(i);
      wp2d.push_back(X);
    }
    t.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Face, dst.face, 0.0, dst.bary});
    wp_portal.push_back(static_cast<int>(portals.size()) + 1);
    wp2d.push_back(d2);

    t.cum.assign(t.wps.size(), 0.0);
    t.seg_face.assign(t.wps.size() - 1, -1);
    for (std::size_t i = 0; i + 1 < t.wps.size(); ++i) {
      t.seg_face[i] = corridor[std::min<std::size_t>(wp_portal[i], corridor.size() - 1)];
      t.cum[i + 1] = t.cum[i] + (wp2d[i + 1] - wp2d[i]).norm();
    }
    t.length = t.cum.back();

    const bool improved = t.length < best.length - 1e-14 * (1 + best.length);
    if (iter == 0 || improved) {
      best = t;
      best_portal_idx = wp_portal;
      best_corridor = corridor;
    } else {
      break;  // last reroute did not shorten: keep the previous taut path
    }

    // worst non-geodesic vertex passage
    int flip_wp = -1;
    double worst_wedge = M_PI - 1e-11;
    bool flip_ccw = true;
    for (std::size_t i = 1; i + 1 < best.wps.size(); ++i) {
      if (best.wps[i].kind != MeshWaypoint::Kind::Vertex) continue;
      const int v = best.wps[i].id;
      if (locked.count(v)) continue;
      const int fa = best.seg_face[i - 1], fb = best.seg_face[i];
      const double ra = vertex_ray_angle(v, fa, best.wps[i - 1]);
      const double rb = vertex_ray_angle(v, fb, best.wps[i + 1]);
      if (std::isnan(ra) || std::isnan(rb)) continue;
      double total = 0;
      for (int f : m_.vfaces[v]) total += m_.corner_angle(f, m_.corner_of(f, v));
      if (!m_.vboundary[v]) {
        double ccw = std::fmod(rb - ra, total);
        if (ccw < 0) ccw += total;
        const double cw = total - ccw;
        const double mn = std::min(ccw, cw);
        if (mn < worst_wedge) {
          worst_wedge = mn;
          flip_wp = static_cast<int>(i);
          flip_ccw = ccw <= cw;
        }
      } else {
        const double wedge = std::abs(rb - ra);
        if (wedge < worst_wedge) {
          worst_wedge = wedge;
          flip_wp = static_cast<int>(i);
          flip_ccw = rb >= ra;
        }
      }
    }
    if (flip_wp < 0) break;

    const int v = best.wps[flip_wp].id;
    const std::size_t last = best_corridor.size() - 1;
    const std::size_t ia = std::min<std::size_t>(best_portal_idx[flip_wp - 1], last);
    const std::size_t ib = std::min<std::size_t>(best_portal_idx[flip_wp], last);
    const int fa = best_corridor[ia], fb = best_corridor[ib];
    std::vector<int> mid = fan_chain(v, fa, fb, flip_ccw);
    if (mid.empty()) {
      locked.insert(v);
      corridor = best_corridor;
      continue;
    }
    std::vector<int> nc(best_corridor.begin(), best_corridor.begin() + ia);
    for (int f : mid) nc.push_back(f);
    for (std::size_t j = ib + 1; j < best_corridor.size(); ++j) nc.push_back(best_corridor[j]);
    nc.erase(std::unique(nc.begin(), nc.end()), nc.end());
    corridor = std::move(nc);
  }
  return best;
}

double GeodesicEngine::vertex_ray_angle(int v, int f, const MeshWaypoint& w) const {
  const int c = m_.corner_of(f, v);
  if (c < 0) return std::numeric_limits<double>::quiet_NaN();
  double off = 0;
  for (int g : m_.vfaces[v]) {
    if (g == f) break;
    off += m_.corner_angle(g, m_.corner_of(g, v));
  }
  const auto& L = layouts_[f];
  Vector2d p;
  switch (w.kind) {
    case MeshWaypoint::Kind::Face:
      p = w.bary[0] * L[0] + w.bary[1] * L[1] + w.bary[2] * L[2];
      break;
    case MeshWaypoint::Kind::Edge: {
      int s = -1;
      for (int i = 0; i < 3; ++i)
        if (m_.fe[f][i] == w.id) s = i;
      if (s < 0) return std::numeric_limits<double>::quiet_NaN();
      const double u = (m_.F[f][s] == m_.edges[w.id].a) ? w.t : 1.0 - w.t;
      p = (1 - u) * L[s] + u * L[(s + 1) % 3];
      break;
    }
    case MeshWaypoint::Kind::Vertex: {
      if (w.id == v) return std::numeric_limits<double>::quiet_NaN();
      const int c2 = m_.corner_of(f, w.id);
      if (c2 < 0) return std::numeric_limits<double>::quiet_NaN();
      p = L[c2];
      break;
    }
  }
  const Vector2d vv = L[c];
  const Vector2d entry = L[(c + 1) % 3] - vv;  // CCW start edge of the corner at v
  const Vector2d ray = p - vv;
  if (ray.norm() < 1e-14) return std::numeric_limits<double>::quiet_NaN();
  double ang = std::atan2(cross2(entry, ray), entry.dot(ray));
  if (ang < 0) ang = 0;  // round-off: rays live inside the corner
  return off + ang;
}

std::vector<int> GeodesicEngine::fan_chain(int v, int fa, int fb, bool ccw) const {
  const auto& fan = m_.vfaces[v];
  const int deg = static_cast<int>(fan.size());
  int ia = -1, ib = -1;
  for (int i = 0; i < deg; ++i) {
    if (fan[i] == fa) ia = i;
    if (fan[i] == fb) ib = i;
  }
  if (ia < 0 || ib < 0) return {};
  std::vector<int> out;
  if (!m_.vboundary[v]) {
    int i = ia;
    out.push_back(fan[i]);
    while (i != ib) {
      i = ccw ? (i + 1) % deg : (i - 1 + deg) % deg;
      out.push_back(fan[i]);
      if (static_cast<int>(out.size()) > deg + 1) return {};
    }
    return out;
  }
  if ((ccw && ib < ia) || (!ccw && ib > ia)) return {};
  int i = ia;
  out.push_back(fan[i]);
  while (i != ib) {
    i = ccw ? i + 1 : i - 1;
    if (i < 0 || i >= deg) return {};
    out.push_back(fan[i]);
  }
  return out;
}

std::vector<int> GeodesicEngine::fan_chain_shorter(int v, int fa, int fb) const {
  const auto& fan = m_.vfaces[v];
  const int deg = static_cast<int>(fan.size());
  int ia = -1, ib = -1;
  for (int i = 0; i < deg; ++i) {
    if (fan[i] == fa) ia = i;
    if (fan[i] == fb) ib = i;
  }
  if (ia < 0 || ib < 0) throw std::logic_error("fan_chain_shorter: faces not in fan");
  auto side_sum = [&](bool ccw) {
    double sum = 0;
    int i = ia;
    int guard = 0;
    while (i != ib && guard++ <= deg) {
      sum += m_.corner_angle(fan[i], m_.corner_of(fan[i], v));
      if (m_.vboundary[v]) {
        i = ccw ? i + 1 : i - 1;
        if (i < 0 || i >= deg) return kInf;
      } else {
        i = ccw ? (i + 1) % deg : (i - 1 + deg) % deg;
      }
    }
    return guard > deg ? kInf : sum;
  };
  const double sc = side_sum(true), sw = side_sum(false);
  auto chain = fan_chain(v, fa, fb, sc <= sw);
  if (chain.empty()) chain = fan_chain(v, fa, fb, sc > sw);
  if (chain.empty()) throw std::logic_error("fan_chain_shorter: no route around vertex");
  return chain;
}

double GeodesicEngine::distance(const MeshPointLoc& a, const MeshPointLoc& b) const {
  return shortest_path(a, b).length;
}

MeshTrack GeodesicEngine::shortest_path(const MeshPointLoc& src, const MeshPointLoc& dst) const {
  auto& s = scratch();
  search(src, {dst}, s);
  if (s.dst_dist[0] == kInf) throw std::runtime_error("shortest_path: destination unreachable");

  std::vector<int> nodes;
  std::vector<int> via;
  via.push_back(s.dst_parent_face[0]);
  int u = s.dst_parent[0];
  while (u != -2) {
    nodes.push_back(u);
    via.push_back(s.parent_face[u]);
    u = s.parent[u];
  }
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(via.begin(), via.end());
  // via[i] = face of segment i; nodes[i] = junction after segment i

  std::vector<int> corridor;
  corridor.push_back(via[0]);
  for (std::size_t i = 0; i + 1 < via.size(); ++i) {
    const int f = via[i], g = via[i + 1];
    if (f == g) continue;
    if (common_edge(m_, f, g) >= 0) {
      corridor.push_back(g);
      continue;
    }
    const int vnode = nodes[i];
    if (vnode >= m_.n_vertices()) throw std::logic_error("shortest_path: non-adjacent corridor step");
    const auto chain = fan_chain_shorter(vnode, f, g);
    for (std::size_t j = 1; j < chain.size(); ++j) corridor.push_back(chain[j]);
  }
  corridor.erase(std::unique(corridor.begin(), corridor.end()), corridor.end());

  return straighten(src, dst, corridor);
}

// ---------------------------------------------------------------------------
// shooting

MeshTrack shoot_on_mesh(const TriMesh& m, const GeodesicEngine& eng, const MeshPointLoc& start,
                        double chart_angle, double length) {
  MeshTrack out;
  int f = start.face;
  Vector2d p = eng.layout_point(f, start.bary);
  Vector2d d(std::cos(chart_angle), std::sin(chart_angle));
  double remaining = length;
  int entry_slot = -1;

  out.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Face, f, 0.0, start.bary});
  out.cum.push_back(0.0);

  const int max_steps = 16 * (m.n_faces() + 8);
  for (int step = 0; step < max_steps; ++step) {
    const auto& L = eng.layout(f);
    double best_s = kInf;
    int best_slot = -1;
    double best_u = 0;
    for (int i = 0; i < 3; ++i) {
      if (i == entry_slot) continue;
      const Vector2d A = L[i], B = L[(i + 1) % 3];
      const Vector2d e = B - A;
      const double den = cross2(d, e);
      if (std::abs(den) < 1e-16) continue;
      const double sc = cross2(A - p, e) / den;
      if (sc <= 1e-12 * m.max_edge) continue;
      const Vector2d X = p + sc * d;
      const double uu = e.dot(X - A) / e.squaredNorm();
      if (uu > -1e-9 && uu < 1 + 1e-9 && sc < best_s) {
        best_s = sc;
        best_slot = i;
        best_u = std::clamp(uu, 0.0, 1.0);
      }
    }
    if (best_slot < 0 || best_s >= remaining) {
      const double adv = std::min(remaining, best_s);
      const Vector2d X = p + adv * d;
      out.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Face, f, 0.0, eng.bary_of_layout_point(f, X)});
      out.cum.push_back(out.cum.back() + adv);
      out.seg_face.push_back(f);
      out.length = out.cum.back();
      return out;
    }
    const Vector2d X = p + best_s * d;
    const int e = m.fe[f][best_slot];
    const double vtol = 1e-9;
    if (best_u < vtol || best_u > 1 - vtol) {
      const int v = best_u < vtol ? m.F[f][best_slot] : m.F[f][(best_slot + 1) % 3];
      out.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Vertex, v, 0.0, {}});
      out.cum.push_back(out.cum.back() + best_s);
      out.seg_face.push_back(f);
      out.length = out.cum.back();
      out.hit_vertex = true;
      return out;
    }
    const double t_rec = (m.F[f][best_slot] == m.edges[e].a) ? best_u : 1.0 - best_u;
    out.wps.push_back(MeshWaypoint{MeshWaypoint::Kind::Edge, e, t_rec, {}});
    out.cum.push_back(out.cum.back() + best_s);
    out.seg_face.push_back(f);
    remaining -= best_s;
    const int g = m.other_face(e, f);
    if (g == -1) {
      out.length = out.cum.back();
      out.hit_boundary = true;
      return out;
    }
    const auto& Lg = eng.layout(g);
    const int ca = m.corner_of(f, m.edges[e].a), cb = m.corner_of(f, m.edges[e].b);
    const int ca2 = m.corner_of(g, m.edges[e].a), cb2 = m.corner_of(g, m.edges[e].b);
    const Vector2d A = L[ca], B = L[cb], A2 = Lg[ca2], B2 = Lg[cb2];
    const Vector2d u1 = B - A, u2 = B2 - A2;
    const double n1 = u1.squaredNorm();
    const double cosr = u1.dot(u2) / n1;
    const double sinr = cross2(u1, u2) / n1;
    auto rot = [&](const Vector2d& q) {
      return Vector2d(cosr * q.x() - sinr * q.y(), sinr * q.x() + cosr * q.y());
    };
    p = A2 + rot(X - A);
    d = rot(d).normalized();
    for (int i = 0; i < 3; ++i)
      if (m.fe[g][i] == e) entry_slot = i;
    f = g;
  }
  out.length = out.cum.back();
  return out;
}

double track_start_direction(const GeodesicEngine& eng, const MeshTrack& t) {
  if (t.wps.size() < 2) throw std::invalid_argument("track_start_direction: degenerate track");
  const TriMesh& m = eng.mesh();
  const int f = t.seg_face[0];
  const MeshPointLoc a = waypoint_loc(m, t.wps[0], f);
  const MeshPointLoc b = waypoint_loc(m, t.wps[1], f);
  const Vector2d pa = eng.layout_point(f, a.bary);
  const Vector2d pb = eng.layout_point(f, b.bary);
  const Vector2d d = pb - pa;
  return std::atan2(d.y(), d.x());
}

MeshPointLoc waypoint_loc(const TriMesh& m, const MeshWaypoint& w, int seg_face) {
  MeshPointLoc loc;
  switch (w.kind) {
    case MeshWaypoint::Kind::Face:
      loc.face = w.id;
      loc.bary = w.bary;
      return loc;
    case MeshWaypoint::Kind::Edge: {
      const int f = seg_face;
      int s = -1;
      for (int i = 0; i < 3; ++i)
        if (m.fe[f][i] == w.id) s = i;
      if (s < 0) throw std::logic_error("waypoint_loc: segment face does not contain edge");
      const double u = (m.F[f][s] == m.edges[w.id].a) ? w.t : 1.0 - w.t;
      loc.face = f;
      loc.bary = Vector3d::Zero();
      loc.bary[s] = 1.0 - u;
      loc.bary[(s + 1) % 3] = u;
      return loc;
    }
    case MeshWaypoint::Kind::Vertex: {
      const int f = seg_face >= 0 ? seg_face : m.vfaces[w.id][0];
      const int c = m.corner_of(f, w.id);
      if (c < 0) throw std::logic_error("waypoint_loc: face does not contain vertex");
      loc.face = f;
      loc.bary = Vector3d::Zero();
      loc.bary[c] = 1.0;
      return loc;
    }
  }
  throw std::logic_error("waypoint_loc: bad kind");
}

}  // namespace curvlab
