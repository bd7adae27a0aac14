#include "curvlab/trimesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "curvlab/model.hpp"

namespace curvlab {

namespace {

int iwrap3(int i) { return i % 3; }

}  // namespace

void TriMesh::finalize() {
  const int nv = n_vertices();
  const int nf = n_faces();
  if (nv < 3 || nf < 1) throw std::invalid_argument("TriMesh: empty mesh");
  if (len.size() != F.size()) {
    // default: intrinsic lengths from the embedding
    len.resize(F.size());
    for (int f = 0; f < nf; ++f)
      for (int i = 0; i < 3; ++i) len[f][i] = (V[F[f][iwrap3(i + 1)]] - V[F[f][i]]).norm();
  }

  max_edge = 0;
  mean_edge = 0;
  std::size_t count = 0;
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      if (F[f][i] < 0 || F[f][i] >= nv) throw std::invalid_argument("TriMesh: vertex index out of range");
      if (!(len[f][i] > 0)) throw std::invalid_argument("TriMesh: non-positive edge length");
      max_edge = std::max(max_edge, len[f][i]);
      mean_edge += len[f][i];
      ++count;
    }
    const double a = len[f][0], b = len[f][1], c = len[f][2];
    const double s = a + b + c;
    if (a + b - c <= 1e-12 * s || b + c - a <= 1e-12 * s || c + a - b <= 1e-12 * s)
      throw std::invalid_argument("TriMesh: degenerate face (triangle inequality)");
  }
  mean_edge /= static_cast<double>(count);

  // edge table
  edges.clear();
  fe.assign(nf, {-1, -1, -1});
  std::map<std::pair<int, int>, int> emap;
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      const int va = F[f][i], vb = F[f][iwrap3(i + 1)];
      if (va == vb) throw std::invalid_argument("TriMesh: repeated vertex in face");
      const auto key = std::minmax(va, vb);
      auto it = emap.find(key);
      if (it == emap.end()) {
        EdgeRec rec;
        rec.a = key.first;
        rec.b = key.second;
        rec.f0 = f;
        rec.s0 = i;
        rec.length = len[f][i];
        emap.emplace(key, static_cast<int>(edges.size()));
        fe[f][i] = static_cast<int>(edges.size());
        edges.push_back(rec);
      } else {
        EdgeRec& rec = edges[it->second];
        if (rec.f1 != -1) throw std::invalid_argument("TriMesh: non-manifold edge");
        // consistent winding: the second incidence must traverse b -> a
        if (F[rec.f0][rec.s0] == va)
          throw std::invalid_argument("TriMesh: inconsistent face orientation");
        if (std::abs(rec.length - len[f][i]) > 1e-9 * std::max(1.0, rec.length))
          throw std::invalid_argument("TriMesh: mismatched intrinsic lengths across an edge");
        rec.f1 = f;
        rec.s1 = i;
        fe[f][i] = it->second;
      }
    }
  }

  vboundary.assign(nv, 0);
  for (const EdgeRec& e : edges)
    if (e.f1 == -1) {
      vboundary[e.a] = 1;
      vboundary[e.b] = 1;
    }

  // ordered fans: walk CW until hitting boundary (or full circle), then emit CCW
  vfaces.assign(nv, {});
  std::vector<std::vector<int>> incident(nv);
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 3; ++i) incident[F[f][i]].push_back(f);
  for (int v = 0; v < nv; ++v) {
    if (incident[v].empty()) throw std::invalid_argument("TriMesh: isolated vertex");
    // next face CCW around v from face f: across the edge (prev corner -> v)
    auto next_ccw = [&](int f) {
      const int c = corner_of(f, v);
      const int e = fe[f][iwrap3(c + 2)];
      return other_face(e, f);
    };
    auto next_cw = [&](int f) {
      const int c = corner_of(f, v);
      const int e = fe[f][c];
      return other_face(e, f);
    };
    int start = incident[v][0];
    for (std::size_t step = 0; step < incident[v].size(); ++step) {
      const int prev = next_cw(start);
      if (prev == -1) break;
      start = prev;
    }
    std::vector<int> fan;
    int f = start;
    while (f != -1) {
      fan.push_back(f);
      if (fan.size() > incident[v].size()) throw std::invalid_argument("TriMesh: bad vertex fan");
      const int nxt = next_ccw(f);
      if (nxt == start) break;
      f = nxt;
    }
    if (fan.size() != incident[v].size())
      throw std::invalid_argument("TriMesh: vertex fan is not a single disk");
    vfaces[v] = std::move(fan);
  }

  // connectivity over faces
  std::vector<char> seen(nf, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!bfs.empty()) {
    const int f = bfs.front();
    bfs.pop();
    for (int i = 0; i < 3; ++i) {
      const int g = other_face(fe[f][i], f);
      if (g != -1 && !seen[g]) {
        seen[g] = 1;
        ++visited;
        bfs.push(g);
      }
    }
  }
  if (visited != nf) throw std::invalid_argument("TriMesh: disconnected mesh");
}

std::array<Eigen::Vector2d, 3> TriMesh::layout(int f) const {
  const double l0 = len[f][0], l1 = len[f][1], l2 = len[f][2];
  const double x = (l0 * l0 + l2 * l2 - l1 * l1) / (2 * l0);
  const double y2 = l2 * l2 - x * x;
  const double y = std::sqrt(std::max(y2, 0.0));
  return {Eigen::Vector2d(0, 0), Eigen::Vector2d(l0, 0), Eigen::Vector2d(x, y)};
}

double TriMesh::corner_angle(int f, int corner) const {
  const double adj1 = len[f][corner];
  const double adj2 = len[f][iwrap3(corner + 2)];
  const double opp = len[f][iwrap3(corner + 1)];
  return angle_from_sides(Kappa(0), adj1, adj2, opp);
}

double TriMesh::vertex_total_angle(int v) const {
  if (vboundary[v]) throw std::invalid_argument("vertex_total_angle: boundary vertex");
  double sum = 0;
  for (int f : vfaces[v]) sum += corner_angle(f, corner_of(f, v));
  return sum;
}

double TriMesh::vertex_boundary_angle(int v) const {
  if (!vboundary[v]) throw std::invalid_argument("vertex_boundary_angle: interior vertex");
  double sum = 0;
  for (int f : vfaces[v]) sum += corner_angle(f, corner_of(f, v));
  return sum;
}

int TriMesh::corner_of(int f, int v) const {
  for (int i = 0; i < 3; ++i)
    if (F[f][i] == v) return i;
  return -1;
}

int TriMesh::other_face(int e, int f) const {
  const EdgeRec& rec = edges[e];
  return rec.f0 == f ? rec.f1 : rec.f0;
}

Eigen::Vector3d TriMesh::edge_point(int e, double t) const {
  return (1 - t) * V[edges[e].a] + t * V[edges[e].b];
}

Eigen::Vector3d TriMesh::bary_point(int f, const Eigen::Vector3d& bary) const {
  return bary[0] * V[F[f][0]] + bary[1] * V[F[f][1]] + bary[2] * V[F[f][2]];
}

std::vector<std::vector<int>> TriMesh::boundary_loops() const {
  std::map<int, int> next;  // boundary vertex -> next along boundary (face CCW order)
  for (const EdgeRec& e : edges) {
    if (e.f1 != -1) continue;
    // the face traverses a->b per its winding; boundary loop follows it
    const int va = F[e.f0][e.s0], vb = F[e.f0][iwrap3(e.s0 + 1)];
    next[va] = vb;
  }
  std::vector<std::vector<int>> loops;
  std::map<int, char> used;
  for (const auto& [v0, v1] : next) {
    (void)v1;
    if (used.count(v0)) continue;
    std::vector<int> loop;
    int v = v0;
    do {
      loop.push_back(v);
      used[v] = 1;
      v = next.at(v);
    } while (v != v0 && loop.size() <= next.size());
    loops.push_back(std::move(loop));
  }
  return loops;
}

void TriMesh::scale(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("TriMesh::scale: lambda must be positive");
  for (auto& p : V) p *= lambda;
  for (auto& l : len)
    for (double& x : l) x *= lambda;
  for (auto& e : edges) e.length *= lambda;
  max_edge *= lambda;
  mean_edge *= lambda;
}

// --- builders -------------------------------------------------------------

namespace {

// split each grid quad along its shorter diagonal for symmetry
void push_quad(std::vector<std::array<int, 3>>& F, int a, int b, int c, int d) {
  // quad a-b-c-d (CCW): triangles (a,b,c),(a,c,d)
  F.push_back({a, b, c});
  F.push_back({a, c, d});
}

}  // namespace

TriMesh make_square_grid(int n, double side) {
  if (n < 2) throw std::invalid_argument("make_square_grid: n >= 2");
  TriMesh m;
  const double step = side / (n - 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.V.emplace_back(i * step, j * step, 0.0);
  auto id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      // alternate diagonals for an unbiased grid
      if ((i + j) % 2 == 0)
        push_quad(m.F, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
      else {
        m.F.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        m.F.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  m.finalize();
  return m;
}

TriMesh make_disk(int n_r, int n_phi, double radius) {
  if (n_r < 1 || n_phi < 3) throw std::invalid_argument("make_disk: bad resolution");
  TriMesh m;
  m.V.emplace_back(0, 0, 0);
  for (int j = 1; j <= n_r; ++j) {
    const double r = radius * j / n_r;
    for (int i = 0; i < n_phi; ++i) {
      const double a = 2 * M_PI * i / n_phi;
      m.V.emplace_back(r * std::cos(a), r * std::sin(a), 0.0);
    }
  }
  auto id = [n_phi](int j, int i) { return 1 + (j - 1) * n_phi + (i % n_phi); };
  for (int i = 0; i < n_phi; ++i) m.F.push_back({0, id(1, i), id(1, i + 1)});
  for (int j = 1; j < n_r; ++j)
    for (int i = 0; i < n_phi; ++i)
      push_quad(m.F, id(j, i), id(j + 1, i), id(j + 1, i + 1), id(j, i + 1));
  m.finalize();
  return m;
}

TriMesh make_cube(int n, double side) {
  if (n < 2) throw std::invalid_argument("make_cube: n >= 2");
  TriMesh m;
  std::map<std::array<long long, 3>, int> weld;
  auto vid = [&](const Eigen::Vector3d& p) {
    std::array<long long, 3> key;
    for (int k = 0; k < 3; ++k) key[k] = llround(p[k] * 1e9);
    auto it = weld.find(key);
    if (it != weld.end()) return it->second;
    const int id = static_cast<int>(m.V.size());
    m.V.push_back(p);
    weld.emplace(key, id);
    return id;
  };
  const double s = side;
  // each face: origin o, axes u,v so that u x v points outward
  struct Fc {
    Eigen::Vector3d o, u, v;
  };
  const std::vector<Fc> fcs = {
      {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}},  // bottom (z=0), normal -z
      {{0, 0, s}, {1, 0, 0}, {0, 1, 0}},  // top (z=s), normal +z
      {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}},  // front (y=0), normal -y
      {{0, s, 0}, {0, 0, 1}, {1, 0, 0}},  // back (y=s), normal +y
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},  // left (x=0), normal -x
      {{s, 0, 0}, {0, 1, 0}, {0, 0, 1}},  // right (x=s), normal +x
  };
  const double step = s / (n - 1);
  for (const Fc& fc : fcs) {
    std::vector<int> ids((std::size_t)n * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        ids[(std::size_t)j * n + i] = vid(fc.o + fc.u * (i * step) + fc.v * (j * step));
    for (int j = 0; j + 1 < n; ++j)
      for (int i = 0; i + 1 < n; ++i) {
        const int a = ids[(std::size_t)j * n + i], b = ids[(std::size_t)j * n + i + 1];
        const int c = ids[(std::size_t)(j + 1) * n + i + 1], d = ids[(std::size_t)(j + 1) * n + i];
        push_quad(m.F, a, b, c, d);
      }
  }
  m.finalize();
  return m;
}

TriMesh make_icosphere(int subdiv, double radius) {
  if (subdiv < 0 || subdiv > 8) throw std::invalid_argument("make_icosphere: subdiv in [0, 8]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> V = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : V) p.normalize();
  std::vector<std::array<int, 3>> F = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9},
      {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2},
      {3, 2, 6}, {3, 6, 8}, {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10},
      {8, 6, 7}, {9, 8, 1}};
  for (int level = 0; level < subdiv; ++level) {
    std::map<std::pair<int, int>, int> midcache;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midcache.find(key);
      if (it != midcache.end()) return it->second;
      const Eigen::Vector3d p = (V[a] + V[b]).normalized();
      V.push_back(p);
      const int id = static_cast<int>(V.size()) - 1;
      midcache.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> F2;
    F2.reserve(F.size() * 4);
    for (const auto& f : F) {
      const int ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      F2.push_back({f[0], ab, ca});
      F2.push_back({f[1], bc, ab});
      F2.push_back({f[2], ca, bc});
      F2.push_back({ab, bc, ca});
    }
    F = std::move(F2);
  }
  TriMesh m;
  m.V = std::move(V);
  for (auto& p : m.V) p *= radius;
  m.F = std::move(F);
  m.finalize();
  return m;
}

namespace {

// surface of revolution from profile samples (r_j > 0 except possibly at the
// two ends, which become tip vertices)
TriMesh revolve(const std::vector<double>& rs, const std::vector<double>& zs, int n_phi) {
  const int nz = static_cast<int>(rs.size());
  TriMesh m;
  std::vector<int> row_start(nz, -1);
  int tip_lo = -1, tip_hi = -1;
  for (int j = 0; j < nz; ++j) {
    if (rs[j] <= 0) {
      m.V.emplace_back(0, 0, zs[j]);
      if (j == 0)
        tip_lo = static_cast<int>(m.V.size()) - 1;
      else
        tip_hi = static_cast<int>(m.V.size()) - 1;
      continue;
    }
    row_start[j] = static_cast<int>(m.V.size());
    for (int i = 0; i < n_phi; ++i) {
      const double a = 2 * M_PI * i / n_phi;
      m.V.emplace_back(rs[j] * std::cos(a), rs[j] * std::sin(a), zs[j]);
    }
  }
  auto id = [&](int j, int i) { return row_start[j] + (i % n_phi); };
  for (int j = 0; j + 1 < nz; ++j) {
    if (rs[j] <= 0) {
      for (int i = 0; i < n_phi; ++i) m.F.push_back({tip_lo, id(j + 1, i + 1), id(j + 1, i)});
    } else if (rs[j + 1] <= 0) {
      for (int i = 0; i < n_phi; ++i) m.F.push_back({id(j, i), id(j, i + 1), tip_hi});
    } else {
      for (int i = 0; i < n_phi; ++i)
        push_quad(m.F, id(j, i), id(j, i + 1), id(j + 1, i + 1), id(j + 1, i));
    }
  }
  m.finalize();
  return m;
}

}  // namespace

TriMesh make_hyperboloid(double zmin, double zmax, int n_z, int n_phi) {
  if (!(zmin < zmax) || n_z < 2 || n_phi < 8) throw std::invalid_argument("make_hyperboloid: bad parameters");
  std::vector<double> rs, zs;
  for (int j = 0; j < n_z; ++j) {
    const double z = zmin + (zmax - zmin) * j / (n_z - 1);
    zs.push_back(z);
    rs.push_back(std::sqrt(1.0 + z * z));
  }
  return revolve(rs, zs, n_phi);
}

TriMesh make_football(double R, double c, int n_z, int n_phi) {
  if (!(R > c) || !(c >= 0) || n_z < 3 || n_phi < 8) throw std::invalid_argument("make_football: bad parameters");
  const double z0 = std::sqrt(R * R - c * c);
  std::vector<double> rs, zs;
  for (int j = 0; j < n_z; ++j) {
    // uniform in profile arc angle for even spacing through the tips
    const double beta = std::asin(z0 / R);
    const double a = -beta + 2 * beta * j / (n_z - 1);
    const double z = R * std::sin(a);
    zs.push_back(z);
    rs.push_back(j == 0 || j == n_z - 1 ? 0.0 : std::sqrt(R * R - z * z) - c);
  }
  return revolve(rs, zs, n_phi);
}

TriMesh make_cone_cap(double theta, double rmax, int n_r, int n_phi) {
  if (!(theta > 0) || !(rmax > 0) || n_r < 1 || n_phi < 3)
    throw std::invalid_argument("make_cone_cap: bad parameters");
  TriMesh m;
  // embed as the cone z = r_xy / slope with slant parameter r; for theta >= 2*pi fall back to a flat fan
  const double ratio = std::min(theta / (2 * M_PI), 1.0);
  const double rise = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  m.V.emplace_back(0, 0, 0);
  for (int j = 1; j <= n_r; ++j) {
    const double r = rmax * j / n_r;
    for (int i = 0; i < n_phi; ++i) {
      const double a = 2 * M_PI * i / n_phi;
      m.V.emplace_back(r * ratio * std::cos(a), r * ratio * std::sin(a), r * rise);
    }
  }
  auto id = [n_phi](int j, int i) { return 1 + (j - 1) * n_phi + (i % n_phi); };
  for (int i = 0; i < n_phi; ++i) m.F.push_back({0, id(1, i), id(1, i + 1)});
  for (int j = 1; j < n_r; ++j)
    for (int i = 0; i < n_phi; ++i)
      push_quad(m.F, id(j, i), id(j + 1, i), id(j + 1, i + 1), id(j, i + 1));
  // intrinsic lengths from the exact cone metric (unfolded chords)
  const double dphi = theta / n_phi;
  auto ring_r = [&](int vid) { return vid == 0 ? 0.0 : rmax * ((vid - 1) / n_phi + 1) / n_r; };
  m.len.resize(m.F.size());
  for (std::size_t f = 0; f < m.F.size(); ++f) {
    for (int i = 0; i < 3; ++i) {
      const int va = m.F[f][i], vb = m.F[f][(i + 1) % 3];
      const double ra = ring_r(va), rb = ring_r(vb);
      const int ia = va == 0 ? 0 : (va - 1) % n_phi, ib = vb == 0 ? 0 : (vb - 1) % n_phi;
      double sep = 0.0;
      if (va != 0 && vb != 0) {
        int di = std::abs(ia - ib);
        di = std::min(di, n_phi - di);
        sep = di * dphi;
      }
      m.len[f][i] = side_from_hinge(Kappa(0), ModelHinge{ra, rb, std::min(sep, M_PI)});
    }
  }
  m.finalize();
  return m;
}

TriMesh read_off(std::istream& in) {
  std::string tok;
  if (!(in >> tok) || tok != "OFF") throw std::invalid_argument("read_off: missing OFF header");
  long nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne)) throw std::invalid_argument("read_off: bad counts");
  TriMesh m;
  m.V.resize(nv);
  for (long i = 0; i < nv; ++i)
    if (!(in >> m.V[i].x() >> m.V[i].y() >> m.V[i].z()))
      throw std::invalid_argument("read_off: bad vertex line");
  for (long f = 0; f < nf; ++f) {
    int k = 0;
    if (!(in >> k)) throw std::invalid_argument("read_off: bad face line");
    if (k != 3) throw std::invalid_argument("read_off: only triangles are supported");
    std::array<int, 3> tri{};
    if (!(in >> tri[0] >> tri[1] >> tri[2])) throw std::invalid_argument("read_off: bad face line");
    m.F.push_back(tri);
  }
  m.finalize();
  return m;
}

TriMesh read_off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_off_file: cannot open " + path);
  return read_off(in);
}

void write_off(const TriMesh& m, std::ostream& out) {
  out << "OFF\n" << m.V.size() << ' ' << m.F.size() << " 0\n";
  for (const auto& p : m.V) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& f : m.F) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

}  // namespace curvlab
