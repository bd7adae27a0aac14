#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

// Triangle mesh with intrinsic edge lengths: the discrete carrier for all
// surface backends. Faces are CCW as seen from outside; the metric lives in
// the per-face edge lengths, the 3D positions are used for output and as an
// admissible lower bound in searches (a 3D chord never exceeds an intrinsic
// path length for the builders in this file).

namespace curvlab {

struct TriMesh {
  std::vector<Eigen::Vector3d> V;
  std::vector<std::array<int, 3>> F;
  // len[f][i] = intrinsic length of the edge F[f][i] -> F[f][(i+1)%3]
  std::vector<std::array<double, 3>> len;

  struct EdgeRec {
    int a = -1, b = -1;    // a < b
    int f0 = -1, s0 = -1;  // face and slot of first incidence
    int f1 = -1, s1 = -1;  // second incidence, -1 on boundary
    double length = 0.0;
  };
  std::vector<EdgeRec> edges;
  std::vector<std::array<int, 3>> fe;     // face -> edge id per slot
  std::vector<std::vector<int>> vfaces;   // vertex -> incident faces, CCW order
  std::vector<char> vboundary;
  double max_edge = 0.0;
  double mean_edge = 0.0;

  int n_vertices() const { return static_cast<int>(V.size()); }
  int n_faces() const { return static_cast<int>(F.size()); }

  // Build connectivity and validate: per-face triangle inequality, manifold
  // edges, consistent lengths across shared edges, connectedness.
  // Throws std::invalid_argument on violations.
  void finalize();

  // Isometric planar layout of face f (CCW): corner 0 at origin, corner 1 on +x.
  std::array<Eigen::Vector2d, 3> layout(int f) const;

  double corner_angle(int f, int corner) const;

  // Sum of incident face angles at an interior vertex; throws for boundary
  // vertices (use boundary_angle there).
  double vertex_total_angle(int v) const;
  double vertex_boundary_angle(int v) const;

  int corner_of(int f, int v) const;            // index of v in F[f], -1 if absent
  int other_face(int e, int f) const;           // face across edge e, -1 on boundary
  Eigen::Vector3d edge_point(int e, double t) const;  // 3D position at param t along edge a->b
  Eigen::Vector3d bary_point(int f, const Eigen::Vector3d& bary) const;

  // boundary loops as ordered vertex cycles (CCW around the surface)
  std::vector<std::vector<int>> boundary_loops() const;

  void scale(double lambda);  // multiply all lengths and positions by lambda
};

// --- builders -------------------------------------------------------------

TriMesh make_square_grid(int n, double side = 1.0);
TriMesh make_disk(int n_r, int n_phi, double radius = 1.0);
TriMesh make_cube(int n, double side = 1.0);
TriMesh make_icosphere(int subdiv, double radius = 1.0);
// one-sheet hyperboloid x^2 + y^2 - z^2 = 1 for z in [zmin, zmax]
TriMesh make_hyperboloid(double zmin, double zmax, int n_z, int n_phi);
// surface of revolution of a circular arc about its chord ("american
// football"): profile r(z) = sqrt(R^2 - z^2) - c for |z| <= sqrt(R^2 - c^2)
TriMesh make_football(double R, double c, int n_z, int n_phi);
// polyhedral cone cap of total apex angle theta and slant radius rmax, with
// intrinsic lengths taken from the exact cone metric (apex angle exact)
TriMesh make_cone_cap(double theta, double rmax, int n_r, int n_phi);

// ASCII OFF subset: triangles only.
TriMesh read_off(std::istream& in);
TriMesh read_off_file(const std::string& path);
void write_off(const TriMesh& m, std::ostream& out);

}  // namespace curvlab
