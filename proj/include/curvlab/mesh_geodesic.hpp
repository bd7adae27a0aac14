#pragma once

#include <Eigen/Dense>

#include <vector>

#include "curvlab/trimesh.hpp"

// Discrete geodesics on a TriMesh: a Steiner-point-augmented edge-graph
// search gives an upper-bound corridor, the corridor is unfolded into the
// plane and pulled taut (funnel), and passages through mesh vertices are
// rerouted to the shorter side until the path is locally geodesic. The
// reported error estimate is C * max_edge; on flat regions the straightened
// result is exact to round-off.

namespace curvlab {

struct MeshPointLoc {
  int face = -1;
  Eigen::Vector3d bary{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

struct MeshWaypoint {
  enum class Kind { Face, Edge, Vertex };
  Kind kind = Kind::Face;
  int id = -1;     // face, edge, or vertex id depending on kind
  double t = 0.0;  // edge param along edges[id].a -> edges[id].b
  Eigen::Vector3d bary{0, 0, 0};  // Kind::Face only
};

struct MeshTrack {
  std::vector<MeshWaypoint> wps;
  std::vector<int> seg_face;  // face carrying each segment, size wps.size()-1
  std::vector<double> cum;    // cumulative intrinsic length at each waypoint
  double length = 0.0;

  bool hit_boundary = false;  // shooting only
  bool hit_vertex = false;
};

struct GeodesicOptions {
  int steiner = 2;     // extra graph nodes per edge
  int max_flips = 80;  // vertex reroute iterations
  double err_c = 1.0;  // error estimate constant in C * max_edge
};

class GeodesicEngine {
 public:
  explicit GeodesicEngine(const TriMesh& m, GeodesicOptions opt = {});

  const TriMesh& mesh() const { return m_; }
  const GeodesicOptions& options() const { return opt_; }
  double err_estimate() const { return opt_.err_c * m_.max_edge; }

  MeshTrack shortest_path(const MeshPointLoc& src, const MeshPointLoc& dst) const;
  double distance(const MeshPointLoc& a, const MeshPointLoc& b) const;

  // Graph-level (upper bound, no straightening) distances from src to each
  // dst; used to preselect candidates before exact queries.
  std::vector<double> graph_distances(const MeshPointLoc& src,
                                      const std::vector<MeshPointLoc>& dsts) const;

  // Multi-source graph distance from a set of source points to every mesh
  // vertex (no straightening; error folded into the C*h tolerance model).
  std::vector<double> multi_source_vertex_distances(const std::vector<MeshPointLoc>& sources) const;

  Eigen::Vector3d bary_of_layout_point(int f, const Eigen::Vector2d& p) const;
  Eigen::Vector2d layout_point(int f, const Eigen::Vector3d& bary) const;
  const std::array<Eigen::Vector2d, 3>& layout(int f) const { return layouts_[f]; }

  struct Scratch;

 private:
  int node_count() const;
  int steiner_node(int e, int k) const;
  Eigen::Vector2d node_pos2d(int f, int node) const;
  Eigen::Vector3d node_pos3d(int node) const;
  void search(const MeshPointLoc& src, const std::vector<MeshPointLoc>& dsts, Scratch& s) const;
  MeshTrack straighten(const MeshPointLoc& src, const MeshPointLoc& dst,
                       std::vector<int> corridor) const;
  double vertex_ray_angle(int v, int f, const MeshWaypoint& w) const;
  std::vector<int> fan_chain(int v, int fa, int fb, bool ccw) const;
  std::vector<int> fan_chain_shorter(int v, int fa, int fb) const;

  const TriMesh& m_;
  GeodesicOptions opt_;
  std::vector<std::array<Eigen::Vector2d, 3>> layouts_;
};

// Straight walk of given length over the mesh from a point in a chart
// direction (angle in the start face's layout frame). Stops early at the mesh
// boundary or when running into a vertex.
MeshTrack shoot_on_mesh(const TriMesh& m, const GeodesicEngine& eng, const MeshPointLoc& start,
                        double chart_angle, double length);

// chart angle of the first segment of a track, in the frame of its start face
double track_start_direction(const GeodesicEngine& eng, const MeshTrack& t);

// waypoint -> (face, bary) using the given adjacent face when applicable
MeshPointLoc waypoint_loc(const TriMesh& m, const MeshWaypoint& w, int seg_face);

}  // namespace curvlab
