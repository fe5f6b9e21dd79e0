// Polygonal meshes of the unit square: generators, validation, text I/O.

#ifndef VEM_MESH_HPP
#define VEM_MESH_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vem/common.hpp"

namespace vem {

/// Undirected mesh edge. `cell[1] == -1` marks a boundary edge.
struct MeshEdge {
  int a = -1;  ///< vertex index, a < b
  int b = -1;
  int cell[2] = {-1, -1};
};

/// A conforming polygonal tessellation. Vertices + CCW cells are the stored
/// data; edges and boundary flags are derived by finalize().
class PolyMesh {
 public:
  std::vector<Vector2> vertices;
  std::vector<std::vector<int>> cells;  ///< CCW vertex-index cycles

  std::vector<MeshEdge> edges;
  std::vector<bool> boundary_edge;
  std::vector<bool> boundary_vertex;
  /// Per cell, the edge index of side (v_i, v_{i+1}).
  std::vector<std::vector<int>> cell_edges;

  /// Rebuilds the derived topology. Throws ParseError on out-of-range vertex
  /// indices or on edges shared by more than two cells.
  void finalize();

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  /// True when cell `c` traverses edge `e` from edges[e].a to edges[e].b.
  bool cell_edge_forward(int c, int local_edge) const;
};

/// Per-element geometric quantities used by every local computation.
struct ElementGeometry {
  std::vector<Vector2> vertex;  ///< CCW
  double area = 0.0;
  Vector2 centroid = Vector2::Zero();
  double diameter = 0.0;                ///< h_E, max pairwise vertex distance
  std::vector<double> edge_length;      ///< side i = (v_i, v_{i+1})
  std::vector<Vector2> edge_normal;     ///< unit outward
  double perimeter = 0.0;

  int n_vertices() const { return static_cast<int>(vertex.size()); }
  Vector2 edge_start(int i) const { return vertex[i]; }
  Vector2 edge_end(int i) const { return vertex[(i + 1) % vertex.size()]; }
};

ElementGeometry element_geometry(const PolyMesh& mesh, int cell);
ElementGeometry element_geometry(const std::vector<Vector2>& polygon);

double polygon_signed_area(const std::vector<Vector2>& poly);
bool polygon_is_simple(const std::vector<Vector2>& poly);
bool point_in_polygon(const std::vector<Vector2>& poly, const Vector2& p);

struct CellRegularity {
  double min_edge_ratio = 0.0;  ///< min edge length / h_E
  double inradius_ratio = 0.0;  ///< best sampled kernel-ball radius / h_E
  bool has_reflex_vertex = false;
  bool simple = true;
  bool ccw = true;
};

/// Numeric rendering of the mesh assumptions: per-cell shape ratios checked
/// against a user threshold theta. Failures are data, not exceptions.
struct RegularityReport {
  std::vector<CellRegularity> cell;
  double h = 0.0;                 ///< max h_E
  double worst_edge_ratio = 0.0;
  double worst_inradius_ratio = 0.0;
  double area_sum = 0.0;
  bool tiles_unit_square = false;  ///< area sum == 1 within 1e-12 relative
  bool edges_conforming = false;   ///< interior edges have exactly 2 cells
  bool all_simple_ccw = false;
  bool any_concave = false;
  double theta = 0.0;
  bool pass = false;  ///< ratios >= theta and structural checks hold

  bool structurally_valid() const {
    return tiles_unit_square && edges_conforming && all_simple_ccw;
  }
};

RegularityReport validate(const PolyMesh& mesh, double theta);

// Mesh families used by the convergence studies (unit square).
PolyMesh generate_structured_quads(int n);
PolyMesh generate_distorted_quads(int n, double amplitude, std::uint64_t seed);
PolyMesh generate_voronoi(int n_seeds, int lloyd_iterations, std::uint64_t seed);
PolyMesh generate_nonconvex(int n);

PolyMesh read_mesh(const std::string& path);
PolyMesh read_mesh(std::istream& in, const std::string& name);
void write_mesh(const PolyMesh& mesh, const std::string& path);
void write_mesh(const PolyMesh& mesh, std::ostream& out);

}  // namespace vem

#endif
