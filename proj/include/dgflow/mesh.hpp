#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dgflow/types.hpp"

namespace dgflow {

/// Boundary condition class for the pressure unknown on a boundary face.
enum class PressureBc : std::uint8_t { Untagged, Dirichlet, Neumann };

/// Boundary condition class for the saturation unknown on a boundary face.
/// Outflow faces carry Dirichlet pressure data but no saturation data.
enum class SaturationBc : std::uint8_t { Untagged, Dirichlet, Outflow, Neumann };

struct FaceRecord {
  std::array<int, 2> verts;  // endpoint vertex ids
  int plus_elem = -1;        // E+; the lower element id on interior faces
  int minus_elem = -1;       // E-; -1 on boundary faces
  Vec2 normal;               // unit, oriented E+ -> E-; outward on boundary
  double length = 0.0;
  Vec2 midpoint;

  bool is_boundary() const { return minus_elem < 0; }
};

// Conforming triangulation with face connectivity and boundary tags.
// Immutable after construction apart from boundary classification.
struct TriMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise vertex ids
  std::vector<FaceRecord> faces;
  std::vector<std::array<int, 3>> elem_faces;  // face id of local edge k = (v_k, v_{k+1})
  std::vector<PressureBc> pressure_bc;         // per face; Untagged on interior faces
  std::vector<SaturationBc> saturation_bc;

  // cached geometry
  std::vector<double> areas;
  std::vector<Vec2> centroids;
  std::vector<std::vector<int>> patches;  // per vertex: incident triangles

  double mesh_size = 0.0;  // penalty length scale; cell edge for crossed meshes

  int n_elems() const { return static_cast<int>(triangles.size()); }
  int n_verts() const { return static_cast<int>(vertices.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }

  const Vec2& vertex_of(int elem, int k) const { return vertices[triangles[elem][k]]; }

  /// Local index (0..2) of face `f` within element `elem`; -1 if not incident.
  int local_face(int elem, int f) const;

  /// Outward normal of `elem` on face `f` (normal or its negation).
  Vec2 outward_normal(int elem, int f) const;

  /// Barycentric coordinates of x in element elem.
  std::array<double, 3> barycentric(int elem, const Vec2& x) const;

  bool boundary_tagged() const;
};

TriMesh generate_crossed(int nx, int ny, double lx, double ly);

// Boundary classification by midpoint predicates; first matching rule wins.
struct BoundaryRule {
  std::function<bool(const Vec2&)> where;
  PressureBc pressure = PressureBc::Untagged;
  SaturationBc saturation = SaturationBc::Untagged;
};

void classify_boundary(TriMesh& mesh, const std::vector<BoundaryRule>& rules);

/// One rule per side of the axis-aligned box [0,lx]x[0,ly], in the order
/// left, right, bottom, top.
std::vector<BoundaryRule> box_side_rules(double lx, double ly,
                                         PressureBc pl, SaturationBc sl,
                                         PressureBc pr, SaturationBc sr,
                                         PressureBc pb, SaturationBc sb,
                                         PressureBc pt, SaturationBc st);

/// Single rule covering the whole boundary.
std::vector<BoundaryRule> uniform_boundary_rule(PressureBc p, SaturationBc s);

// Plain-text mesh exchange: vertex count + coordinates, triangle count +
// 0-based index triples. Units are meters.
TriMesh read_tri_mesh(std::istream& in);
TriMesh load_tri_mesh(const std::string& path);
void write_tri_mesh(const TriMesh& mesh, std::ostream& out);
void save_tri_mesh(const TriMesh& mesh, const std::string& path);

/// Build faces, connectivity, and cached geometry from vertices+triangles.
/// Throws on degenerate or non-conforming input.
void finalize_connectivity(TriMesh& mesh);

}  // namespace dgflow
