#include "dgflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dgflow {

int TriMesh::local_face(int elem, int f) const {
  for (int k = 0; k < 3; ++k)
    if (elem_faces[elem][k] == f) return k;
  return -1;
}

Vec2 TriMesh::outward_normal(int elem, int f) const {
  const FaceRecord& face = faces[f];
  return elem == face.plus_elem ? face.normal : Vec2(-face.normal);
}

std::array<double, 3> TriMesh::barycentric(int elem, const Vec2& x) const {
  const Vec2& a = vertex_of(elem, 0);
  const Vec2& b = vertex_of(elem, 1);
  const Vec2& c = vertex_of(elem, 2);
  const double inv2a = 1.0 / (2.0 * areas[elem]);
  const double l0 = cross2(b - x, c - x) * inv2a;
  const double l1 = cross2(c - x, a - x) * inv2a;
  return {l0, l1, 1.0 - l0 - l1};
}

bool TriMesh::boundary_tagged() const {
  for (int f = 0; f < n_faces(); ++f) {
    if (!faces[f].is_boundary()) continue;
    if (pressure_bc[f] == PressureBc::Untagged || saturation_bc[f] == SaturationBc::Untagged)
      return false;
  }
  return true;
}

void finalize_connectivity(TriMesh& mesh) {
  const int ne = mesh.n_elems();
  mesh.areas.resize(ne);
  mesh.centroids.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Vec2& a = mesh.vertex_of(e, 0);
    const Vec2& b = mesh.vertex_of(e, 1);
    const Vec2& c = mesh.vertex_of(e, 2);
    mesh.areas[e] = triangle_area(a, b, c);
    if (!(mesh.areas[e] > 0.0))
      throw std::runtime_error("mesh: triangle " + std::to_string(e) +
                               " is degenerate or not counterclockwise");
    mesh.centroids[e] = (a + b + c) / 3.0;
  }

  // edge -> incident (element, local edge) pairs
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_map;
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 3; ++k) {
      int va = mesh.triangles[e][k];
      int vb = mesh.triangles[e][(k + 1) % 3];
      edge_map[{std::min(va, vb), std::max(va, vb)}].push_back({e, k});
    }
  }

  mesh.faces.clear();
  mesh.elem_faces.assign(ne, {-1, -1, -1});
  for (const auto& [key, inc] : edge_map) {
    if (inc.size() > 2)
      throw std::runtime_error("mesh: non-conforming edge shared by more than two triangles");
    FaceRecord face;
    // plus element: the lower element id
    auto by_elem = inc;
    std::sort(by_elem.begin(), by_elem.end());
    const auto [ep, kp] = by_elem.front();
    face.plus_elem = ep;
    face.minus_elem = by_elem.size() == 2 ? by_elem.back().first : -1;
    // endpoints in the plus element's ccw order; outward normal is to the right
    const int va = mesh.triangles[ep][kp];
    const int vb = mesh.triangles[ep][(kp + 1) % 3];
    face.verts = {va, vb};
    const Vec2 d = mesh.vertices[vb] - mesh.vertices[va];
    face.length = d.norm();
    if (!(face.length > 0.0)) throw std::runtime_error("mesh: zero-length edge");
    face.normal = Vec2(d.y(), -d.x()) / face.length;
    face.midpoint = 0.5 * (mesh.vertices[va] + mesh.vertices[vb]);
    const int fid = static_cast<int>(mesh.faces.size());
    for (const auto& [e, k] : inc) mesh.elem_faces[e][k] = fid;
    mesh.faces.push_back(face);
  }

  mesh.pressure_bc.assign(mesh.n_faces(), PressureBc::Untagged);
  mesh.saturation_bc.assign(mesh.n_faces(), SaturationBc::Untagged);

  mesh.patches.assign(mesh.n_verts(), {});
  for (int e = 0; e < ne; ++e)
    for (int k = 0; k < 3; ++k) mesh.patches[mesh.triangles[e][k]].push_back(e);

  if (mesh.mesh_size <= 0.0) {
    double hmax = 0.0;
    for (const FaceRecord& f : mesh.faces) hmax = std::max(hmax, f.length);
    mesh.mesh_size = hmax;
  }
}

TriMesh generate_crossed(int nx, int ny, double lx, double ly) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("generate_crossed: cell counts must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("generate_crossed: domain lengths must be positive");

  TriMesh mesh;
  const double hx = lx / nx;
  const double hy = ly / ny;
  const int ncorner = (nx + 1) * (ny + 1);
  mesh.vertices.reserve(ncorner + nx * ny);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) mesh.vertices.emplace_back(i * hx, j * hy);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      mesh.vertices.emplace_back((i + 0.5) * hx, (j + 0.5) * hy);

  mesh.triangles.reserve(4 * nx * ny);
  auto corner = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = corner(i, j);
      const int b = corner(i + 1, j);
      const int c = corner(i + 1, j + 1);
      const int d = corner(i, j + 1);
      const int m = ncorner + j * nx + i;
      mesh.triangles.push_back({a, b, m});  // bottom
      mesh.triangles.push_back({b, c, m});  // right
      mesh.triangles.push_back({c, d, m});  // top
      mesh.triangles.push_back({d, a, m});  // left
    }
  }

  mesh.mesh_size = hx;
  finalize_connectivity(mesh);
  return mesh;
}

void classify_boundary(TriMesh& mesh, const std::vector<BoundaryRule>& rules) {
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (!mesh.faces[f].is_boundary()) continue;
    const Vec2& mid = mesh.faces[f].midpoint;
    bool matched = false;
    for (const BoundaryRule& rule : rules) {
      if (!rule.where(mid)) continue;
      if (rule.pressure == PressureBc::Untagged || rule.saturation == SaturationBc::Untagged)
        throw std::invalid_argument("classify_boundary: rule must set both classes");
      mesh.pressure_bc[f] = rule.pressure;
      mesh.saturation_bc[f] = rule.saturation;
      matched = true;
      break;
    }
    if (!matched) {
      std::ostringstream os;
      os << "classify_boundary: no rule covers boundary face at (" << mid.x() << ", " << mid.y()
         << ")";
      throw std::runtime_error(os.str());
    }
    // Saturation Dirichlet faces must carry pressure data, and outflow is the
    // pressure-Dirichlet remainder, so only three combinations are admissible.
    const PressureBc p = mesh.pressure_bc[f];
    const SaturationBc s = mesh.saturation_bc[f];
    const bool ok = (p == PressureBc::Dirichlet &&
                     (s == SaturationBc::Dirichlet || s == SaturationBc::Outflow)) ||
                    (p == PressureBc::Neumann && s == SaturationBc::Neumann);
    if (!ok) {
      std::ostringstream os;
      os << "classify_boundary: inconsistent class pair on face at (" << mid.x() << ", "
         << mid.y() << ")";
      throw std::runtime_error(os.str());
    }
  }
}

std::vector<BoundaryRule> box_side_rules(double lx, double ly,
                                         PressureBc pl, SaturationBc sl,
                                         PressureBc pr, SaturationBc sr,
                                         PressureBc pb, SaturationBc sb,
                                         PressureBc pt, SaturationBc st) {
  const double tx = 1e-9 * lx;
  const double ty = 1e-9 * ly;
  std::vector<BoundaryRule> rules;
  rules.push_back({[tx](const Vec2& m) { return std::abs(m.x()) < tx; }, pl, sl});
  rules.push_back({[lx, tx](const Vec2& m) { return std::abs(m.x() - lx) < tx; }, pr, sr});
  rules.push_back({[ty](const Vec2& m) { return std::abs(m.y()) < ty; }, pb, sb});
  rules.push_back({[ly, ty](const Vec2& m) { return std::abs(m.y() - ly) < ty; }, pt, st});
  return rules;
}

std::vector<BoundaryRule> uniform_boundary_rule(PressureBc p, SaturationBc s) {
  return {BoundaryRule{[](const Vec2&) { return true; }, p, s}};
}

TriMesh read_tri_mesh(std::istream& in) {
  TriMesh mesh;
  int nv = 0;
  if (!(in >> nv) || nv < 3) throw std::runtime_error("mesh import: bad vertex count");
  mesh.vertices.resize(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> mesh.vertices[i].x() >> mesh.vertices[i].y()))
      throw std::runtime_error("mesh import: truncated vertex list");
  int nt = 0;
  if (!(in >> nt) || nt < 1) throw std::runtime_error("mesh import: bad triangle count");
  mesh.triangles.resize(nt);
  for (int e = 0; e < nt; ++e) {
    auto& t = mesh.triangles[e];
    if (!(in >> t[0] >> t[1] >> t[2])) throw std::runtime_error("mesh import: truncated triangle list");
    for (int k = 0; k < 3; ++k)
      if (t[k] < 0 || t[k] >= nv) throw std::runtime_error("mesh import: vertex index out of range");
  }
  finalize_connectivity(mesh);
  return mesh;
}

TriMesh load_tri_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mesh import: cannot open " + path);
  return read_tri_mesh(in);
}

void write_tri_mesh(const TriMesh& mesh, std::ostream& out) {
  out.precision(17);
  out << mesh.n_verts() << "\n";
  for (const Vec2& v : mesh.vertices) out << v.x() << " " << v.y() << "\n";
  out << mesh.n_elems() << "\n";
  for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void save_tri_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("mesh export: cannot open " + path);
  write_tri_mesh(mesh, out);
}

}  // namespace dgflow
