#include "dgflow/dg_space.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace dgflow {

double DGField::value_at(int elem, const Vec2& x) const {
  const auto b = mesh_->barycentric(elem, x);
  for (double bi : b)
    if (bi < -1e-10 || bi > 1.0 + 1e-10)
      throw std::domain_error("DGField::value_at: point outside element");
  return value_bary(elem, b);
}

Vec2 DGField::gradient(int elem) const {
  const auto grads = basis_gradients(*mesh_, elem);
  return coeff(elem, 0) * grads[0] + coeff(elem, 1) * grads[1] + coeff(elem, 2) * grads[2];
}

Eigen::VectorXd DGField::cell_means() const {
  Eigen::VectorXd m(mesh_->n_elems());
  for (int e = 0; e < mesh_->n_elems(); ++e) m[e] = cell_mean(e);
  return m;
}

std::array<Vec2, 3> basis_gradients(const TriMesh& mesh, int elem) {
  const Vec2& a = mesh.vertex_of(elem, 0);
  const Vec2& b = mesh.vertex_of(elem, 1);
  const Vec2& c = mesh.vertex_of(elem, 2);
  const double inv2a = 1.0 / (2.0 * mesh.areas[elem]);
  // grad of barycentric coordinate i is the rotated opposite edge
  auto perp = [](const Vec2& u) { return Vec2(-u.y(), u.x()); };
  return {perp(c - b) * inv2a, perp(a - c) * inv2a, perp(b - a) * inv2a};
}

DGField l2_project(const TriMesh& mesh, const ScalarField& g, const TriQuadrature& quad) {
  DGField out(mesh);
  // P1 mass matrix on a triangle: |E|/12 * (I + ones)
  Eigen::Matrix3d mass_ref;
  mass_ref << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int q = 0; q < quad.size(); ++q) {
      const auto& b = quad.bary[q];
      const Vec2 x = b[0] * mesh.vertex_of(e, 0) + b[1] * mesh.vertex_of(e, 1) +
                     b[2] * mesh.vertex_of(e, 2);
      const double w = quad.weight[q] * mesh.areas[e] * g(x);
      rhs += w * Eigen::Vector3d(b[0], b[1], b[2]);
    }
    const Eigen::Matrix3d mass = (mesh.areas[e] / 12.0) * mass_ref;
    const Eigen::Vector3d coeff = mass.ldlt().solve(rhs);
    for (int k = 0; k < 3; ++k) out.coeff(e, k) = coeff[k];
  }
  return out;
}

std::array<int, 2> face_local_vertices(const TriMesh& mesh, int elem, int face) {
  const auto& fv = mesh.faces[face].verts;
  std::array<int, 2> loc = {-1, -1};
  for (int k = 0; k < 3; ++k) {
    if (mesh.triangles[elem][k] == fv[0]) loc[0] = k;
    if (mesh.triangles[elem][k] == fv[1]) loc[1] = k;
  }
  if (loc[0] < 0 || loc[1] < 0)
    throw std::logic_error("face_local_vertices: face not incident to element");
  return loc;
}

FaceTrace face_trace(const DGField& f, int face) {
  const TriMesh& mesh = f.mesh();
  const FaceRecord& rec = mesh.faces[face];
  FaceTrace tr;
  const auto lp = face_local_vertices(mesh, rec.plus_elem, face);
  tr.plus0 = f.coeff(rec.plus_elem, lp[0]);
  tr.plus1 = f.coeff(rec.plus_elem, lp[1]);
  if (rec.is_boundary()) {
    tr.boundary = true;
  } else {
    const auto lm = face_local_vertices(mesh, rec.minus_elem, face);
    tr.minus0 = f.coeff(rec.minus_elem, lm[0]);
    tr.minus1 = f.coeff(rec.minus_elem, lm[1]);
  }
  return tr;
}

}  // namespace dgflow
