#pragma once

#include <Eigen/Core>
#include <functional>

#include "dgflow/mesh.hpp"
#include "dgflow/quadrature.hpp"

namespace dgflow {

using ScalarField = std::function<double(const Vec2&)>;

// Piecewise-linear fully discontinuous scalar field in the vertex-value
// nodal basis: coefficient k of element e is the value at triangle vertex k.
class DGField {
 public:
  DGField() = default;
  explicit DGField(const TriMesh& mesh, double init = 0.0)
      : mesh_(&mesh), coeff_(Eigen::VectorXd::Constant(3 * mesh.n_elems(), init)) {}

  const TriMesh& mesh() const { return *mesh_; }
  Eigen::VectorXd& coeffs() { return coeff_; }
  const Eigen::VectorXd& coeffs() const { return coeff_; }

  double coeff(int elem, int k) const { return coeff_[3 * elem + k]; }
  double& coeff(int elem, int k) { return coeff_[3 * elem + k]; }

  double value_bary(int elem, const std::array<double, 3>& b) const {
    return b[0] * coeff(elem, 0) + b[1] * coeff(elem, 1) + b[2] * coeff(elem, 2);
  }

  /// Evaluate at a physical point; the point must lie inside the element
  /// within a 1e-10 barycentric tolerance.
  double value_at(int elem, const Vec2& x) const;

  /// Piecewise-constant gradient on the element.
  Vec2 gradient(int elem) const;

  // For P1 in the nodal basis the element average is the coefficient mean.
  double cell_mean(int elem) const {
    return (coeff(elem, 0) + coeff(elem, 1) + coeff(elem, 2)) / 3.0;
  }
  Eigen::VectorXd cell_means() const;

  double min_coeff() const { return coeff_.minCoeff(); }
  double max_coeff() const { return coeff_.maxCoeff(); }

 private:
  const TriMesh* mesh_ = nullptr;
  Eigen::VectorXd coeff_;
};

/// L2 projection of an analytic function onto the P1 DG space.
DGField l2_project(const TriMesh& mesh, const ScalarField& g,
                   const TriQuadrature& quad = TriQuadrature::degree4());

// Traces of a DG field along one face, parameterized by t in [0,1]
// running from face vertex 0 to vertex 1. On boundary faces jump and
// average coincide with the plus-side trace.
struct FaceTrace {
  double plus0 = 0.0, plus1 = 0.0;    // plus-side values at the endpoints
  double minus0 = 0.0, minus1 = 0.0;  // unused on boundary faces
  bool boundary = false;

  double plus(double t) const { return (1.0 - t) * plus0 + t * plus1; }
  double minus(double t) const { return (1.0 - t) * minus0 + t * minus1; }
  double jump(double t) const { return boundary ? plus(t) : plus(t) - minus(t); }
  double average(double t) const { return boundary ? plus(t) : 0.5 * (plus(t) + minus(t)); }
};

FaceTrace face_trace(const DGField& f, int face);

/// Gradients of the three nodal basis functions of an element.
std::array<Vec2, 3> basis_gradients(const TriMesh& mesh, int elem);

/// Local vertex indices of a face's two endpoints within element `elem`.
std::array<int, 2> face_local_vertices(const TriMesh& mesh, int elem, int face);

}  // namespace dgflow
