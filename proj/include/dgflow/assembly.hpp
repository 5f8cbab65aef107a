#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dgflow/limiter.hpp"
#include "dgflow/problem.hpp"

namespace dgflow {

// Face-averaged normal components of the scaled phase velocities computed
// from the previous time level; frozen during the Newton iterations of the
// current step. Boundary entries are unused.
struct LaggedFaceVelocities {
  std::vector<double> nonwetting;  // {{v_l}} . n_e per face
  std::vector<double> wetting;     // {{v_w}} . n_e per face
};

/// Element supplying the upwind trace: the plus side for positive
/// face-averaged normal velocity, the minus side otherwise.
int upwind_element(const TriMesh& mesh, int face, double avg_normal_velocity);

struct LinearTrace {
  double v0 = 0.0, v1 = 0.0;
  double operator()(double t) const { return (1.0 - t) * v0 + t * v1; }
};

LinearTrace upwind_trace(const DGField& f, int face, double avg_normal_velocity);

// Residual and Jacobian of the coupled fully implicit DG system. Unknown
// ordering: element-major, pressure nodes then saturation nodes
// (dof = 6*elem + k for pressure, 6*elem + 3 + k for saturation).
class Assembler {
 public:
  Assembler(const TriMesh& mesh, const ProblemConfig& config);

  const TriMesh& mesh() const { return mesh_; }
  const ProblemConfig& config() const { return config_; }
  int n_dofs() const { return 6 * mesh_.n_elems(); }

  LaggedFaceVelocities lagged_velocities(const FlowState& prev) const;

  /// Residual (LHS - RHS of both weak forms) and/or Jacobian at `next`.
  /// Boundary data and external sources are evaluated at next.time.
  void assemble(const FlowState& next, const FlowState& prev,
                const LaggedFaceVelocities& lagged, Eigen::VectorXd* residual,
                std::vector<Eigen::Triplet<double>>* jacobian) const;

  /// Wetting-phase face flux table of the converged state; antisymmetric
  /// across interior faces and consistent with the residual tested against
  /// element indicator functions.
  FluxTable flux_table(const FlowState& next, const FlowState& prev,
                       const LaggedFaceVelocities& lagged) const;

  /// Element-averaged coefficients for the flux-limited mean update.
  MeanUpdateData mean_update_data(const FlowState& next, const FlowState& prev) const;

  static int pressure_dof(int elem, int k) { return 6 * elem + k; }
  static int saturation_dof(int elem, int k) { return 6 * elem + 3 + k; }

 private:
  struct SideCache {
    int elem = -1;
    std::array<int, 2> loc = {-1, -1};  // local vertex ids of the face endpoints
  };
  struct FaceCache {
    std::array<Vec2, 3> xq;  // physical quadrature points
    SideCache plus, minus;
    double penalty = 0.0;  // sigma/h, with the Dirichlet factor where it applies
  };
  struct ElemCache {
    std::array<Vec2, 3> grads;
    std::array<Vec2, 6> xq;
  };

  double trace_value(const DGField& f, const SideCache& side, double t) const {
    return (1.0 - t) * f.coeff(side.elem, side.loc[0]) + t * f.coeff(side.elem, side.loc[1]);
  }

  const TriMesh& mesh_;
  const ProblemConfig& config_;
  std::vector<ElemCache> elems_;
  std::vector<FaceCache> faces_;
};

}  // namespace dgflow
