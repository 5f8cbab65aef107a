#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <random>

#include "dgflow/assembly.hpp"

namespace dgflow::testing {

inline FlowState make_state(const TriMesh& mesh, double p, double s, double time = 0.0) {
  FlowState st;
  st.pressure = DGField(mesh, p);
  st.saturation = DGField(mesh, s);
  st.time = time;
  return st;
}

inline void pack(const FlowState& st, Eigen::VectorXd& x) {
  const int ne = st.pressure.mesh().n_elems();
  x.resize(6 * ne);
  for (int e = 0; e < ne; ++e)
    for (int k = 0; k < 3; ++k) {
      x[6 * e + k] = st.pressure.coeff(e, k);
      x[6 * e + 3 + k] = st.saturation.coeff(e, k);
    }
}

inline void unpack(const Eigen::VectorXd& x, FlowState& st) {
  const int ne = st.pressure.mesh().n_elems();
  for (int e = 0; e < ne; ++e)
    for (int k = 0; k < 3; ++k) {
      st.pressure.coeff(e, k) = x[6 * e + k];
      st.saturation.coeff(e, k) = x[6 * e + 3 + k];
    }
}

// Central-difference Jacobian; the oracle for the analytic assembly.
inline Eigen::MatrixXd fd_jacobian(const Assembler& asmb, const FlowState& next,
                                   const FlowState& prev, const LaggedFaceVelocities& lagged) {
  Eigen::VectorXd x;
  pack(next, x);
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd jac(n, n);
  FlowState work = next;
  Eigen::VectorXd rp(n), rm(n);
  for (int j = 0; j < n; ++j) {
    const double scale = std::max(1.0, std::abs(x[j]));
    const double delta = 1e-6 * scale;
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += delta;
    xm[j] -= delta;
    unpack(xp, work);
    asmb.assemble(work, prev, lagged, &rp, nullptr);
    unpack(xm, work);
    asmb.assemble(work, prev, lagged, &rm, nullptr);
    jac.col(j) = (rp - rm) / (2.0 * delta);
  }
  unpack(x, work);
  return jac;
}

inline Eigen::MatrixXd dense_jacobian(const Assembler& asmb, const FlowState& next,
                                      const FlowState& prev,
                                      const LaggedFaceVelocities& lagged) {
  std::vector<Eigen::Triplet<double>> trips;
  asmb.assemble(next, prev, lagged, nullptr, &trips);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(asmb.n_dofs(), asmb.n_dofs());
  for (const auto& t : trips) jac(t.row(), t.col()) += t.value();
  return jac;
}

}  // namespace dgflow::testing
