#include "dgflow/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "dgflow/quadrature.hpp"

namespace dgflow {

int upwind_element(const TriMesh& mesh, int face, double avg_normal_velocity) {
  const FaceRecord& rec = mesh.faces[face];
  if (rec.is_boundary()) throw std::logic_error("upwind_element: boundary face");
  return avg_normal_velocity > 0.0 ? rec.plus_elem : rec.minus_elem;
}

LinearTrace upwind_trace(const DGField& f, int face, double avg_normal_velocity) {
  const TriMesh& mesh = f.mesh();
  const int elem = upwind_element(mesh, face, avg_normal_velocity);
  const auto loc = face_local_vertices(mesh, elem, face);
  return {f.coeff(elem, loc[0]), f.coeff(elem, loc[1])};
}

Assembler::Assembler(const TriMesh& mesh, const ProblemConfig& config)
    : mesh_(mesh), config_(config) {
  if (static_cast<int>(config.perm.size()) != mesh.n_elems())
    throw std::invalid_argument("assembler: permeability not bound to this mesh");
  if (!mesh.boundary_tagged())
    throw std::invalid_argument("assembler: boundary classification missing");

  const auto& equad = TriQuadrature::degree4();
  elems_.resize(mesh.n_elems());
  for (int e = 0; e < mesh.n_elems(); ++e) {
    elems_[e].grads = basis_gradients(mesh, e);
    for (int q = 0; q < equad.size(); ++q) {
      const auto& b = equad.bary[q];
      elems_[e].xq[q] =
          b[0] * mesh.vertex_of(e, 0) + b[1] * mesh.vertex_of(e, 1) + b[2] * mesh.vertex_of(e, 2);
    }
  }

  const auto& fquad = SegmentQuadrature::gauss3();
  faces_.resize(mesh.n_faces());
  bool need_gp = false, need_gs = false;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceRecord& rec = mesh.faces[f];
    FaceCache& fc = faces_[f];
    const Vec2& a = mesh.vertices[rec.verts[0]];
    const Vec2& b = mesh.vertices[rec.verts[1]];
    for (int q = 0; q < fquad.size(); ++q) fc.xq[q] = (1.0 - fquad.point[q]) * a + fquad.point[q] * b;
    fc.plus.elem = rec.plus_elem;
    fc.plus.loc = face_local_vertices(mesh, rec.plus_elem, f);
    if (!rec.is_boundary()) {
      fc.minus.elem = rec.minus_elem;
      fc.minus.loc = face_local_vertices(mesh, rec.minus_elem, f);
    } else {
      if (mesh.pressure_bc[f] == PressureBc::Dirichlet) need_gp = true;
      if (mesh.saturation_bc[f] == SaturationBc::Dirichlet) need_gs = true;
    }
  }
  if (need_gp && !config.g_pressure)
    throw std::invalid_argument("assembler: Dirichlet pressure faces need g_pressure data");
  if (need_gs && !config.g_saturation)
    throw std::invalid_argument("assembler: Dirichlet saturation faces need g_saturation data");
}

LaggedFaceVelocities Assembler::lagged_velocities(const FlowState& prev) const {
  const auto& fquad = SegmentQuadrature::gauss3();
  LaggedFaceVelocities out;
  out.nonwetting.assign(mesh_.n_faces(), 0.0);
  out.wetting.assign(mesh_.n_faces(), 0.0);
  for (int f = 0; f < mesh_.n_faces(); ++f) {
    const FaceRecord& rec = mesh_.faces[f];
    if (rec.is_boundary()) continue;
    const FaceCache& fc = faces_[f];
    double vl = 0.0, vw = 0.0;
    for (int q = 0; q < fquad.size(); ++q) {
      const double t = fquad.point[q];
      const double w = fquad.weight[q];
      for (const SideCache* side : {&fc.plus, &fc.minus}) {
        const double p = trace_value(prev.pressure, *side, t);
        const Mat2& K = config_.perm[side->elem];
        const Vec2 grad_p = prev.pressure.gradient(side->elem);
        const double rl = density_l(p, config_.fluid);
        const double rw = density_w(p, config_.fluid);
        const Vec2 v_l = -rl * (K * (grad_p - rl * config_.gravity));
        const Vec2 v_w = -rw * (K * (grad_p - rw * config_.gravity));
        vl += 0.5 * w * v_l.dot(rec.normal);
        vw += 0.5 * w * v_w.dot(rec.normal);
      }
    }
    out.nonwetting[f] = vl;
    out.wetting[f] = vw;
  }
  return out;
}

namespace {

// basis trace values of the three local vertices at face parameter t
inline std::array<double, 3> side_basis(const std::array<int, 2>& loc, double t) {
  std::array<double, 3> b = {0.0, 0.0, 0.0};
  b[loc[0]] = 1.0 - t;
  b[loc[1]] = t;
  return b;
}

}  // namespace

void Assembler::assemble(const FlowState& next, const FlowState& prev,
                         const LaggedFaceVelocities& lagged, Eigen::VectorXd* residual,
                         std::vector<Eigen::Triplet<double>>* jacobian) const {
  const FluidModel& fl = config_.fluid;
  const RockModel& rk = config_.rock;
  const double dt = config_.scheme.dt;
  const double inv_dt = 1.0 / dt;
  const double t_new = next.time;
  const Vec2& grav = config_.gravity;
  const double drl = density_l_dp(fl);
  const double drw = density_w_dp(fl);
  const double dphi = porosity_dp(rk);
  const double pen_i = config_.scheme.sigma / mesh_.mesh_size;
  const double pen_d = config_.scheme.dirichlet_factor * pen_i;

  if (residual) residual->setZero(n_dofs());
  auto add_r = [&](int row, double v) {
    if (residual) (*residual)[row] += v;
  };
  auto add_j = [&](int row, int col, double v) {
    if (jacobian && v != 0.0) jacobian->emplace_back(row, col, v);
  };

  const auto& equad = TriQuadrature::degree4();
  const auto& fquad = SegmentQuadrature::gauss3();

  // volume, time, and source terms
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const ElemCache& ec = elems_[e];
    const Mat2& K = config_.perm[e];
    const Vec2 Kg = K * grav;
    const Vec2 grad_p = next.pressure.gradient(e);

    for (int q = 0; q < equad.size(); ++q) {
      const auto& b = equad.bary[q];
      const double w = equad.weight[q] * mesh_.areas[e];
      const Vec2& x = ec.xq[q];

      const double P = next.pressure.value_bary(e, b);
      const double S = next.saturation.value_bary(e, b);
      const double Pn = prev.pressure.value_bary(e, b);
      const double Sn = prev.saturation.value_bary(e, b);

      const double rl = density_l(P, fl);
      const double rw = density_w(P, fl);
      const double phi = porosity(P, rk);
      const double laml = mobility_l(S, fl);
      const double lamw = mobility_w(S, fl);
      const double dlaml = mobility_l_ds(S, fl);
      const double dlamw = mobility_w_ds(S, fl);

      const Vec2 flux_l = K * grad_p - rl * Kg;  // K (grad P - rho_l g)
      const Vec2 flux_w = K * grad_p - rw * Kg;

      const double rln = density_l(Pn, fl);
      const double rwn = density_w(Pn, fl);
      const double phin = porosity(Pn, rk);

      double src_l, src_w;
      if (config_.source_pressure_eq) {
        src_l = config_.source_pressure_eq(x, t_new);
        src_w = config_.source_saturation_eq(x, t_new);
      } else {
        const WellRates qr = well_rates(Sn, e, config_.wells, fl);
        src_l = rln * qr.q_l;
        src_w = rwn * qr.q_w;
      }

      for (int i = 0; i < 3; ++i) {
        const double bi = b[i];
        const Vec2& gi = ec.grads[i];
        // non-wetting mass balance -> pressure rows
        add_r(pressure_dof(e, i),
              w * (inv_dt * (phi * rl * (1.0 - S) - phin * rln * (1.0 - Sn)) * bi +
                   rl * laml * flux_l.dot(gi) - src_l * bi));
        // wetting mass balance -> saturation rows
        add_r(saturation_dof(e, i),
              w * (inv_dt * (phi * rw * S - phin * rwn * Sn) * bi +
                   rw * lamw * flux_w.dot(gi) - src_w * bi));
      }

      if (!jacobian) continue;
      for (int i = 0; i < 3; ++i) {
        const double bi = b[i];
        const Vec2& gi = ec.grads[i];
        for (int j = 0; j < 3; ++j) {
          const double bj = b[j];
          const Vec2& gj = ec.grads[j];
          // pressure equation
          add_j(pressure_dof(e, i), pressure_dof(e, j),
                w * (inv_dt * (dphi * rl + phi * drl) * (1.0 - S) * bi * bj +
                     drl * bj * laml * flux_l.dot(gi) +
                     rl * laml * (K * gj - drl * bj * Kg).dot(gi)));
          add_j(pressure_dof(e, i), saturation_dof(e, j),
                w * (-inv_dt * phi * rl * bi * bj + rl * dlaml * bj * flux_l.dot(gi)));
          // saturation equation
          add_j(saturation_dof(e, i), pressure_dof(e, j),
                w * (inv_dt * (dphi * rw + phi * drw) * S * bi * bj +
                     drw * bj * lamw * flux_w.dot(gi) +
                     rw * lamw * (K * gj - drw * bj * Kg).dot(gi)));
          add_j(saturation_dof(e, i), saturation_dof(e, j),
                w * (inv_dt * phi * rw * bi * bj + rw * dlamw * bj * flux_w.dot(gi)));
        }
      }
    }
  }

  // face terms
  for (int f = 0; f < mesh_.n_faces(); ++f) {
    const FaceRecord& rec = mesh_.faces[f];
    const FaceCache& fc = faces_[f];
    const double len = rec.length;

    if (!rec.is_boundary()) {
      const SideCache sides[2] = {fc.plus, fc.minus};
      const double sgn[2] = {1.0, -1.0};
      const int up_l = lagged.nonwetting[f] > 0.0 ? 0 : 1;
      const int up_w = lagged.wetting[f] > 0.0 ? 0 : 1;

      for (int q = 0; q < fquad.size(); ++q) {
        const double t = fquad.point[q];
        const double w = fquad.weight[q] * len;

        double P[2], S[2], Pn[2], Gl[2], Gw[2];
        std::array<double, 3> bv[2];
        for (int a = 0; a < 2; ++a) {
          P[a] = trace_value(next.pressure, sides[a], t);
          S[a] = trace_value(next.saturation, sides[a], t);
          Pn[a] = trace_value(prev.pressure, sides[a], t);
          bv[a] = side_basis(sides[a].loc, t);
          const Mat2& K = config_.perm[sides[a].elem];
          const Vec2 grad_p = next.pressure.gradient(sides[a].elem);
          Gl[a] = (K * grad_p - density_l(P[a], fl) * (K * grav)).dot(rec.normal);
          Gw[a] = (K * grad_p - density_w(P[a], fl) * (K * grav)).dot(rec.normal);
        }

        // pressure equation: lagged density inside the average, upwinded
        // non-wetting mobility, penalty on the pressure jump
        const double avg_l = 0.5 * (density_l(Pn[0], fl) * Gl[0] + density_l(Pn[1], fl) * Gl[1]);
        const double laml_up = mobility_l(S[up_l], fl);
        const double jump_p = P[0] - P[1];
        // saturation equation: current density, upwinded wetting mobility
        const double avg_w = 0.5 * (density_w(P[0], fl) * Gw[0] + density_w(P[1], fl) * Gw[1]);
        const double lamw_up = mobility_w(S[up_w], fl);
        const double jump_s = S[0] - S[1];

        for (int r = 0; r < 2; ++r) {
          for (int i = 0; i < 3; ++i) {
            const double test = sgn[r] * bv[r][i];
            if (test == 0.0) continue;
            add_r(pressure_dof(sides[r].elem, i), (-laml_up * avg_l + pen_i * jump_p) * w * test);
            add_r(saturation_dof(sides[r].elem, i), (-lamw_up * avg_w + pen_i * jump_s) * w * test);
          }
        }

        if (!jacobian) continue;
        for (int r = 0; r < 2; ++r) {
          for (int i = 0; i < 3; ++i) {
            const double test = sgn[r] * bv[r][i];
            if (test == 0.0) continue;
            const int row_p = pressure_dof(sides[r].elem, i);
            const int row_s = saturation_dof(sides[r].elem, i);
            for (int a = 0; a < 2; ++a) {
              const Mat2& K = config_.perm[sides[a].elem];
              const Vec2 Kg = K * grav;
              const auto& grads = elems_[sides[a].elem].grads;
              const double rw_a = density_w(P[a], fl);
              for (int j = 0; j < 3; ++j) {
                const double bj = bv[a][j];
                const Vec2& gj = grads[j];
                // pressure equation, d/dP: gradient and gravity-density parts
                const double davg_l =
                    0.5 * density_l(Pn[a], fl) * ((K * gj).dot(rec.normal) - drl * bj * Kg.dot(rec.normal));
                double jac_pp = -laml_up * davg_l * w * test;
                if (bj != 0.0) jac_pp += pen_i * sgn[a] * bj * w * test;
                add_j(row_p, pressure_dof(sides[a].elem, j), jac_pp);
                // saturation equation, d/dP
                const double davg_w =
                    0.5 * (drw * bj * Gw[a] +
                           rw_a * ((K * gj).dot(rec.normal) - drw * bj * Kg.dot(rec.normal)));
                add_j(row_s, pressure_dof(sides[a].elem, j), -lamw_up * davg_w * w * test);
                // d/dS: upwinded mobilities and the saturation penalty
                double jac_ss = 0.0;
                if (a == up_w && bj != 0.0)
                  jac_ss += -mobility_w_ds(S[up_w], fl) * bj * avg_w * w * test;
                if (bj != 0.0) jac_ss += pen_i * sgn[a] * bj * w * test;
                add_j(row_s, saturation_dof(sides[a].elem, j), jac_ss);
                if (a == up_l && bj != 0.0)
                  add_j(row_p, saturation_dof(sides[a].elem, j),
                        -mobility_l_ds(S[up_l], fl) * bj * avg_l * w * test);
              }
            }
          }
        }
      }
      continue;
    }

    // boundary face; the plus element owns it and the normal points outward
    const int e = rec.plus_elem;
    const Mat2& K = config_.perm[e];
    const Vec2 Kg = K * grav;
    const auto& grads = elems_[e].grads;
    const Vec2 grad_p = next.pressure.gradient(e);
    const PressureBc pbc = mesh_.pressure_bc[f];
    const SaturationBc sbc = mesh_.saturation_bc[f];

    for (int q = 0; q < fquad.size(); ++q) {
      const double t = fquad.point[q];
      const double w = fquad.weight[q] * len;
      const Vec2& x = fc.xq[q];
      const auto bv = side_basis(fc.plus.loc, t);
      const double P = trace_value(next.pressure, fc.plus, t);
      const double S = trace_value(next.saturation, fc.plus, t);

      if (pbc == PressureBc::Dirichlet) {
        const double gp = config_.g_pressure(x, t_new);
        const double rl = density_l(P, fl);
        const double laml = mobility_l(S, fl);
        const double G = (K * grad_p - rl * Kg).dot(rec.normal);
        for (int i = 0; i < 3; ++i) {
          if (bv[i] == 0.0) continue;
          add_r(pressure_dof(e, i), (-laml * rl * G + pen_d * (P - gp)) * w * bv[i]);
        }
        if (jacobian) {
          for (int i = 0; i < 3; ++i) {
            if (bv[i] == 0.0) continue;
            for (int j = 0; j < 3; ++j) {
              const double bj = bv[j];
              const double dG = (K * grads[j]).dot(rec.normal) - drl * bj * Kg.dot(rec.normal);
              double jac = -laml * (drl * bj * G + rl * dG) * w * bv[i];
              if (bj != 0.0) jac += pen_d * bj * w * bv[i];
              add_j(pressure_dof(e, i), pressure_dof(e, j), jac);
              if (bj != 0.0)
                add_j(pressure_dof(e, i), saturation_dof(e, j),
                      -mobility_l_ds(S, fl) * bj * rl * G * w * bv[i]);
            }
          }
        }
      } else {  // Neumann pressure data
        const double jp = config_.j_pressure ? config_.j_pressure(x, t_new) : 0.0;
        if (jp != 0.0)
          for (int i = 0; i < 3; ++i) add_r(pressure_dof(e, i), -jp * w * bv[i]);
      }

      if (sbc == SaturationBc::Dirichlet) {
        const double gp = config_.g_pressure(x, t_new);
        const double gs = config_.g_saturation(x, t_new);
        const double lam_fix = mobility_w(gs, fl);
        const double rho_fix = density_w(gp, fl);
        const double G = (K * grad_p - density_w(P, fl) * Kg).dot(rec.normal);
        for (int i = 0; i < 3; ++i) {
          if (bv[i] == 0.0) continue;
          add_r(saturation_dof(e, i), (-lam_fix * rho_fix * G + pen_d * (S - gs)) * w * bv[i]);
        }
        if (jacobian) {
          for (int i = 0; i < 3; ++i) {
            if (bv[i] == 0.0) continue;
            for (int j = 0; j < 3; ++j) {
              const double bj = bv[j];
              const double dG = (K * grads[j]).dot(rec.normal) - drw * bj * Kg.dot(rec.normal);
              add_j(saturation_dof(e, i), pressure_dof(e, j), -lam_fix * rho_fix * dG * w * bv[i]);
              if (bj != 0.0)
                add_j(saturation_dof(e, i), saturation_dof(e, j), pen_d * bj * w * bv[i]);
            }
          }
        }
      } else if (sbc == SaturationBc::Outflow) {
        const double gp = config_.g_pressure(x, t_new);
        const double rho_fix = density_w(gp, fl);
        const double lamw = mobility_w(S, fl);
        const double G = (K * grad_p - density_w(P, fl) * Kg).dot(rec.normal);
        for (int i = 0; i < 3; ++i) {
          if (bv[i] == 0.0) continue;
          add_r(saturation_dof(e, i), -lamw * rho_fix * G * w * bv[i]);
        }
        if (jacobian) {
          for (int i = 0; i < 3; ++i) {
            if (bv[i] == 0.0) continue;
            for (int j = 0; j < 3; ++j) {
              const double bj = bv[j];
              const double dG = (K * grads[j]).dot(rec.normal) - drw * bj * Kg.dot(rec.normal);
              add_j(saturation_dof(e, i), pressure_dof(e, j), -lamw * rho_fix * dG * w * bv[i]);
              if (bj != 0.0)
                add_j(saturation_dof(e, i), saturation_dof(e, j),
                      -mobility_w_ds(S, fl) * bj * rho_fix * G * w * bv[i]);
            }
          }
        }
      } else {  // Neumann saturation data
        const double js = config_.j_saturation ? config_.j_saturation(x, t_new) : 0.0;
        if (js != 0.0)
          for (int i = 0; i < 3; ++i) add_r(saturation_dof(e, i), -js * w * bv[i]);
      }
    }
  }
}

FluxTable Assembler::flux_table(const FlowState& next, const FlowState& prev,
                                const LaggedFaceVelocities& lagged) const {
  const FluidModel& fl = config_.fluid;
  const double t_new = next.time;
  const Vec2& grav = config_.gravity;
  const double pen_i = config_.scheme.sigma / mesh_.mesh_size;
  const double pen_d = config_.scheme.dirichlet_factor * pen_i;
  const auto& fquad = SegmentQuadrature::gauss3();

  FluxTable table;
  table.flux.assign(mesh_.n_elems(), {0.0, 0.0, 0.0});

  for (int e = 0; e < mesh_.n_elems(); ++e) {
    for (int k = 0; k < 3; ++k) {
      const int f = mesh_.elem_faces[e][k];
      const FaceRecord& rec = mesh_.faces[f];
      const FaceCache& fc = faces_[f];
      const double len = rec.length;
      double H = 0.0;

      if (!rec.is_boundary()) {
        const double sgn = (e == rec.plus_elem) ? 1.0 : -1.0;
        const SideCache sides[2] = {fc.plus, fc.minus};
        const int up_w = lagged.wetting[f] > 0.0 ? 0 : 1;
        for (int q = 0; q < fquad.size(); ++q) {
          const double t = fquad.point[q];
          const double w = fquad.weight[q] * len;
          double P[2], S[2], Gw[2];
          for (int a = 0; a < 2; ++a) {
            P[a] = trace_value(next.pressure, sides[a], t);
            S[a] = trace_value(next.saturation, sides[a], t);
            const Mat2& K = config_.perm[sides[a].elem];
            const Vec2 grad_p = next.pressure.gradient(sides[a].elem);
            Gw[a] = (K * grad_p - density_w(P[a], fl) * (K * grav)).dot(rec.normal);
          }
          const double avg_w = 0.5 * (density_w(P[0], fl) * Gw[0] + density_w(P[1], fl) * Gw[1]);
          const double lamw_up = mobility_w(S[up_w], fl);
          const double jump_s = S[0] - S[1];
          H += (-lamw_up * avg_w + pen_i * jump_s) * w * sgn;
        }
      } else {
        const Mat2& K = config_.perm[e];
        const Vec2 Kg = K * grav;
        const Vec2 grad_p = next.pressure.gradient(e);
        const SaturationBc sbc = mesh_.saturation_bc[f];
        for (int q = 0; q < fquad.size(); ++q) {
          const double t = fquad.point[q];
          const double w = fquad.weight[q] * len;
          const Vec2& x = fc.xq[q];
          const double P = trace_value(next.pressure, fc.plus, t);
          const double S = trace_value(next.saturation, fc.plus, t);
          if (sbc == SaturationBc::Dirichlet) {
            const double gp = config_.g_pressure(x, t_new);
            const double gs = config_.g_saturation(x, t_new);
            const double G = (K * grad_p - density_w(P, fl) * Kg).dot(rec.normal);
            H += (-mobility_w(gs, fl) * density_w(gp, fl) * G + pen_d * (S - gs)) * w;
          } else if (sbc == SaturationBc::Outflow) {
            const double gp = config_.g_pressure(x, t_new);
            const double G = (K * grad_p - density_w(P, fl) * Kg).dot(rec.normal);
            H += -mobility_w(S, fl) * density_w(gp, fl) * G * w;
          } else {
            const double js = config_.j_saturation ? config_.j_saturation(x, t_new) : 0.0;
            H += -js * w;
          }
        }
      }
      table.flux[e][k] = H;
    }
  }
  return table;
}

MeanUpdateData Assembler::mean_update_data(const FlowState& next, const FlowState& prev) const {
  const FluidModel& fl = config_.fluid;
  const RockModel& rk = config_.rock;
  const auto& equad = TriQuadrature::degree4();
  MeanUpdateData out;
  const int ne = mesh_.n_elems();
  out.storage_new.resize(ne);
  out.storage_old.resize(ne);
  out.rho_w_old.resize(ne);
  const bool has_src = static_cast<bool>(config_.source_saturation_eq);
  if (has_src) out.source.setZero(ne);
  for (int e = 0; e < ne; ++e) {
    double sn = 0.0, so = 0.0, ro = 0.0, src = 0.0;
    for (int q = 0; q < equad.size(); ++q) {
      const auto& b = equad.bary[q];
      const double w = equad.weight[q];
      const double P = next.pressure.value_bary(e, b);
      const double Pn = prev.pressure.value_bary(e, b);
      sn += w * density_w(P, fl) * porosity(P, rk);
      so += w * density_w(Pn, fl) * porosity(Pn, rk);
      ro += w * density_w(Pn, fl);
      if (has_src) src += w * config_.source_saturation_eq(elems_[e].xq[q], next.time);
    }
    out.storage_new[e] = sn;
    out.storage_old[e] = so;
    out.rho_w_old[e] = ro;
    if (has_src) out.source[e] = src;
  }
  return out;
}

}  // namespace dgflow
