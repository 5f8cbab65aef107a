#include "dgflow/manufactured.hpp"

#include <algorithm>
#include <cmath>

namespace dgflow {

namespace {

struct ExactDerivs {
  double s, s_t, s_x, s_y;
  double p, p_t, p_x, p_y, p_xx, p_yy;
};

ExactDerivs exact_at(double x, double y, double t) {
  ExactDerivs d;
  d.s = 0.4 + 0.4 * x * y + std::cos(t + x);
  d.s_t = -std::sin(t + x);
  d.s_x = 0.4 * y - std::sin(t + x);
  d.s_y = 0.4 * x;

  d.p = 2.0 + x * x * y - y * y + x * x * std::sin(y + t) - std::cos(t) / 3.0 +
        std::cos(t + 1.0) / 3.0 - 11.0 / 6.0;
  d.p_t = x * x * std::cos(y + t) + std::sin(t) / 3.0 - std::sin(t + 1.0) / 3.0;
  d.p_x = 2.0 * x * y + 2.0 * x * std::sin(y + t);
  d.p_y = x * x - 2.0 * y + x * x * std::cos(y + t);
  d.p_xx = 2.0 * y + 2.0 * std::sin(y + t);
  d.p_yy = -2.0 - x * x * std::sin(y + t);
  return d;
}

}  // namespace

double ManufacturedCase::saturation(const Vec2& x, double t) const {
  return exact_at(x.x(), x.y(), t).s;
}

double ManufacturedCase::pressure(const Vec2& x, double t) const {
  return exact_at(x.x(), x.y(), t).p;
}

double ManufacturedCase::forcing_saturation_eq(const Vec2& xv, double t) const {
  const ExactDerivs d = exact_at(xv.x(), xv.y(), t);
  const double rho = 1.0 + c_w * d.p;
  const double phi = 1.0 + c_r * d.p;
  const double storage_t = (c_r * rho + phi * c_w) * d.p_t * d.s + phi * rho * d.s_t;
  const double grad2 = d.p_x * d.p_x + d.p_y * d.p_y;
  const double grads_gradp = d.s_x * d.p_x + d.s_y * d.p_y;
  const double lap = d.p_xx + d.p_yy;
  const double div_flux =
      rho * d.s * d.s * lap + c_w * d.s * d.s * grad2 + 2.0 * d.s * rho * grads_gradp;
  return storage_t - div_flux;
}

double ManufacturedCase::forcing_pressure_eq(const Vec2& xv, double t) const {
  const ExactDerivs d = exact_at(xv.x(), xv.y(), t);
  const double rho = 1.0 + c_l * d.p;
  const double phi = 1.0 + c_r * d.p;
  const double sl = 1.0 - d.s;  // non-wetting volume fraction
  const double storage_t = (c_r * rho + phi * c_l) * d.p_t * sl - phi * rho * d.s_t;
  const double grad2 = d.p_x * d.p_x + d.p_y * d.p_y;
  const double grads_gradp = d.s_x * d.p_x + d.s_y * d.p_y;
  const double lap = d.p_xx + d.p_yy;
  const double div_flux = rho * sl * sl * lap + c_l * sl * sl * grad2 - 2.0 * sl * rho * grads_gradp;
  return storage_t - div_flux;
}

SaturationBounds ManufacturedCase::bounds(double t) const {
  double lo = 1e300, hi = -1e300;
  for (int j = 0; j <= 64; ++j) {
    for (int i = 0; i <= 64; ++i) {
      const double s = saturation({i / 64.0, j / 64.0}, t);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {lo, hi};
}

TriMesh make_manufactured_mesh(int n) {
  TriMesh mesh = generate_crossed(n, n, 1.0, 1.0);
  classify_boundary(mesh, uniform_boundary_rule(PressureBc::Dirichlet, SaturationBc::Dirichlet));
  return mesh;
}

ProblemConfig make_manufactured_problem(const TriMesh& mesh, LimiterMode mode) {
  ManufacturedCase mms;
  ProblemConfig cfg;
  cfg.fluid.rho_w0 = 1.0;
  cfg.fluid.rho_l0 = 1.0;
  cfg.fluid.c_w = mms.c_w;
  cfg.fluid.c_l = mms.c_l;
  cfg.fluid.mu_w = 1.0;
  cfg.fluid.mu_l = 1.0;
  cfg.fluid.s_rw = 0.0;
  cfg.fluid.s_rl = 0.0;
  // the exact saturation leaves [0,1]; the polynomial laws stay valid
  cfg.fluid.clamp_mobility = false;
  cfg.rock.phi0 = 1.0;
  cfg.rock.c_r = mms.c_r;
  PermeabilityField perm;  // K = 1 m^2
  perm.k = 1.0;
  cfg.perm = perm.per_element(mesh);

  cfg.g_pressure = [mms](const Vec2& x, double t) { return mms.pressure(x, t); };
  cfg.g_saturation = [mms](const Vec2& x, double t) { return mms.saturation(x, t); };
  cfg.source_pressure_eq = [mms](const Vec2& x, double t) { return mms.forcing_pressure_eq(x, t); };
  cfg.source_saturation_eq = [mms](const Vec2& x, double t) {
    return mms.forcing_saturation_eq(x, t);
  };
  cfg.initial_pressure = [mms](const Vec2& x) { return mms.pressure(x, 0.0); };
  cfg.initial_saturation = [mms](const Vec2& x) { return mms.saturation(x, 0.0); };

  const double h = mesh.mesh_size;
  cfg.scheme.dt = h * h;
  cfg.t_end = 1.0;
  cfg.limiter = mode;
  cfg.bounds_at = [mms](double t) { return mms.bounds(t); };
  return cfg;
}

}  // namespace dgflow
