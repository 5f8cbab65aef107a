#include "dgflow/physics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dgflow {

void FluidModel::validate() const {
  if (!(rho_w0 > 0.0) || !(rho_l0 > 0.0)) throw std::invalid_argument("fluid: densities must be positive");
  if (!(mu_w > 0.0)) throw std::invalid_argument("fluid: mu_w must be positive");
  if (!(mu_l > 0.0)) throw std::invalid_argument("fluid: mu_l must be positive");
  if (c_w < 0.0 || c_l < 0.0) throw std::invalid_argument("fluid: compressibilities must be >= 0");
  if (s_rw < 0.0 || s_rl < 0.0 || s_rw + s_rl >= 1.0)
    throw std::invalid_argument("fluid: residual saturations must satisfy 0 <= s_rw + s_rl < 1");
}

void RockModel::validate() const {
  if (!(phi0 > 0.0) || !(phi0 < 1.0)) throw std::invalid_argument("rock: phi0 must be in (0,1)");
  if (c_r < 0.0) throw std::invalid_argument("rock: c_r must be >= 0");
}

double effective_saturation(double s, const FluidModel& f) {
  return (s - f.s_rw) / (1.0 - f.s_rw - f.s_rl);
}

namespace {
inline double se_for_mobility(double s, const FluidModel& f) {
  const double se = effective_saturation(s, f);
  return f.clamp_mobility ? std::clamp(se, 0.0, 1.0) : se;
}
}  // namespace

double mobility_w(double s, const FluidModel& f) {
  const double se = se_for_mobility(s, f);
  return se * se / f.mu_w;
}

double mobility_l(double s, const FluidModel& f) {
  const double se = se_for_mobility(s, f);
  return (1.0 - se) * (1.0 - se) / f.mu_l;
}

double mobility_w_ds(double s, const FluidModel& f) {
  const double se = effective_saturation(s, f);
  if (f.clamp_mobility && (se <= 0.0 || se >= 1.0)) return 0.0;
  return 2.0 * se / (f.mu_w * (1.0 - f.s_rw - f.s_rl));
}

double mobility_l_ds(double s, const FluidModel& f) {
  const double se = effective_saturation(s, f);
  if (f.clamp_mobility && (se <= 0.0 || se >= 1.0)) return 0.0;
  return -2.0 * (1.0 - se) / (f.mu_l * (1.0 - f.s_rw - f.s_rl));
}

double fractional_flow_w(double s, const FluidModel& f) {
  const double lw = mobility_w(s, f);
  const double ll = mobility_l(s, f);
  const double total = lw + ll;
  if (!(total > 0.0)) throw std::logic_error("fractional_flow_w: vanishing total mobility");
  return lw / total;
}

double density_w(double p, const FluidModel& f) { return f.rho_w0 * (1.0 + f.c_w * p); }
double density_l(double p, const FluidModel& f) { return f.rho_l0 * (1.0 + f.c_l * p); }
double porosity(double p, const RockModel& r) { return r.phi0 * (1.0 + r.c_r * p); }

Mat2 anisotropic_tensor(double k1, double k2, double theta) {
  if (!(k1 > 0.0) || !(k2 > 0.0))
    throw std::invalid_argument("anisotropic_tensor: principal values must be positive");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 k;
  k(0, 0) = k1 * c * c + k2 * s * s;
  k(1, 1) = k1 * s * s + k2 * c * c;
  k(0, 1) = k(1, 0) = (k1 - k2) * s * c;
  return k;
}

WellRates well_rates(double s, int elem, const WellField& wells, const FluidModel& f) {
  WellRates r;
  if (!wells.any) return r;
  const double qi = wells.inject.empty() ? 0.0 : wells.inject[elem];
  const double qp = wells.produce.empty() ? 0.0 : wells.produce[elem];
  if (qi == 0.0 && qp == 0.0) return r;
  const double fw_in = fractional_flow_w(wells.s_in, f);
  const double fw = fractional_flow_w(s, f);
  r.q_w = fw_in * qi - fw * qp;
  r.q_l = (1.0 - fw_in) * qi - (1.0 - fw) * qp;
  return r;
}

void add_well_box(WellField& wells, const TriMesh& mesh, const Box& box, double total,
                  bool injection) {
  if (total < 0.0) throw std::invalid_argument("well rate must be >= 0");
  auto& field = injection ? wells.inject : wells.produce;
  if (field.empty()) field.assign(mesh.n_elems(), 0.0);
  if (wells.inject.empty()) wells.inject.assign(mesh.n_elems(), 0.0);
  if (wells.produce.empty()) wells.produce.assign(mesh.n_elems(), 0.0);

  std::vector<int> covered;
  double area = 0.0;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    if (box.contains(mesh.centroids[e])) {
      covered.push_back(e);
      area += mesh.areas[e];
    }
  }
  if (covered.empty()) throw std::runtime_error("well box covers no elements");
  const double density = total / area;
  for (int e : covered) field[e] += density;
  wells.any = true;
}

double RasterGrid::at(const Vec2& p) const {
  int i = static_cast<int>(std::floor((p.x() - x0) / dx));
  int j = static_cast<int>(std::floor((p.y() - y0) / dy));
  i = std::clamp(i, 0, nx - 1);
  j = std::clamp(j, 0, ny - 1);
  return values[static_cast<size_t>(j) * nx + i];
}

RasterGrid load_permeability_raster(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("permeability raster: cannot open " + path);
  RasterGrid g;
  if (!(in >> g.nx >> g.ny >> g.x0 >> g.y0 >> g.dx >> g.dy))
    throw std::runtime_error("permeability raster: bad header in " + path);
  if (g.nx < 1 || g.ny < 1 || !(g.dx > 0.0) || !(g.dy > 0.0))
    throw std::runtime_error("permeability raster: invalid grid dimensions in " + path);
  g.values.resize(static_cast<size_t>(g.nx) * g.ny);
  for (double& v : g.values) {
    if (!(in >> v)) throw std::runtime_error("permeability raster: truncated data in " + path);
    if (!(v > 0.0))
      throw std::runtime_error(
          "permeability raster: values must be positive permeabilities in m^2 "
          "(log-scale input is not accepted): " +
          path);
  }
  return g;
}

Mat2 PermeabilityField::at(const Vec2& c) const {
  switch (kind) {
    case Kind::Constant:
      return k * Mat2::Identity();
    case Kind::Blocks: {
      double v = k;
      for (const PermBlock& b : blocks)
        if (b.box.contains(c)) v = b.k;
      return v * Mat2::Identity();
    }
    case Kind::Raster: {
      const Box box{raster.x0, raster.x0 + raster.nx * raster.dx, raster.y0,
                    raster.y0 + raster.ny * raster.dy};
      return (box.contains(c) ? raster.at(c) : k) * Mat2::Identity();
    }
    case Kind::TensorQuadrants: {
      const bool right = c.x() > 0.5 * lx;
      const bool top = c.y() > 0.5 * ly;
      const double theta = top ? (right ? theta_tr : theta_tl) : (right ? theta_br : theta_bl);
      return anisotropic_tensor(k1, k2, theta);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Mat2> PermeabilityField::per_element(const TriMesh& mesh) const {
  std::vector<Mat2> out(mesh.n_elems());
  for (int e = 0; e < mesh.n_elems(); ++e) {
    out[e] = at(mesh.centroids[e]);
    const double det = out[e].determinant();
    if (!(out[e](0, 0) > 0.0) || !(det > 0.0))
      throw std::runtime_error("permeability: element tensor is not positive definite");
  }
  return out;
}

}  // namespace dgflow
