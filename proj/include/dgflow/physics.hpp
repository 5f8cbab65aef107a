#pragma once

#include <string>
#include <vector>

#include "dgflow/mesh.hpp"
#include "dgflow/types.hpp"

namespace dgflow {

// Wetting (w) and non-wetting (l) fluid constants plus Brooks-Corey
// residual saturations. Densities follow rho_a(p) = rho_a0 * (1 + c_a p).
struct FluidModel {
  double rho_w0 = 1000.0;  // kg/m^3
  double rho_l0 = 850.0;
  double c_w = 1e-10;  // 1/Pa
  double c_l = 1e-6;
  double mu_w = 5e-4;  // Pa*s
  double mu_l = 2e-3;
  double s_rw = 0.15;
  double s_rl = 0.15;
  // Clamp effective saturation into [0,1] before the Brooks-Corey squares.
  // Manufactured-solution runs use the raw polynomial laws instead, since
  // their exact saturation leaves the physical range by construction.
  bool clamp_mobility = true;

  double s_min() const { return s_rw; }
  double s_max() const { return 1.0 - s_rl; }
  void validate() const;
};

struct RockModel {
  double phi0 = 0.15;
  double c_r = 9e-10;  // 1/Pa
  void validate() const;
};

double effective_saturation(double s, const FluidModel& f);

double mobility_w(double s, const FluidModel& f);
double mobility_l(double s, const FluidModel& f);
double mobility_w_ds(double s, const FluidModel& f);
double mobility_l_ds(double s, const FluidModel& f);

double fractional_flow_w(double s, const FluidModel& f);

double density_w(double p, const FluidModel& f);
double density_l(double p, const FluidModel& f);
inline double density_w_dp(const FluidModel& f) { return f.rho_w0 * f.c_w; }
inline double density_l_dp(const FluidModel& f) { return f.rho_l0 * f.c_l; }

double porosity(double p, const RockModel& r);
inline double porosity_dp(const RockModel& r) { return r.phi0 * r.c_r; }

/// Rotation of diag(k1, k2) by angle theta (radians); SPD for k1, k2 > 0.
Mat2 anisotropic_tensor(double k1, double k2, double theta);

// Per-element volumetric well rate densities (1/s). Injection carries the
// injected saturation s_in; production removes fluid at the local state.
struct WellField {
  std::vector<double> inject;   // >= 0 per element
  std::vector<double> produce;  // >= 0 per element
  double s_in = 0.85;
  bool any = false;
};

struct WellRates {
  double q_w = 0.0;
  double q_l = 0.0;
};

/// q_a(s) = f_a(s_in) * inject - f_a(s) * produce for each phase.
WellRates well_rates(double s, int elem, const WellField& wells, const FluidModel& f);

// Axis-aligned box in meters.
struct Box {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool contains(const Vec2& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
};

/// Spread a total volumetric rate uniformly over the elements whose
/// centroid lies in the box, normalizing by the covered area so the domain
/// integral of the rate density equals `total` exactly.
void add_well_box(WellField& wells, const TriMesh& mesh, const Box& box, double total,
                  bool injection);

// Permeability descriptions; each evaluates to a per-element SPD tensor.
struct PermBlock {
  Box box;
  double k = 0.0;
};

struct RasterGrid {
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0, dx = 0.0, dy = 0.0;
  std::vector<double> values;  // row-major, x fastest
  double at(const Vec2& p) const;
};

RasterGrid load_permeability_raster(const std::string& path);

struct PermeabilityField {
  enum class Kind { Constant, Blocks, Raster, TensorQuadrants };
  Kind kind = Kind::Constant;
  double k = 1e-12;           // Constant / Blocks background
  std::vector<PermBlock> blocks;
  RasterGrid raster;          // values override `k` inside the raster box
  // TensorQuadrants: principal values and one angle per quadrant of
  // [0,lx]x[0,ly] (bottom-left, bottom-right, top-left, top-right).
  double k1 = 0.0, k2 = 0.0;
  double theta_bl = 0.0, theta_br = 0.0, theta_tl = 0.0, theta_tr = 0.0;
  double lx = 0.0, ly = 0.0;

  Mat2 at(const Vec2& centroid) const;
  std::vector<Mat2> per_element(const TriMesh& mesh) const;
};

}  // namespace dgflow
