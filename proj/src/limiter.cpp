#include "dgflow/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgflow {

double FluxTable::max_abs() const {
  double m = 0.0;
  for (const auto& row : flux)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// min(1, q/p) with the convention that an empty budget means no limiting.
// Negative capacity (a mean pushed past its bound by compressibility drift)
// blocks the face entirely.
inline double capacity_ratio(double q, double p) {
  if (p == 0.0) return 1.0;
  return std::clamp(q / p, 0.0, 1.0);
}

}  // namespace

MeanLimitResult limit_cell_means(const TriMesh& mesh, const FluxTable& table,
                                 const Eigen::VectorXd& means_old, const MeanUpdateData& data,
                                 const WellField& wells, const FluidModel& fluid, double dt,
                                 SaturationBounds bounds, double eps1, double eps2,
                                 int max_iters) {
  const int ne = mesh.n_elems();
  if (means_old.size() != ne) throw std::invalid_argument("limit_cell_means: size mismatch");

  const bool has_wells = wells.any;
  const bool has_source = data.source.size() == ne;
  const double fw_in = has_wells ? fractional_flow_w(wells.s_in, fluid) : 0.0;

  Eigen::VectorXd means = means_old;
  std::vector<std::array<double, 3>> flux = table.flux;
  std::vector<std::array<double, 3>> alpha(ne);

  Eigen::VectorXd inflow(ne), outflow(ne);     // mass budgets over one step
  Eigen::VectorXd ratio_hi(ne), ratio_lo(ne);  // per-element capacity ratios

  for (int k = 1; k <= max_iters; ++k) {
    const double gamma = (k == 1) ? 1.0 : 0.0;

    for (int e = 0; e < ne; ++e) {
      double pin = 0.0, pout = 0.0;
      for (int kk = 0; kk < 3; ++kk) {
        pin += std::max(0.0, -flux[e][kk]);
        pout += std::min(0.0, -flux[e][kk]);
      }
      inflow[e] = dt * pin;
      outflow[e] = dt * pout;

      // admissible stored-mass changes; wells enter on the first sweep only
      double well_term = 0.0;
      if (gamma != 0.0 && has_wells)
        well_term = fw_in * data.rho_w_old[e] * wells.inject[e] +
                    data.rho_w_old[e] * fractional_flow_w(means[e], fluid) * wells.produce[e];
      if (gamma != 0.0 && has_source) well_term += data.source[e];
      const double area = mesh.areas[e];
      const double q_hi =
          area * (data.storage_new[e] * bounds.hi - data.storage_old[e] * means[e]) -
          area * gamma * dt * well_term;
      const double q_lo =
          area * (data.storage_new[e] * bounds.lo - data.storage_old[e] * means[e]) -
          area * gamma * dt * well_term;
      ratio_hi[e] = capacity_ratio(q_hi, inflow[e]);
      ratio_lo[e] = capacity_ratio(q_lo, outflow[e]);
    }

    for (int e = 0; e < ne; ++e) {
      for (int kk = 0; kk < 3; ++kk) {
        const double h = flux[e][kk];
        if (h == 0.0) {
          alpha[e][kk] = 1.0;
          continue;
        }
        const int f = mesh.elem_faces[e][kk];
        const FaceRecord& rec = mesh.faces[f];
        const int nb = rec.is_boundary() ? -1 : (rec.plus_elem == e ? rec.minus_elem : rec.plus_elem);
        double a;
        if (h < 0.0) {  // mass enters e, leaves the neighbor
          a = ratio_hi[e];
          if (nb >= 0) a = std::min(a, ratio_lo[nb]);
        } else {  // mass leaves e, enters the neighbor
          a = ratio_lo[e];
          if (nb >= 0) a = std::min(a, ratio_hi[nb]);
        }
        alpha[e][kk] = a;
      }
    }

    double max_flux = 0.0, max_delta = 0.0;
    for (int e = 0; e < ne; ++e) {
      double flux_sum = 0.0;
      for (int kk = 0; kk < 3; ++kk) flux_sum += alpha[e][kk] * flux[e][kk];

      double well_update = 0.0;
      if (gamma != 0.0 && has_wells)
        well_update = fw_in * data.rho_w_old[e] * wells.inject[e] -
                      data.rho_w_old[e] * fractional_flow_w(means[e], fluid) * wells.produce[e];
      if (gamma != 0.0 && has_source) well_update += data.source[e];

      means[e] = (data.storage_old[e] / data.storage_new[e]) * means[e] -
                 dt / (data.storage_new[e] * mesh.areas[e]) * flux_sum +
                 gamma * dt / data.storage_new[e] * well_update;

      for (int kk = 0; kk < 3; ++kk) {
        const double removed = alpha[e][kk] * flux[e][kk];
        flux[e][kk] -= removed;
        max_flux = std::max(max_flux, std::abs(flux[e][kk]));
        max_delta = std::max(max_delta, std::abs(removed));
      }
    }

    if (max_flux < eps1 || (k >= 2 && max_delta < eps2)) return {means, k};
  }

  throw std::runtime_error("flux limiter: no convergence within " + std::to_string(max_iters) +
                           " sweeps; residual flux " + std::to_string(table.max_abs()));
}

DGField apply_mean_shift(const DGField& f, const Eigen::VectorXd& new_means) {
  const TriMesh& mesh = f.mesh();
  if (new_means.size() != mesh.n_elems())
    throw std::invalid_argument("apply_mean_shift: size mismatch");
  DGField out = f;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const double shift = new_means[e] - f.cell_mean(e);
    for (int k = 0; k < 3; ++k) out.coeff(e, k) += shift;
  }
  return out;
}

double slope_limit_factor(double mean, const std::array<double, 3>& values,
                          const std::array<double, 3>& lo, const std::array<double, 3>& hi) {
  double factor = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double d = values[k] - mean;
    if (d > 0.0)
      factor = std::min(factor, std::clamp((hi[k] - mean) / d, 0.0, 1.0));
    else if (d < 0.0)
      factor = std::min(factor, std::clamp((lo[k] - mean) / d, 0.0, 1.0));
  }
  return factor;
}

DGField slope_limit(const DGField& f, SaturationBounds bounds) {
  const TriMesh& mesh = f.mesh();
  const Eigen::VectorXd means = f.cell_means();
  DGField out = f;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    std::array<double, 3> lo, hi, values;
    for (int k = 0; k < 3; ++k) {
      values[k] = f.coeff(e, k);
      double m = 1e300, M = -1e300;
      for (int nb : mesh.patches[mesh.triangles[e][k]]) {
        m = std::min(m, means[nb]);
        M = std::max(M, means[nb]);
      }
      lo[k] = std::max(m, bounds.lo);
      hi[k] = std::min(M, bounds.hi);
    }
    const double factor = slope_limit_factor(means[e], values, lo, hi);
    if (factor < 1.0)
      for (int k = 0; k < 3; ++k) out.coeff(e, k) = means[e] + factor * (values[k] - means[e]);
  }
  return out;
}

}  // namespace dgflow
