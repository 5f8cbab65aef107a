#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "dgflow/problem.hpp"

namespace dgflow {

// Net mass flux of the wetting phase out of each element through each of
// its faces, integrated over the face. Values on the two sides of an
// interior face are negatives of each other.
struct FluxTable {
  std::vector<std::array<double, 3>> flux;  // per element, per local face

  double at(int elem, int k) const { return flux[elem][k]; }
  double max_abs() const;
};

// Element averages entering the flux-limited mean update.
struct MeanUpdateData {
  Eigen::VectorXd storage_new;  // avg of rho_w(P_new) * phi(P_new)
  Eigen::VectorXd storage_old;  // avg of rho_w(P_old) * phi(P_old)
  Eigen::VectorXd rho_w_old;    // avg of rho_w(P_old)
  Eigen::VectorXd source;       // avg external saturation-equation source; may be empty
};

struct MeanLimitResult {
  Eigen::VectorXd means;
  int iterations = 0;
};

/// Iterative flux-corrected update of the saturation cell means: starting
/// from the previous-step means, accumulate face fluxes scaled by factors
/// in [0,1] chosen so every mean stays inside `bounds`. Wells and external
/// sources enter on the first sweep only. Stops when the residual flux
/// drops below eps1 or stalls below eps2.
MeanLimitResult limit_cell_means(const TriMesh& mesh, const FluxTable& table,
                                 const Eigen::VectorXd& means_old, const MeanUpdateData& data,
                                 const WellField& wells, const FluidModel& fluid, double dt,
                                 SaturationBounds bounds, double eps1, double eps2,
                                 int max_iters);

/// Shift each element's nodal values so its mean matches `new_means`;
/// within-element slopes are untouched.
DGField apply_mean_shift(const DGField& f, const Eigen::VectorXd& new_means);

/// Largest factor in [0,1] scaling the nodal deviations from the mean so
/// that value k lands inside [lo[k], hi[k]].
double slope_limit_factor(double mean, const std::array<double, 3>& values,
                          const std::array<double, 3>& lo, const std::array<double, 3>& hi);

/// Vertex-based slope limiter: nodal values are pulled toward the cell mean
/// until they fit within the min/max of the cell means over each vertex's
/// patch, intersected with `bounds`. Cell means are preserved.
DGField slope_limit(const DGField& f, SaturationBounds bounds);

}  // namespace dgflow
