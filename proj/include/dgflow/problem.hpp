#pragma once

#include <functional>

#include "dgflow/dg_space.hpp"
#include "dgflow/physics.hpp"

namespace dgflow {

enum class LimiterMode { None, SlopeOnly, FluxOnly, FluxAndSlope };

struct SchemeParams {
  double sigma = 100.0;            // interior penalty coefficient
  double dirichlet_factor = 10.0;  // penalty scale on Dirichlet boundary faces
  double dt = 1.0;                 // time step (s)
};

struct SaturationBounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct FlowState {
  DGField pressure;    // Pa
  DGField saturation;  // dimensionless
  double time = 0.0;
};

using BoundaryFn = std::function<double(const Vec2&, double)>;  // (x, t)
using SourceFn = std::function<double(const Vec2&, double)>;

struct ProblemConfig {
  FluidModel fluid;
  RockModel rock;
  std::vector<Mat2> perm;  // per-element permeability tensors
  Vec2 gravity = Vec2::Zero();
  WellField wells;

  BoundaryFn g_pressure;    // Dirichlet pressure data
  BoundaryFn g_saturation;  // Dirichlet saturation data
  BoundaryFn j_pressure;    // Neumann mass-flux data; zero when unset
  BoundaryFn j_saturation;

  // External body forces for the two equations; when set they replace the
  // well source terms (manufactured-solution runs).
  SourceFn source_pressure_eq;
  SourceFn source_saturation_eq;

  SchemeParams scheme;
  double t_end = 0.0;

  ScalarField initial_pressure;
  ScalarField initial_saturation;

  double newton_rtol = 1e-6;
  int newton_max_iter = 25;
  int linesearch_max_halvings = 10;

  LimiterMode limiter = LimiterMode::FluxAndSlope;
  double fl_eps1 = 1e-6;
  double fl_eps2 = 1e-6;
  int fl_max_iters = 1000;

  // Admissible saturation bounds, possibly time dependent (manufactured
  // runs track the exact solution's range); defaults to the residual range.
  std::function<SaturationBounds(double)> bounds_at;

  SaturationBounds bounds(double t) const {
    if (bounds_at) return bounds_at(t);
    return {fluid.s_min(), fluid.s_max()};
  }
};

}  // namespace dgflow
