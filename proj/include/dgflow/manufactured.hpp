#pragma once

#include "dgflow/problem.hpp"

namespace dgflow {

// Smooth exact saturation/pressure pair on the unit square with body forces
// that make them solve both mass balances. Unit fluids (reference densities,
// porosity, viscosities, and permeability all one), tiny compressibilities,
// zero residual saturations, no gravity.
struct ManufacturedCase {
  double c_r = 1e-10;
  double c_w = 1e-10;
  double c_l = 1e-10;

  double saturation(const Vec2& x, double t) const;
  double pressure(const Vec2& x, double t) const;

  double forcing_pressure_eq(const Vec2& x, double t) const;
  double forcing_saturation_eq(const Vec2& x, double t) const;

  /// Range of the exact saturation over the unit square at time t,
  /// sampled on a 65x65 grid.
  SaturationBounds bounds(double t) const;
};

/// Crossed n x n unit-square mesh with Dirichlet data for both unknowns on
/// the whole boundary.
TriMesh make_manufactured_mesh(int n);

/// Problem setup for one refinement level: dt = h^2, end time 1 s, exact
/// Dirichlet data and initial fields, bounds tracking the exact range.
ProblemConfig make_manufactured_problem(const TriMesh& mesh, LimiterMode mode);

}  // namespace dgflow
