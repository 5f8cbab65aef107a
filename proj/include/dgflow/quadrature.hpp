#pragma once

#include <array>
#include <vector>

namespace dgflow {

// Symmetric quadrature on the reference triangle in barycentric coordinates.
// Weights sum to 1; integrals scale by the element area.
struct TriQuadrature {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> weight;

  int size() const { return static_cast<int>(weight.size()); }

  static const TriQuadrature& degree4();  // 6 points
  static const TriQuadrature& degree6();  // 12 points
};

// Gauss rule on the unit segment [0,1]; weights sum to 1.
struct SegmentQuadrature {
  std::vector<double> point;
  std::vector<double> weight;

  int size() const { return static_cast<int>(weight.size()); }

  static const SegmentQuadrature& gauss3();  // exact through degree 5
};

}  // namespace dgflow
