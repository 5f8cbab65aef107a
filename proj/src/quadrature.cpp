#include "dgflow/quadrature.hpp"

#include <cmath>

namespace dgflow {

namespace {

void push_perms3(TriQuadrature& q, double a, double b, double w) {
  // orbit of (a, b, b)
  q.bary.push_back({a, b, b});
  q.bary.push_back({b, a, b});
  q.bary.push_back({b, b, a});
  q.weight.insert(q.weight.end(), 3, w);
}

void push_perms6(TriQuadrature& q, double a, double b, double c, double w) {
  q.bary.push_back({a, b, c});
  q.bary.push_back({a, c, b});
  q.bary.push_back({b, a, c});
  q.bary.push_back({b, c, a});
  q.bary.push_back({c, a, b});
  q.bary.push_back({c, b, a});
  q.weight.insert(q.weight.end(), 6, w);
}

}  // namespace

const TriQuadrature& TriQuadrature::degree4() {
  static const TriQuadrature rule = [] {
    TriQuadrature q;
    push_perms3(q, 0.816847572980459, 0.091576213509771, 0.109951743655322);
    push_perms3(q, 0.108103018168070, 0.445948490915965, 0.223381589678011);
    return q;
  }();
  return rule;
}

const TriQuadrature& TriQuadrature::degree6() {
  static const TriQuadrature rule = [] {
    TriQuadrature q;
    push_perms3(q, 0.873821971016996, 0.063089014491502, 0.050844906370207);
    push_perms3(q, 0.501426509658179, 0.249286745170910, 0.116786275726379);
    push_perms6(q, 0.636502499121399, 0.310352451033785, 0.053145049844816, 0.082851075618374);
    return q;
  }();
  return rule;
}

const SegmentQuadrature& SegmentQuadrature::gauss3() {
  static const SegmentQuadrature rule = [] {
    SegmentQuadrature q;
    const double r = std::sqrt(3.0 / 5.0);
    q.point = {0.5 * (1.0 - r), 0.5, 0.5 * (1.0 + r)};
    q.weight = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return q;
  }();
  return rule;
}

}  // namespace dgflow
