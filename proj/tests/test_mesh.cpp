#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "dgflow/mesh.hpp"

using namespace dgflow;

namespace {

TriMesh two_triangle_square() {
  std::istringstream in(
      "4\n"
      "0 0\n"
      "1 0\n"
      "1 1\n"
      "0 1\n"
      "2\n"
      "0 1 2\n"
      "0 2 3\n");
  return read_tri_mesh(in);
}

}  // namespace

TEST_CASE("crossed generator element and dof ledger") {
  auto m = generate_crossed(2, 2, 1.0, 1.0);
  CHECK(m.n_elems() == 16);
  CHECK(3 * m.n_elems() == 48);

  auto m64 = generate_crossed(64, 64, 1.0, 1.0);
  CHECK(m64.n_elems() == 16384);
  CHECK(3 * m64.n_elems() == 49152);

  auto m1 = generate_crossed(1, 1, 2.0, 2.0);
  CHECK(m1.n_elems() == 4);
  double total = 0.0;
  for (double a : m1.areas) {
    CHECK(a == doctest::Approx(1.0));
    total += a;
  }
  CHECK(total == doctest::Approx(4.0));
}

TEST_CASE("crossed generator rejects bad arguments") {
  CHECK_THROWS(generate_crossed(0, 2, 1.0, 1.0));
  CHECK_THROWS(generate_crossed(2, -1, 1.0, 1.0));
  CHECK_THROWS(generate_crossed(2, 2, 0.0, 1.0));
  CHECK_THROWS(generate_crossed(2, 2, 1.0, -3.0));
}

TEST_CASE("face connectivity invariants") {
  auto m = generate_crossed(3, 2, 1.5, 1.0);

  int boundary = 0;
  for (const FaceRecord& f : m.faces) {
    CHECK(std::abs(f.normal.norm() - 1.0) < 1e-12);
    CHECK(f.length > 0.0);
    if (f.is_boundary())
      ++boundary;
    else
      CHECK(f.plus_elem < f.minus_elem);
  }
  CHECK(boundary == 2 * (3 + 2));

  // outward normal of the minus element is the negation of the face normal
  for (int fid = 0; fid < m.n_faces(); ++fid) {
    const FaceRecord& f = m.faces[fid];
    if (f.is_boundary()) continue;
    Vec2 nm = m.outward_normal(f.minus_elem, fid);
    CHECK((nm + f.normal).norm() < 1e-12);
  }

  // divergence of constants: sum of length-weighted outward normals vanishes
  for (int e = 0; e < m.n_elems(); ++e) {
    Vec2 sum = Vec2::Zero();
    for (int k = 0; k < 3; ++k) {
      int fid = m.elem_faces[e][k];
      sum += m.faces[fid].length * m.outward_normal(e, fid);
    }
    CHECK(sum.norm() < 1e-12);
  }
}

TEST_CASE("mesh size reported as cell edge") {
  auto m = generate_crossed(10, 3, 100.0, 30.0);
  CHECK(m.mesh_size == doctest::Approx(10.0));
}

TEST_CASE("vertex patches") {
  auto m = generate_crossed(1, 1, 1.0, 1.0);
  // center vertex is the last one (cell centroid); all 4 triangles touch it
  CHECK(m.patches.back().size() == 4);
  CHECK(m.patches.front().size() == 2);  // corner (0,0): bottom and left triangles
  size_t total = 0;
  for (const auto& p : m.patches) {
    CHECK(!p.empty());
    total += p.size();
  }
  CHECK(total == 3u * m.n_elems());
}

TEST_CASE("boundary classification: pressure-driven rules") {
  auto m = generate_crossed(2, 2, 1.0, 1.0);
  auto rules = box_side_rules(1.0, 1.0,
                              PressureBc::Dirichlet, SaturationBc::Dirichlet,
                              PressureBc::Dirichlet, SaturationBc::Outflow,
                              PressureBc::Neumann, SaturationBc::Neumann,
                              PressureBc::Neumann, SaturationBc::Neumann);
  classify_boundary(m, rules);
  CHECK(m.boundary_tagged());

  int n_dirichlet_s = 0, n_outflow = 0, n_neumann_s = 0;
  for (int f = 0; f < m.n_faces(); ++f) {
    if (!m.faces[f].is_boundary()) {
      CHECK(m.pressure_bc[f] == PressureBc::Untagged);
      continue;
    }
    if (m.saturation_bc[f] == SaturationBc::Dirichlet) {
      ++n_dirichlet_s;
      CHECK(m.pressure_bc[f] == PressureBc::Dirichlet);
    }
    if (m.saturation_bc[f] == SaturationBc::Outflow) ++n_outflow;
    if (m.saturation_bc[f] == SaturationBc::Neumann) ++n_neumann_s;
  }
  CHECK(n_dirichlet_s == 2);
  CHECK(n_outflow == 2);
  CHECK(n_neumann_s == 4);
}

TEST_CASE("boundary classification: all-Neumann and error cases") {
  auto m = generate_crossed(2, 2, 1.0, 1.0);
  classify_boundary(m, uniform_boundary_rule(PressureBc::Neumann, SaturationBc::Neumann));
  for (int f = 0; f < m.n_faces(); ++f)
    if (m.faces[f].is_boundary()) CHECK(m.pressure_bc[f] == PressureBc::Neumann);

  // a rule set that misses the top side
  auto m2 = generate_crossed(2, 2, 1.0, 1.0);
  std::vector<BoundaryRule> partial = {
      {[](const Vec2& p) { return p.y() < 0.999; }, PressureBc::Neumann, SaturationBc::Neumann}};
  CHECK_THROWS(classify_boundary(m2, partial));

  // saturation Dirichlet without pressure Dirichlet is rejected
  auto m3 = generate_crossed(2, 2, 1.0, 1.0);
  CHECK_THROWS(classify_boundary(
      m3, uniform_boundary_rule(PressureBc::Neumann, SaturationBc::Dirichlet)));
}

TEST_CASE("mesh import/export round trip") {
  auto m = two_triangle_square();
  CHECK(m.n_elems() == 2);
  CHECK(m.n_faces() == 5);
  CHECK(m.areas[0] == doctest::Approx(0.5));

  std::ostringstream out;
  write_tri_mesh(m, out);
  std::istringstream in(out.str());
  auto m2 = read_tri_mesh(in);
  REQUIRE(m2.n_verts() == m.n_verts());
  for (int v = 0; v < m.n_verts(); ++v) CHECK((m2.vertices[v] - m.vertices[v]).norm() < 1e-15);
  REQUIRE(m2.n_elems() == m.n_elems());
  CHECK(m2.triangles == m.triangles);
}

TEST_CASE("mesh import rejects malformed input") {
  std::istringstream bad_count("2\n0 0\n1 0\n");
  CHECK_THROWS(read_tri_mesh(bad_count));
  std::istringstream bad_index("3\n0 0\n1 0\n0 1\n1\n0 1 7\n");
  CHECK_THROWS(read_tri_mesh(bad_index));
  std::istringstream degenerate("3\n0 0\n1 0\n2 0\n1\n0 1 2\n");
  CHECK_THROWS(read_tri_mesh(degenerate));
}
