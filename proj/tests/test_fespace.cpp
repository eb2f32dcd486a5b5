#include "doctest.h"
#include "mdcutfem/assembly.hpp"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/error.hpp"
#include "mdcutfem/fespace.hpp"

using namespace mdcutfem;

TEST_SUITE("fespace") {

TEST_CASE("hat functions") {
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1)};
  const BasisEval b = eval_basis(tri, Vec2(0.7, 0.2));
  CHECK(b.value[0] + b.value[1] + b.value[2] == doctest::Approx(1.0));
  CHECK((b.grad[0] + b.grad[1] + b.grad[2]).norm() < 1e-14);
  // reproduces linear functions
  const double lin = b.value[0] * 0.0 + b.value[1] * 1.0 + b.value[2] * 1.0;
  CHECK(lin == doctest::Approx(0.7));
  CHECK_THROWS_AS(eval_basis(tri, Vec2(0.2, 0.7)), PointOutsideElement);
}

TEST_CASE("tangential projection") {
  const Vec2 g(3, 4);
  CHECK(tangential_gradient(g, 2) == g);
  CHECK(tangential_gradient(g, 1, Vec2(0, 1)).isApprox(Vec2(0, 4)));
  CHECK(tangential_gradient(g, 0).norm() == 0.0);
}

TEST_CASE("dof blocks follow the canonical order") {
  const MixedDomain d = build_domain(catalog("case3").geometry);
  const auto disc = discretize(d, 5, Vec2(0.0031, 0.0017));
  const DofMap& m = disc->dofs;
  CHECK(m.components() == 9);
  int total = 0;
  for (int s = 0; s < m.components(); ++s) {
    CHECK(m.offset(s) == total);
    total += m.block_size(s);
    for (int v : m.vertices(s)) CHECK(m.slot_of(m.dof(s, v)) == s);
  }
  CHECK(total == m.total());
  // the point lives on one triangle, so its block has three dofs
  CHECK(m.block_size(8) == 3);
}

TEST_CASE("trace evaluation") {
  const MixedDomain d = build_domain(catalog("case1").geometry);
  const auto disc = discretize(d, 6, Vec2::Zero());
  Eigen::VectorXd x(disc->dofs.total());
  for (int s = 0; s < 3; ++s)
    for (int v : disc->dofs.vertices(s)) {
      const Vec2 p = disc->mesh.vertex(v);
      x[disc->dofs.dof(s, v)] = (s + 1) * (1 + 2 * p.x() - p.y());
    }
  const SolutionField f(disc->mesh, disc->active, disc->dofs, x);
  CHECK(f.value(0, Vec2(0.2, 0.3)) == doctest::Approx(1 + 0.4 - 0.3));
  CHECK(f.value(2, Vec2(0.5, 0.3)) == doctest::Approx(3 * (1 + 1 - 0.3)));
  CHECK_THROWS_AS(trace_triangle(disc->mesh, disc->active[0], Vec2(0.95, 0.5)), PointNotInActiveMesh);
}

}
