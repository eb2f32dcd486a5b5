#include "doctest.h"
#include "mdcutfem/error.hpp"
#include "mdcutfem/solver.hpp"

#include <Eigen/Dense>

using namespace mdcutfem;

TEST_SUITE("solver") {

TEST_CASE("direct solve") {
  Eigen::SparseMatrix<double> A(3, 3);
  A.insert(0, 0) = 4;
  A.insert(0, 1) = 1;
  A.insert(1, 0) = -1;
  A.insert(1, 1) = 3;
  A.insert(2, 2) = 2;
  A.insert(2, 0) = 1;
  A.makeCompressed();
  const Eigen::VectorXd b = Eigen::Vector3d(1, 2, 3);
  const SolveResult r = solve_direct(A, b);
  CHECK((A * r.x - b).norm() < 1e-14);
  CHECK(r.report.relative_residual < 1e-14);
  CHECK(r.report.pivot_growth >= 1.0 - 1e-12);
}

TEST_CASE("singular matrices throw") {
  Eigen::SparseMatrix<double> A(2, 2);
  A.insert(0, 0) = 1;
  A.insert(0, 1) = 2;
  A.insert(1, 0) = 2;
  A.insert(1, 1) = 4;
  A.makeCompressed();
  CHECK_THROWS_AS(solve_direct(A, Eigen::Vector2d(1, 1)), SingularMatrix);
  Eigen::SparseMatrix<double> Z(2, 2);
  Z.insert(0, 0) = 1;
  Z.makeCompressed();
  CHECK_THROWS_AS(condition_estimate_1(Z), SingularMatrix);
}

TEST_CASE("condition estimate against the dense inverse") {
  const int n = 30;
  Eigen::SparseMatrix<double> A(n, n);
  for (int i = 0; i < n; ++i) {
    A.insert(i, i) = 2.0 + 0.1 * i;
    if (i > 0) A.insert(i, i - 1) = -1.0;
    if (i + 1 < n) A.insert(i, i + 1) = -0.7;
  }
  A.makeCompressed();
  const Eigen::MatrixXd D(A);
  const auto norm1 = [](const Eigen::MatrixXd& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); };
  const double exact = norm1(D) * norm1(D.inverse());
  const double est = condition_estimate_1(A);
  // the estimator is a lower bound and usually exact
  CHECK(est <= exact * (1 + 1e-10));
  CHECK(est >= 0.3 * exact);
}

}
