#include "mdcutfem/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/SparseLU>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

using Matrix = Eigen::SparseMatrix<double>;

class LU : public Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<int>> {
 public:
  // largest stored factor entry; L is bounded by one under partial pivoting
  double max_factor_entry() const {
    double m = 0.0;
    for (Eigen::Index j = 0; j < m_Lstore.cols(); ++j)
      for (SCMatrix::InnerIterator it(m_Lstore, j); it; ++it) m = std::max(m, std::abs(it.value()));
    for (Eigen::Index j = 0; j < m_Ustore.outerSize(); ++j)
      for (decltype(m_Ustore)::InnerIterator it(m_Ustore, j); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }
};

void factor(LU& lu, const Matrix& A) {
  if (A.rows() != A.cols()) throw SingularMatrix("matrix is not square");
  Matrix M = A;
  M.makeCompressed();
  lu.analyzePattern(M);
  lu.factorize(M);
  if (lu.info() != Eigen::Success) throw SingularMatrix("sparse LU failed: " + lu.lastErrorMessage());
}

double max_abs(const Matrix& A) {
  double m = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Matrix::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace

SolveResult solve_direct(const Matrix& A, const Eigen::VectorXd& b, double max_residual) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  if (!b.allFinite()) throw SingularMatrix("right-hand side is not finite");
  LU lu;
  factor(lu, A);
  r.x = lu.solve(b);
  if (!r.x.allFinite()) throw SingularMatrix("solution is not finite");
  const double bn = b.norm();
  const double res = (A * r.x - b).norm();
  r.report.relative_residual = bn > 0.0 ? res / bn : res;
  const double am = max_abs(A);
  r.report.pivot_growth = am > 0.0 ? lu.max_factor_entry() / am : 0.0;
  r.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!(r.report.relative_residual < max_residual))
    throw ResidualTooLarge("relative residual " + std::to_string(r.report.relative_residual) + " exceeds " +
                           std::to_string(max_residual));
  return r;
}

double condition_estimate_1(const Matrix& A) {
  LU lu;
  factor(lu, A);
  const Eigen::Index n = A.rows();
  double anorm = 0.0;
  for (int k = 0; k < A.outerSize(); ++k) {
    double col = 0.0;
    for (Matrix::InnerIterator it(A, k); it; ++it) col += std::abs(it.value());
    anorm = std::max(anorm, col);
  }
  // Hager's iteration for ||A^{-1}||_1
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double est = 0.0;
  Eigen::Index last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = lu.solve(x);
    if (!y.allFinite()) return std::numeric_limits<double>::infinity();
    const double ynorm = y.lpNorm<1>();
    if (iter > 0 && ynorm <= est) break;
    est = ynorm;
    Eigen::VectorXd xi(n);
    for (Eigen::Index k = 0; k < n; ++k) xi[k] = y[k] >= 0 ? 1.0 : -1.0;
    const Eigen::VectorXd z = lu.transpose().solve(xi);
    Eigen::Index j;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x) || j == last) break;
    last = j;
    x.setZero();
    x[j] = 1.0;
  }
  // Higham's alternative lower bound guards against unlucky sign patterns
  Eigen::VectorXd alt(n);
  for (Eigen::Index k = 0; k < n; ++k) alt[k] = (k % 2 ? -1.0 : 1.0) * (1.0 + double(k) / std::max<Eigen::Index>(1, n - 1));
  const Eigen::VectorXd y = lu.solve(alt);
  est = std::max(est, 2.0 * y.lpNorm<1>() / (3.0 * n));
  return anorm * est;
}

}  // namespace mdcutfem
