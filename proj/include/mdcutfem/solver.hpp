#pragma once

#include <Eigen/Sparse>

namespace mdcutfem {

struct SolveReport {
  double relative_residual = 0.0;  // ||Ax-b|| / ||b||, or ||Ax-b|| when b = 0
  double pivot_growth = 0.0;       // max |U| / max |A|
  double seconds = 0.0;
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/// Sparse LU (COLAMD ordering, partial pivoting). Throws SingularMatrix or ResidualTooLarge.
SolveResult solve_direct(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                         double max_residual = 1e-10);

/// Hager/Higham estimate of the 1-norm condition number. Throws SingularMatrix if the
/// factorization fails.
double condition_estimate_1(const Eigen::SparseMatrix<double>& A);

}  // namespace mdcutfem
