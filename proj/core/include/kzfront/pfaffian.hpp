#pragma once

#include <Eigen/Dense>

namespace kzfront {

/// Pfaffian split as sign * exp(log_abs); sign == 0 means Pf == 0.
struct LogPfaffian {
  double sign = 0.0;
  double log_abs = 0.0;

  double value() const { return sign == 0.0 ? 0.0 : sign * std::exp(log_abs); }
};

/// Pfaffian of a real antisymmetric matrix by Parlett-Reid elimination with
/// partial pivoting. The log-scaled form avoids overflow for large matrices.
/// Throws std::invalid_argument if the matrix is not square and even-sized.
LogPfaffian pfaffian_log(Eigen::MatrixXd a);

double pfaffian(Eigen::MatrixXd a);

/// Sign of det(m) through a partially pivoted LU; 0 for a singular matrix.
int determinant_sign(const Eigen::MatrixXd& m);

}  // namespace kzfront
