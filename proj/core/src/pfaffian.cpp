#include "kzfront/pfaffian.hpp"

#include <cmath>
#include <stdexcept>

namespace kzfront {

LogPfaffian pfaffian_log(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("pfaffian: matrix must be square");
  if (n % 2 != 0) return {0.0, 0.0};
  LogPfaffian out{1.0, 0.0};
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // pivot: largest |a(i, k)| for i > k
    Eigen::Index piv = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (piv != k + 1) {
      a.row(k + 1).swap(a.row(piv));
      a.col(k + 1).swap(a.col(piv));
      out.sign = -out.sign;
    }
    const double pivot = a(k, k + 1);
    out.sign *= pivot > 0.0 ? 1.0 : -1.0;
    out.log_abs += std::log(std::abs(pivot));
    if (k + 2 < n) {
      const Eigen::Index m = n - (k + 2);
      const Eigen::VectorXd tau = a.block(k + 2, k, m, 1) / a(k + 1, k);
      const Eigen::VectorXd col = a.block(k + 2, k + 1, m, 1);
      a.block(k + 2, k + 2, m, m).noalias() += tau * col.transpose();
      a.block(k + 2, k + 2, m, m).noalias() -= col * tau.transpose();
    }
  }
  return out;
}

double pfaffian(Eigen::MatrixXd a) { return pfaffian_log(std::move(a)).value(); }

int determinant_sign(const Eigen::MatrixXd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  const auto& u = lu.matrixLU();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double d = u(i, i);
    if (d == 0.0) return 0;
    if (d < 0.0) sign = -sign;
  }
  return sign;
}

}  // namespace kzfront
