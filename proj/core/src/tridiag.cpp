#include "tridiag.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace kzfront::detail {

TridiagBlocks schur_blocks(std::span<const double> couplings, std::span<const double> fields) {
  const int n = static_cast<int>(fields.size());
  TridiagBlocks b;
  b.d_odd.resize(n);
  b.e_odd.resize(std::max(n - 1, 0));
  b.d_even.resize(n);
  b.e_even.resize(std::max(n - 1, 0));
  auto j_at = [&](int m) { return (m >= 1 && m <= n - 1) ? couplings[static_cast<std::size_t>(m - 1)] : 0.0; };
  auto g_at = [&](int m) { return fields[static_cast<std::size_t>(m - 1)]; };
  for (int m = 1; m <= n; ++m) {
    const double jm1 = j_at(m - 1), jm = j_at(m), gm = g_at(m);
    b.d_odd(m - 1) = 0.25 * (jm1 * jm1 + gm * gm);
    b.d_even(m - 1) = 0.25 * (gm * gm + jm * jm);
    if (m < n) {
      b.e_odd(m - 1) = -0.25 * gm * jm;
      b.e_even(m - 1) = -0.25 * jm * g_at(m + 1);
    }
  }
  return b;
}

TridiagEigenResult tridiag_eigen_range(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                                       int il, int iu, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  Eigen::VectorXd d = diag;
  Eigen::VectorXd e(n);  // dstemr wants length n, last entry is scratch
  e.setZero();
  e.head(n - 1) = offdiag.head(n - 1);

  TridiagEigenResult out;
  const lapack_int nv = iu - il + 1;
  out.values.resize(n);
  Eigen::MatrixXd z;
  if (want_vectors) z.resize(n, nv);
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * std::max<lapack_int>(1, nv)));
  lapack_int m = 0;
  lapack_logical tryrac = 1;
  const lapack_int info = LAPACKE_dstemr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', (il == 1 && iu == n) ? 'A' : 'I', n, d.data(),
      e.data(), 0.0, 0.0, il, iu, &m, out.values.data(), want_vectors ? z.data() : nullptr, n,
      nv, isuppz.data(), &tryrac);
  if (info != 0)
    throw std::runtime_error("tridiag_eigen_range: dstemr failed, info=" + std::to_string(info));
  out.values.conservativeResize(m);
  if (want_vectors) out.vectors = z.leftCols(m);
  return out;
}

Eigen::VectorXd apply_antisymmetric_tridiag(const Eigen::VectorXd& superdiag, const Eigen::VectorXd& x) {
  const Eigen::Index m = x.size();
  Eigen::VectorXd y(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    double v = 0.0;
    if (k + 1 < m) v += superdiag(k) * x(k + 1);
    if (k > 0) v -= superdiag(k - 1) * x(k - 1);
    y(k) = v;
  }
  return y;
}

Eigen::VectorXd superdiagonal_of(std::span<const double> couplings, std::span<const double> fields) {
  const int n = static_cast<int>(fields.size());
  Eigen::VectorXd c(2 * n - 1);
  for (int m = 0; m < n; ++m) {
    c(2 * m) = -0.5 * fields[static_cast<std::size_t>(m)];
    if (m < n - 1) c(2 * m + 1) = -0.5 * couplings[static_cast<std::size_t>(m)];
  }
  return c;
}

}  // namespace kzfront::detail
