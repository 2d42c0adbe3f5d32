#include "eigenscat/gmres.hpp"

#include <cmath>
#include <vector>

namespace eigenscat {

GmresResult gmres(const LinearOperator& apply, const CVector& b, CVector& x, const GmresOptions& opts) {
  const Eigen::Index n = b.size();
  GmresResult result;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(n);
    result.converged = true;
    return result;
  }
  if (x.size() != n) x.setZero(n);

  const int m = opts.restart;
  Eigen::MatrixXcd basis(n, m + 1);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 1, m);
  std::vector<cplx> cs(static_cast<std::size_t>(m));
  std::vector<cplx> sn(static_cast<std::size_t>(m));
  CVector g(m + 1);
  CVector r(n);
  CVector w(n);

  apply(x, r);
  r = b - r;
  double beta = r.norm();
  result.relative_residual = beta / bnorm;

  while (result.iterations < opts.max_iterations) {
    if (result.relative_residual <= opts.tolerance) {
      result.converged = true;
      return result;
    }
    basis.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    hess.setZero();
    int j = 0;
    for (; j < m && result.iterations < opts.max_iterations; ++j) {
      ++result.iterations;
      apply(basis.col(j), w);
      // Classical Gram-Schmidt with one conditional reorthogonalisation pass.
      const auto v = basis.leftCols(j + 1);
      double wn = w.norm();
      for (int pass = 0; pass < 2; ++pass) {
        const double before = wn;
        const CVector h = v.adjoint() * w;
        w.noalias() -= v * h;
        hess.col(j).head(j + 1) += h;
        wn = w.norm();
        if (wn > 0.7 * before) break;
      }
      hess(j + 1, j) = wn;
      for (int i = 0; i < j; ++i) {
        const cplx t = cs[i] * hess(i, j) + sn[i] * hess(i + 1, j);
        hess(i + 1, j) = -std::conj(sn[i]) * hess(i, j) + std::conj(cs[i]) * hess(i + 1, j);
        hess(i, j) = t;
      }
      const cplx a = hess(j, j);
      const double bb = std::abs(hess(j + 1, j));
      const double denom = std::sqrt(std::norm(a) + bb * bb);
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else if (std::abs(a) == 0.0) {
        cs[j] = 0.0;
        sn[j] = 1.0;
      } else {
        const cplx phase = a / std::abs(a);
        cs[j] = std::abs(a) / denom;
        sn[j] = phase * bb / denom;
      }
      // Rotation [c s; -conj(s) conj(c)] applied to (a, bb) zeroes the subdiagonal.
      hess(j, j) = cs[j] * a + sn[j] * hess(j + 1, j);
      hess(j + 1, j) = 0.0;
      g(j + 1) = -std::conj(sn[j]) * g(j);
      g(j) = cs[j] * g(j);
      result.relative_residual = std::abs(g(j + 1)) / bnorm;
      if (wn > 0.0) basis.col(j + 1) = w / wn;
      if (result.relative_residual <= opts.tolerance || wn == 0.0) {
        ++j;
        break;
      }
    }
    // Back substitution on the leading j x j triangle.
    CVector y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    x.noalias() += basis.leftCols(j) * y;
    apply(x, r);
    r = b - r;
    beta = r.norm();
    result.relative_residual = beta / bnorm;
    if (beta == 0.0) break;
  }
  result.converged = result.relative_residual <= opts.tolerance;
  return result;
}

}  // namespace eigenscat
