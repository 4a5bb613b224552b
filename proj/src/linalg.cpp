// linalg.cpp — LAPACK-backed eigendecomposition and adaptive quadrature.
#include "linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace dcesim {

Eigendecomposition eig_general(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eig_general: matrix must be square");
  const int n = static_cast<int>(A.rows());
  Eigendecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  Eigen::MatrixXcd work = A;  // zgeev overwrites its input
  const int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.values.data()), nullptr, n,
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n);
  if (info != 0) throw std::runtime_error("eig_general: zgeev failed, info=" + std::to_string(info));
  return out;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace dcesim
