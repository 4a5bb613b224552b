// linalg.hpp — dense complex eigendecomposition and small numeric helpers.
#pragma once

#include <Eigen/Dense>
#include <functional>

namespace dcesim {

struct Eigendecomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // right eigenvectors, one per column
};

// Full nonsymmetric eigendecomposition (LAPACK zgeev).
Eigendecomposition eig_general(const Eigen::MatrixXcd& A);

// Adaptive Simpson quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

}  // namespace dcesim
