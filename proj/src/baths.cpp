// baths.cpp — bath density evaluation and construction of the filtered operators.
#include "baths.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "linalg.hpp"

namespace dcesim {

void BathSpec::validate() const {
  if (gamma < 0.0) throw std::invalid_argument("BathSpec: gamma must be >= 0");
  if (omega_edge <= 0.0) throw std::invalid_argument("BathSpec: omega_edge must be positive");
  if (omega_max <= omega_edge) throw std::invalid_argument("BathSpec: omega_max must exceed omega_edge");
  if (delta_omega <= 0.0) throw std::invalid_argument("BathSpec: delta_omega must be positive");
}

double bath_density(const BathSpec& b, double omega) {
  if (omega < 0.0) return 0.0;
  if (omega < b.omega_edge) {
    const double x = (omega - b.omega_edge) / b.delta_omega;
    return std::exp(-0.5 * x * x);
  }
  if (omega <= b.omega_max) return 1.0;
  const double x = (omega - b.omega_max) / b.delta_omega;
  return std::exp(-0.5 * x * x);
}

double bath_principal_value(const BathSpec& b, double delta) {
  b.validate();
  const double hi = b.omega_max + 10.0 * b.delta_omega;  // v is ~1e-22 beyond this
  const double pole = -delta;
  const auto v = [&b](double w) { return bath_density(b, w); };
  if (std::abs(pole) < 1e-12) {
    // Pole on the support edge, where v jumps from 0 to v(0): the symmetric
    // excision diverges like v(0)·log, so keep the finite part (reference
    // scale 1, the cavity unit).
    const double v0 = v(0.0);
    const double low =
        integrate([&](double w) { return w < 1e-14 ? 0.0 : (v(w) - v0) / w; }, 0.0, 1.0);
    return low + integrate([&](double w) { return v(w) / w; }, 1.0, hi);
  }
  if (pole < 0.0 || pole >= hi) {
    return integrate([&](double w) { return v(w) / (delta + w); }, 0.0, hi);
  }
  // Subtract the pole: ∫ (v(ω)-v(p))/(ω-p) dω + v(p) ln((hi-p)/p).
  const double vp = v(pole);
  const double regular = integrate(
      [&](double w) {
        const double num = v(w) - vp;
        const double den = w - pole;
        if (std::abs(den) < 1e-14) return 0.0;
        return num / den;
      },
      0.0, hi);
  return regular + vp * std::log((hi - pole) / pole);
}

Eigen::MatrixXcd filtered_operator(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& S,
                                   const BathSpec& bath, bool with_level_shift) {
  bath.validate();
  if (H.rows() != H.cols() || S.rows() != S.cols() || H.rows() != S.rows())
    throw std::invalid_argument("filtered_operator: H and S must be square and equal-sized");
  const int d = static_cast<int>(H.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("filtered_operator: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::MatrixXcd& V = es.eigenvectors();

  Eigen::MatrixXcd S_eig = V.adjoint() * S * V;
  Eigen::MatrixXcd U_eig(d, d);
  const std::complex<double> I{0.0, 1.0};
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      std::complex<double> filter = 0.5 * bath_density(bath, w(n) - w(m));
      if (with_level_shift)
        filter -= I / (2.0 * M_PI) * bath_principal_value(bath, w(m) - w(n));
      U_eig(m, n) = S_eig(m, n) * filter;
    }
  return V * U_eig * V.adjoint();
}

}  // namespace dcesim
