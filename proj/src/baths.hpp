// baths.hpp — photonic bath density of states and the filtered coupling operators.
#pragma once

#include <Eigen/Dense>

namespace dcesim {

// One dissipation channel: its rate and the density of photonic modes it
// samples. v(omega) is exactly zero for omega < 0, a unit plateau on
// [omega_edge, omega_max], Gaussian shoulders of width delta_omega outside it.
struct BathSpec {
  double gamma = 1e-3;
  double omega_edge = 0.1;
  double omega_max = 21.0;
  double delta_omega = 0.025;

  void validate() const;
};

double bath_density(const BathSpec& b, double omega);

// Half-range principal value of v(omega)/(delta + omega) over omega >= 0.
double bath_principal_value(const BathSpec& b, double delta);

// U with matrix elements (in the eigenbasis of H)
//   U_mn = S_mn [ v(w_n - w_m)/2 - (i/2π) PV ∫ dω v(ω)/(w_m - w_n + ω) ],
// the second term only when with_level_shift is set.
Eigen::MatrixXcd filtered_operator(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& S,
                                   const BathSpec& bath, bool with_level_shift = false);

}  // namespace dcesim
