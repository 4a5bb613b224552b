// model.hpp — driven three-level ladder coupled to one cavity mode, beyond the RWA.
#pragma once

#include <string>
#include <vector>

#include "hilbert.hpp"

namespace dcesim {

// All frequencies in units of omega_cav unless stated otherwise. omega_e = 0 fixes the
// energy reference; resonance means omega_g = -omega_L and omega_f = omega_cav.
struct ModelParams {
  double omega_cav = 1.0;
  double omega_g = -50.0;
  double omega_e = 0.0;
  double omega_f = 1.0;
  double omega_L = 50.0;   // drive frequency (only enters the lab frame / frame checks)
  double Omega_eg = 0.0;   // drive Rabi frequency on g–e
  double Omega_cav = 0.1;  // emitter–cavity coupling on e–f
  bool rwa_coupling = false;  // keep only the excitation-conserving part of the coupling

  // Resonant configuration: omega_f = omega_cav, omega_g = -omega_L.
  static ModelParams resonant(double Omega_eg_, double Omega_cav_ = 0.1, double omega_cav_ = 1.0,
                              double omega_L_ = 50.0);
  void validate() const;
};

// Frame rotating at the drive frequency on |g⟩; time independent.
Eigen::MatrixXcd hamiltonian_rotating(const ModelParams& p, const HilbertSpace& hs);

// Explicitly time-dependent lab-frame generator, for frame-equivalence checks.
Eigen::MatrixXcd hamiltonian_lab(const ModelParams& p, const HilbertSpace& hs, double t);

// R(t) with psi_rot = R(t) psi_lab.
Eigen::MatrixXcd frame_rotation(const ModelParams& p, const HilbertSpace& hs, double t);

struct DressedLevel {
  double energy = 0.0;
  Eigen::VectorXcd state;
  std::string label;      // closest member of {(|g,n⟩±|e,n⟩)/√2, |f,n⟩}
  double overlap = 0.0;   // squared overlap with that member
  bool ambiguous = false; // the two best overlaps tie within 1e-6
};

// Eigenlevels of H sorted by energy, tagged against the zero-coupling dressed basis.
std::vector<DressedLevel> dressed_levels(const Eigen::MatrixXcd& H, const HilbertSpace& hs);

}  // namespace dcesim
