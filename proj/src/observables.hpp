// observables.hpp — emission spectra, intensities, correlations, drive absorption.
#pragma once

#include "liouvillian.hpp"

namespace dcesim {

// Stationary ⟨B(0)A(τ)⟩ − ⟨A⟩⟨B⟩ on a τ ≥ 0 grid, by eigenexpansion of the full
// superoperator: Tr[A e^{Lτ}(rho·B)]. With this ordering an inverted transition
// emits at positive frequency under the e^{+iωτ} transform.
Eigen::VectorXcd two_time_correlation(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd& rho_ss,
                                      const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                                      const Eigen::VectorXd& tau);

struct SpectrumGrid {
  double start = 0.0;
  double stop = 4.0;
  double step = 2e-3;
  bool refine = true;            // second pass near peaks
  double refine_step = 5e-4;
  double window_linewidths = 10.0;

  void validate() const;
};

struct Spectrum {
  Eigen::VectorXd omega;
  Eigen::VectorXd value;         // Γ v(ω) · 2 Re Tr[S x(ω)], (L + iω) x = −X
  double coherent_weight = 0.0;  // Γ v(0) |⟨S⟩|², weight of the elastic line
  double intensity = 0.0;        // ∫ dω/2π value + coherent weight
  bool boundary_warning = false; // spectrum not negligible at the grid edge
};

// Eigenmodes of the odd parity block: every emission seed rho_ss·S lives there,
// so one decomposition serves both channels at an operating point.
struct CoherenceModes {
  std::vector<int> idx;                          // odd-sector superoperator indices
  Eigen::VectorXcd lambda;                       // odd-block eigenvalues
  Eigen::MatrixXcd vectors;                      // right eigenvectors
  Eigen::PartialPivLU<Eigen::MatrixXcd> solver;  // factorization of the eigenvector matrix
};
CoherenceModes coherence_modes(const Eigen::MatrixXcd& L, const HilbertSpace& hs);

// S_read is the operator traced against the resolvent solution, S_seed the one
// right-multiplied onto rho_ss (so emission lands at positive frequency); the
// quadrature channels use the same Hermitian S for both, the comparison mode
// uses the (jump, jump†) pair.
Spectrum emission_spectrum(const CoherenceModes& modes, const Eigen::MatrixXcd& rho_ss,
                           const Eigen::MatrixXcd& S_read, const Eigen::MatrixXcd& S_seed,
                           double gamma, const BathSpec& bath, const SpectrumGrid& grid);

// Per-frequency dense solves on the full superoperator; slow cross-check path.
Eigen::VectorXd emission_spectrum_direct(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd& rho_ss,
                                         const Eigen::MatrixXcd& S_read,
                                         const Eigen::MatrixXcd& S_seed, double gamma,
                                         const BathSpec& bath, const Eigen::VectorXd& omega);

// Trapezoid integral of the tabulated spectrum plus the coherent weight.
double total_intensity(const Spectrum& sp);

// Net photon flux absorbed from the drive: 2 Ω_eg Im⟨|e⟩⟨g|⟩.
double absorption_rate(const Eigen::MatrixXcd& rho_ss, const HilbertSpace& hs, double Omega_eg);

Eigen::VectorXd photon_distribution(const Eigen::MatrixXcd& rho_ss, const HilbertSpace& hs);

// Interior local maxima with value ≥ rel_threshold · max(y).
std::vector<int> find_local_maxima(const Eigen::VectorXd& y, double rel_threshold = 1e-3);

}  // namespace dcesim
