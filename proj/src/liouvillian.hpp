// liouvillian.hpp — master-equation superoperator, parity sectors, steady state.
#pragma once

#include <vector>

#include "baths.hpp"
#include "model.hpp"

namespace dcesim {

// Column-stacking convention: vec(A rho B) = (B^T ⊗ A) vec(rho).
Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int d);

// The dissipation channels entering the master equation. The e->g channel is a
// plain Lindblad term. The fe and cav channels carry a coupling quadrature S and
// its bath-filtered partner U; in the excitation-conserving comparison mode they
// degrade to plain jump operators instead.
struct DissipatorSet {
  double gamma_eg = 0.01;
  double gamma_fe = 1e-3;
  double gamma_cav = 1e-3;
  bool rwa = false;
  Eigen::MatrixXcd sigma_ge;           // |g⟩⟨e| ⊗ 1
  Eigen::MatrixXcd S_fe, U_fe;         // emitter quadrature channel (empty without |f⟩)
  Eigen::MatrixXcd S_cav, U_cav;       // cavity quadrature channel
  Eigen::MatrixXcd jump_fe, jump_cav;  // comparison-mode jumps |e⟩⟨f| ⊗ 1 and a
};

DissipatorSet build_dissipators(const ModelParams& p, const HilbertSpace& hs,
                                const Eigen::MatrixXcd& H, const BathSpec& bath_eg,
                                const BathSpec& bath_fe, const BathSpec& bath_cav,
                                bool with_level_shift = false);

// Γ (U rho S + S rho U† − S U rho − rho U† S). U = S/2 recovers the Lindblad form.
Eigen::MatrixXcd pair_dissipator_action(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& S,
                                        const Eigen::MatrixXcd& U, double gamma);
Eigen::MatrixXcd lindblad_action(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& J,
                                 double gamma);

// d rho/dt evaluated directly in matrix form; used for cross-checks and short
// time propagation at small truncation.
Eigen::MatrixXcd master_equation_action(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& H,
                                        const DissipatorSet& diss);

// Dense superoperator on vec(rho).
Eigen::MatrixXcd assemble_liouvillian(const Eigen::MatrixXcd& H, const DissipatorSet& diss);

// Photon number plus f-occupation parity is conserved, so the superoperator splits
// into an even block (equal bra/ket parity; holds the populations and the steady
// state) and an odd block (opposite parity; holds the coherences driven by the
// emission channels).
struct ParitySectors {
  std::vector<int> parity;     // per Hilbert index, 0 or 1
  std::vector<int> even, odd;  // column-major superoperator indices per block
};
ParitySectors parity_sectors(const HilbertSpace& hs);

Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& L, const std::vector<int>& idx);
Eigen::VectorXcd sector_gather(const Eigen::VectorXcd& v, const std::vector<int>& idx);
Eigen::VectorXcd sector_scatter(const Eigen::VectorXcd& v, const std::vector<int>& idx,
                                int full_size);

// Unique trace-one kernel vector of L via SVD; throws if the kernel is degenerate
// or the residual exceeds residual_tol * ‖L‖.
Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& L, int dim, double residual_tol = 1e-10);

// Same, restricted to the even parity block (the odd block is never singular here).
Eigen::MatrixXcd steady_state_sector(const Eigen::MatrixXcd& L, const HilbertSpace& hs,
                                     double residual_tol = 1e-10);

// exp(L t) applied to rho0.
Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd& rho0, double t);

// Trajectory on a monotone tau grid: eigendecomposition of L when its
// eigenvector matrix is well conditioned, stepped dense exponentials otherwise.
std::vector<Eigen::MatrixXcd> propagate(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd& rho0,
                                        const Eigen::VectorXd& tau_grid);

}  // namespace dcesim
