// model.cpp — Hamiltonians in both frames and dressed-level labeling.
#include "model.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dcesim {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

ModelParams ModelParams::resonant(double Omega_eg_, double Omega_cav_, double omega_cav_,
                                  double omega_L_) {
  ModelParams p;
  p.omega_cav = omega_cav_;
  p.omega_f = omega_cav_;
  p.omega_e = 0.0;
  p.omega_L = omega_L_;
  p.omega_g = -omega_L_;
  p.Omega_eg = Omega_eg_;
  p.Omega_cav = Omega_cav_;
  return p;
}

void ModelParams::validate() const {
  if (omega_cav <= 0.0) throw std::invalid_argument("ModelParams: omega_cav must be positive");
  if (Omega_eg < 0.0) throw std::invalid_argument("ModelParams: Omega_eg must be >= 0");
  if (Omega_cav < 0.0) throw std::invalid_argument("ModelParams: Omega_cav must be >= 0");
}

Eigen::MatrixXcd hamiltonian_rotating(const ModelParams& p, const HilbertSpace& hs) {
  p.validate();
  const int d = hs.dim();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);

  const Eigen::MatrixXcd a = annihilation(hs);
  H += p.omega_cav * creation(hs) * a;
  H += (p.omega_g + p.omega_L) * emitter_transfer(hs, Level::g, Level::g);
  H += p.omega_e * emitter_transfer(hs, Level::e, Level::e);
  const Eigen::MatrixXcd s_eg =
      emitter_transfer(hs, Level::e, Level::g) + emitter_transfer(hs, Level::g, Level::e);
  H += p.Omega_eg * s_eg;

  if (hs.has_f()) {
    H += p.omega_f * emitter_transfer(hs, Level::f, Level::f);
    const Eigen::MatrixXcd sigma_fe = emitter_transfer(hs, Level::f, Level::e);
    if (p.rwa_coupling) {
      H += p.Omega_cav * (sigma_fe * a + a.adjoint() * sigma_fe.adjoint());
    } else {
      H += p.Omega_cav * (sigma_fe + sigma_fe.adjoint()) * (a + a.adjoint());
    }
  }
  return H;
}

Eigen::MatrixXcd hamiltonian_lab(const ModelParams& p, const HilbertSpace& hs, double t) {
  p.validate();
  Eigen::MatrixXcd H = hamiltonian_rotating(p, hs);
  // Undo the frame terms: restore the bare |g⟩ energy and the oscillating drive.
  H -= (p.omega_g + p.omega_L) * emitter_transfer(hs, Level::g, Level::g);
  H += p.omega_g * emitter_transfer(hs, Level::g, Level::g);
  const Eigen::MatrixXcd sigma_eg = emitter_transfer(hs, Level::e, Level::g);
  H -= p.Omega_eg * (sigma_eg + sigma_eg.adjoint());
  H += p.Omega_eg * (std::exp(-I * p.omega_L * t) * sigma_eg +
                     std::exp(I * p.omega_L * t) * sigma_eg.adjoint());
  return H;
}

Eigen::MatrixXcd frame_rotation(const ModelParams& p, const HilbertSpace& hs, double t) {
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(hs.dim(), hs.dim());
  for (int n = 0; n <= hs.n_max; ++n) {
    const int i = hs.index(Level::g, n);
    R(i, i) = std::exp(-I * p.omega_L * t);
  }
  return R;
}

std::vector<DressedLevel> dressed_levels(const Eigen::MatrixXcd& H, const HilbertSpace& hs) {
  if (H.rows() != hs.dim() || H.cols() != hs.dim())
    throw std::invalid_argument("dressed_levels: Hamiltonian does not match the space");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("dressed_levels: eigensolver failed");

  // Reference basis at Omega_cav = 0: drive-dressed doublets and bare |f,n⟩.
  struct Ref {
    Eigen::VectorXcd v;
    std::string label;
  };
  std::vector<Ref> refs;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int n = 0; n <= hs.n_max; ++n) {
    Eigen::VectorXcd plus = inv_sqrt2 * (basis_state(hs, Level::g, n) + basis_state(hs, Level::e, n));
    Eigen::VectorXcd minus = inv_sqrt2 * (basis_state(hs, Level::g, n) - basis_state(hs, Level::e, n));
    refs.push_back({plus, "|g" + std::to_string(n) + ">+|e" + std::to_string(n) + ">"});
    refs.push_back({minus, "|g" + std::to_string(n) + ">-|e" + std::to_string(n) + ">"});
    if (hs.has_f()) refs.push_back({basis_state(hs, Level::f, n), "|f" + std::to_string(n) + ">"});
  }

  std::vector<DressedLevel> out(hs.dim());
  for (int k = 0; k < hs.dim(); ++k) {
    DressedLevel lvl;
    lvl.energy = es.eigenvalues()(k);
    lvl.state = es.eigenvectors().col(k);
    double best = -1.0, second = -1.0;
    for (const Ref& r : refs) {
      const double ov = std::norm(r.v.dot(lvl.state));
      if (ov > best) {
        second = best;
        best = ov;
        lvl.label = r.label;
      } else if (ov > second) {
        second = ov;
      }
    }
    lvl.overlap = best;
    lvl.ambiguous = (best - second) < 1e-6;
    out[k] = lvl;
  }
  return out;
}

}  // namespace dcesim
