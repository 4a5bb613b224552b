// liouvillian.cpp — superoperator assembly and steady-state extraction.
#include "liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "linalg.hpp"

namespace dcesim {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

Eigen::VectorXcd vec(const Mat& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Mat unvec(const Eigen::VectorXcd& v, int d) {
  if (v.size() != static_cast<long>(d) * d) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Mat>(v.data(), d, d);
}

DissipatorSet build_dissipators(const ModelParams& p, const HilbertSpace& hs, const Mat& H,
                                const BathSpec& bath_eg, const BathSpec& bath_fe,
                                const BathSpec& bath_cav, bool with_level_shift) {
  bath_eg.validate();
  bath_fe.validate();
  bath_cav.validate();
  DissipatorSet d;
  d.gamma_eg = bath_eg.gamma;
  d.gamma_fe = bath_fe.gamma;
  d.gamma_cav = bath_cav.gamma;
  d.rwa = p.rwa_coupling;
  d.sigma_ge = emitter_transfer(hs, Level::g, Level::e);
  const Mat a = annihilation(hs);
  d.S_cav = a + a.adjoint();
  d.jump_cav = a;
  if (hs.has_f()) {
    const Mat sigma_ef = emitter_transfer(hs, Level::e, Level::f);
    d.S_fe = sigma_ef + sigma_ef.adjoint();
    d.jump_fe = sigma_ef;
  }
  if (!d.rwa) {
    d.U_cav = filtered_operator(H, d.S_cav, bath_cav, with_level_shift);
    if (hs.has_f()) d.U_fe = filtered_operator(H, d.S_fe, bath_fe, with_level_shift);
  }
  return d;
}

Mat pair_dissipator_action(const Mat& rho, const Mat& S, const Mat& U, double gamma) {
  return gamma * (U * rho * S + S * rho * U.adjoint() - S * U * rho - rho * U.adjoint() * S);
}

Mat lindblad_action(const Mat& rho, const Mat& J, double gamma) {
  const Mat JdJ = J.adjoint() * J;
  return gamma * (J * rho * J.adjoint() - 0.5 * (JdJ * rho + rho * JdJ));
}

Mat master_equation_action(const Mat& rho, const Mat& H, const DissipatorSet& diss) {
  Mat drho = -I * (H * rho - rho * H);
  drho += lindblad_action(rho, diss.sigma_ge, diss.gamma_eg);
  if (diss.rwa) {
    if (diss.jump_fe.size() > 0) drho += lindblad_action(rho, diss.jump_fe, diss.gamma_fe);
    drho += lindblad_action(rho, diss.jump_cav, diss.gamma_cav);
  } else {
    if (diss.S_fe.size() > 0)
      drho += pair_dissipator_action(rho, diss.S_fe, diss.U_fe, diss.gamma_fe);
    drho += pair_dissipator_action(rho, diss.S_cav, diss.U_cav, diss.gamma_cav);
  }
  return drho;
}

namespace {

// vec(J rho J†) etc. under column stacking.
Mat lindblad_super(const Mat& J, double gamma) {
  const int d = static_cast<int>(J.rows());
  const Mat id = Mat::Identity(d, d);
  const Mat JdJ = J.adjoint() * J;
  Mat L = Eigen::kroneckerProduct(J.conjugate(), J).eval();
  L -= 0.5 * Eigen::kroneckerProduct(id, JdJ).eval();
  L -= 0.5 * Eigen::kroneckerProduct(JdJ.transpose(), id).eval();
  return gamma * L;
}

Mat pair_dissipator_super(const Mat& S, const Mat& U, double gamma) {
  const int d = static_cast<int>(S.rows());
  const Mat id = Mat::Identity(d, d);
  Mat L = Eigen::kroneckerProduct(S.transpose(), U).eval();
  L += Eigen::kroneckerProduct(U.conjugate(), S).eval();
  L -= Eigen::kroneckerProduct(id, (S * U).eval()).eval();
  L -= Eigen::kroneckerProduct((S.transpose() * U.conjugate()).eval(), id).eval();
  return gamma * L;
}

}  // namespace

Mat assemble_liouvillian(const Mat& H, const DissipatorSet& diss) {
  const int d = static_cast<int>(H.rows());
  const Mat id = Mat::Identity(d, d);
  Mat L = -I * (Eigen::kroneckerProduct(id, H).eval() -
                Eigen::kroneckerProduct(H.transpose(), id).eval());
  L += lindblad_super(diss.sigma_ge, diss.gamma_eg);
  if (diss.rwa) {
    if (diss.jump_fe.size() > 0) L += lindblad_super(diss.jump_fe, diss.gamma_fe);
    L += lindblad_super(diss.jump_cav, diss.gamma_cav);
  } else {
    if (diss.S_fe.size() > 0) L += pair_dissipator_super(diss.S_fe, diss.U_fe, diss.gamma_fe);
    L += pair_dissipator_super(diss.S_cav, diss.U_cav, diss.gamma_cav);
  }
  return L;
}

ParitySectors parity_sectors(const HilbertSpace& hs) {
  const int d = hs.dim();
  ParitySectors ps;
  ps.parity.resize(d);
  for (int i = 0; i < d; ++i)
    ps.parity[i] = (hs.photons_of(i) + (hs.level_of(i) == Level::f ? 1 : 0)) % 2;
  for (int col = 0; col < d; ++col)
    for (int row = 0; row < d; ++row) {
      const int k = col * d + row;
      if (ps.parity[row] == ps.parity[col])
        ps.even.push_back(k);
      else
        ps.odd.push_back(k);
    }
  return ps;
}

Mat sector_block(const Mat& L, const std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  Mat B(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) B(i, j) = L(idx[i], idx[j]);
  return B;
}

Eigen::VectorXcd sector_gather(const Eigen::VectorXcd& v, const std::vector<int>& idx) {
  Eigen::VectorXcd out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

Eigen::VectorXcd sector_scatter(const Eigen::VectorXcd& v, const std::vector<int>& idx,
                                int full_size) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(full_size);
  for (size_t i = 0; i < idx.size(); ++i) out(idx[i]) = v(i);
  return out;
}

namespace {

Mat kernel_density(const Mat& block, const std::vector<int>* idx, int dim, double residual_tol,
                   double norm_L) {
  Eigen::BDCSVD<Mat> svd(block, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const int m = static_cast<int>(s.size());
  if (m >= 2 && s(m - 2) < 1e-8 * s(0))
    throw std::runtime_error("steady_state: kernel of the superoperator is degenerate");
  Eigen::VectorXcd kernel = svd.matrixV().col(m - 1);
  Eigen::VectorXcd full =
      idx ? sector_scatter(kernel, *idx, dim * dim) : Eigen::VectorXcd(kernel);
  Mat rho = unvec(full, dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-10)
    throw std::runtime_error("steady_state: kernel vector is traceless, no density matrix found");
  rho /= tr;
  const double residual = (block * (idx ? sector_gather(vec(rho), *idx)
                                        : Eigen::VectorXcd(vec(rho))))
                              .norm();
  if (residual > residual_tol * norm_L)
    throw std::runtime_error("steady_state: residual " + std::to_string(residual) +
                             " exceeds tolerance");
  return rho;
}

}  // namespace

Mat steady_state(const Mat& L, int dim, double residual_tol) {
  if (L.rows() != static_cast<long>(dim) * dim)
    throw std::invalid_argument("steady_state: superoperator size mismatch");
  return kernel_density(L, nullptr, dim, residual_tol, L.norm());
}

Mat steady_state_sector(const Mat& L, const HilbertSpace& hs, double residual_tol) {
  const int d = hs.dim();
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("steady_state_sector: superoperator size mismatch");
  const ParitySectors ps = parity_sectors(hs);
  const Mat block = sector_block(L, ps.even);
  return kernel_density(block, &ps.even, d, residual_tol, L.norm());
}

Mat propagate(const Mat& L, const Mat& rho0, double t) {
  const int d = static_cast<int>(rho0.rows());
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("propagate: superoperator size mismatch");
  const Mat expLt = (L * t).exp();
  return unvec(expLt * vec(rho0), d);
}

std::vector<Mat> propagate(const Mat& L, const Mat& rho0, const Eigen::VectorXd& tau_grid) {
  const int d = static_cast<int>(rho0.rows());
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("propagate: superoperator size mismatch");
  if (tau_grid.size() > 0 && tau_grid(0) < 0.0)
    throw std::invalid_argument("propagate: tau grid must start at >= 0");
  for (long i = 1; i < tau_grid.size(); ++i)
    if (!(tau_grid(i) > tau_grid(i - 1)))
      throw std::invalid_argument("propagate: tau grid must be strictly increasing");

  std::vector<Mat> out;
  out.reserve(tau_grid.size());

  const Eigendecomposition ed = eig_general(L);
  const Eigen::PartialPivLU<Mat> lu(ed.vectors);
  const Mat v_inv = lu.inverse();
  const double cond = ed.vectors.cwiseAbs().colwise().sum().maxCoeff() *
                      v_inv.cwiseAbs().colwise().sum().maxCoeff();
  if (cond < 1e8) {
    const Eigen::VectorXcd z = v_inv * vec(rho0);
    for (long i = 0; i < tau_grid.size(); ++i) {
      Eigen::VectorXcd scaled(z.size());
      for (long k = 0; k < z.size(); ++k)
        scaled(k) = z(k) * std::exp(ed.values(k) * tau_grid(i));
      out.push_back(unvec(ed.vectors * scaled, d));
    }
    return out;
  }
  // Poorly conditioned eigenvectors: fall back to stepped dense exponentials.
  Eigen::VectorXcd state = vec(rho0);
  double t_prev = 0.0;
  for (long i = 0; i < tau_grid.size(); ++i) {
    const double dt = tau_grid(i) - t_prev;
    if (dt > 0.0) state = ((L * dt).exp() * state).eval();
    t_prev = tau_grid(i);
    out.push_back(unvec(state, d));
  }
  return out;
}

}  // namespace dcesim
