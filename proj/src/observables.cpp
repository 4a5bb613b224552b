// observables.cpp — spectra by eigenmode expansion of the coherence sector.
#include "observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "linalg.hpp"

namespace dcesim {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

void SpectrumGrid::validate() const {
  if (!(stop > start)) throw std::invalid_argument("SpectrumGrid: stop must exceed start");
  if (step <= 0.0 || refine_step <= 0.0)
    throw std::invalid_argument("SpectrumGrid: steps must be positive");
}

Eigen::VectorXcd two_time_correlation(const Mat& L, const Mat& rho_ss, const Mat& A, const Mat& B,
                                      const Eigen::VectorXd& tau) {
  const int d = static_cast<int>(rho_ss.rows());
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("two_time_correlation: superoperator size mismatch");
  const Eigendecomposition ed = eig_general(L);
  const Eigen::VectorXcd z = ed.vectors.partialPivLu().solve(vec(rho_ss * B));
  const Eigen::VectorXcd row = ed.vectors.transpose() * vec(A.transpose().eval());
  const cplx mean2 = (A * rho_ss).trace() * (B * rho_ss).trace();
  Eigen::VectorXcd c(tau.size());
  for (long i = 0; i < tau.size(); ++i) {
    cplx acc = 0.0;
    for (long k = 0; k < ed.values.size(); ++k)
      acc += row(k) * z(k) * std::exp(ed.values(k) * tau(i));
    c(i) = acc - mean2;
  }
  return c;
}

CoherenceModes coherence_modes(const Mat& L, const HilbertSpace& hs) {
  const int d = hs.dim();
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("coherence_modes: superoperator size mismatch");
  CoherenceModes m;
  m.idx = parity_sectors(hs).odd;
  const Mat block = sector_block(L, m.idx);
  Eigendecomposition ed = eig_general(block);
  m.lambda = std::move(ed.values);
  m.vectors = std::move(ed.vectors);
  m.solver.compute(m.vectors);
  return m;
}

namespace {

double trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (long i = 0; i + 1 < x.size(); ++i) acc += 0.5 * (y(i) + y(i + 1)) * (x(i + 1) - x(i));
  return acc;
}

// Sorted unique union of base grid and refinement windows.
Eigen::VectorXd merge_grids(const SpectrumGrid& grid,
                            const std::vector<std::pair<double, double>>& windows) {
  std::vector<double> pts;
  const long n_base = static_cast<long>(std::floor((grid.stop - grid.start) / grid.step + 1e-9)) + 1;
  pts.reserve(n_base);
  for (long i = 0; i < n_base; ++i) pts.push_back(grid.start + grid.step * i);
  for (const auto& [lo, hi] : windows) {
    const double a = std::max(lo, grid.start), b = std::min(hi, grid.stop);
    if (!(b > a)) continue;
    const long n = static_cast<long>(std::floor((b - a) / grid.refine_step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) pts.push_back(a + grid.refine_step * i);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            pts.end());
  return Eigen::Map<Eigen::VectorXd>(pts.data(), pts.size());
}

}  // namespace

Spectrum emission_spectrum(const CoherenceModes& modes, const Mat& rho_ss, const Mat& S_read,
                           const Mat& S_seed, double gamma, const BathSpec& bath,
                           const SpectrumGrid& grid) {
  grid.validate();
  bath.validate();
  const cplx mean_read = (S_read * rho_ss).trace();
  const cplx mean_seed = (S_seed * rho_ss).trace();
  const Mat X = rho_ss * S_seed - rho_ss * mean_seed;
  const Eigen::VectorXcd x_odd = sector_gather(vec(X), modes.idx);
  const Eigen::VectorXcd z = modes.solver.solve(x_odd);
  const Eigen::VectorXcd row =
      modes.vectors.transpose() * sector_gather(vec(S_read.transpose().eval()), modes.idx);
  const Eigen::VectorXcd w = row.cwiseProduct(z);

  // ∫_0^∞ e^{iωτ} ⟨S_seed(0) S_read(τ)⟩ dτ = −Tr[S_read (L+iω)^{-1} X], over the modes.
  const auto evaluate = [&](double omega) {
    cplx acc = 0.0;
    for (long k = 0; k < w.size(); ++k) acc -= w(k) / (modes.lambda(k) + I * omega);
    return gamma * bath_density(bath, omega) * 2.0 * acc.real();
  };

  // Refinement windows seeded from the modes themselves, so narrow lines cannot
  // slip between base-grid samples, plus windows around first-pass maxima.
  std::vector<std::pair<double, double>> windows;
  if (grid.refine) {
    struct ModeWindow {
      double height, lo, hi;
    };
    std::vector<ModeWindow> cand;
    double h_max = 0.0;
    for (long k = 0; k < w.size(); ++k) {
      const double pos = -modes.lambda(k).imag();
      const double width = std::max(-modes.lambda(k).real(), 1e-12);
      if (pos < grid.start || pos > grid.stop) continue;
      const double h = gamma * bath_density(bath, pos) * 2.0 * std::abs(w(k)) / width;
      h_max = std::max(h_max, h);
      const double half = grid.window_linewidths * std::max(width, grid.refine_step);
      cand.push_back({h, pos - half, pos + half});
    }
    // Keep windows of modes that are not utterly negligible next to the strongest.
    for (const ModeWindow& mw : cand)
      if (mw.height >= 1e-9 * h_max) windows.emplace_back(mw.lo, mw.hi);

    Eigen::VectorXd base((long)std::floor((grid.stop - grid.start) / grid.step + 1e-9) + 1);
    for (long i = 0; i < base.size(); ++i) base(i) = grid.start + grid.step * i;
    Eigen::VectorXd y_base(base.size());
    for (long i = 0; i < base.size(); ++i) y_base(i) = evaluate(base(i));
    for (int p : find_local_maxima(y_base)) {
      // Half width at half maximum estimated on the coarse pass.
      long l = p, r = p;
      while (l > 0 && y_base(l) > 0.5 * y_base(p)) --l;
      while (r + 1 < base.size() && y_base(r) > 0.5 * y_base(p)) ++r;
      const double lw = std::max(0.5 * (base(r) - base(l)), grid.step);
      windows.emplace_back(base(p) - grid.window_linewidths * lw,
                           base(p) + grid.window_linewidths * lw);
    }
  }

  Spectrum sp;
  sp.omega = merge_grids(grid, windows);
  sp.value.resize(sp.omega.size());
  for (long i = 0; i < sp.omega.size(); ++i) sp.value(i) = evaluate(sp.omega(i));
  sp.coherent_weight = gamma * bath_density(bath, 0.0) * (mean_read * mean_seed).real();
  sp.intensity = trapezoid(sp.omega, sp.value) / (2.0 * M_PI) + sp.coherent_weight;
  const double v_max = sp.value.cwiseAbs().maxCoeff();
  sp.boundary_warning = v_max > 0.0 && (std::abs(sp.value(0)) > 1e-4 * v_max ||
                                        std::abs(sp.value(sp.value.size() - 1)) > 1e-4 * v_max);
  return sp;
}

Eigen::VectorXd emission_spectrum_direct(const Mat& L, const Mat& rho_ss, const Mat& S_read,
                                         const Mat& S_seed, double gamma, const BathSpec& bath,
                                         const Eigen::VectorXd& omega) {
  const int d = static_cast<int>(rho_ss.rows());
  if (L.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("emission_spectrum_direct: superoperator size mismatch");
  const cplx mean = (S_seed * rho_ss).trace();
  const Eigen::VectorXcd X = vec((rho_ss * S_seed - rho_ss * mean).eval());
  const Eigen::VectorXcd r = vec(S_read.transpose().eval());
  Eigen::VectorXd out(omega.size());
  const Mat id = Mat::Identity(L.rows(), L.cols());
  for (long i = 0; i < omega.size(); ++i) {
    const Mat A = L + I * omega(i) * id;
    const Eigen::VectorXcd x = A.partialPivLu().solve((-X).eval());
    const cplx tr = (r.transpose() * x).value();  // Tr[S_read x]
    out(i) = gamma * bath_density(bath, omega(i)) * 2.0 * tr.real();
  }
  return out;
}

double total_intensity(const Spectrum& sp) {
  return trapezoid(sp.omega, sp.value) / (2.0 * M_PI) + sp.coherent_weight;
}

double absorption_rate(const Mat& rho_ss, const HilbertSpace& hs, double Omega_eg) {
  const Mat sigma_eg = emitter_transfer(hs, Level::e, Level::g);
  return 2.0 * Omega_eg * (sigma_eg * rho_ss).trace().imag();
}

Eigen::VectorXd photon_distribution(const Mat& rho_ss, const HilbertSpace& hs) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(hs.n_max + 1);
  for (int i = 0; i < hs.dim(); ++i) p(hs.photons_of(i)) += rho_ss(i, i).real();
  return p;
}

std::vector<int> find_local_maxima(const Eigen::VectorXd& y, double rel_threshold) {
  std::vector<int> out;
  if (y.size() < 3) return out;
  const double y_max = y.maxCoeff();
  if (!(y_max > 0.0)) return out;
  for (long i = 1; i + 1 < y.size(); ++i)
    if (y(i) > y(i - 1) && y(i) > y(i + 1) && y(i) >= rel_threshold * y_max)
      out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace dcesim
