// test_observables.cpp — correlation oracles, spectra, intensities, absorption.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "observables.hpp"

using namespace dcesim;
using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

namespace {

struct Setup {
  HilbertSpace hs;
  ModelParams params;
  Mat H;
  DissipatorSet diss;
  Mat L;
};

Setup make_setup(double Omega_eg, int n_max, double g_eg = 0.01, double g_fe = 1e-3,
                 double g_cav = 1e-3, bool rwa = false, int num_levels = 3) {
  Setup s{HilbertSpace(n_max, num_levels), ModelParams::resonant(Omega_eg), {}, {}, {}};
  s.params.rwa_coupling = rwa;
  s.H = hamiltonian_rotating(s.params, s.hs);
  BathSpec bath_eg, bath_fe, bath_cav;
  bath_eg.gamma = g_eg;
  bath_fe.gamma = g_fe;
  bath_cav.gamma = g_cav;
  s.diss = build_dissipators(s.params, s.hs, s.H, bath_eg, bath_fe, bath_cav);
  s.L = assemble_liouvillian(s.H, s.diss);
  return s;
}

Eigen::VectorXd linspace_step(double start, double stop, double step) {
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x(i) = start + step * i;
  return x;
}

}  // namespace

TEST_CASE("closed cavity correlation is a pure phase") {
  // No dissipation, vacuum start: ⟨(a+a†)(0)(a+a†)(τ)⟩ = e^{+i omega_cav τ}.
  const Setup s = make_setup(0.0, 2, 0.0, 0.0, 0.0);
  const Mat S = s.diss.S_cav;
  const Eigen::VectorXcd g0 = basis_state(s.hs, Level::g, 0);
  const Mat rho = g0 * g0.adjoint();
  Eigen::VectorXd tau(4);
  tau << 0.0, 0.3, 1.7, M_PI;
  const Eigen::VectorXcd c = two_time_correlation(s.L, rho, S, S, tau);
  for (long i = 0; i < tau.size(); ++i)
    CHECK(std::abs(c(i) - std::exp(I * s.params.omega_cav * tau(i))) < 1e-9);
}

TEST_CASE("coherent superposition subtracts the mean product") {
  // psi = (|g0> + |g1>)/√2, closed: ⟨a†(0)a(τ)⟩ − ⟨a†⟩⟨a⟩ = e^{-i omega_cav τ}/2 − 1/4.
  const Setup s = make_setup(0.0, 2, 0.0, 0.0, 0.0);
  const Eigen::VectorXcd psi =
      ((basis_state(s.hs, Level::g, 0) + basis_state(s.hs, Level::g, 1)) / std::sqrt(2.0)).eval();
  const Mat rho = psi * psi.adjoint();
  Eigen::VectorXd tau(3);
  tau << 0.0, 0.9, 2.2;
  const Eigen::VectorXcd c =
      two_time_correlation(s.L, rho, annihilation(s.hs), creation(s.hs), tau);
  for (long i = 0; i < tau.size(); ++i)
    CHECK(std::abs(c(i) - (0.5 * std::exp(-I * tau(i)) - 0.25)) < 1e-9);
}

TEST_CASE("correlation matches direct propagation and decays") {
  const Setup s = make_setup(0.7, 1, 0.05, 0.02, 0.02);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const Mat S = s.diss.S_cav;
  Eigen::VectorXd tau(4);
  tau << 0.0, 0.4, 2.0, 3000.0;
  const Eigen::VectorXcd c = two_time_correlation(s.L, rho_ss, S, S, tau);

  const cplx mean = (S * rho_ss).trace();
  const cplx c0 = (S * S * rho_ss).trace() - mean * mean;
  CHECK(std::abs(c(0) - c0) < 1e-10 * std::abs(c0));

  for (long i = 0; i < 3; ++i) {
    const cplx direct = (S * propagate(s.L, (rho_ss * S).eval(), tau(i))).trace() - mean * mean;
    CHECK(std::abs(c(i) - direct) < 1e-9 * (1.0 + std::abs(c0)));
  }
  CHECK(std::abs(c(3)) < 1e-9 * (1.0 + std::abs(c0)));
}

TEST_CASE("mode expansion equals dense resolvent solves") {
  const Setup s = make_setup(0.7, 2);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const CoherenceModes modes = coherence_modes(s.L, s.hs);
  SpectrumGrid grid;
  grid.start = 0.05;
  grid.stop = 3.05;
  grid.step = 0.05;
  grid.refine = false;
  const BathSpec bath;

  for (const char* channel : {"cav", "fe"}) {
    const Mat& S = channel[0] == 'c' ? s.diss.S_cav : s.diss.S_fe;
    const double gamma = channel[0] == 'c' ? s.diss.gamma_cav : s.diss.gamma_fe;
    const Spectrum sp = emission_spectrum(modes, rho_ss, S, S, gamma, bath, grid);
    const Eigen::VectorXd direct =
        emission_spectrum_direct(s.L, rho_ss, S, S, gamma, bath, sp.omega);
    const double scale = direct.cwiseAbs().maxCoeff();
    CHECK((sp.value - direct).cwiseAbs().maxCoeff() < 1e-8 * scale);
  }
}

TEST_CASE("undriven cavity channel shows only the vacuum tail, fe stays dark") {
  // Without drive the zero-point line of the quadrature pair sits at -omega_cav,
  // outside the detected band; what survives at positive frequency is the small
  // leak-through of the vacuum coherence pair {|g0><g1|, |g1><g0|}, which the
  // filtered dissipator mixes with strength Γ/2. That 2x2 block is closed under
  // the full generator, so the spectrum has a closed form:
  //   G(ω) = Γ v(ω) · 2Γ ω_c(ω_c-ω) / [(ω²-ω_c²)² + Γ²ω²]
  // a dispersive swing of ±Γ/2 about ω_c on top of an O(Γ²) tail.
  const Setup s = make_setup(0.0, 4);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const CoherenceModes modes = coherence_modes(s.L, s.hs);
  const BathSpec bath;
  const SpectrumGrid grid;

  const Spectrum cav =
      emission_spectrum(modes, rho_ss, s.diss.S_cav, s.diss.S_cav, s.diss.gamma_cav, bath, grid);
  const double g = s.diss.gamma_cav, wc = s.params.omega_cav;
  Eigen::VectorXd oracle(cav.omega.size());
  for (long i = 0; i < cav.omega.size(); ++i) {
    const double w = cav.omega(i);
    const double den = std::pow(w * w - wc * wc, 2) + g * g * w * w;
    oracle(i) = g * bath_density(bath, w) * 2.0 * g * wc * (wc - w) / den;
  }
  CHECK((cav.value - oracle).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(cav.value.maxCoeff() == doctest::Approx(0.5 * g).epsilon(0.05));
  CHECK(cav.value.minCoeff() == doctest::Approx(-0.5 * g).epsilon(0.05));
  double i_oracle = 0.0;
  for (long i = 0; i + 1 < cav.omega.size(); ++i)
    i_oracle += 0.5 * (cav.omega(i + 1) - cav.omega(i)) * (oracle(i) + oracle(i + 1));
  CHECK(std::abs(cav.intensity - i_oracle / (2.0 * M_PI)) < 1e-9);
  CHECK(std::abs(cav.intensity) < 1e-3 * g);
  CHECK(cav.coherent_weight == 0.0);

  // Refinement adds points near the swing and keeps the grid strictly increasing.
  CHECK(cav.omega.size() > linspace_step(grid.start, grid.stop, grid.step).size());
  for (long i = 0; i + 1 < cav.omega.size(); ++i) CHECK(cav.omega(i + 1) > cav.omega(i));

  // The fe channel is dark: its seed vanishes on the vacuum steady state, so
  // everything is numerical-noise small.
  const Spectrum fe =
      emission_spectrum(modes, rho_ss, s.diss.S_fe, s.diss.S_fe, s.diss.gamma_fe, bath, grid);
  CHECK(fe.value.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(fe.intensity) < 1e-12);
}

TEST_CASE("driven spectra integrate to their intensity and stay nearly positive") {
  const Setup s = make_setup(0.7, 3);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const CoherenceModes modes = coherence_modes(s.L, s.hs);
  const BathSpec bath;
  const SpectrumGrid grid;

  // Parity makes the elastic line vanish identically.
  CHECK((s.diss.S_cav * rho_ss).trace() == 0.0);

  const Spectrum cav =
      emission_spectrum(modes, rho_ss, s.diss.S_cav, s.diss.S_cav, s.diss.gamma_cav, bath, grid);
  const Spectrum fe =
      emission_spectrum(modes, rho_ss, s.diss.S_fe, s.diss.S_fe, s.diss.gamma_fe, bath, grid);
  const double bounds[] = {s.diss.gamma_cav, s.diss.gamma_fe};
  int i = 0;
  for (const Spectrum* sp : {&cav, &fe}) {
    CHECK(sp->intensity == total_intensity(*sp));
    CHECK(sp->coherent_weight == 0.0);
    CHECK(sp->intensity > 0.0);
    // The temporally local pair form is not completely positive; negative
    // excursions stay at the O(γ) vacuum leak-through scale, far below the
    // emission peaks.
    CHECK(sp->value.minCoeff() > -0.02 * bounds[i++]);
  }
}

TEST_CASE("windowed Fourier transform of the correlation reproduces the spectrum") {
  const Setup s = make_setup(0.7, 2, 0.05, 0.04, 0.04);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const Mat S = s.diss.S_cav;
  const double gamma = s.diss.gamma_cav;
  const BathSpec bath;

  const double t_window = 500.0, dt = 0.02;
  const Eigen::VectorXd tau = linspace_step(0.0, t_window, dt);
  const Eigen::VectorXcd c = two_time_correlation(s.L, rho_ss, S, S, tau);

  Eigen::VectorXd probes(8);
  probes << 0.3, 0.55, 0.93, 1.0, 1.07, 1.45, 1.7, 2.4;
  const Eigen::VectorXd direct =
      emission_spectrum_direct(s.L, rho_ss, S, S, gamma, bath, probes);
  const double scale = direct.cwiseAbs().maxCoeff();

  for (long i = 0; i < probes.size(); ++i) {
    cplx ft = 0.0;
    for (long k = 0; k + 1 < tau.size(); ++k)
      ft += 0.5 * dt *
            (std::exp(I * probes(i) * tau(k)) * c(k) + std::exp(I * probes(i) * tau(k + 1)) * c(k + 1));
    const double g_fft = gamma * bath_density(bath, probes(i)) * 2.0 * ft.real();
    if (std::abs(direct(i)) > 1e-6 * scale)
      CHECK(std::abs(g_fft - direct(i)) < 0.01 * std::abs(direct(i)));
  }
}

TEST_CASE("comparison mode spectra vanish identically") {
  const Setup s = make_setup(1.0, 2, 0.01, 1e-3, 1e-3, true);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const CoherenceModes modes = coherence_modes(s.L, s.hs);
  const BathSpec bath;
  const SpectrumGrid grid;

  const Spectrum cav = emission_spectrum(modes, rho_ss, s.diss.jump_cav,
                                         s.diss.jump_cav.adjoint(), s.diss.gamma_cav, bath, grid);
  const Spectrum fe = emission_spectrum(modes, rho_ss, s.diss.jump_fe, s.diss.jump_fe.adjoint(),
                                        s.diss.gamma_fe, bath, grid);
  // The steady state is the numerical vacuum, so both seeds are zero up to
  // solver noise and the spectra sit at the 1e-16 floor.
  for (const Spectrum* sp : {&cav, &fe}) {
    CHECK(sp->value.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(sp->intensity) < 1e-12);
    CHECK(sp->coherent_weight == 0.0);
  }
}

TEST_CASE("absorption rate follows the driven two-level balance") {
  const double g_eg = 0.01;
  const auto bloch = [&](double Omega) {
    return g_eg * Omega * Omega / (g_eg * g_eg / 4.0 + 2.0 * Omega * Omega);
  };

  for (double Omega : {0.1, 0.3, 0.6}) {
    const Setup two = make_setup(Omega, 1, g_eg, 1e-3, 1e-3, false, 2);
    const Mat rho = steady_state_sector(two.L, two.hs);
    const double r = absorption_rate(rho, two.hs, Omega);
    CHECK(r == doctest::Approx(bloch(Omega)).epsilon(1e-9));
  }

  // With the cavity coupling switched off the three-level model gives the same rate.
  Setup s = make_setup(0.3, 1, g_eg);
  s.params.Omega_cav = 0.0;
  s.H = hamiltonian_rotating(s.params, s.hs);
  BathSpec bath_eg, bath_other;
  bath_eg.gamma = g_eg;
  s.diss = build_dissipators(s.params, s.hs, s.H, bath_eg, bath_other, bath_other);
  s.L = assemble_liouvillian(s.H, s.diss);
  const Mat rho = steady_state_sector(s.L, s.hs);
  CHECK(absorption_rate(rho, s.hs, 0.3) == doctest::Approx(bloch(0.3)).epsilon(1e-9));

  // No drive, no absorption; saturation bounds the rate by Γ_eg/2.
  const Setup idle = make_setup(0.0, 1, g_eg);
  const Mat rho_idle = steady_state_sector(idle.L, idle.hs);
  CHECK(absorption_rate(rho_idle, idle.hs, 0.0) == 0.0);
  CHECK(bloch(0.6) < g_eg / 2.0);
}

TEST_CASE("photon distribution tracks the diagonal") {
  const Setup s = make_setup(0.7, 3);
  const Mat rho_ss = steady_state_sector(s.L, s.hs);
  const Eigen::VectorXd p = photon_distribution(rho_ss, s.hs);
  CHECK(p.size() == s.hs.n_max + 1);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p.minCoeff() > -1e-12);
  double n_mean = 0.0;
  for (int n = 0; n <= s.hs.n_max; ++n) n_mean += n * p(n);
  CHECK(n_mean ==
        doctest::Approx((number_operator(s.hs) * rho_ss).trace().real()).epsilon(1e-10));
  CHECK(p(s.hs.n_max) < p(0));

  const Setup idle = make_setup(0.0, 3);
  const Eigen::VectorXd p0 = photon_distribution(steady_state_sector(idle.L, idle.hs), idle.hs);
  CHECK(p0(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(p0.tail(p0.size() - 1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("local maxima finder: strict peaks above the relative threshold") {
  Eigen::VectorXd y(7);
  y << 0.0, 1.0, 0.2, 0.15, 0.3, 0.1, 0.0;
  CHECK(find_local_maxima(y) == std::vector<int>{1, 4});
  CHECK(find_local_maxima(y, 0.5) == std::vector<int>{1});

  Eigen::VectorXd plateau(4);
  plateau << 0.0, 1.0, 1.0, 0.0;
  CHECK(find_local_maxima(plateau).empty());

  CHECK(find_local_maxima(Eigen::VectorXd::Zero(5)).empty());
  CHECK(find_local_maxima(Eigen::VectorXd::Ones(2)).empty());
  Eigen::VectorXd negative(3);
  negative << -1.0, -0.5, -1.0;
  CHECK(find_local_maxima(negative).empty());
}

TEST_CASE("grids and size mismatches are rejected") {
  SpectrumGrid bad;
  bad.start = 2.0;
  bad.stop = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SpectrumGrid{};
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SpectrumGrid{};
  bad.refine_step = -1e-3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const Setup s = make_setup(0.0, 1);
  const Mat rho_small = Mat::Identity(2, 2);
  const Eigen::VectorXd tau = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(two_time_correlation(s.L, rho_small, rho_small, rho_small, tau),
                  std::invalid_argument);
  CHECK_THROWS_AS(coherence_modes(Mat::Identity(4, 4), s.hs), std::invalid_argument);
  CHECK_THROWS_AS(emission_spectrum_direct(s.L, rho_small, rho_small, rho_small, 1e-3, BathSpec{},
                                           Eigen::VectorXd::Ones(1)),
                  std::invalid_argument);
}
