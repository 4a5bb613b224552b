// runs.hpp — end-to-end runs: intensity sweep, spectra, dressed levels, steady state.
#pragma once

#include "config.hpp"
#include "dataset.hpp"

namespace dcesim {

// Everything assembled for one drive strength.
struct OperatingPoint {
  HilbertSpace hs;
  ModelParams params;
  Eigen::MatrixXcd H;
  DissipatorSet diss;
  Eigen::MatrixXcd L;
};

OperatingPoint make_operating_point(const RunConfig& cfg, double omega_eg);
OperatingPoint make_operating_point(const RunConfig& cfg, double omega_eg, int n_max);

// One sweep row. Failures are recorded, not thrown.
struct PointResult {
  double omega_eg = 0.0;
  double I_cav = 0.0;
  double I_fe = 0.0;
  double R_eg = 0.0;
  double ss_residual = 0.0;
  double p_nmax = 0.0;
  double conv_delta = 0.0;  // filled by the convergence guard
  int status = 0;           // 0 ok, 1 failed, 2 convergence guard tripped
};

PointResult evaluate_point(const RunConfig& cfg, double omega_eg, int n_max);

Dataset run_intensity_sweep(const RunConfig& cfg);
Dataset run_spectrum(const RunConfig& cfg, double omega_eg, const std::string& channel);
Dataset run_levels(const RunConfig& cfg, double omega_eg);
Dataset run_steady_pn(const RunConfig& cfg, double omega_eg);
Dataset run_steady_rho(const RunConfig& cfg, double omega_eg);

}  // namespace dcesim
