// runs.cpp — sweep worker pool and dataset assembly.
#include "runs.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "observables.hpp"
#include "version.hpp"

extern "C" void openblas_set_num_threads(int num_threads);

namespace dcesim {

namespace {

// LAPACK calls must stay single-threaded inside our own worker pool; this also
// keeps results independent of the host's core count.
void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

nlohmann::ordered_json base_metadata(const RunConfig& cfg, const std::string& run) {
  nlohmann::ordered_json meta;
  meta["version"] = version;
  meta["run"] = run;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : cfg.resolved()) config[key] = value;
  meta["config"] = config;
  return meta;
}

double relative_residual(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd& rho) {
  return (L * vec(rho)).norm() / L.norm();
}

struct ChannelOps {
  Eigen::MatrixXcd read, seed;
  double gamma = 0.0;
  const BathSpec* bath = nullptr;
};

ChannelOps channel_ops(const RunConfig& cfg, const OperatingPoint& pt, const std::string& channel) {
  ChannelOps ops;
  if (channel == "cav") {
    ops.gamma = cfg.bath_cav.gamma;
    ops.bath = &cfg.bath_cav;
    if (pt.diss.rwa) {
      ops.read = pt.diss.jump_cav;
      ops.seed = pt.diss.jump_cav.adjoint();
    } else {
      ops.read = pt.diss.S_cav;
      ops.seed = pt.diss.S_cav;
    }
  } else if (channel == "fe") {
    if (!pt.hs.has_f()) throw ConfigError("channel 'fe' is not available in two-level mode");
    ops.gamma = cfg.bath_fe.gamma;
    ops.bath = &cfg.bath_fe;
    if (pt.diss.rwa) {
      ops.read = pt.diss.jump_fe;
      ops.seed = pt.diss.jump_fe.adjoint();
    } else {
      ops.read = pt.diss.S_fe;
      ops.seed = pt.diss.S_fe;
    }
  } else {
    throw ConfigError("unknown spectrum channel '" + channel + "'");
  }
  return ops;
}

double seed_norm(const ChannelOps& ops, const Eigen::MatrixXcd& rho_ss) {
  const auto mean = (ops.seed * rho_ss).trace();
  return (rho_ss * ops.seed - rho_ss * mean).norm();
}

}  // namespace

OperatingPoint make_operating_point(const RunConfig& cfg, double omega_eg) {
  return make_operating_point(cfg, omega_eg, cfg.n_max);
}

OperatingPoint make_operating_point(const RunConfig& cfg, double omega_eg, int n_max) {
  pin_blas_threads();
  OperatingPoint pt{cfg.space(n_max), cfg.model_at(omega_eg), {}, {}, {}};
  pt.H = hamiltonian_rotating(pt.params, pt.hs);
  pt.diss = build_dissipators(pt.params, pt.hs, pt.H, cfg.bath_eg, cfg.bath_fe, cfg.bath_cav,
                              cfg.lamb_shift);
  pt.L = assemble_liouvillian(pt.H, pt.diss);
  return pt;
}

namespace {

PointResult evaluate_point_once(const RunConfig& cfg, double omega_eg, int n_max) {
  const OperatingPoint pt = make_operating_point(cfg, omega_eg, n_max);
  const Eigen::MatrixXcd rho_ss = steady_state_sector(pt.L, pt.hs);

  PointResult row;
  row.omega_eg = omega_eg;
  row.ss_residual = relative_residual(pt.L, rho_ss);
  row.p_nmax = photon_distribution(rho_ss, pt.hs)(pt.hs.n_max);
  row.R_eg = absorption_rate(rho_ss, pt.hs, pt.params.Omega_eg);

  const ChannelOps cav = channel_ops(cfg, pt, "cav");
  const bool want_fe = pt.hs.has_f();
  ChannelOps fe;
  if (want_fe) fe = channel_ops(cfg, pt, "fe");

  const bool need_modes =
      seed_norm(cav, rho_ss) > 0.0 || (want_fe && seed_norm(fe, rho_ss) > 0.0);
  if (need_modes) {
    const CoherenceModes modes = coherence_modes(pt.L, pt.hs);
    row.I_cav =
        emission_spectrum(modes, rho_ss, cav.read, cav.seed, cav.gamma, *cav.bath, cfg.grid)
            .intensity;
    if (want_fe)
      row.I_fe =
          emission_spectrum(modes, rho_ss, fe.read, fe.seed, fe.gamma, *fe.bath, cfg.grid)
              .intensity;
  }
  if (!want_fe) row.I_fe = std::numeric_limits<double>::quiet_NaN();
  return row;
}

}  // namespace

PointResult evaluate_point(const RunConfig& cfg, double omega_eg, int n_max) {
  PointResult row;
  row.omega_eg = omega_eg;
  try {
    row = evaluate_point_once(cfg, omega_eg, n_max);
    if (cfg.sweep.convergence_check) {
      const PointResult fine = evaluate_point_once(cfg, omega_eg, n_max + 4);
      double delta = 0.0;
      const auto rel = [](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
      };
      delta = std::max(delta, rel(row.I_cav, fine.I_cav));
      if (!std::isnan(row.I_fe)) delta = std::max(delta, rel(row.I_fe, fine.I_fe));
      row.conv_delta = delta;
      if (delta >= 0.01) row.status = 2;
    }
  } catch (const std::exception&) {
    row.status = 1;
    row.I_cav = row.I_fe = row.R_eg = std::numeric_limits<double>::quiet_NaN();
    row.ss_residual = row.p_nmax = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

Dataset run_intensity_sweep(const RunConfig& cfg) {
  cfg.validate();
  pin_blas_threads();
  const int count = cfg.sweep.count;
  std::vector<double> values(count);
  for (int i = 0; i < count; ++i)
    values[i] = cfg.sweep.start + (cfg.sweep.stop - cfg.sweep.start) * i / (count - 1);

  std::vector<PointResult> rows(count);
  unsigned workers = cfg.sweep.workers > 0 ? static_cast<unsigned>(cfg.sweep.workers)
                                           : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) rows[i] = evaluate_point(cfg, values[i], cfg.n_max);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          rows[i] = evaluate_point(cfg, values[i], cfg.n_max);
      });
    for (std::thread& th : pool) th.join();
  }

  Dataset ds;
  ds.name = "sweep";
  auto& c_omega = ds.add_column("Omega_eg").num;
  auto& c_icav = ds.add_column("I_cav").num;
  auto& c_ife = ds.add_column("I_fe").num;
  auto& c_reg = ds.add_column("R_eg").num;
  auto& c_res = ds.add_column("ss_residual").num;
  auto& c_pn = ds.add_column("p_nmax").num;
  std::vector<double>* c_conv = nullptr;
  if (cfg.sweep.convergence_check) c_conv = &ds.add_column("conv_delta").num;
  auto& c_status = ds.add_column("status").num;
  int failed = 0, flagged = 0;
  for (const PointResult& r : rows) {
    c_omega.push_back(r.omega_eg);
    c_icav.push_back(r.I_cav);
    c_ife.push_back(r.I_fe);
    c_reg.push_back(r.R_eg);
    c_res.push_back(r.ss_residual);
    c_pn.push_back(r.p_nmax);
    if (c_conv) c_conv->push_back(r.conv_delta);
    c_status.push_back(r.status);
    failed += r.status == 1;
    flagged += r.status == 2;
  }
  ds.metadata = base_metadata(cfg, "sweep");
  ds.metadata["failed_points"] = failed;
  ds.metadata["flagged_points"] = flagged;
  return ds;
}

Dataset run_spectrum(const RunConfig& cfg, double omega_eg, const std::string& channel) {
  cfg.validate();
  const OperatingPoint pt = make_operating_point(cfg, omega_eg);
  const ChannelOps ops = channel_ops(cfg, pt, channel);
  const Eigen::MatrixXcd rho_ss = steady_state_sector(pt.L, pt.hs);
  const CoherenceModes modes = coherence_modes(pt.L, pt.hs);
  const Spectrum sp =
      emission_spectrum(modes, rho_ss, ops.read, ops.seed, ops.gamma, *ops.bath, cfg.grid);

  Dataset ds;
  ds.name = "spectrum_" + channel;
  auto& c_omega = ds.add_column("omega").num;
  auto& c_g = ds.add_column(channel == "cav" ? "G_cav" : "G_fe").num;
  for (long i = 0; i < sp.omega.size(); ++i) {
    c_omega.push_back(sp.omega(i));
    c_g.push_back(sp.value(i));
  }
  ds.metadata = base_metadata(cfg, "spectrum");
  ds.metadata["Omega_eg"] = format_double(omega_eg);
  ds.metadata["channel"] = channel;
  ds.metadata["coherent_weight"] = format_double(sp.coherent_weight);
  ds.metadata["intensity"] = format_double(sp.intensity);
  ds.metadata["boundary_warning"] = sp.boundary_warning;
  nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
  for (int i : find_local_maxima(sp.value)) {
    nlohmann::ordered_json peak;
    peak["omega"] = format_double(sp.omega(i));
    peak["value"] = format_double(sp.value(i));
    peaks.push_back(peak);
  }
  ds.metadata["peaks"] = peaks;
  ds.metadata["ss_residual"] = format_double(relative_residual(pt.L, rho_ss));
  return ds;
}

Dataset run_levels(const RunConfig& cfg, double omega_eg) {
  cfg.validate();
  pin_blas_threads();
  const HilbertSpace hs = cfg.space();
  const ModelParams params = cfg.model_at(omega_eg);
  const Eigen::MatrixXcd H = hamiltonian_rotating(params, hs);
  const std::vector<DressedLevel> levels = dressed_levels(H, hs);

  Dataset ds;
  ds.name = "levels";
  auto& c_energy = ds.add_column("energy").num;
  auto& c_label = ds.add_column("label", true).str;
  auto& c_overlap = ds.add_column("overlap").num;
  auto& c_amb = ds.add_column("ambiguous").num;
  int ambiguous = 0;
  for (const DressedLevel& lvl : levels) {
    if (lvl.energy > cfg.energy_ceiling) continue;
    c_energy.push_back(lvl.energy);
    c_label.push_back(lvl.label);
    c_overlap.push_back(lvl.overlap);
    c_amb.push_back(lvl.ambiguous ? 1.0 : 0.0);
    ambiguous += lvl.ambiguous;
  }
  ds.metadata = base_metadata(cfg, "levels");
  ds.metadata["Omega_eg"] = format_double(omega_eg);
  ds.metadata["energy_ceiling"] = format_double(cfg.energy_ceiling);
  ds.metadata["ambiguous_labels"] = ambiguous;
  return ds;
}

namespace {

struct SteadyData {
  OperatingPoint pt;
  Eigen::MatrixXcd rho_ss;
};

SteadyData steady_data(const RunConfig& cfg, double omega_eg) {
  cfg.validate();
  SteadyData sd{make_operating_point(cfg, omega_eg), {}};
  sd.rho_ss = steady_state_sector(sd.pt.L, sd.pt.hs);
  return sd;
}

void steady_metadata(Dataset& ds, const RunConfig& cfg, const SteadyData& sd, double omega_eg) {
  ds.metadata = base_metadata(cfg, ds.name);
  ds.metadata["Omega_eg"] = format_double(omega_eg);
  const Eigen::VectorXd pn = photon_distribution(sd.rho_ss, sd.pt.hs);
  double mean_n = 0.0;
  for (int n = 0; n <= sd.pt.hs.n_max; ++n) mean_n += n * pn(n);
  ds.metadata["mean_n"] = format_double(mean_n);
  ds.metadata["purity"] = format_double((sd.rho_ss * sd.rho_ss).trace().real());
  ds.metadata["R_eg"] = format_double(absorption_rate(sd.rho_ss, sd.pt.hs, sd.pt.params.Omega_eg));
  ds.metadata["ss_residual"] = format_double(relative_residual(sd.pt.L, sd.rho_ss));
}

}  // namespace

Dataset run_steady_pn(const RunConfig& cfg, double omega_eg) {
  const SteadyData sd = steady_data(cfg, omega_eg);
  Dataset ds;
  ds.name = "steady_pn";
  auto& c_n = ds.add_column("n").num;
  auto& c_p = ds.add_column("p_n").num;
  const Eigen::VectorXd pn = photon_distribution(sd.rho_ss, sd.pt.hs);
  for (int n = 0; n <= sd.pt.hs.n_max; ++n) {
    c_n.push_back(n);
    c_p.push_back(pn(n));
  }
  steady_metadata(ds, cfg, sd, omega_eg);
  return ds;
}

Dataset run_steady_rho(const RunConfig& cfg, double omega_eg) {
  const SteadyData sd = steady_data(cfg, omega_eg);
  Dataset ds;
  ds.name = "steady_rho";
  auto& c_row = ds.add_column("row").num;
  auto& c_col = ds.add_column("col").num;
  auto& c_re = ds.add_column("re").num;
  auto& c_im = ds.add_column("im").num;
  const int d = sd.pt.hs.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      c_row.push_back(i);
      c_col.push_back(j);
      c_re.push_back(sd.rho_ss(i, j).real());
      c_im.push_back(sd.rho_ss(i, j).imag());
    }
  steady_metadata(ds, cfg, sd, omega_eg);
  ds.metadata["basis"] = "index = num_levels*n + level (g=0, e=1, f=2)";
  return ds;
}

}  // namespace dcesim
