// main.cpp — command-line front end over the dcesim C API.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcesim.h"

namespace {

// Exit codes: 0 success, 2 config error, 3 solver failure, 1 anything else.
int exit_code(dcesim_status st) {
  switch (st) {
    case DCESIM_OK:
      return 0;
    case DCESIM_ERR_CONFIG:
    case DCESIM_ERR_INVALID_ARGUMENT:
      return 2;
    case DCESIM_ERR_SOLVER:
      return 3;
    default:
      return 1;
  }
}

[[noreturn]] void fail(dcesim_status st) {
  std::fprintf(stderr, "error: %s\n", dcesim_last_error());
  std::exit(exit_code(st));
}

void check(dcesim_status st) {
  if (st != DCESIM_OK) fail(st);
}

using ConfigPtr = std::unique_ptr<dcesim_config, decltype(&dcesim_config_destroy)>;
using DatasetPtr = std::unique_ptr<dcesim_dataset, decltype(&dcesim_dataset_destroy)>;

std::string get_key(const dcesim_config* cfg, const std::string& key) {
  char buf[512];
  check(dcesim_config_get(cfg, key.c_str(), buf, sizeof buf));
  return buf;
}

std::string out_path(const dcesim_config* cfg, const std::string& name) {
  const std::string dir = get_key(cfg, "output.dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory '%s': %s\n", dir.c_str(),
                 ec.message().c_str());
    std::exit(1);
  }
  return dir + "/" + name;
}

void write_dataset(const dcesim_config* cfg, dcesim_dataset* ds, const std::string& basename) {
  const std::string csv = out_path(cfg, basename + ".csv");
  const std::string json = out_path(cfg, basename + ".json");
  check(dcesim_dataset_write_csv(ds, csv.c_str()));
  check(dcesim_dataset_write_json(ds, json.c_str()));
  std::printf("wrote %s (%ld rows)\n", csv.c_str(), dcesim_dataset_rows(ds));
}

// "start:stop:step" for --omega-grid.
void apply_omega_grid(dcesim_config* cfg, const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    std::fprintf(stderr, "error: --omega-grid expects start:stop:step\n");
    std::exit(2);
  }
  check(dcesim_config_set(cfg, "spectrum.grid_start", spec.substr(0, c1).c_str()));
  check(dcesim_config_set(cfg, "spectrum.grid_stop", spec.substr(c1 + 1, c2 - c1 - 1).c_str()));
  check(dcesim_config_set(cfg, "spectrum.grid_step", spec.substr(c2 + 1).c_str()));
}

std::vector<std::pair<std::string, std::string>> parse_requests(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    const auto colon = item.find(':');
    if (colon != std::string::npos)
      out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    pos = comma + 1;
  }
  return out;
}

std::string trim_zeros(const std::string& s) {
  // Compact file-name form of a drive strength: 0.69999999999999996 -> 0.7.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::strtod(s.c_str(), nullptr));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emission spectra and intensities of a driven three-level emitter "
               "in a lossy cavity beyond the rotating-wave approximation"};
  app.require_subcommand(1);

  std::string config_path, out_dir, omega_grid;
  int n_max = -1;
  bool rwa = false, no_cavity_coupling = false, two_level = false, lamb_shift = false;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "INI config file");
  app.add_option("--n-max", n_max, "photon-number cutoff");
  app.add_flag("--rwa", rwa, "excitation-conserving comparison model");
  app.add_flag("--no-cavity-coupling", no_cavity_coupling, "set the emitter-cavity coupling to zero");
  app.add_flag("--two-level", two_level, "drop the f level entirely");
  app.add_flag("--lamb-shift", lamb_shift, "include the principal-value level shift");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--omega-grid", omega_grid, "spectrum grid start:stop:step");
  app.add_option("--set", sets, "override any config key, key=value")->type_size(1);

  auto* cmd_sweep = app.add_subcommand("sweep", "intensity and absorption sweep over the drive");
  auto* cmd_spectrum = app.add_subcommand("spectrum", "emission spectrum at fixed drive");
  auto* cmd_levels = app.add_subcommand("levels", "dressed levels with labels");
  auto* cmd_steady = app.add_subcommand("steady", "steady-state density matrix and p(n)");

  std::optional<double> omega_eg;
  std::string channel;
  for (CLI::App* sub : {cmd_spectrum, cmd_levels, cmd_steady})
    sub->add_option("--omega-eg", omega_eg, "drive strength in units of the cavity frequency");
  cmd_spectrum->add_option("--channel", channel, "emission channel, cav or fe");

  CLI11_PARSE(app, argc, argv);

  ConfigPtr cfg(dcesim_config_create(), &dcesim_config_destroy);
  if (!cfg) {
    std::fprintf(stderr, "error: cannot allocate config\n");
    return 1;
  }
  if (!config_path.empty()) check(dcesim_config_load_file(cfg.get(), config_path.c_str()));
  if (n_max >= 0) check(dcesim_config_set(cfg.get(), "model.n_max", std::to_string(n_max).c_str()));
  if (rwa) check(dcesim_config_set(cfg.get(), "model.rwa_coupling", "true"));
  if (no_cavity_coupling) check(dcesim_config_set(cfg.get(), "model.omega_cav_zero", "true"));
  if (two_level) check(dcesim_config_set(cfg.get(), "model.two_level", "true"));
  if (lamb_shift) check(dcesim_config_set(cfg.get(), "model.lamb_shift", "true"));
  if (!out_dir.empty()) check(dcesim_config_set(cfg.get(), "output.dir", out_dir.c_str()));
  if (!omega_grid.empty()) apply_omega_grid(cfg.get(), omega_grid);
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return 2;
    }
    check(dcesim_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  check(dcesim_config_validate(cfg.get()));

  const double omega_default = std::strtod(get_key(cfg.get(), "model.Omega_eg").c_str(), nullptr);

  if (cmd_sweep->parsed()) {
    dcesim_dataset* raw = nullptr;
    check(dcesim_run_sweep(cfg.get(), &raw));
    DatasetPtr ds(raw, &dcesim_dataset_destroy);
    write_dataset(cfg.get(), ds.get(), "sweep");
    // Any failed point makes the run nonzero, after the partial table is written.
    const std::string meta = dcesim_dataset_metadata_json(ds.get());
    if (meta.find("\"failed_points\": 0") == std::string::npos) {
      std::fprintf(stderr, "error: some sweep points failed\n");
      return 3;
    }
    return 0;
  }

  if (cmd_spectrum->parsed()) {
    std::vector<std::pair<std::string, std::string>> requests;
    if (omega_eg || !channel.empty()) {
      const double w = omega_eg.value_or(omega_default);
      requests.emplace_back(std::to_string(w), channel.empty() ? "cav" : channel);
    } else {
      requests = parse_requests(get_key(cfg.get(), "spectrum.requests"));
      if (requests.empty()) requests.emplace_back(std::to_string(omega_default), "cav");
    }
    for (const auto& [w_text, chan] : requests) {
      dcesim_dataset* raw = nullptr;
      check(dcesim_run_spectrum(cfg.get(), std::strtod(w_text.c_str(), nullptr), chan.c_str(),
                                &raw));
      DatasetPtr ds(raw, &dcesim_dataset_destroy);
      write_dataset(cfg.get(), ds.get(), "spectrum_" + chan + "_" + trim_zeros(w_text));
    }
    return 0;
  }

  if (cmd_levels->parsed()) {
    dcesim_dataset* raw = nullptr;
    check(dcesim_run_levels(cfg.get(), omega_eg.value_or(omega_default), &raw));
    DatasetPtr ds(raw, &dcesim_dataset_destroy);
    write_dataset(cfg.get(), ds.get(), "levels");
    return 0;
  }

  if (cmd_steady->parsed()) {
    const double w = omega_eg.value_or(omega_default);
    dcesim_dataset* raw_pn = nullptr;
    check(dcesim_run_steady(cfg.get(), w, &raw_pn));
    DatasetPtr pn(raw_pn, &dcesim_dataset_destroy);
    write_dataset(cfg.get(), pn.get(), "steady_pn");
    dcesim_dataset* raw_rho = nullptr;
    check(dcesim_run_steady_density(cfg.get(), w, &raw_rho));
    DatasetPtr rho(raw_rho, &dcesim_dataset_destroy);
    write_dataset(cfg.get(), rho.get(), "steady_rho");
    return 0;
  }

  return 0;
}
