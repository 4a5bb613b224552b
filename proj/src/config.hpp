// config.hpp — run configuration: defaults, INI files, overrides.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "baths.hpp"
#include "liouvillian.hpp"
#include "observables.hpp"

namespace dcesim {

// Thrown on malformed files, unknown keys, or invalid values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumRequest {
  double omega_eg = 0.7;
  std::string channel = "cav";  // "cav" or "fe"
};

// All frequencies in units of omega_cav; hbar = 1.
struct RunConfig {
  // [model]
  double omega_L = 50.0;
  double Omega_eg = 0.7;   // used by spectrum/levels/steady when no explicit value given
  double Omega_cav = 0.1;
  int n_max = 8;
  bool rwa_coupling = false;
  bool omega_cav_zero = false;  // force Omega_cav = 0 (keeps the f level)
  bool two_level = false;       // drop the f level entirely
  bool lamb_shift = false;

  // [baths] — rates Γ_eg = 0.01, Γ_fe = Γ_cav = 1e-3, shared spectral shape
  BathSpec bath_eg{.gamma = 0.01};
  BathSpec bath_fe, bath_cav;

  // [sweep]
  struct Sweep {
    double start = 0.0;
    double stop = 2.5;
    int count = 101;
    int workers = 0;  // 0 = hardware concurrency
    bool convergence_check = false;
  } sweep;

  // [spectrum]
  std::vector<SpectrumRequest> requests{{0.7, "cav"}};
  SpectrumGrid grid;

  // [levels]
  double energy_ceiling = 5.0;

  // [output]
  std::string out_dir = "out";

  void validate() const;

  // Effective model at a given drive strength, honoring the mode flags.
  ModelParams model_at(double omega_eg) const;
  HilbertSpace space() const;
  HilbertSpace space(int n_max_override) const;

  // Resolved key/value view in file order; feeds metadata headers.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

// Parse an INI-style file into section.key -> value entries.
std::map<std::string, std::string> parse_ini(const std::string& text);

// Apply every key of an INI file on top of cfg (strong guarantee: cfg is
// untouched if anything fails).
void apply_config_file(RunConfig& cfg, const std::string& path);

// Defaults plus the contents of one file.
RunConfig load_config_file(const std::string& path);

// Apply one dotted key ("model.n_max") to the config; throws ConfigError on
// unknown keys or unparsable values.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace dcesim
