// config.cpp — INI parsing and key application for run configuration.
#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dcesim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double x = std::stod(value, &used);
    if (trim(value.substr(used)).empty()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const int x = std::stoi(value, &used);
    if (trim(value.substr(used)).empty()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config: key '" + key + "' expects a boolean, got '" + value + "'");
}

std::vector<SpectrumRequest> parse_requests(const std::string& value) {
  std::vector<SpectrumRequest> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("config: spectrum request '" + item + "' is not of the form value:channel");
    SpectrumRequest r;
    r.omega_eg = parse_double("spectrum.requests", trim(item.substr(0, colon)));
    r.channel = trim(item.substr(colon + 1));
    out.push_back(r);
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(bool b) { return b ? "true" : "false"; }

}  // namespace

void RunConfig::validate() const {
  try {
    bath_eg.validate();
    bath_fe.validate();
    bath_cav.validate();
    grid.validate();
    model_at(Omega_eg).validate();
    (void)space();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  if (n_max < 1) throw ConfigError("config: model.n_max must be >= 1");
  if (sweep.count < 2) throw ConfigError("config: sweep.count must be >= 2");
  if (!(sweep.start < sweep.stop)) throw ConfigError("config: sweep.start must be < sweep.stop");
  if (sweep.start < 0.0) throw ConfigError("config: sweep.start must be >= 0");
  if (sweep.workers < 0) throw ConfigError("config: sweep.workers must be >= 0");
  for (const SpectrumRequest& r : requests) {
    if (r.channel != "cav" && r.channel != "fe")
      throw ConfigError("config: spectrum channel must be 'cav' or 'fe', got '" + r.channel + "'");
    if (r.channel == "fe" && two_level)
      throw ConfigError("config: channel 'fe' is not available in two-level mode");
    if (r.omega_eg < 0.0) throw ConfigError("config: spectrum Omega_eg must be >= 0");
  }
  if (out_dir.empty()) throw ConfigError("config: output.dir must not be empty");
}

ModelParams RunConfig::model_at(double omega_eg) const {
  ModelParams p = ModelParams::resonant(omega_eg, omega_cav_zero ? 0.0 : Omega_cav, 1.0, omega_L);
  p.rwa_coupling = rwa_coupling;
  return p;
}

HilbertSpace RunConfig::space() const { return space(n_max); }

HilbertSpace RunConfig::space(int n_max_override) const {
  return HilbertSpace(n_max_override, two_level ? 2 : 3);
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("model.omega_L", fmt(omega_L));
  kv.emplace_back("model.Omega_eg", fmt(Omega_eg));
  kv.emplace_back("model.Omega_cav", fmt(Omega_cav));
  kv.emplace_back("model.n_max", std::to_string(n_max));
  kv.emplace_back("model.rwa_coupling", fmt(rwa_coupling));
  kv.emplace_back("model.omega_cav_zero", fmt(omega_cav_zero));
  kv.emplace_back("model.two_level", fmt(two_level));
  kv.emplace_back("model.lamb_shift", fmt(lamb_shift));
  const auto bath_kv = [&kv](const std::string& prefix, const BathSpec& b) {
    kv.emplace_back(prefix + "_gamma", fmt(b.gamma));
    kv.emplace_back(prefix + "_omega_edge", fmt(b.omega_edge));
    kv.emplace_back(prefix + "_omega_max", fmt(b.omega_max));
    kv.emplace_back(prefix + "_delta_omega", fmt(b.delta_omega));
  };
  bath_kv("baths.eg", bath_eg);
  bath_kv("baths.fe", bath_fe);
  bath_kv("baths.cav", bath_cav);
  kv.emplace_back("sweep.start", fmt(sweep.start));
  kv.emplace_back("sweep.stop", fmt(sweep.stop));
  kv.emplace_back("sweep.count", std::to_string(sweep.count));
  kv.emplace_back("sweep.workers", std::to_string(sweep.workers));
  kv.emplace_back("sweep.convergence_check", fmt(sweep.convergence_check));
  std::string req;
  for (const SpectrumRequest& r : requests) {
    if (!req.empty()) req += ",";
    req += fmt(r.omega_eg) + ":" + r.channel;
  }
  kv.emplace_back("spectrum.requests", req);
  kv.emplace_back("spectrum.grid_start", fmt(grid.start));
  kv.emplace_back("spectrum.grid_stop", fmt(grid.stop));
  kv.emplace_back("spectrum.grid_step", fmt(grid.step));
  kv.emplace_back("spectrum.refine", fmt(grid.refine));
  kv.emplace_back("spectrum.refine_step", fmt(grid.refine_step));
  kv.emplace_back("levels.energy_ceiling", fmt(energy_ceiling));
  kv.emplace_back("output.dir", out_dir);
  return kv;
}

std::map<std::string, std::string> parse_ini(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: empty key at line " + std::to_string(lineno));
    out[section.empty() ? key : section + "." + key] = value;
  }
  return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model.omega_L") cfg.omega_L = parse_double(key, value);
  else if (key == "model.Omega_eg") cfg.Omega_eg = parse_double(key, value);
  else if (key == "model.Omega_cav") cfg.Omega_cav = parse_double(key, value);
  else if (key == "model.n_max") cfg.n_max = parse_int(key, value);
  else if (key == "model.rwa_coupling") cfg.rwa_coupling = parse_bool(key, value);
  else if (key == "model.omega_cav_zero") cfg.omega_cav_zero = parse_bool(key, value);
  else if (key == "model.two_level") cfg.two_level = parse_bool(key, value);
  else if (key == "model.lamb_shift") cfg.lamb_shift = parse_bool(key, value);
  else if (key == "baths.eg_gamma") cfg.bath_eg.gamma = parse_double(key, value);
  else if (key == "baths.fe_gamma") cfg.bath_fe.gamma = parse_double(key, value);
  else if (key == "baths.cav_gamma") cfg.bath_cav.gamma = parse_double(key, value);
  else if (key == "baths.eg_omega_edge") cfg.bath_eg.omega_edge = parse_double(key, value);
  else if (key == "baths.eg_omega_max") cfg.bath_eg.omega_max = parse_double(key, value);
  else if (key == "baths.eg_delta_omega") cfg.bath_eg.delta_omega = parse_double(key, value);
  else if (key == "baths.fe_omega_edge") cfg.bath_fe.omega_edge = parse_double(key, value);
  else if (key == "baths.fe_omega_max") cfg.bath_fe.omega_max = parse_double(key, value);
  else if (key == "baths.fe_delta_omega") cfg.bath_fe.delta_omega = parse_double(key, value);
  else if (key == "baths.cav_omega_edge") cfg.bath_cav.omega_edge = parse_double(key, value);
  else if (key == "baths.cav_omega_max") cfg.bath_cav.omega_max = parse_double(key, value);
  else if (key == "baths.cav_delta_omega") cfg.bath_cav.delta_omega = parse_double(key, value);
  else if (key == "sweep.start") cfg.sweep.start = parse_double(key, value);
  else if (key == "sweep.stop") cfg.sweep.stop = parse_double(key, value);
  else if (key == "sweep.count") cfg.sweep.count = parse_int(key, value);
  else if (key == "sweep.workers") cfg.sweep.workers = parse_int(key, value);
  else if (key == "sweep.convergence_check") cfg.sweep.convergence_check = parse_bool(key, value);
  else if (key == "spectrum.requests") cfg.requests = parse_requests(value);
  else if (key == "spectrum.grid_start") cfg.grid.start = parse_double(key, value);
  else if (key == "spectrum.grid_stop") cfg.grid.stop = parse_double(key, value);
  else if (key == "spectrum.grid_step") cfg.grid.step = parse_double(key, value);
  else if (key == "spectrum.refine") cfg.grid.refine = parse_bool(key, value);
  else if (key == "spectrum.refine_step") cfg.grid.refine_step = parse_double(key, value);
  else if (key == "levels.energy_ceiling") cfg.energy_ceiling = parse_double(key, value);
  else if (key == "output.dir") cfg.out_dir = value;
  else throw ConfigError("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig updated = cfg;
  for (const auto& [key, value] : parse_ini(ss.str())) apply_key(updated, key, value);
  cfg = std::move(updated);
}

RunConfig load_config_file(const std::string& path) {
  RunConfig cfg;
  apply_config_file(cfg, path);
  return cfg;
}

}  // namespace dcesim
