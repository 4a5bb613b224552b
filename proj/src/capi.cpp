// capi.cpp — C bindings over the core library.
#include "dcesim.h"

#include <cstring>
#include <new>
#include <string>

#include "config.hpp"
#include "dataset.hpp"
#include "runs.hpp"
#include "version.hpp"

struct dcesim_config {
  dcesim::RunConfig cfg;
};

struct dcesim_dataset {
  dcesim::Dataset ds;
  std::string metadata;  // rendered once so returned pointers stay valid
};

namespace {

thread_local std::string g_last_error;

template <typename F>
dcesim_status guarded(F&& fn, dcesim_status io_or_solver = DCESIM_ERR_SOLVER) {
  try {
    fn();
    return DCESIM_OK;
  } catch (const dcesim::ConfigError& err) {
    g_last_error = err.what();
    return DCESIM_ERR_CONFIG;
  } catch (const std::invalid_argument& err) {
    g_last_error = err.what();
    return DCESIM_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return io_or_solver;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return io_or_solver;
  }
}

dcesim_status require(bool ok, const char* message) {
  if (ok) return DCESIM_OK;
  g_last_error = message;
  return DCESIM_ERR_INVALID_ARGUMENT;
}

dcesim_dataset* wrap(dcesim::Dataset&& ds) {
  auto* out = new dcesim_dataset{std::move(ds), {}};
  out->metadata = out->ds.json_text();
  return out;
}

}  // namespace

extern "C" {

const char* dcesim_version(void) { return dcesim::version; }

const char* dcesim_last_error(void) { return g_last_error.c_str(); }

dcesim_config* dcesim_config_create(void) { return new (std::nothrow) dcesim_config{}; }

void dcesim_config_destroy(dcesim_config* cfg) { delete cfg; }

dcesim_status dcesim_config_load_file(dcesim_config* cfg, const char* path) {
  if (auto st = require(cfg && path, "config/path must not be NULL")) return st;
  return guarded([&] { dcesim::apply_config_file(cfg->cfg, path); });
}

dcesim_status dcesim_config_set(dcesim_config* cfg, const char* key, const char* value) {
  if (auto st = require(cfg && key && value, "config/key/value must not be NULL")) return st;
  return guarded([&] { dcesim::apply_key(cfg->cfg, key, value); });
}

dcesim_status dcesim_config_get(const dcesim_config* cfg, const char* key, char* buf,
                                size_t buflen) {
  if (auto st = require(cfg && key && buf && buflen > 0, "config/key/buffer must not be NULL"))
    return st;
  for (const auto& [k, v] : cfg->cfg.resolved()) {
    if (k == key) {
      std::strncpy(buf, v.c_str(), buflen - 1);
      buf[buflen - 1] = '\0';
      return v.size() < buflen
                 ? DCESIM_OK
                 : require(false, "config value does not fit in the supplied buffer");
    }
  }
  return require(false, "unknown config key");
}

dcesim_status dcesim_config_validate(const dcesim_config* cfg) {
  if (auto st = require(cfg != nullptr, "config must not be NULL")) return st;
  return guarded([&] { cfg->cfg.validate(); });
}

dcesim_status dcesim_run_sweep(const dcesim_config* cfg, dcesim_dataset** out) {
  if (auto st = require(cfg && out, "config/out must not be NULL")) return st;
  return guarded([&] { *out = wrap(dcesim::run_intensity_sweep(cfg->cfg)); });
}

dcesim_status dcesim_run_spectrum(const dcesim_config* cfg, double omega_eg, const char* channel,
                                  dcesim_dataset** out) {
  if (auto st = require(cfg && channel && out, "config/channel/out must not be NULL")) return st;
  return guarded([&] { *out = wrap(dcesim::run_spectrum(cfg->cfg, omega_eg, channel)); });
}

dcesim_status dcesim_run_levels(const dcesim_config* cfg, double omega_eg, dcesim_dataset** out) {
  if (auto st = require(cfg && out, "config/out must not be NULL")) return st;
  return guarded([&] { *out = wrap(dcesim::run_levels(cfg->cfg, omega_eg)); });
}

dcesim_status dcesim_run_steady(const dcesim_config* cfg, double omega_eg, dcesim_dataset** out) {
  if (auto st = require(cfg && out, "config/out must not be NULL")) return st;
  return guarded([&] { *out = wrap(dcesim::run_steady_pn(cfg->cfg, omega_eg)); });
}

dcesim_status dcesim_run_steady_density(const dcesim_config* cfg, double omega_eg,
                                        dcesim_dataset** out) {
  if (auto st = require(cfg && out, "config/out must not be NULL")) return st;
  return guarded([&] { *out = wrap(dcesim::run_steady_rho(cfg->cfg, omega_eg)); });
}

long dcesim_dataset_rows(const dcesim_dataset* ds) { return ds ? ds->ds.rows() : 0; }

long dcesim_dataset_cols(const dcesim_dataset* ds) {
  return ds ? static_cast<long>(ds->ds.columns.size()) : 0;
}

const char* dcesim_dataset_column_name(const dcesim_dataset* ds, long col) {
  if (!ds || col < 0 || col >= static_cast<long>(ds->ds.columns.size())) return nullptr;
  return ds->ds.columns[col].name.c_str();
}

dcesim_status dcesim_dataset_cell(const dcesim_dataset* ds, long row, long col, double* out) {
  if (auto st = require(ds && out, "dataset/out must not be NULL")) return st;
  if (auto st = require(col >= 0 && col < static_cast<long>(ds->ds.columns.size()) && row >= 0 &&
                            row < ds->ds.rows(),
                        "dataset cell index out of range"))
    return st;
  const auto& column = ds->ds.columns[col];
  if (auto st = require(!column.text, "dataset column is text; use dcesim_dataset_cell_text"))
    return st;
  *out = column.num[row];
  return DCESIM_OK;
}

const char* dcesim_dataset_cell_text(const dcesim_dataset* ds, long row, long col) {
  if (!ds || col < 0 || col >= static_cast<long>(ds->ds.columns.size())) return nullptr;
  const auto& column = ds->ds.columns[col];
  if (!column.text || row < 0 || row >= static_cast<long>(column.str.size())) return nullptr;
  return column.str[row].c_str();
}

const char* dcesim_dataset_metadata_json(const dcesim_dataset* ds) {
  return ds ? ds->metadata.c_str() : nullptr;
}

dcesim_status dcesim_dataset_write_csv(const dcesim_dataset* ds, const char* path) {
  if (auto st = require(ds && path, "dataset/path must not be NULL")) return st;
  return guarded([&] { ds->ds.write_csv(path); }, DCESIM_ERR_IO);
}

dcesim_status dcesim_dataset_write_json(const dcesim_dataset* ds, const char* path) {
  if (auto st = require(ds && path, "dataset/path must not be NULL")) return st;
  return guarded([&] { ds->ds.write_json(path); }, DCESIM_ERR_IO);
}

void dcesim_dataset_destroy(dcesim_dataset* ds) { delete ds; }

}  // extern "C"
