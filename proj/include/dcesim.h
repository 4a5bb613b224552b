/* dcesim.h — C interface to the driven cavity-emitter emission simulator.
 *
 * Usage pattern: build a config (defaults, file, key overrides), validate it,
 * run one of the computations, then read or serialize the returned dataset.
 * All objects are opaque; every function that can fail returns dcesim_status
 * and leaves a message retrievable through dcesim_last_error() (thread-local).
 */
#ifndef DCESIM_H
#define DCESIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcesim_status {
  DCESIM_OK = 0,
  DCESIM_ERR_INVALID_ARGUMENT = 1,
  DCESIM_ERR_CONFIG = 2,
  DCESIM_ERR_SOLVER = 3,
  DCESIM_ERR_IO = 4
} dcesim_status;

typedef struct dcesim_config dcesim_config;
typedef struct dcesim_dataset dcesim_dataset;

const char* dcesim_version(void);

/* Message from the most recent failing call on this thread; never NULL. */
const char* dcesim_last_error(void);

/* ---- configuration ---- */

/* Fresh config with the default parameter set; NULL on allocation failure. */
dcesim_config* dcesim_config_create(void);
void dcesim_config_destroy(dcesim_config* cfg);

/* Merge an INI-style file into cfg. */
dcesim_status dcesim_config_load_file(dcesim_config* cfg, const char* path);

/* Set one dotted key, e.g. ("model.n_max", "12"). */
dcesim_status dcesim_config_set(dcesim_config* cfg, const char* key, const char* value);

/* Read back one resolved key as text. */
dcesim_status dcesim_config_get(const dcesim_config* cfg, const char* key, char* buf,
                                size_t buflen);

dcesim_status dcesim_config_validate(const dcesim_config* cfg);

/* ---- computations ---- */

/* Intensity sweep over the drive strength; columns Omega_eg, I_cav, I_fe, R_eg,
 * ss_residual, p_nmax[, conv_delta], status. */
dcesim_status dcesim_run_sweep(const dcesim_config* cfg, dcesim_dataset** out);

/* Emission spectrum at one drive strength; channel is "cav" or "fe". */
dcesim_status dcesim_run_spectrum(const dcesim_config* cfg, double omega_eg, const char* channel,
                                  dcesim_dataset** out);

/* Dressed levels with labels and overlaps up to the configured energy ceiling. */
dcesim_status dcesim_run_levels(const dcesim_config* cfg, double omega_eg, dcesim_dataset** out);

/* Steady-state photon-number distribution (absorption etc. in the metadata). */
dcesim_status dcesim_run_steady(const dcesim_config* cfg, double omega_eg, dcesim_dataset** out);

/* Steady-state density matrix entries (row, col, re, im). */
dcesim_status dcesim_run_steady_density(const dcesim_config* cfg, double omega_eg,
                                        dcesim_dataset** out);

/* ---- datasets ---- */

long dcesim_dataset_rows(const dcesim_dataset* ds);
long dcesim_dataset_cols(const dcesim_dataset* ds);

/* Column name, or NULL if col is out of range. */
const char* dcesim_dataset_column_name(const dcesim_dataset* ds, long col);

/* Numeric cell value; DCESIM_ERR_INVALID_ARGUMENT for text columns. */
dcesim_status dcesim_dataset_cell(const dcesim_dataset* ds, long row, long col, double* out);

/* Text cell value (valid until the dataset is destroyed); NULL for numeric
 * columns or out-of-range indices. */
const char* dcesim_dataset_cell_text(const dcesim_dataset* ds, long row, long col);

/* Metadata sidecar as a JSON document (valid until the dataset is destroyed). */
const char* dcesim_dataset_metadata_json(const dcesim_dataset* ds);

dcesim_status dcesim_dataset_write_csv(const dcesim_dataset* ds, const char* path);
dcesim_status dcesim_dataset_write_json(const dcesim_dataset* ds, const char* path);

void dcesim_dataset_destroy(dcesim_dataset* ds);

#ifdef __cplusplus
}
#endif

#endif /* DCESIM_H */
