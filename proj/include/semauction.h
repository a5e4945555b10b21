/*------------------------------------------------------------------------------
 *
 *   Copyright 2025-2026 the semauction authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 *
 *-----------------------------------------------------------------------------
 *
 * C API of the semauction shared library.
 *
 * The library simulates energy auctions for wirelessly powered IoT devices
 * that transmit semantically encoded text: it derives per-device energy
 * valuations from channel physics and text-recovery score curves, trains a
 * revenue-maximizing single-item auction that stays incentive compatible and
 * individually rational by construction, and evaluates it against a
 * second-price baseline.
 *
 * All entry points return sem_status; on failure sem_last_error() carries a
 * human-readable message for the calling thread. Objects are opaque handles
 * created and destroyed through their sem_*_create/sem_*_destroy pairs; any
 * pointer returned through an out-parameter is owned by the caller.
 */

#ifndef SEMAUCTION_H
#define SEMAUCTION_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sem_status {
  SEM_OK = 0,
  SEM_ERR_INVALID_ARGUMENT = 1, /* bad key, value, handle or shape */
  SEM_ERR_IO = 2,               /* file system or parse failure */
  SEM_ERR_NUMERIC = 3,          /* runtime numerical failure */
  SEM_ERR_CHECK_FAILED = 4      /* a verification check did not pass */
} sem_status;

typedef struct sem_config sem_config;   /* run configuration */
typedef struct sem_dataset sem_dataset; /* row-major bid matrix */
typedef struct sem_auction sem_auction; /* trained auction parameters */

const char* sem_version(void);

/* Message of the most recent failure on this thread; empty string if none.
 * The pointer stays valid until the next failing call on the same thread. */
const char* sem_last_error(void);

/* --- configuration ---------------------------------------------------------
 * A config starts from the built-in defaults. Keys are the documented
 * key=value names (see sem_config_key_info); sem_config_load_file layers a
 * plain-text file on top, sem_config_set layers single assignments, and
 * sem_config_validate enforces the cross-field invariants. Computations
 * validate internally as well. */
sem_config* sem_config_create(void);
void sem_config_destroy(sem_config* config);
sem_status sem_config_load_file(sem_config* config, const char* path);
sem_status sem_config_set(sem_config* config, const char* key, const char* value);
sem_status sem_config_get(const sem_config* config, const char* key, char* buffer, size_t capacity);
sem_status sem_config_validate(const sem_config* config);

/* Key table for help output: count, then name/description/default of each
 * index in [0, count). The returned strings are static. */
int sem_config_key_count(void);
sem_status sem_config_key_info(int index, const char** name, const char** description,
                               const char** default_value);

/* --- datasets -------------------------------------------------------------- */
sem_status sem_dataset_generate(const sem_config* config, sem_dataset** out);
sem_status sem_dataset_load_csv(const char* path, sem_dataset** out);
sem_status sem_dataset_save_csv(const sem_dataset* dataset, const char* path);
int sem_dataset_rows(const sem_dataset* dataset);
int sem_dataset_cols(const sem_dataset* dataset);
/* Row-major bids; valid while the dataset lives. */
const double* sem_dataset_data(const sem_dataset* dataset);
/* Mean second-highest bid: the revenue of a plain second-price auction. */
sem_status sem_dataset_spa_revenue(const sem_dataset* dataset, double* out);
void sem_dataset_destroy(sem_dataset* dataset);

/* --- training and evaluation ------------------------------------------------ */
sem_status sem_train(const sem_config* config, const sem_dataset* dataset, sem_auction** out);
sem_status sem_auction_save(const sem_auction* auction, const char* path);
sem_status sem_auction_load(const char* path, sem_auction** out);
/* Per-iteration training revenue; valid while the auction lives. */
const double* sem_auction_history(const sem_auction* auction, size_t* length);
void sem_auction_destroy(sem_auction* auction);

typedef struct sem_eval_report {
  double hard_revenue;   /* mean winner payment of the trained hard auction */
  double spa_revenue;    /* mean second-highest bid on the same data */
  double max_ic_regret;  /* worst utility gain over the misreport grid */
  long long ir_violations; /* instances where the winner paid more than it bid */
  long long instances;
} sem_eval_report;

/* Evaluates trained parameters on a dataset: hard-auction revenue, the SPA
 * baseline, individual-rationality violations, and the worst incentive-
 * compatibility regret over a 201-point misreport grid on [0, 1.2]. */
sem_status sem_eval(const sem_auction* auction, const sem_dataset* dataset, sem_eval_report* out);

/* --- experiments ------------------------------------------------------------
 * Trains under both preference presets (j in [0.1,0.4] and [0.6,0.9]) on
 * datasets drawn with the configured seed and writes the combined revenue
 * table (iteration, dl_rev_low_j, dl_rev_high_j, spa_low_j, spa_high_j) plus
 * one parameter file per preset. Either params path may be NULL to skip. */
sem_status sem_revenue_experiment(const sem_config* config, const char* csv_path,
                                  const char* params_low_path, const char* params_high_path);

/* Bid statistics versus one physical parameter ("tau", "d_AU", "L" or
 * "N_s"), for both preference presets. values may be NULL to use the
 * built-in grid; svg_path may be NULL to skip the chart. */
sem_status sem_sweep(const sem_config* config, const char* parameter, const double* values,
                     size_t n_values, const char* csv_path, const char* svg_path);

/* CSV of the built-in score curves (d, similarity, bleu1gram). Writes the
 * full text and its length; the buffer may be NULL to query the length. */
sem_status sem_curves_csv(char* buffer, size_t capacity, size_t* length);

/* Runs the built-in verification suite (analytic gradient versus finite
 * differences, transform inversion roundtrip, identity initialization versus
 * second-price baseline). Fills the report (one line per check) and returns
 * SEM_OK only if every check passed. */
sem_status sem_selfcheck(char* report_buffer, size_t capacity);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEMAUCTION_H */
