/* Copyright 2026 The Spectra Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the auction laboratory shared library.
 *
 * Conventions:
 *   - Every function returning int yields a SPECTRA_* status code;
 *     SPECTRA_OK (0) means success.
 *   - On failure, spectra_last_error() returns a thread-local message
 *     describing the most recent error in the calling thread.
 *   - Objects returned through out-parameters are owned by the caller and
 *     released with the matching *_free function. Strings returned as
 *     `char**` are released with spectra_string_free; `const char*`
 *     accessors on a result stay valid until the result is freed.
 *   - All JSON documents use decimal major currency units.
 */

#ifndef SPECTRA_SPECTRA_H_
#define SPECTRA_SPECTRA_H_

#ifdef __cplusplus
extern "C" {
#endif

#define SPECTRA_OK 0
#define SPECTRA_ERR_INVALID_ARGUMENT 1
#define SPECTRA_ERR_PARSE 2
#define SPECTRA_ERR_VALIDATION 3
#define SPECTRA_ERR_UNKNOWN_SCENARIO 4
#define SPECTRA_ERR_ENGINE 5
#define SPECTRA_ERR_ORACLE_BOUND 6

typedef struct spectra_scenario spectra_scenario;
typedef struct spectra_run_result spectra_run_result;

/* Library semantic version, e.g. "1.0.0". Static storage; do not free. */
const char* spectra_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* spectra_last_error(void);

void spectra_string_free(char* text);

/* JSON array of built-in scenario names. */
int spectra_catalog_list(char** out_json);

/* Parses and validates a scenario document. */
int spectra_scenario_load_json(const char* json_text, spectra_scenario** out);

/* Builds a built-in scenario. `params_json` is an optional JSON object of
 * numeric parameters (e.g. {"inc": 10}); pass NULL for defaults. */
int spectra_scenario_from_catalog(const char* name, const char* params_json,
                                  spectra_scenario** out);

int spectra_scenario_to_json(const spectra_scenario* scenario, char** out);

void spectra_scenario_free(spectra_scenario* scenario);

/* Runs the scenario's configured auction. `overrides_json` is an optional
 * JSON object with any of:
 *   "mechanism": "FPSB"|"VICKREY"|"SEQ_AMR"|"SAMR"|"HAMR"
 *   "seed":      non-negative integer
 *   "inc":       absolute minimum increment, major units
 *   "tsf":       saturation threshold applied to all licenses
 *   "activity":  flat required activity fraction in (0, 1]
 *   "credit":    credit fraction in [0, 1) for designated bidders
 */
int spectra_run(const spectra_scenario* scenario, const char* overrides_json,
                spectra_run_result** out);

/* Accessors stay valid until spectra_result_free. */
const char* spectra_result_outcome_json(const spectra_run_result* result);
const char* spectra_result_metrics_json(const spectra_run_result* result);
const char* spectra_result_summary_csv(const spectra_run_result* result);
const char* spectra_result_trace_text(const spectra_run_result* result);

void spectra_result_free(spectra_run_result* result);

/* Deviation-searches the scenario's cartel agreement (same overrides as
 * spectra_run) and returns the verdict report as JSON. */
int spectra_collusion_viability(const spectra_scenario* scenario,
                                const char* overrides_json, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPECTRA_SPECTRA_H_ */
