/*
 * Copyright 2026 The qsenc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the qsenc simulator.
 *
 * Every object is an opaque handle created by a qsenc_*_create/load call
 * and released by the matching *_free (free functions accept NULL). Calls
 * return a qsenc_status; on failure qsenc_last_error() describes the
 * problem on the calling thread until its next failing call.
 *
 * Strings returned through `char **` are owned by the caller and released
 * with qsenc_string_free.
 */

#ifndef QSENC_QSENC_H
#define QSENC_QSENC_H

#include <stddef.h>
#include <stdint.h>

#if defined(QSENC_BUILDING_LIBRARY)
#define QSENC_API __attribute__((visibility("default")))
#else
#define QSENC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsenc_status {
  QSENC_OK = 0,
  QSENC_ERR_INVALID_ARGUMENT = 1,
  QSENC_ERR_FORMAT_MISMATCH = 2,
  QSENC_ERR_OUT_OF_RANGE = 3,
  QSENC_ERR_MASKED_SYNAPSE = 4,
  QSENC_ERR_PARSE = 5,
  QSENC_ERR_IO = 6,
  QSENC_ERR_NULL = 7,    /* required pointer argument was NULL */
  QSENC_ERR_INTERNAL = 8 /* unexpected exception, e.g. allocation failure */
} qsenc_status;

typedef enum qsenc_overflow { QSENC_WRAP = 0, QSENC_SATURATE = 1 } qsenc_overflow;

typedef struct qsenc_config qsenc_config;
typedef struct qsenc_weights qsenc_weights;
typedef struct qsenc_spikes qsenc_spikes;
typedef struct qsenc_core qsenc_core;
typedef struct qsenc_run qsenc_run;
typedef struct qsenc_pipeline qsenc_pipeline;

QSENC_API const char *qsenc_version(void);
QSENC_API const char *qsenc_status_name(qsenc_status status);
/* Message of the last failure on this thread; "" if none. */
QSENC_API const char *qsenc_last_error(void);
QSENC_API void qsenc_string_free(char *text);

/* ---- fixed point ------------------------------------------------------ */

/* Raw two's-complement payloads in Qn.q. */
QSENC_API qsenc_status qsenc_fixed_encode(double value, unsigned n, unsigned q,
                                          qsenc_overflow policy, int64_t *raw);
QSENC_API qsenc_status qsenc_fixed_add(unsigned n, unsigned q, qsenc_overflow policy, int64_t a,
                                       int64_t b, int64_t *out);
QSENC_API qsenc_status qsenc_fixed_sub(unsigned n, unsigned q, qsenc_overflow policy, int64_t a,
                                       int64_t b, int64_t *out);
QSENC_API qsenc_status qsenc_fixed_mul(unsigned n, unsigned q, qsenc_overflow policy, int64_t a,
                                       int64_t b, int64_t *out);

/* ---- configuration ---------------------------------------------------- */

typedef struct qsenc_config_info {
  unsigned n;
  unsigned q;
  qsenc_overflow policy;
  uint32_t input_width;
  size_t layer_count; /* LIF layers; populations = layer_count + 1 */
  size_t neuron_count;
  size_t synapse_count;
  uint32_t layer_latency;
  uint32_t n_ops;
} qsenc_config_info;

QSENC_API qsenc_status qsenc_config_load(const char *path, qsenc_config **out);
QSENC_API qsenc_status qsenc_config_parse(const char *text, qsenc_config **out);
QSENC_API qsenc_status qsenc_config_clone(const qsenc_config *config, qsenc_config **out);
QSENC_API void qsenc_config_free(qsenc_config *config);
QSENC_API qsenc_status qsenc_config_info_get(const qsenc_config *config, qsenc_config_info *out);
QSENC_API qsenc_status qsenc_config_population_size(const qsenc_config *config,
                                                    size_t population, uint32_t *out);
/* Re-quantizes every register into Qn.q; fails if one does not fit. */
QSENC_API qsenc_status qsenc_config_set_format(qsenc_config *config, unsigned n, unsigned q,
                                               qsenc_overflow policy);
QSENC_API qsenc_status qsenc_config_set_layer_latency(qsenc_config *config, uint32_t latency);
/* Register names: decay_rate, growth_rate, v_threshold, reset_mode (0 to
 * constant, 1 to zero, 2 by subtraction, 3 default), v_reset,
 * refractory_period. layer < 0 writes every layer. */
QSENC_API qsenc_status qsenc_config_set_register(qsenc_config *config, int layer,
                                                 const char *name, double value);
QSENC_API qsenc_status qsenc_config_get_register(const qsenc_config *config, size_t layer,
                                                 const char *name, double *out);
QSENC_API qsenc_status qsenc_config_text(const qsenc_config *config, char **out);
/* 16 lowercase hex digits plus NUL. */
QSENC_API qsenc_status qsenc_config_hash(const qsenc_config *config, char out[17]);

/* ---- weights ---------------------------------------------------------- */

QSENC_API qsenc_status qsenc_weights_load(const char *path, qsenc_weights **out);
QSENC_API qsenc_status qsenc_weights_parse(const char *text, qsenc_weights **out);
/* Uniform in [lo, hi) on every connected synapse. */
QSENC_API qsenc_status qsenc_weights_synthetic(const qsenc_config *config, double lo, double hi,
                                               uint64_t seed, qsenc_weights **out);
QSENC_API void qsenc_weights_free(qsenc_weights *weights);
QSENC_API qsenc_status qsenc_weights_count(const qsenc_weights *weights, size_t *out);
QSENC_API qsenc_status qsenc_weights_validate(const qsenc_config *config,
                                              const qsenc_weights *weights);
QSENC_API qsenc_status qsenc_weights_text(const qsenc_weights *weights, char **out);

/* ---- spike streams ---------------------------------------------------- */

QSENC_API qsenc_status qsenc_spikes_create(qsenc_spikes **out);
QSENC_API qsenc_status qsenc_spikes_load(const char *path, int binary, qsenc_spikes **out);
QSENC_API qsenc_status qsenc_spikes_synthetic(uint32_t samples, uint32_t width,
                                              uint32_t duration, double rate, uint64_t seed,
                                              qsenc_spikes **out);
QSENC_API void qsenc_spikes_free(qsenc_spikes *spikes);
/* Inserts keeping samples ordered by id and events ordered by t. */
QSENC_API qsenc_status qsenc_spikes_add(qsenc_spikes *spikes, uint32_t sample, uint32_t t,
                                        uint32_t neuron);
QSENC_API qsenc_status qsenc_spikes_sample_count(const qsenc_spikes *spikes, size_t *out);
QSENC_API qsenc_status qsenc_spikes_sample_id(const qsenc_spikes *spikes, size_t index,
                                              uint32_t *out);
/* Warnings raised while loading (e.g. unsorted input that was sorted). */
QSENC_API qsenc_status qsenc_spikes_warning_count(const qsenc_spikes *spikes, size_t *out);
QSENC_API const char *qsenc_spikes_warning(const qsenc_spikes *spikes, size_t index);
QSENC_API qsenc_status qsenc_spikes_save(const qsenc_spikes *spikes, const char *path,
                                         int binary);

/* ---- core ------------------------------------------------------------- */

typedef struct qsenc_watch {
  uint32_t population; /* 1..K; 0 is the input and has no membrane */
  uint32_t neuron;
} qsenc_watch;

QSENC_API qsenc_status qsenc_core_create(const qsenc_config *config, qsenc_core **out);
QSENC_API void qsenc_core_free(qsenc_core *core);
QSENC_API qsenc_status qsenc_core_load_weights(qsenc_core *core, const qsenc_weights *weights);
/* Hardware-style write: non-negative magnitude and polarity +1 or -1. */
QSENC_API qsenc_status qsenc_core_write_weight(qsenc_core *core, uint32_t layer, uint32_t pre,
                                               uint32_t post, double magnitude, int polarity);
/* Takes effect at the start of the next cycle. */
QSENC_API qsenc_status qsenc_core_write_register(qsenc_core *core, uint32_t layer,
                                                 const char *name, double value);
QSENC_API qsenc_status qsenc_core_set_threads(qsenc_core *core, unsigned threads);
QSENC_API qsenc_status qsenc_core_reset(qsenc_core *core);
/* One cycle. `input` has input_width bytes (nonzero = spike); the output
 * layer's spikes go to `output` if it is not NULL. */
QSENC_API qsenc_status qsenc_core_step(qsenc_core *core, const uint8_t *input, size_t input_len,
                                       uint8_t *output, size_t output_len);
QSENC_API qsenc_status qsenc_core_vmem(const qsenc_core *core, uint32_t layer, uint32_t neuron,
                                       double *out);

/* Runs every sample for `duration` cycles, resetting state before each. */
QSENC_API qsenc_status qsenc_core_run(qsenc_core *core, const qsenc_spikes *spikes,
                                      uint32_t duration, const qsenc_watch *watch,
                                      size_t watch_count, qsenc_run **out);
/* Same through the double-precision reference. */
QSENC_API qsenc_status qsenc_reference_run(const qsenc_config *config,
                                           const qsenc_weights *weights,
                                           const qsenc_spikes *spikes, uint32_t duration,
                                           const qsenc_watch *watch, size_t watch_count,
                                           qsenc_run **out);

/* ---- run results ------------------------------------------------------ */

QSENC_API void qsenc_run_free(qsenc_run *run);
QSENC_API qsenc_status qsenc_run_sample_count(const qsenc_run *run, size_t *out);
QSENC_API qsenc_status qsenc_run_spike_count(const qsenc_run *run, size_t sample,
                                             size_t population, size_t *out);
/* Spike-count decode of the output layer; ties go to the lowest index. */
QSENC_API qsenc_status qsenc_run_decode(const qsenc_run *run, size_t sample, size_t *winner,
                                        int *ambiguous);
QSENC_API qsenc_status qsenc_run_output_counts(const qsenc_run *run, size_t sample,
                                               size_t *counts, size_t len);
QSENC_API qsenc_status qsenc_run_trace(const qsenc_run *run, size_t sample, size_t watch_index,
                                       const double **values, size_t *len);
QSENC_API qsenc_status qsenc_run_avg_spikes_per_neuron(const qsenc_run *run, double *out);
/* Texts carry the `# qsenc-<kind> v1 config=<hash>` header. */
QSENC_API qsenc_status qsenc_run_raster_text(const qsenc_run *run, const qsenc_config *config,
                                             char **out);
QSENC_API qsenc_status qsenc_run_traces_text(const qsenc_run *run, const qsenc_config *config,
                                             char **out);
/* CSV confusion matrix of decoded classes against labels[sample index]. */
QSENC_API qsenc_status qsenc_run_confusion_csv(const qsenc_run *run, const uint32_t *labels,
                                               size_t label_count, size_t classes,
                                               double *accuracy, char **out);
/* Pooled membrane RMSE over every watched neuron of every sample. Both
 * runs must cover the same samples, durations and watch lists. */
QSENC_API qsenc_status qsenc_rmse(const qsenc_run *quantized, const qsenc_run *reference,
                                  double *out);

/* ---- pipeline --------------------------------------------------------- */

typedef struct qsenc_pipeline_info {
  size_t samples;
  uint32_t stages;
  uint32_t exposure_cycles;
  uint32_t reset_cycles;
  uint64_t makespan;
  double steady_state_throughput; /* samples per cycle */
  double analytic_throughput;     /* 1 / (exposure + reset) */
  double overall_throughput;
} qsenc_pipeline_info;

QSENC_API qsenc_status qsenc_pipeline_run(const qsenc_core *core, const qsenc_spikes *spikes,
                                          uint32_t exposure, uint32_t n_reset, unsigned threads,
                                          qsenc_pipeline **out);
QSENC_API void qsenc_pipeline_free(qsenc_pipeline *pipeline);
QSENC_API qsenc_status qsenc_pipeline_info_get(const qsenc_pipeline *pipeline,
                                               qsenc_pipeline_info *out);
QSENC_API qsenc_status qsenc_pipeline_completion(const qsenc_pipeline *pipeline, size_t sample,
                                                 uint64_t *entry, uint64_t *completion);
/* Rasters as a run (no traces). */
QSENC_API qsenc_status qsenc_pipeline_to_run(const qsenc_pipeline *pipeline, qsenc_run **out);
QSENC_API qsenc_status qsenc_pipeline_report(const qsenc_pipeline *pipeline,
                                             const qsenc_config *config, double f_hz,
                                             uint32_t stage_latency, char **out);

/* ---- analytic models -------------------------------------------------- */

/* 1 / (exposure + n_reset / f) */
QSENC_API double qsenc_realtime_fps(double exposure_s, double n_reset_cycles, double f_hz);
/* 1 / (exposure + layers * latency / f); layers counts the input layer */
QSENC_API double qsenc_sequential_fps(double exposure_s, uint32_t layers, double latency_cycles,
                                      double f_hz);
/* (n_synapse + n_ops * n_neurons) * f */
QSENC_API double qsenc_fixed_point_ops(double n_synapse, double n_ops, double n_neurons,
                                       double f_hz);

/* Zero-input leak cycles until vmem < epsilon * v_threshold in Qn.q with
 * decay 1 / (tau f). v_start and epsilon may be NaN for the defaults
 * (v_threshold and 2^-q). *settled is 0 if the leak stalls. */
QSENC_API qsenc_status qsenc_reset_cycles(double tau_s, double f_hz, unsigned n, unsigned q,
                                          double v_threshold, double v_start, double epsilon,
                                          uint32_t *cycles, int *settled);

QSENC_API qsenc_status qsenc_registers_from_physical(double r_ohm, double c_farad, double dt_s,
                                                     double v_unit, double i_unit,
                                                     double *decay_rate, double *growth_rate);

#ifdef __cplusplus
}
#endif

#endif /* QSENC_QSENC_H */
