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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <memory>
#include <string>

#include "qsenc/qsenc.h"

#include "qsenc/core.hpp"
#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/metrics.hpp"
#include "qsenc/pipeline.hpp"
#include "qsenc/reference.hpp"
#include "qsenc/units.hpp"

using namespace qsenc;

struct qsenc_config {
  CoreConfig config;
};

struct qsenc_weights {
  std::vector<WeightRecord> records;
};

struct qsenc_spikes {
  SpikeFile file;
};

struct qsenc_core {
  explicit qsenc_core(CoreConfig c) : core(std::move(c)) {}
  Core core;
};

struct qsenc_run {
  std::vector<SampleResult> results;
  std::vector<std::uint32_t> sample_ids;
};

struct qsenc_pipeline {
  PipelineResult result;
  std::vector<std::uint32_t> sample_ids;
};

namespace {

thread_local std::string last_error;

qsenc_status status_of(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument:
    return QSENC_ERR_INVALID_ARGUMENT;
  case ErrorCode::FormatMismatch:
    return QSENC_ERR_FORMAT_MISMATCH;
  case ErrorCode::OutOfRange:
    return QSENC_ERR_OUT_OF_RANGE;
  case ErrorCode::MaskedSynapse:
    return QSENC_ERR_MASKED_SYNAPSE;
  case ErrorCode::Parse:
    return QSENC_ERR_PARSE;
  case ErrorCode::Io:
    return QSENC_ERR_IO;
  }
  return QSENC_ERR_INTERNAL;
}

qsenc_status fail(qsenc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F> qsenc_status guard(F &&body) {
  try {
    body();
    return QSENC_OK;
  } catch (const Error &e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(QSENC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(QSENC_ERR_INTERNAL, e.what());
  }
}

#define QSENC_REQUIRE(...)                                                                        \
  do {                                                                                            \
    if (!all_set(__VA_ARGS__))                                                                    \
      return fail(QSENC_ERR_NULL, "required argument is NULL");                                   \
  } while (0)

template <class... P> bool all_set(const P *...ptrs) { return ((ptrs != nullptr) && ...); }

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Overflow to_policy(qsenc_overflow p) {
  if (p != QSENC_WRAP && p != QSENC_SATURATE)
    throw Error(ErrorCode::InvalidArgument, "unknown overflow policy");
  return p == QSENC_SATURATE ? Overflow::Saturate : Overflow::Wrap;
}

QFormat to_format(unsigned n, unsigned q) {
  if (n > 64 || q > 64)
    throw Error(ErrorCode::InvalidArgument, "format width exceeds 64 bits");
  return QFormat(static_cast<int>(n), static_cast<int>(q));
}

std::vector<WatchedNeuron> to_watch(const qsenc_watch *watch, std::size_t count) {
  if (count && !watch)
    throw Error(ErrorCode::InvalidArgument, "watch list is NULL");
  std::vector<WatchedNeuron> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back({watch[i].population, watch[i].neuron});
  return out;
}

const SampleResult &sample_at(const qsenc_run *run, std::size_t sample) {
  if (sample >= run->results.size())
    throw Error(ErrorCode::OutOfRange, "sample index " + std::to_string(sample) + " out of range");
  return run->results[sample];
}

std::vector<SpikeRaster> rasters_of(const qsenc_run *run) {
  std::vector<SpikeRaster> out;
  for (const auto &r : run->results)
    out.push_back(r.raster);
  return out;
}

qsenc_status fixed_binary(unsigned n, unsigned q, qsenc_overflow policy, std::int64_t a,
                          std::int64_t b, std::int64_t *out,
                          QWord (*op)(const QWord &, const QWord &, Overflow)) {
  QSENC_REQUIRE(out);
  return guard([&] {
    const QFormat f = to_format(n, q);
    *out = op(QWord::from_raw(f, a), QWord::from_raw(f, b), to_policy(policy)).raw();
  });
}

} // namespace

extern "C" {

const char *qsenc_version(void) { return "1.0.0"; }

const char *qsenc_status_name(qsenc_status status) {
  switch (status) {
  case QSENC_OK:
    return "ok";
  case QSENC_ERR_INVALID_ARGUMENT:
    return "invalid_argument";
  case QSENC_ERR_FORMAT_MISMATCH:
    return "format_mismatch";
  case QSENC_ERR_OUT_OF_RANGE:
    return "out_of_range";
  case QSENC_ERR_MASKED_SYNAPSE:
    return "masked_synapse";
  case QSENC_ERR_PARSE:
    return "parse";
  case QSENC_ERR_IO:
    return "io";
  case QSENC_ERR_NULL:
    return "null_argument";
  case QSENC_ERR_INTERNAL:
    return "internal";
  }
  return "unknown";
}

const char *qsenc_last_error(void) { return last_error.c_str(); }

void qsenc_string_free(char *text) { std::free(text); }

// ---- fixed point

qsenc_status qsenc_fixed_encode(double value, unsigned n, unsigned q, qsenc_overflow policy,
                                int64_t *raw) {
  QSENC_REQUIRE(raw);
  return guard([&] { *raw = QWord::encode(value, to_format(n, q), to_policy(policy)).raw(); });
}

qsenc_status qsenc_fixed_add(unsigned n, unsigned q, qsenc_overflow policy, int64_t a, int64_t b,
                             int64_t *out) {
  return fixed_binary(n, q, policy, a, b, out, &add);
}

qsenc_status qsenc_fixed_sub(unsigned n, unsigned q, qsenc_overflow policy, int64_t a, int64_t b,
                             int64_t *out) {
  return fixed_binary(n, q, policy, a, b, out, &sub);
}

qsenc_status qsenc_fixed_mul(unsigned n, unsigned q, qsenc_overflow policy, int64_t a, int64_t b,
                             int64_t *out) {
  return fixed_binary(n, q, policy, a, b, out, &mul);
}

// ---- configuration

qsenc_status qsenc_config_load(const char *path, qsenc_config **out) {
  QSENC_REQUIRE(path, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_config{load_config(path)}; });
}

qsenc_status qsenc_config_parse(const char *text, qsenc_config **out) {
  QSENC_REQUIRE(text, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_config{parse_config(text)}; });
}

qsenc_status qsenc_config_clone(const qsenc_config *config, qsenc_config **out) {
  QSENC_REQUIRE(config, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_config{config->config}; });
}

void qsenc_config_free(qsenc_config *config) { delete config; }

qsenc_status qsenc_config_info_get(const qsenc_config *config, qsenc_config_info *out) {
  QSENC_REQUIRE(config, out);
  return guard([&] {
    const CoreConfig &c = config->config;
    out->n = static_cast<unsigned>(c.format.n());
    out->q = static_cast<unsigned>(c.format.q());
    out->policy = c.policy == Overflow::Saturate ? QSENC_SATURATE : QSENC_WRAP;
    out->input_width = c.input_width;
    out->layer_count = c.layers.size();
    out->neuron_count = c.neuron_count();
    out->synapse_count = c.synapse_count();
    out->layer_latency = c.layer_latency;
    out->n_ops = c.n_ops;
  });
}

qsenc_status qsenc_config_population_size(const qsenc_config *config, size_t population,
                                          uint32_t *out) {
  QSENC_REQUIRE(config, out);
  return guard([&] {
    const auto sizes = config->config.population_sizes();
    if (population >= sizes.size())
      throw Error(ErrorCode::OutOfRange, "population " + std::to_string(population) +
                                             " does not exist");
    *out = sizes[population];
  });
}

qsenc_status qsenc_config_set_format(qsenc_config *config, unsigned n, unsigned q,
                                     qsenc_overflow policy) {
  QSENC_REQUIRE(config);
  return guard([&] {
    CoreConfig next = config->config;
    next.format = to_format(n, q);
    next.policy = to_policy(policy);
    next.validate();
    config->config = std::move(next);
  });
}

qsenc_status qsenc_config_set_layer_latency(qsenc_config *config, uint32_t latency) {
  QSENC_REQUIRE(config);
  return guard([&] {
    CoreConfig next = config->config;
    next.layer_latency = latency;
    next.validate();
    config->config = std::move(next);
  });
}

qsenc_status qsenc_config_set_register(qsenc_config *config, int layer, const char *name,
                                       double value) {
  QSENC_REQUIRE(config, name);
  return guard([&] {
    CoreConfig next = config->config;
    const RegisterId id = parse_register_name(name);
    if (layer >= 0 && static_cast<std::size_t>(layer) >= next.layers.size())
      throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(layer) + " does not exist");
    for (std::size_t k = 0; k < next.layers.size(); ++k)
      if (layer < 0 || static_cast<std::size_t>(layer) == k)
        apply_register(next.layers[k].registers, id, value);
    next.validate();
    config->config = std::move(next);
  });
}

qsenc_status qsenc_config_get_register(const qsenc_config *config, size_t layer, const char *name,
                                       double *out) {
  QSENC_REQUIRE(config, name, out);
  return guard([&] {
    const auto &layers = config->config.layers;
    if (layer >= layers.size())
      throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(layer) + " does not exist");
    const RegisterSettings &r = layers[layer].registers;
    switch (parse_register_name(name)) {
    case RegisterId::DecayRate:
      *out = r.decay_rate;
      break;
    case RegisterId::GrowthRate:
      *out = r.growth_rate;
      break;
    case RegisterId::VThreshold:
      *out = r.v_threshold;
      break;
    case RegisterId::ResetMode:
      *out = static_cast<double>(static_cast<int>(r.reset_mode));
      break;
    case RegisterId::VReset:
      *out = r.v_reset;
      break;
    case RegisterId::RefractoryPeriod:
      *out = r.refractory_period;
      break;
    }
  });
}

qsenc_status qsenc_config_text(const qsenc_config *config, char **out) {
  QSENC_REQUIRE(config, out);
  *out = nullptr;
  return guard([&] { *out = dup_string(write_config(config->config)); });
}

qsenc_status qsenc_config_hash(const qsenc_config *config, char out[17]) {
  QSENC_REQUIRE(config, out);
  return guard([&] {
    const std::string h = config_hash_hex(config->config);
    std::memcpy(out, h.c_str(), 17);
  });
}

// ---- weights

qsenc_status qsenc_weights_load(const char *path, qsenc_weights **out) {
  QSENC_REQUIRE(path, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_weights{load_weights(path)}; });
}

qsenc_status qsenc_weights_parse(const char *text, qsenc_weights **out) {
  QSENC_REQUIRE(text, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_weights{parse_weights(text)}; });
}

qsenc_status qsenc_weights_synthetic(const qsenc_config *config, double lo, double hi,
                                     uint64_t seed, qsenc_weights **out) {
  QSENC_REQUIRE(config, out);
  *out = nullptr;
  return guard([&] {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
      throw Error(ErrorCode::InvalidArgument, "weight range must be finite with lo <= hi");
    *out = new qsenc_weights{synthetic_weights(config->config, lo, hi, seed)};
  });
}

void qsenc_weights_free(qsenc_weights *weights) { delete weights; }

qsenc_status qsenc_weights_count(const qsenc_weights *weights, size_t *out) {
  QSENC_REQUIRE(weights, out);
  *out = weights->records.size();
  return QSENC_OK;
}

qsenc_status qsenc_weights_validate(const qsenc_config *config, const qsenc_weights *weights) {
  QSENC_REQUIRE(config, weights);
  return guard([&] { validate_weights(config->config, weights->records); });
}

qsenc_status qsenc_weights_text(const qsenc_weights *weights, char **out) {
  QSENC_REQUIRE(weights, out);
  *out = nullptr;
  return guard([&] { *out = dup_string(write_weights(weights->records)); });
}

// ---- spikes

qsenc_status qsenc_spikes_create(qsenc_spikes **out) {
  QSENC_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_spikes{}; });
}

qsenc_status qsenc_spikes_load(const char *path, int binary, qsenc_spikes **out) {
  QSENC_REQUIRE(path, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_spikes{load_spikes(path, binary != 0)}; });
}

qsenc_status qsenc_spikes_synthetic(uint32_t samples, uint32_t width, uint32_t duration,
                                    double rate, uint64_t seed, qsenc_spikes **out) {
  QSENC_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    auto s = std::make_unique<qsenc_spikes>();
    s->file.streams = synthetic_streams(samples, width, duration, rate, seed);
    *out = s.release();
  });
}

void qsenc_spikes_free(qsenc_spikes *spikes) { delete spikes; }

qsenc_status qsenc_spikes_add(qsenc_spikes *spikes, uint32_t sample, uint32_t t,
                              uint32_t neuron) {
  QSENC_REQUIRE(spikes);
  return guard([&] {
    auto &streams = spikes->file.streams;
    auto it = std::lower_bound(
        streams.begin(), streams.end(), sample,
        [](const SpikeStream &s, std::uint32_t id) { return s.sample < id; });
    if (it == streams.end() || it->sample != sample) {
      SpikeStream fresh;
      fresh.sample = sample;
      it = streams.insert(it, std::move(fresh));
    }
    auto &ev = it->events;
    auto pos = std::upper_bound(ev.begin(), ev.end(), t,
                                [](std::uint32_t tt, const SpikeEvent &e) { return tt < e.t; });
    ev.insert(pos, SpikeEvent{t, neuron});
  });
}

qsenc_status qsenc_spikes_sample_count(const qsenc_spikes *spikes, size_t *out) {
  QSENC_REQUIRE(spikes, out);
  *out = spikes->file.streams.size();
  return QSENC_OK;
}

qsenc_status qsenc_spikes_sample_id(const qsenc_spikes *spikes, size_t index, uint32_t *out) {
  QSENC_REQUIRE(spikes, out);
  if (index >= spikes->file.streams.size())
    return fail(QSENC_ERR_OUT_OF_RANGE, "sample index " + std::to_string(index) + " out of range");
  *out = spikes->file.streams[index].sample;
  return QSENC_OK;
}

qsenc_status qsenc_spikes_warning_count(const qsenc_spikes *spikes, size_t *out) {
  QSENC_REQUIRE(spikes, out);
  *out = spikes->file.warnings.size();
  return QSENC_OK;
}

const char *qsenc_spikes_warning(const qsenc_spikes *spikes, size_t index) {
  if (!spikes || index >= spikes->file.warnings.size())
    return nullptr;
  return spikes->file.warnings[index].c_str();
}

qsenc_status qsenc_spikes_save(const qsenc_spikes *spikes, const char *path, int binary) {
  QSENC_REQUIRE(spikes, path);
  return guard([&] {
    const auto &s = spikes->file.streams;
    write_text_file(path, binary ? write_spikes_binary(s) : write_spikes(s));
  });
}

// ---- core

qsenc_status qsenc_core_create(const qsenc_config *config, qsenc_core **out) {
  QSENC_REQUIRE(config, out);
  *out = nullptr;
  return guard([&] { *out = new qsenc_core(config->config); });
}

void qsenc_core_free(qsenc_core *core) { delete core; }

qsenc_status qsenc_core_load_weights(qsenc_core *core, const qsenc_weights *weights) {
  QSENC_REQUIRE(core, weights);
  return guard([&] { core->core.load_weights(weights->records); });
}

qsenc_status qsenc_core_write_weight(qsenc_core *core, uint32_t layer, uint32_t pre,
                                     uint32_t post, double magnitude, int polarity) {
  QSENC_REQUIRE(core);
  return guard([&] {
    const QWord m = QWord::encode_checked(magnitude, core->core.config().format);
    core->core.write_weight({layer, pre, post}, m, polarity);
  });
}

qsenc_status qsenc_core_write_register(qsenc_core *core, uint32_t layer, const char *name,
                                       double value) {
  QSENC_REQUIRE(core, name);
  return guard([&] { core->core.write_register(layer, parse_register_name(name), value); });
}

qsenc_status qsenc_core_set_threads(qsenc_core *core, unsigned threads) {
  QSENC_REQUIRE(core);
  return guard([&] { core->core.set_threads(threads); });
}

qsenc_status qsenc_core_reset(qsenc_core *core) {
  QSENC_REQUIRE(core);
  return guard([&] { core->core.reset_state(); });
}

qsenc_status qsenc_core_step(qsenc_core *core, const uint8_t *input, size_t input_len,
                             uint8_t *output, size_t output_len) {
  QSENC_REQUIRE(core);
  return guard([&] {
    if (input_len && !input)
      throw Error(ErrorCode::InvalidArgument, "input is NULL");
    std::vector<std::uint8_t> in(input, input + input_len);
    const auto &pops = core->core.step_cycle(in);
    if (output) {
      const auto &last = pops.back();
      if (output_len < last.size())
        throw Error(ErrorCode::InvalidArgument, "output buffer holds " +
                                                    std::to_string(output_len) + " of " +
                                                    std::to_string(last.size()) + " neurons");
      std::copy(last.begin(), last.end(), output);
    }
  });
}

qsenc_status qsenc_core_vmem(const qsenc_core *core, uint32_t layer, uint32_t neuron,
                             double *out) {
  QSENC_REQUIRE(core, out);
  return guard([&] {
    if (layer >= core->core.layer_count())
      throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(layer) + " does not exist");
    const auto states = core->core.layer(layer).states();
    if (neuron >= states.size())
      throw Error(ErrorCode::OutOfRange, "neuron " + std::to_string(neuron) + " out of range");
    *out = states[neuron].vmem.value();
  });
}

qsenc_status qsenc_core_run(qsenc_core *core, const qsenc_spikes *spikes, uint32_t duration,
                            const qsenc_watch *watch, size_t watch_count, qsenc_run **out) {
  QSENC_REQUIRE(core, spikes, out);
  *out = nullptr;
  return guard([&] {
    const auto w = to_watch(watch, watch_count);
    auto run = std::make_unique<qsenc_run>();
    for (const SpikeStream &s : spikes->file.streams) {
      core->core.reset_state();
      run->results.push_back(core->core.run_sample(s, duration, w));
      run->sample_ids.push_back(s.sample);
    }
    *out = run.release();
  });
}

qsenc_status qsenc_reference_run(const qsenc_config *config, const qsenc_weights *weights,
                                 const qsenc_spikes *spikes, uint32_t duration,
                                 const qsenc_watch *watch, size_t watch_count, qsenc_run **out) {
  QSENC_REQUIRE(config, weights, spikes, out);
  *out = nullptr;
  return guard([&] {
    const auto w = to_watch(watch, watch_count);
    ReferenceCore ref(config->config, weights->records);
    auto run = std::make_unique<qsenc_run>();
    for (const SpikeStream &s : spikes->file.streams) {
      ref.reset_state();
      run->results.push_back(ref.run_sample(s, duration, w));
      run->sample_ids.push_back(s.sample);
    }
    *out = run.release();
  });
}

// ---- run results

void qsenc_run_free(qsenc_run *run) { delete run; }

qsenc_status qsenc_run_sample_count(const qsenc_run *run, size_t *out) {
  QSENC_REQUIRE(run, out);
  *out = run->results.size();
  return QSENC_OK;
}

qsenc_status qsenc_run_spike_count(const qsenc_run *run, size_t sample, size_t population,
                                   size_t *out) {
  QSENC_REQUIRE(run, out);
  return guard([&] {
    const SpikeRaster &r = sample_at(run, sample).raster;
    if (population >= r.populations.size())
      throw Error(ErrorCode::OutOfRange, "population " + std::to_string(population) +
                                             " does not exist");
    *out = r.spike_count(population);
  });
}

qsenc_status qsenc_run_decode(const qsenc_run *run, size_t sample, size_t *winner,
                              int *ambiguous) {
  QSENC_REQUIRE(run, winner);
  return guard([&] {
    const CountDecode d = decode_by_count(sample_at(run, sample).raster);
    *winner = d.winner;
    if (ambiguous)
      *ambiguous = d.ambiguous ? 1 : 0;
  });
}

qsenc_status qsenc_run_output_counts(const qsenc_run *run, size_t sample, size_t *counts,
                                     size_t len) {
  QSENC_REQUIRE(run, counts);
  return guard([&] {
    const CountDecode d = decode_by_count(sample_at(run, sample).raster);
    if (len < d.counts.size())
      throw Error(ErrorCode::InvalidArgument, "count buffer holds " + std::to_string(len) +
                                                  " of " + std::to_string(d.counts.size()));
    std::copy(d.counts.begin(), d.counts.end(), counts);
  });
}

qsenc_status qsenc_run_trace(const qsenc_run *run, size_t sample, size_t watch_index,
                             const double **values, size_t *len) {
  QSENC_REQUIRE(run, values, len);
  return guard([&] {
    const auto &traces = sample_at(run, sample).traces;
    if (watch_index >= traces.size())
      throw Error(ErrorCode::OutOfRange, "no trace " + std::to_string(watch_index));
    *values = traces[watch_index].values.data();
    *len = traces[watch_index].values.size();
  });
}

qsenc_status qsenc_run_avg_spikes_per_neuron(const qsenc_run *run, double *out) {
  QSENC_REQUIRE(run, out);
  return guard([&] { *out = avg_spikes_per_neuron(rasters_of(run)); });
}

qsenc_status qsenc_run_raster_text(const qsenc_run *run, const qsenc_config *config, char **out) {
  QSENC_REQUIRE(run, config, out);
  *out = nullptr;
  return guard([&] {
    const auto rasters = rasters_of(run);
    *out = dup_string(output_header("raster", config->config) +
                      format_raster(rasters, run->sample_ids));
  });
}

qsenc_status qsenc_run_traces_text(const qsenc_run *run, const qsenc_config *config, char **out) {
  QSENC_REQUIRE(run, config, out);
  *out = nullptr;
  return guard([&] {
    *out = dup_string(output_header("traces", config->config) +
                      format_traces(run->results, run->sample_ids));
  });
}

qsenc_status qsenc_run_confusion_csv(const qsenc_run *run, const uint32_t *labels,
                                     size_t label_count, size_t classes, double *accuracy,
                                     char **out) {
  QSENC_REQUIRE(run, labels, out);
  *out = nullptr;
  return guard([&] {
    if (label_count != run->results.size())
      throw Error(ErrorCode::InvalidArgument, std::to_string(label_count) + " labels for " +
                                                  std::to_string(run->results.size()) +
                                                  " samples");
    ConfusionMatrix m(classes);
    for (std::size_t i = 0; i < label_count; ++i)
      m.add(labels[i], decode_by_count(run->results[i].raster).winner);
    if (accuracy)
      *accuracy = m.accuracy();
    *out = dup_string(m.to_csv());
  });
}

qsenc_status qsenc_rmse(const qsenc_run *quantized, const qsenc_run *reference, double *out) {
  QSENC_REQUIRE(quantized, reference, out);
  return guard([&] {
    if (quantized->results.size() != reference->results.size())
      throw Error(ErrorCode::InvalidArgument, "runs cover different sample counts");
    std::vector<TracePair> pairs;
    for (std::size_t i = 0; i < quantized->results.size(); ++i) {
      auto p = pair_traces(quantized->results[i], reference->results[i]);
      pairs.insert(pairs.end(), p.begin(), p.end());
    }
    *out = rmse(pairs);
  });
}

// ---- pipeline

qsenc_status qsenc_pipeline_run(const qsenc_core *core, const qsenc_spikes *spikes,
                                uint32_t exposure, uint32_t n_reset, unsigned threads,
                                qsenc_pipeline **out) {
  QSENC_REQUIRE(core, spikes, out);
  *out = nullptr;
  return guard([&] {
    auto p = std::make_unique<qsenc_pipeline>();
    p->result = run_pipelined(core->core, spikes->file.streams, exposure, n_reset, threads);
    for (const SpikeStream &s : spikes->file.streams)
      p->sample_ids.push_back(s.sample);
    *out = p.release();
  });
}

void qsenc_pipeline_free(qsenc_pipeline *pipeline) { delete pipeline; }

qsenc_status qsenc_pipeline_info_get(const qsenc_pipeline *pipeline, qsenc_pipeline_info *out) {
  QSENC_REQUIRE(pipeline, out);
  const PipelineResult &r = pipeline->result;
  out->samples = r.rasters.size();
  out->stages = r.schedule.stages;
  out->exposure_cycles = r.schedule.d;
  out->reset_cycles = r.schedule.s;
  out->makespan = r.makespan;
  out->steady_state_throughput = r.steady_state_throughput;
  out->analytic_throughput = r.schedule.analytic_throughput();
  out->overall_throughput = r.overall_throughput;
  return QSENC_OK;
}

qsenc_status qsenc_pipeline_completion(const qsenc_pipeline *pipeline, size_t sample,
                                       uint64_t *entry, uint64_t *completion) {
  QSENC_REQUIRE(pipeline);
  const PipelineResult &r = pipeline->result;
  if (sample >= r.rasters.size())
    return fail(QSENC_ERR_OUT_OF_RANGE, "sample index " + std::to_string(sample) + " out of range");
  if (entry)
    *entry = r.entry_cycle[sample];
  if (completion)
    *completion = r.completion_cycle[sample];
  return QSENC_OK;
}

qsenc_status qsenc_pipeline_to_run(const qsenc_pipeline *pipeline, qsenc_run **out) {
  QSENC_REQUIRE(pipeline, out);
  *out = nullptr;
  return guard([&] {
    auto run = std::make_unique<qsenc_run>();
    for (const SpikeRaster &r : pipeline->result.rasters)
      run->results.push_back({r, {}});
    run->sample_ids = pipeline->sample_ids;
    *out = run.release();
  });
}

qsenc_status qsenc_pipeline_report(const qsenc_pipeline *pipeline, const qsenc_config *config,
                                   double f_hz, uint32_t stage_latency, char **out) {
  QSENC_REQUIRE(pipeline, config, out);
  *out = nullptr;
  return guard([&] {
    if (!(f_hz > 0.0 && std::isfinite(f_hz)))
      throw Error(ErrorCode::InvalidArgument, "clock frequency must be positive");
    const auto &sch = pipeline->result.schedule;
    const double exposure_s = sch.d / f_hz;
    const double rt = realtime_fps(exposure_s, sch.s, f_hz);
    // the input layer counts as a stage of the non-overlapped baseline
    const auto stages = static_cast<std::uint32_t>(config->config.layers.size() + 1);
    const double seq = sequential_fps(exposure_s, stages, stage_latency, f_hz);
    *out = dup_string(output_header("throughput", config->config) +
                      format_throughput(pipeline->result, f_hz, exposure_s, rt, seq));
  });
}

// ---- analytic models

double qsenc_realtime_fps(double exposure_s, double n_reset_cycles, double f_hz) {
  return realtime_fps(exposure_s, n_reset_cycles, f_hz);
}

double qsenc_sequential_fps(double exposure_s, uint32_t layers, double latency_cycles,
                            double f_hz) {
  return sequential_fps(exposure_s, layers, latency_cycles, f_hz);
}

double qsenc_fixed_point_ops(double n_synapse, double n_ops, double n_neurons, double f_hz) {
  return fixed_point_ops(n_synapse, n_ops, n_neurons, f_hz);
}

qsenc_status qsenc_reset_cycles(double tau_s, double f_hz, unsigned n, unsigned q,
                                double v_threshold, double v_start, double epsilon,
                                uint32_t *cycles, int *settled) {
  QSENC_REQUIRE(cycles, settled);
  return guard([&] {
    ResetCyclesQuery query;
    query.tau_s = tau_s;
    query.f_hz = f_hz;
    query.format = to_format(n, q);
    query.v_threshold = v_threshold;
    if (!std::isnan(v_start))
      query.v_start = v_start;
    if (!std::isnan(epsilon))
      query.epsilon = epsilon;
    const auto r = reset_cycles(query);
    *settled = r ? 1 : 0;
    *cycles = r.value_or(0);
  });
}

qsenc_status qsenc_registers_from_physical(double r_ohm, double c_farad, double dt_s,
                                           double v_unit, double i_unit, double *decay_rate,
                                           double *growth_rate) {
  QSENC_REQUIRE(decay_rate, growth_rate);
  return guard([&] {
    const RateRegisters r = registers_from_physical({r_ohm, c_farad, dt_s, v_unit, i_unit});
    *decay_rate = r.decay_rate;
    *growth_rate = r.growth_rate;
  });
}

} // extern "C"
