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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsenc/core.hpp"
#include "qsenc/metrics.hpp"
#include "qsenc/pipeline.hpp"
#include "qsenc/spikes.hpp"

namespace qsenc {

inline constexpr int kFileFormatVersion = 1;

/// Whole file into a string; throws Error(Io) naming the path.
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

// --- core configuration -------------------------------------------------
//
// INI-style sections:
//   [format]       n, q, policy (wrap|saturate)
//   [layers]       sizes (N0..NK), connectivity (K entries or one for all),
//                  radius, layer_latency
//   [registers]    defaults for every layer
//   [registers.k]  overrides for LIF layer k (0-based)
//   [mapping]      r, c, dt, v_unit, i_unit in SI units; derives decay_rate
//                  and growth_rate unless a [registers.k] section sets them
//   [metrics]      n_ops
// `#` starts a comment. Register values are decimals or Qn.q:0xHEX literals.

CoreConfig parse_config(std::string_view text, const std::string &source = "<config>");
CoreConfig load_config(const std::filesystem::path &path);

/// Canonical form: every section spelled out, registers per layer.
/// parse_config(write_config(c)) == c.
std::string write_config(const CoreConfig &config);

/// FNV-1a 64 of write_config(config).
std::uint64_t config_hash(const CoreConfig &config);
std::string config_hash_hex(const CoreConfig &config);

// --- weights --------------------------------------------------------------
//
// One record per line: `layer pre post value`, value a signed decimal or a
// Qn.q:0xHEX literal. `#` comments.

std::vector<WeightRecord> parse_weights(std::string_view text,
                                        const std::string &source = "<weights>");
std::vector<WeightRecord> load_weights(const std::filesystem::path &path);
std::string write_weights(std::span<const WeightRecord> records);

/// Static checks of every record against the topology: layer and indices in
/// range, synapse connected, value representable. Messages name the line.
void validate_weights(const CoreConfig &config, std::span<const WeightRecord> records);

// --- spike streams --------------------------------------------------------
//
// Text: `sample t neuron` per line, `#` comments. Binary (opt-in): magic
// "QSPK", u32 version, u32 sample count, then per sample u32 id, u32 event
// count and that many (u32 t, u32 neuron) pairs, all little-endian.

struct SpikeFile {
  std::vector<SpikeStream> streams; // ascending sample id
  std::vector<std::string> warnings;
};

SpikeFile parse_spikes(std::string_view text, const std::string &source = "<spikes>");
SpikeFile load_spikes(const std::filesystem::path &path, bool binary = false);
std::string write_spikes(std::span<const SpikeStream> streams);
std::string write_spikes_binary(std::span<const SpikeStream> streams);
SpikeFile parse_spikes_binary(std::string_view bytes, const std::string &source = "<spikes>");

/// Independent Bernoulli(rate) spikes per input neuron and cycle.
std::vector<SpikeStream> synthetic_streams(std::uint32_t samples, std::uint32_t width,
                                           std::uint32_t duration, double rate,
                                           std::uint64_t seed);

/// Uniform weights in [lo, hi) on every connected synapse, in layer order.
std::vector<WeightRecord> synthetic_weights(const CoreConfig &config, double lo, double hi,
                                            std::uint64_t seed);

// --- run outputs ----------------------------------------------------------
//
// Every output starts with `# qsenc-<kind> v1 config=<hash>`.

std::string output_header(std::string_view kind, const CoreConfig &config);

/// `sample t population neuron` per spike.
std::string format_raster(std::span<const SpikeRaster> rasters,
                          std::span<const std::uint32_t> sample_ids);

/// CSV `sample,cycle,population,neuron,vmem`.
std::string format_traces(std::span<const SampleResult> results,
                          std::span<const std::uint32_t> sample_ids);

/// `key=value` record of a pipelined run.
std::string format_throughput(const PipelineResult &result, double f_hz, double exposure_s,
                              double realtime, double sequential);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

} // namespace qsenc
