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
#include <optional>
#include <span>
#include <vector>

#include "qsenc/core.hpp"
#include "qsenc/spikes.hpp"

namespace qsenc {

/// Sample i enters stage 1 at i * (d + s); stage k holds it for d cycles
/// starting d * (k - 1) later.
struct PipelineSchedule {
  std::uint32_t d = 1; ///< cycles a stage holds one sample (the exposure)
  std::uint32_t s = 0; ///< wait between samples for membrane reset
  std::uint32_t stages = 1;

  double analytic_throughput() const { return 1.0 / static_cast<double>(d + s); }
};

struct PipelineResult {
  PipelineSchedule schedule;
  std::vector<SpikeRaster> rasters;
  std::vector<std::uint64_t> entry_cycle;      ///< cycle sample i entered stage 1
  std::vector<std::uint64_t> completion_cycle; ///< cycle after its last stage cycle
  std::uint64_t makespan = 0;
  /// (n - 1) / (last completion - first completion); 0 for a single sample.
  double steady_state_throughput = 0.0;
  /// n / makespan, including fill and drain.
  double overall_throughput = 0.0;
};

/// Runs every sample through a copy of `core` stage by stage, one stage per
/// LIF layer, overlapping samples as the schedule allows. Stage state is
/// reset when a new sample enters, so each raster equals run_sample on a
/// freshly reset core. Stages of one cycle run concurrently when threads > 1.
PipelineResult run_pipelined(const Core &core, std::span<const SpikeStream> samples,
                             std::uint32_t exposure, std::uint32_t n_reset,
                             unsigned threads = 1);

/// 1 / (exposure + n_reset / f)
double realtime_fps(double exposure_s, double n_reset_cycles, double f_hz);

/// 1 / (exposure + K * L / f): every layer adds L cycles and nothing overlaps.
double sequential_fps(double exposure_s, std::uint32_t layers, double latency_cycles,
                      double f_hz);

struct ResetCyclesQuery {
  double tau_s = 5e-3;
  double f_hz = 1e3;
  QFormat format{5, 3};
  double v_threshold = 10.0;
  /// Leak starts here; defaults to v_threshold.
  std::optional<double> v_start;
  /// Settled once vmem < epsilon * v_threshold. Defaults to the format
  /// quantum 2^-q.
  std::optional<double> epsilon;
  std::uint32_t max_cycles = 1u << 20;
};

/// Smallest number of zero-input leak cycles, simulated in fixed point with
/// decay_rate = 1 / (tau f), after which vmem has settled. Returns nullopt
/// if the leak stalls above the target (truncation floor) within max_cycles.
std::optional<std::uint32_t> reset_cycles(const ResetCyclesQuery &query);

} // namespace qsenc
