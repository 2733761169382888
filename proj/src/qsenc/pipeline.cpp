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

#include "qsenc/pipeline.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qsenc/error.hpp"
#include "qsenc/worker_pool.hpp"

namespace qsenc {

namespace {

using SpikeFrames = std::vector<std::vector<std::uint8_t>>; // [local cycle][neuron]

struct Stage {
  Layer layer;
  // Output frames of the last two samples this stage processed, by parity.
  std::array<SpikeFrames, 2> frames;
};

} // namespace

PipelineResult run_pipelined(const Core &core, std::span<const SpikeStream> samples,
                             std::uint32_t exposure, std::uint32_t n_reset, unsigned threads) {
  if (samples.empty())
    throw Error(ErrorCode::InvalidArgument, "pipeline needs at least one sample");
  if (exposure == 0)
    throw Error(ErrorCode::InvalidArgument, "exposure must be >= 1 cycle");

  const CoreConfig &config = core.config();
  const std::size_t n = samples.size();
  const std::size_t k_stages = core.layer_count();
  const std::uint64_t d = exposure;
  const std::uint64_t period = d + n_reset;
  const auto sizes = config.population_sizes();

  std::vector<SpikeStream> bound(samples.begin(), samples.end());
  for (auto &s : bound)
    bind_stream(s, config.input_width, exposure);

  std::vector<Stage> stages;
  stages.reserve(k_stages);
  for (std::size_t k = 0; k < k_stages; ++k) {
    stages.push_back({core.layer(k), {}});
    stages.back().layer.reset();
    for (auto &f : stages.back().frames)
      f.assign(exposure, std::vector<std::uint8_t>(sizes[k + 1], 0));
  }

  PipelineResult result;
  result.schedule = {exposure, n_reset, static_cast<std::uint32_t>(k_stages)};
  result.rasters.resize(n);
  result.entry_cycle.resize(n);
  result.completion_cycle.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    SpikeRaster &r = result.rasters[i];
    r.duration = exposure;
    r.population_sizes = sizes;
    r.populations.resize(sizes.size());
    for (const SpikeEvent &e : bound[i].events)
      r.populations[0].push_back(e);
    result.entry_cycle[i] = i * period;
  }

  // Stage k (0-based) holds sample i during [i*period + k*d, i*period + (k+1)*d).
  const std::uint64_t end = (n - 1) * period + k_stages * d;
  std::unique_ptr<WorkerPool> pool;
  if (threads > 1)
    pool = std::make_unique<WorkerPool>(threads);

  std::vector<std::vector<std::uint8_t>> inputs(k_stages);
  std::vector<std::size_t> next_event(n, 0);

  for (std::uint64_t c = 0; c < end; ++c) {
    auto run_stage = [&](std::size_t k) {
      if (c < k * d)
        return;
      const std::uint64_t local = c - k * d;
      const std::uint64_t i = local / period;
      const std::uint64_t phase = local % period;
      if (i >= n || phase >= d)
        return;
      Stage &stage = stages[k];
      if (phase == 0)
        stage.layer.reset();

      std::vector<std::uint8_t> &pre = inputs[k];
      if (k == 0) {
        pre.assign(config.input_width, 0);
        const auto &events = bound[i].events;
        std::size_t &cursor = next_event[i];
        while (cursor < events.size() && events[cursor].t == phase)
          pre[events[cursor++].neuron] = 1;
      } else if (config.layer_latency == 1) {
        pre.assign(sizes[k], 0);
        if (phase > 0)
          pre = stages[k - 1].frames[i % 2][phase - 1];
      } else {
        pre = stages[k - 1].frames[i % 2][phase];
      }
      stage.layer.step(pre, stage.frames[i % 2][phase]);
    };

    if (pool && k_stages > 1) {
      pool->parallel_for(k_stages, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k)
          run_stage(k);
      });
    } else {
      for (std::size_t k = 0; k < k_stages; ++k)
        run_stage(k);
    }

    // Harvest frames finished this cycle into the per-sample rasters.
    for (std::size_t k = 0; k < k_stages; ++k) {
      if (c < k * d)
        continue;
      const std::uint64_t local = c - k * d;
      const std::uint64_t i = local / period;
      const std::uint64_t phase = local % period;
      if (i >= n || phase >= d)
        continue;
      const auto &frame = stages[k].frames[i % 2][phase];
      auto &events = result.rasters[i].populations[k + 1];
      for (std::uint32_t j = 0; j < frame.size(); ++j) {
        if (frame[j])
          events.push_back({static_cast<std::uint32_t>(phase), j});
      }
      if (k + 1 == k_stages && phase + 1 == d)
        result.completion_cycle[i] = c + 1;
    }
  }

  result.makespan = end;
  result.overall_throughput = static_cast<double>(n) / static_cast<double>(end);
  if (n > 1) {
    const auto span = result.completion_cycle.back() - result.completion_cycle.front();
    result.steady_state_throughput = static_cast<double>(n - 1) / static_cast<double>(span);
  }
  return result;
}

double realtime_fps(double exposure_s, double n_reset_cycles, double f_hz) {
  if (!(f_hz > 0.0))
    throw Error(ErrorCode::InvalidArgument, "frequency must be positive");
  return 1.0 / (exposure_s + n_reset_cycles / f_hz);
}

double sequential_fps(double exposure_s, std::uint32_t layers, double latency_cycles,
                      double f_hz) {
  if (!(f_hz > 0.0))
    throw Error(ErrorCode::InvalidArgument, "frequency must be positive");
  return 1.0 / (exposure_s + static_cast<double>(layers) * latency_cycles / f_hz);
}

std::optional<std::uint32_t> reset_cycles(const ResetCyclesQuery &query) {
  if (!(query.tau_s > 0.0) || !(query.f_hz > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tau and f must be positive");
  const QFormat fmt = query.format;
  const double epsilon = query.epsilon.value_or(fmt.quantum());
  const double target = epsilon * query.v_threshold;
  const double decay = std::min(1.0, 1.0 / (query.tau_s * query.f_hz));

  const QWord decay_rate = QWord::encode_checked(decay, fmt);
  QWord vmem = QWord::encode_checked(query.v_start.value_or(query.v_threshold), fmt);
  for (std::uint32_t cycle = 0; cycle <= query.max_cycles; ++cycle) {
    if (vmem.value() < target || vmem.raw() == 0)
      return cycle;
    const QWord next = sub(vmem, mul(decay_rate, vmem));
    if (next == vmem)
      return std::nullopt;
    vmem = next;
  }
  return std::nullopt;
}

} // namespace qsenc
