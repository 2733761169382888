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

#include <compare>
#include <cstdint>
#include <vector>

namespace qsenc {

/// Address event: neuron `neuron` spiked at cycle `t`.
struct SpikeEvent {
  std::uint32_t t = 0;
  std::uint32_t neuron = 0;

  friend auto operator<=>(const SpikeEvent &, const SpikeEvent &) = default;
};

/// One input sample. `width` is 0 until the stream is bound to a core.
struct SpikeStream {
  std::uint32_t sample = 0;
  std::uint32_t width = 0;
  std::vector<SpikeEvent> events; // sorted by t, stable within a cycle

  friend bool operator==(const SpikeStream &, const SpikeStream &) = default;
};

/// Spikes of every population over one sample. Population 0 is the input,
/// population k + 1 is LIF layer k.
struct SpikeRaster {
  std::uint32_t duration = 0;
  std::vector<std::uint32_t> population_sizes;
  std::vector<std::vector<SpikeEvent>> populations;

  std::size_t spike_count(std::size_t population) const { return populations.at(population).size(); }
  std::size_t total_spikes() const {
    std::size_t total = 0;
    for (const auto &p : populations)
      total += p.size();
    return total;
  }

  friend bool operator==(const SpikeRaster &, const SpikeRaster &) = default;
};

struct WatchedNeuron {
  std::uint32_t population = 1;
  std::uint32_t neuron = 0;

  friend auto operator<=>(const WatchedNeuron &, const WatchedNeuron &) = default;
};

/// Membrane potential at the end of each cycle (after any reset).
struct MembraneTrace {
  WatchedNeuron neuron;
  std::vector<double> values;

  friend bool operator==(const MembraneTrace &, const MembraneTrace &) = default;
};

struct SampleResult {
  SpikeRaster raster;
  std::vector<MembraneTrace> traces;

  friend bool operator==(const SampleResult &, const SampleResult &) = default;
};

} // namespace qsenc
