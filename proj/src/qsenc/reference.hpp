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
#include <span>
#include <vector>

#include "qsenc/core.hpp"
#include "qsenc/spikes.hpp"

namespace qsenc {

/// Double-precision twin of Core. Same cycle ordering, reset and refractory
/// logic, same layer latency; registers and weights stay real-valued.
class ReferenceCore {
public:
  ReferenceCore(CoreConfig config, std::span<const WeightRecord> weights);

  const CoreConfig &config() const noexcept { return config_; }

  const std::vector<std::vector<std::uint8_t>> &step_cycle(std::span<const std::uint8_t> input);
  SampleResult run_sample(const SpikeStream &stream, std::uint32_t duration,
                          std::span<const WatchedNeuron> watch = {});
  void reset_state();

  double vmem(std::size_t layer, std::uint32_t neuron) const;
  double weight(std::size_t layer, std::uint32_t pre, std::uint32_t post) const;

private:
  struct State {
    double vmem = 0.0;
    double act = 0.0;
    std::uint32_t refractory_counter = 0;
  };
  struct LayerData {
    RegisterSettings regs;
    ConnectivityMask mask;
    std::vector<double> weights; // column-major, rows = pre size
    std::vector<State> states;
  };

  bool step_neuron(State &st, const RegisterSettings &regs, std::span<const std::uint8_t> pre,
                   const double *column) const;

  CoreConfig config_;
  std::vector<LayerData> layers_;
  std::vector<std::vector<std::uint8_t>> outputs_;
  std::vector<std::vector<std::uint8_t>> previous_;
};

SampleResult run_reference(const CoreConfig &config, std::span<const WeightRecord> weights,
                           const SpikeStream &stream, std::uint32_t duration,
                           std::span<const WatchedNeuron> watch = {});

/// Quantized and reference membrane traces of the same neuron under the
/// same input.
struct TracePair {
  std::span<const double> quantized;
  std::span<const double> reference;
};

/// sqrt(mean((q - r)^2)). Throws on empty or unequal-length traces.
double rmse(const TracePair &pair);

/// Pools every sample of every pair into one mean before the square root.
double rmse(std::span<const TracePair> pairs);

/// Matches traces by neuron identity. Throws if the two results watch
/// different neurons or have different durations.
std::vector<TracePair> pair_traces(const SampleResult &quantized, const SampleResult &reference);

} // namespace qsenc
