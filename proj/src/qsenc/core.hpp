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
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsenc/fixedpoint.hpp"
#include "qsenc/neuron.hpp"
#include "qsenc/spikes.hpp"
#include "qsenc/topology.hpp"
#include "qsenc/units.hpp"

namespace qsenc {

class WorkerPool;

/// Register values as real numbers. They are quantized into the core's
/// format when the core is built, so the same description drives the
/// fixed-point core in any format and the floating-point reference.
struct RegisterSettings {
  double decay_rate = 0.2;
  double growth_rate = 1.0;
  double v_threshold = 10.0;
  ResetMode reset_mode = ResetMode::BySubtraction;
  double v_reset = 0.0;
  std::uint32_t refractory_period = 0;

  /// Throws Error(OutOfRange) for values outside the format range.
  NeuronRegisters quantize(QFormat format) const;

  friend bool operator==(const RegisterSettings &, const RegisterSettings &) = default;
};

enum class RegisterId { DecayRate, GrowthRate, VThreshold, ResetMode, VReset, RefractoryPeriod };

std::string_view register_name(RegisterId id) noexcept;
RegisterId parse_register_name(std::string_view name);

/// Applies a numeric register write to real-valued settings. ResetMode takes
/// the enum's integer code; RefractoryPeriod must be a non-negative integer.
void apply_register(RegisterSettings &settings, RegisterId id, double value);

struct LayerConfig {
  std::uint32_t size = 1;
  Connectivity connectivity;
  RegisterSettings registers;

  friend bool operator==(const LayerConfig &, const LayerConfig &) = default;
};

struct CoreConfig {
  QFormat format{5, 3};
  Overflow policy = Overflow::Wrap;
  std::uint32_t input_width = 1;
  std::vector<LayerConfig> layers;
  /// 0: layer k sees layer k-1's spikes from the same cycle.
  /// 1: layer k sees them one cycle later.
  std::uint32_t layer_latency = 0;
  /// Fixed-point operations per neuron per cycle for the ops model.
  std::uint32_t n_ops = 4;
  /// Physical parameters the rate registers were derived from, if any.
  std::optional<PhysicalMapping> mapping;

  /// Throws Error on empty layer list, zero sizes, one_to_one size mismatch,
  /// bad latency, or registers not representable in `format`.
  void validate() const;

  /// [N0, N1, ..., NK]
  std::vector<std::uint32_t> population_sizes() const;
  std::size_t neuron_count() const;
  std::size_t synapse_count() const;

  friend bool operator==(const CoreConfig &, const CoreConfig &) = default;
};

/// One weight write as read from a weight file. `literal` keeps an exact
/// fixed-point payload when the file gave one.
struct WeightRecord {
  SynapseAddress address;
  double value = 0.0;
  std::optional<QWord> literal;
  std::size_t line = 0;
};

/// A layer of LIF neurons sharing one register set and one weight memory.
class Layer {
public:
  Layer(const CoreConfig &config, std::size_t index);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(states_.size()); }
  std::uint32_t pre_size() const noexcept { return weights_.rows(); }

  WeightMemory &weights() noexcept { return weights_; }
  const WeightMemory &weights() const noexcept { return weights_; }
  const NeuronRegisters &registers() const noexcept { return registers_; }
  void set_registers(const NeuronRegisters &regs);

  std::span<const NeuronState> states() const noexcept { return states_; }

  /// Runs one cycle for every neuron. `out` receives one byte per neuron.
  void step(std::span<const std::uint8_t> pre, std::span<std::uint8_t> out,
            WorkerPool *pool = nullptr);

  void reset();

private:
  QFormat format_;
  Overflow policy_;
  NeuronRegisters registers_;
  WeightMemory weights_;
  std::vector<NeuronState> states_;
};

/// The layered core: decoder registers, per-layer synaptic memory and the
/// cycle-stepping engine.
class Core {
public:
  explicit Core(CoreConfig config);
  ~Core();

  Core(Core &&) noexcept;
  Core &operator=(Core &&) noexcept;

  const CoreConfig &config() const noexcept { return config_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  Layer &layer(std::size_t index) { return layers_.at(index); }
  const Layer &layer(std::size_t index) const { return layers_.at(index); }

  void write_weight(const SynapseAddress &address, const QWord &magnitude, int polarity);
  void load_weights(std::span<const WeightRecord> records);

  /// Validates now, takes effect at the start of the next cycle.
  void write_register(std::size_t layer, RegisterId id, double value);

  /// Advances one spk_clk cycle. Returns the spike vectors of every
  /// population, input first; valid until the next call.
  const std::vector<std::vector<std::uint8_t>> &step_cycle(std::span<const std::uint8_t> input);

  /// Steps `duration` cycles from the current state, feeding stream events
  /// at their timestamps. Does not reset state first.
  SampleResult run_sample(const SpikeStream &stream, std::uint32_t duration,
                          std::span<const WatchedNeuron> watch = {});

  /// Membranes, activations, refractory counters and the cycle counter to 0.
  void reset_state();

  std::uint64_t cycle() const noexcept { return cycle_; }

  /// Intra-layer parallelism; results do not depend on the thread count.
  void set_threads(unsigned threads);
  unsigned threads() const noexcept;

private:
  void apply_pending_registers();

  CoreConfig config_;
  std::vector<Layer> layers_;
  std::vector<std::vector<std::uint8_t>> outputs_;
  std::vector<std::vector<std::uint8_t>> previous_;
  std::vector<RegisterSettings> staged_;
  std::vector<std::uint8_t> dirty_;
  std::unique_ptr<WorkerPool> pool_;
  std::uint64_t cycle_ = 0;
};

/// Checks event indices against `width` and times against `duration`, and
/// records the width on the stream.
void bind_stream(SpikeStream &stream, std::uint32_t width, std::uint32_t duration);

} // namespace qsenc
