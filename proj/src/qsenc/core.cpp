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

#include "qsenc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsenc/error.hpp"
#include "qsenc/worker_pool.hpp"

namespace qsenc {

NeuronRegisters RegisterSettings::quantize(QFormat format) const {
  NeuronRegisters regs;
  auto encode = [&](const char *name, double value) {
    try {
      return QWord::encode_checked(value, format);
    } catch (const Error &e) {
      throw Error(ErrorCode::OutOfRange, std::string(name) + ": " + e.what());
    }
  };
  regs.decay_rate = encode("decay_rate", decay_rate);
  regs.growth_rate = encode("growth_rate", growth_rate);
  regs.v_threshold = encode("v_threshold", v_threshold);
  regs.v_reset = encode("v_reset", v_reset);
  regs.reset_mode = reset_mode;
  regs.refractory_period = refractory_period;
  regs.validate(format);
  return regs;
}

std::string_view register_name(RegisterId id) noexcept {
  switch (id) {
  case RegisterId::DecayRate:
    return "decay_rate";
  case RegisterId::GrowthRate:
    return "growth_rate";
  case RegisterId::VThreshold:
    return "v_threshold";
  case RegisterId::ResetMode:
    return "reset_mode";
  case RegisterId::VReset:
    return "v_reset";
  case RegisterId::RefractoryPeriod:
    return "refractory_period";
  }
  return "decay_rate";
}

RegisterId parse_register_name(std::string_view name) {
  for (RegisterId id : {RegisterId::DecayRate, RegisterId::GrowthRate, RegisterId::VThreshold,
                        RegisterId::ResetMode, RegisterId::VReset, RegisterId::RefractoryPeriod}) {
    if (register_name(id) == name)
      return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown register '" + std::string(name) + "'");
}

void apply_register(RegisterSettings &settings, RegisterId id, double value) {
  auto as_count = [&](double lo, double hi) {
    if (!(value >= lo && value <= hi) || std::floor(value) != value) {
      throw Error(ErrorCode::OutOfRange, std::string(register_name(id)) +
                                             " needs an integer in [" + std::to_string(lo) +
                                             ", " + std::to_string(hi) + "]");
    }
    return static_cast<std::uint32_t>(value);
  };
  if (!std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "register value must be finite");
  switch (id) {
  case RegisterId::DecayRate:
    settings.decay_rate = value;
    break;
  case RegisterId::GrowthRate:
    settings.growth_rate = value;
    break;
  case RegisterId::VThreshold:
    settings.v_threshold = value;
    break;
  case RegisterId::ResetMode:
    settings.reset_mode = static_cast<ResetMode>(as_count(0, 3));
    break;
  case RegisterId::VReset:
    settings.v_reset = value;
    break;
  case RegisterId::RefractoryPeriod:
    settings.refractory_period = as_count(0, 4294967295.0);
    break;
  }
}

void CoreConfig::validate() const {
  if (layers.empty())
    throw Error(ErrorCode::InvalidArgument, "core needs at least one layer");
  if (input_width == 0)
    throw Error(ErrorCode::InvalidArgument, "input width must be >= 1");
  if (layer_latency > 1)
    throw Error(ErrorCode::InvalidArgument, "layer_latency must be 0 or 1");
  std::uint32_t pre = input_width;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const LayerConfig &layer = layers[k];
    const std::string where = "layer " + std::to_string(k) + ": ";
    if (layer.size == 0)
      throw Error(ErrorCode::InvalidArgument, where + "size must be >= 1");
    if (layer.connectivity.kind == Connectivity::Kind::OneToOne && layer.size != pre) {
      throw Error(ErrorCode::InvalidArgument,
                  where + "one_to_one needs " + std::to_string(pre) + " neurons, got " +
                      std::to_string(layer.size));
    }
    try {
      layer.registers.quantize(format);
    } catch (const Error &e) {
      throw Error(e.code(), where + e.what());
    }
    pre = layer.size;
  }
}

std::vector<std::uint32_t> CoreConfig::population_sizes() const {
  std::vector<std::uint32_t> sizes{input_width};
  for (const auto &l : layers)
    sizes.push_back(l.size);
  return sizes;
}

std::size_t CoreConfig::neuron_count() const {
  std::size_t total = input_width;
  for (const auto &l : layers)
    total += l.size;
  return total;
}

std::size_t CoreConfig::synapse_count() const {
  std::size_t total = 0;
  std::uint32_t pre = input_width;
  for (const auto &l : layers) {
    total += build_mask(l.connectivity, pre, l.size).ones();
    pre = l.size;
  }
  return total;
}

Layer::Layer(const CoreConfig &config, std::size_t index)
    : format_(config.format), policy_(config.policy),
      registers_(config.layers.at(index).registers.quantize(config.format)),
      weights_(config.format,
               build_mask(config.layers[index].connectivity,
                          index == 0 ? config.input_width : config.layers[index - 1].size,
                          config.layers[index].size)),
      states_(config.layers[index].size, NeuronState::resting(config.format)) {}

void Layer::set_registers(const NeuronRegisters &regs) {
  regs.validate(format_);
  registers_ = regs;
}

void Layer::step(std::span<const std::uint8_t> pre, std::span<std::uint8_t> out,
                 WorkerPool *pool) {
  if (pre.size() != pre_size() || out.size() != size())
    throw Error(ErrorCode::InvalidArgument, "layer step: vector size mismatch");
  auto body = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const auto column = weights_.presynaptic_weights(static_cast<std::uint32_t>(j));
      out[j] = step_neuron(states_[j], registers_, pre, column, policy_) ? 1 : 0;
    }
  };
  if (pool != nullptr && pool->size() > 1)
    pool->parallel_for(states_.size(), body);
  else
    body(0, states_.size());
}

void Layer::reset() {
  std::fill(states_.begin(), states_.end(), NeuronState::resting(format_));
}

Core::Core(CoreConfig config) : config_(std::move(config)) {
  config_.validate();
  layers_.reserve(config_.layers.size());
  for (std::size_t k = 0; k < config_.layers.size(); ++k)
    layers_.emplace_back(config_, k);
  for (std::uint32_t size : config_.population_sizes())
    outputs_.emplace_back(size, 0);
  previous_ = outputs_;
  for (const auto &l : config_.layers)
    staged_.push_back(l.registers);
  dirty_.assign(layers_.size(), 0);
}

Core::~Core() = default;
Core::Core(Core &&) noexcept = default;
Core &Core::operator=(Core &&) noexcept = default;

void Core::write_weight(const SynapseAddress &address, const QWord &magnitude, int polarity) {
  if (address.layer >= layers_.size()) {
    throw Error(ErrorCode::OutOfRange,
                "weight layer " + std::to_string(address.layer) + " does not exist");
  }
  layers_[address.layer].weights().write_weight(address.pre, address.post, magnitude, polarity);
}

void Core::load_weights(std::span<const WeightRecord> records) {
  for (const WeightRecord &r : records) {
    const auto &a = r.address;
    const std::string where = r.line ? "line " + std::to_string(r.line) + ": " : std::string{};
    try {
      if (a.layer >= layers_.size())
        throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(a.layer) + " does not exist");
      const QWord value = r.literal && r.literal->format() == config_.format
                              ? *r.literal
                              : QWord::encode_checked(r.value, config_.format);
      layers_[a.layer].weights().write(a.pre, a.post, value);
    } catch (const Error &e) {
      throw Error(e.code(), where + "weight (" + std::to_string(a.layer) + ", " +
                                std::to_string(a.pre) + ", " + std::to_string(a.post) +
                                "): " + e.what());
    }
  }
}

void Core::write_register(std::size_t layer, RegisterId id, double value) {
  if (layer >= layers_.size())
    throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(layer) + " does not exist");
  RegisterSettings next = staged_[layer];
  apply_register(next, id, value);
  next.quantize(config_.format);
  staged_[layer] = next;
  dirty_[layer] = 1;
}

void Core::apply_pending_registers() {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (!dirty_[k])
      continue;
    layers_[k].set_registers(staged_[k].quantize(config_.format));
    config_.layers[k].registers = staged_[k];
    dirty_[k] = 0;
  }
}

const std::vector<std::vector<std::uint8_t>> &
Core::step_cycle(std::span<const std::uint8_t> input) {
  if (input.size() != config_.input_width) {
    throw Error(ErrorCode::InvalidArgument, "input vector has " + std::to_string(input.size()) +
                                                " entries, core expects " +
                                                std::to_string(config_.input_width));
  }
  apply_pending_registers();
  if (config_.layer_latency == 1)
    previous_.swap(outputs_);
  std::transform(input.begin(), input.end(), outputs_[0].begin(),
                 [](std::uint8_t s) -> std::uint8_t { return s ? 1 : 0; });
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    // Layer 0 always reads the input of this cycle.
    const auto &pre = (config_.layer_latency == 1 && k > 0) ? previous_[k] : outputs_[k];
    layers_[k].step(pre, outputs_[k + 1], pool_.get());
  }
  ++cycle_;
  return outputs_;
}

SampleResult Core::run_sample(const SpikeStream &stream, std::uint32_t duration,
                              std::span<const WatchedNeuron> watch) {
  SpikeStream bound = stream;
  bind_stream(bound, config_.input_width, duration);
  const auto sizes = config_.population_sizes();
  for (const WatchedNeuron &w : watch) {
    if (w.population == 0 || w.population >= sizes.size() || w.neuron >= sizes[w.population]) {
      throw Error(ErrorCode::OutOfRange, "watched neuron (" + std::to_string(w.population) +
                                             ", " + std::to_string(w.neuron) +
                                             ") is not a LIF neuron of this core");
    }
  }

  SampleResult result;
  result.raster.duration = duration;
  result.raster.population_sizes = sizes;
  result.raster.populations.resize(sizes.size());
  for (const WatchedNeuron &w : watch) {
    result.traces.push_back({w, {}});
    result.traces.back().values.reserve(duration);
  }

  std::vector<std::uint8_t> input(config_.input_width, 0);
  auto next = bound.events.begin();
  for (std::uint32_t t = 0; t < duration; ++t) {
    std::fill(input.begin(), input.end(), 0);
    for (; next != bound.events.end() && next->t == t; ++next)
      input[next->neuron] = 1;
    const auto &out = step_cycle(input);
    for (std::size_t p = 0; p < out.size(); ++p) {
      for (std::uint32_t i = 0; i < out[p].size(); ++i) {
        if (out[p][i])
          result.raster.populations[p].push_back({t, i});
      }
    }
    for (MembraneTrace &tr : result.traces) {
      const auto &state = layers_[tr.neuron.population - 1].states()[tr.neuron.neuron];
      tr.values.push_back(state.vmem.value());
    }
  }
  return result;
}

void Core::reset_state() {
  for (Layer &l : layers_)
    l.reset();
  for (auto &v : outputs_)
    std::fill(v.begin(), v.end(), 0);
  for (auto &v : previous_)
    std::fill(v.begin(), v.end(), 0);
  cycle_ = 0;
}

void Core::set_threads(unsigned threads) {
  if (threads <= 1)
    pool_.reset();
  else
    pool_ = std::make_unique<WorkerPool>(threads);
}

unsigned Core::threads() const noexcept { return pool_ ? pool_->size() : 1; }

void bind_stream(SpikeStream &stream, std::uint32_t width, std::uint32_t duration) {
  for (const SpikeEvent &e : stream.events) {
    if (e.neuron >= width) {
      throw Error(ErrorCode::OutOfRange, "sample " + std::to_string(stream.sample) +
                                             ": neuron " + std::to_string(e.neuron) +
                                             " >= input width " + std::to_string(width));
    }
    if (e.t >= duration) {
      throw Error(ErrorCode::OutOfRange, "sample " + std::to_string(stream.sample) +
                                             ": event at cycle " + std::to_string(e.t) +
                                             " >= duration " + std::to_string(duration));
    }
  }
  std::stable_sort(stream.events.begin(), stream.events.end(),
                   [](const SpikeEvent &a, const SpikeEvent &b) { return a.t < b.t; });
  stream.width = width;
}

} // namespace qsenc
