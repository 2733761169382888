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

#include "qsenc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsenc/error.hpp"

namespace qsenc {

ReferenceCore::ReferenceCore(CoreConfig config, std::span<const WeightRecord> weights)
    : config_(std::move(config)) {
  if (config_.layers.empty())
    throw Error(ErrorCode::InvalidArgument, "core needs at least one layer");
  std::uint32_t pre = config_.input_width;
  for (const LayerConfig &layer : config_.layers) {
    LayerData data;
    data.regs = layer.registers;
    data.mask = build_mask(layer.connectivity, pre, layer.size);
    data.weights.assign(static_cast<std::size_t>(pre) * layer.size, 0.0);
    data.states.assign(layer.size, State{});
    layers_.push_back(std::move(data));
    pre = layer.size;
  }
  for (const WeightRecord &r : weights) {
    const auto &a = r.address;
    if (a.layer >= layers_.size())
      throw Error(ErrorCode::OutOfRange, "layer " + std::to_string(a.layer) + " does not exist");
    LayerData &l = layers_[a.layer];
    if (a.pre >= l.mask.rows() || a.post >= l.mask.cols())
      throw Error(ErrorCode::OutOfRange, "synapse outside layer " + std::to_string(a.layer));
    if (!l.mask.connected(a.pre, a.post))
      throw Error(ErrorCode::MaskedSynapse, "synapse (" + std::to_string(a.pre) + ", " +
                                                std::to_string(a.post) + ") is not connected");
    const double v = r.literal ? r.literal->value() : r.value;
    l.weights[static_cast<std::size_t>(a.post) * l.mask.rows() + a.pre] = v;
  }
  for (std::uint32_t size : config_.population_sizes())
    outputs_.emplace_back(size, 0);
  previous_ = outputs_;
}

bool ReferenceCore::step_neuron(State &st, const RegisterSettings &regs,
                                std::span<const std::uint8_t> pre, const double *column) const {
  double act = 0.0;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (pre[i])
      act += column[i];
  }
  st.act = act;
  if (st.refractory_counter > 0) {
    --st.refractory_counter;
    return false;
  }
  const double leak = regs.decay_rate * st.vmem;
  const double drive = regs.growth_rate * act;
  st.vmem = (st.vmem - leak) + drive;
  if (st.vmem < regs.v_threshold)
    return false;
  switch (regs.reset_mode) {
  case ResetMode::ToConstant:
    st.vmem = regs.v_reset;
    break;
  case ResetMode::ToZero:
    st.vmem = 0.0;
    break;
  case ResetMode::BySubtraction:
    st.vmem -= regs.v_threshold;
    break;
  case ResetMode::Default:
    st.vmem -= regs.decay_rate * st.vmem;
    break;
  }
  st.refractory_counter = regs.refractory_period;
  return true;
}

const std::vector<std::vector<std::uint8_t>> &
ReferenceCore::step_cycle(std::span<const std::uint8_t> input) {
  if (input.size() != config_.input_width)
    throw Error(ErrorCode::InvalidArgument, "input vector size mismatch");
  if (config_.layer_latency == 1)
    previous_.swap(outputs_);
  std::transform(input.begin(), input.end(), outputs_[0].begin(),
                 [](std::uint8_t s) -> std::uint8_t { return s ? 1 : 0; });
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto &pre = (config_.layer_latency == 1 && k > 0) ? previous_[k] : outputs_[k];
    LayerData &l = layers_[k];
    const std::size_t rows = l.mask.rows();
    for (std::size_t j = 0; j < l.states.size(); ++j)
      outputs_[k + 1][j] = step_neuron(l.states[j], l.regs, pre, &l.weights[j * rows]) ? 1 : 0;
  }
  return outputs_;
}

SampleResult ReferenceCore::run_sample(const SpikeStream &stream, std::uint32_t duration,
                                       std::span<const WatchedNeuron> watch) {
  SpikeStream bound = stream;
  bind_stream(bound, config_.input_width, duration);
  const auto sizes = config_.population_sizes();
  for (const WatchedNeuron &w : watch) {
    if (w.population == 0 || w.population >= sizes.size() || w.neuron >= sizes[w.population])
      throw Error(ErrorCode::OutOfRange, "watched neuron is not a LIF neuron of this core");
  }
  SampleResult result;
  result.raster.duration = duration;
  result.raster.population_sizes = sizes;
  result.raster.populations.resize(sizes.size());
  for (const WatchedNeuron &w : watch)
    result.traces.push_back({w, {}});

  std::vector<std::uint8_t> input(config_.input_width, 0);
  auto next = bound.events.begin();
  for (std::uint32_t t = 0; t < duration; ++t) {
    std::fill(input.begin(), input.end(), 0);
    for (; next != bound.events.end() && next->t == t; ++next)
      input[next->neuron] = 1;
    const auto &out = step_cycle(input);
    for (std::size_t p = 0; p < out.size(); ++p)
      for (std::uint32_t i = 0; i < out[p].size(); ++i)
        if (out[p][i])
          result.raster.populations[p].push_back({t, i});
    for (MembraneTrace &tr : result.traces)
      tr.values.push_back(vmem(tr.neuron.population - 1, tr.neuron.neuron));
  }
  return result;
}

void ReferenceCore::reset_state() {
  for (LayerData &l : layers_)
    std::fill(l.states.begin(), l.states.end(), State{});
  for (auto &v : outputs_)
    std::fill(v.begin(), v.end(), 0);
  for (auto &v : previous_)
    std::fill(v.begin(), v.end(), 0);
}

double ReferenceCore::vmem(std::size_t layer, std::uint32_t neuron) const {
  return layers_.at(layer).states.at(neuron).vmem;
}

double ReferenceCore::weight(std::size_t layer, std::uint32_t pre, std::uint32_t post) const {
  const LayerData &l = layers_.at(layer);
  return l.weights.at(static_cast<std::size_t>(post) * l.mask.rows() + pre);
}

SampleResult run_reference(const CoreConfig &config, std::span<const WeightRecord> weights,
                           const SpikeStream &stream, std::uint32_t duration,
                           std::span<const WatchedNeuron> watch) {
  ReferenceCore core(config, weights);
  return core.run_sample(stream, duration, watch);
}

double rmse(const TracePair &pair) { return rmse(std::span<const TracePair>(&pair, 1)); }

double rmse(std::span<const TracePair> pairs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const TracePair &p : pairs) {
    if (p.quantized.size() != p.reference.size())
      throw Error(ErrorCode::InvalidArgument, "trace lengths differ");
    for (std::size_t t = 0; t < p.quantized.size(); ++t) {
      const double d = p.quantized[t] - p.reference[t];
      sum += d * d;
    }
    count += p.quantized.size();
  }
  if (count == 0)
    throw Error(ErrorCode::InvalidArgument, "rmse of an empty trace");
  return std::sqrt(sum / static_cast<double>(count));
}

std::vector<TracePair> pair_traces(const SampleResult &quantized, const SampleResult &reference) {
  if (quantized.traces.size() != reference.traces.size())
    throw Error(ErrorCode::InvalidArgument, "results watch different neuron sets");
  std::vector<TracePair> pairs;
  for (const MembraneTrace &q : quantized.traces) {
    auto it = std::find_if(reference.traces.begin(), reference.traces.end(),
                           [&](const MembraneTrace &r) { return r.neuron == q.neuron; });
    if (it == reference.traces.end())
      throw Error(ErrorCode::InvalidArgument, "results watch different neuron sets");
    if (it->values.size() != q.values.size())
      throw Error(ErrorCode::InvalidArgument, "trace lengths differ");
    pairs.push_back({q.values, it->values});
  }
  return pairs;
}

} // namespace qsenc
