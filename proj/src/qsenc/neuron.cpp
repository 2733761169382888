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

#include "qsenc/neuron.hpp"

#include <string>

#include "qsenc/error.hpp"

namespace qsenc {

std::string_view reset_mode_name(ResetMode mode) noexcept {
  switch (mode) {
  case ResetMode::ToConstant:
    return "to_constant";
  case ResetMode::ToZero:
    return "to_zero";
  case ResetMode::BySubtraction:
    return "by_subtraction";
  case ResetMode::Default:
    return "default";
  }
  return "default";
}

ResetMode parse_reset_mode(std::string_view text) {
  if (text == "to_constant")
    return ResetMode::ToConstant;
  if (text == "to_zero")
    return ResetMode::ToZero;
  if (text == "by_subtraction")
    return ResetMode::BySubtraction;
  if (text == "default")
    return ResetMode::Default;
  throw Error(ErrorCode::InvalidArgument, "unknown reset mode '" + std::string(text) +
                                              "' (to_constant|to_zero|by_subtraction|default)");
}

void NeuronRegisters::validate(QFormat format) const {
  for (const QWord *w : {&decay_rate, &growth_rate, &v_threshold, &v_reset}) {
    if (w->format() != format) {
      throw Error(ErrorCode::FormatMismatch,
                  "register in " + w->format().name() + ", core uses " + format.name());
    }
  }
  if (decay_rate.raw() < 0 || decay_rate.value() > 1.0)
    throw Error(ErrorCode::OutOfRange, "decay_rate must lie in [0, 1]");
}

QWord accumulate_activation(NeuronState &state, std::span<const std::uint8_t> spikes,
                            std::span<const QWord> weights, Overflow policy) {
  if (spikes.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "spike vector has " + std::to_string(spikes.size()) + " entries, weights " +
                    std::to_string(weights.size()));
  }
  QWord act = QWord::zero(state.vmem.format());
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (spikes[i])
      act = add(act, weights[i], policy);
  }
  state.act = act;
  return act;
}

QWord membrane_update(NeuronState &state, const NeuronRegisters &regs, Overflow policy) {
  const QWord leak = mul(regs.decay_rate, state.vmem, policy);
  const QWord drive = mul(regs.growth_rate, state.act, policy);
  state.vmem = add(sub(state.vmem, leak, policy), drive, policy);
  return state.vmem;
}

bool fire_and_reset(NeuronState &state, const NeuronRegisters &regs, Overflow policy) {
  if (state.refractory_counter > 0 || compare(state.vmem, regs.v_threshold) < 0)
    return false;
  switch (regs.reset_mode) {
  case ResetMode::ToConstant:
    state.vmem = regs.v_reset;
    break;
  case ResetMode::ToZero:
    state.vmem = QWord::zero(state.vmem.format());
    break;
  case ResetMode::BySubtraction:
    state.vmem = sub(state.vmem, regs.v_threshold, policy);
    break;
  case ResetMode::Default:
    state.vmem = sub(state.vmem, mul(regs.decay_rate, state.vmem, policy), policy);
    break;
  }
  state.refractory_counter = regs.refractory_period;
  return true;
}

void refractory_tick(NeuronState &state) {
  if (state.refractory_counter > 0)
    --state.refractory_counter;
}

bool step_neuron(NeuronState &state, const NeuronRegisters &regs,
                 std::span<const std::uint8_t> spikes, std::span<const QWord> weights,
                 Overflow policy) {
  accumulate_activation(state, spikes, weights, policy);
  if (state.refractory_counter > 0) {
    refractory_tick(state);
    return false;
  }
  membrane_update(state, regs, policy);
  return fire_and_reset(state, regs, policy);
}

} // namespace qsenc
