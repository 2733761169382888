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
#include <string_view>

#include "qsenc/fixedpoint.hpp"

namespace qsenc {

/// Post-spike membrane policy.
enum class ResetMode {
  ToConstant,
  ToZero,
  BySubtraction,
  Default, ///< exponential decay continues, no discrete reset
};

std::string_view reset_mode_name(ResetMode mode) noexcept;
ResetMode parse_reset_mode(std::string_view text);

/// Run-time programmable dynamics registers of one layer's decoder.
struct NeuronRegisters {
  QWord decay_rate;  ///< dt / tau
  QWord growth_rate; ///< R * dt / tau, in register units
  QWord v_threshold;
  ResetMode reset_mode = ResetMode::BySubtraction;
  QWord v_reset;
  std::uint32_t refractory_period = 0;

  /// Throws unless every QWord is in `format` and decay_rate is in [0, 1].
  void validate(QFormat format) const;
};

struct NeuronState {
  QWord vmem;
  QWord act;
  std::uint32_t refractory_counter = 0;

  static NeuronState resting(QFormat format) {
    return {QWord::zero(format), QWord::zero(format), 0};
  }
};

/// ActGen: act = sum of weights[i] over spiking inputs, added one at a time
/// in index order. Spikes are 0/1 bytes.
QWord accumulate_activation(NeuronState &state, std::span<const std::uint8_t> spikes,
                            std::span<const QWord> weights, Overflow policy);

/// VmemDyn: vmem - decay*vmem + growth*act, two products first, then the
/// subtraction, then the addition.
QWord membrane_update(NeuronState &state, const NeuronRegisters &regs, Overflow policy);

/// SpkGen + VmemSel: fires when vmem >= v_threshold outside refractory,
/// applies the reset and arms the refractory counter.
bool fire_and_reset(NeuronState &state, const NeuronRegisters &regs, Overflow policy);

void refractory_tick(NeuronState &state);

/// One spk_clk cycle: accumulate, then either count down the refractory
/// window or update and fire. Returns the spike bit.
bool step_neuron(NeuronState &state, const NeuronRegisters &regs,
                 std::span<const std::uint8_t> spikes, std::span<const QWord> weights,
                 Overflow policy);

} // namespace qsenc
