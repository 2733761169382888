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
#include <string>
#include <vector>

#include "qsenc/spikes.hpp"

namespace qsenc {

struct CountDecode {
  std::vector<std::size_t> counts; ///< spikes per output neuron
  std::size_t winner = 0;          ///< argmax, lowest index on ties
  bool ambiguous = false;          ///< more than one neuron shares the max
};

/// Spike-counter decode of one population (the output layer by default).
CountDecode decode_by_count(const SpikeRaster &raster);
CountDecode decode_by_count(const SpikeRaster &raster, std::size_t population);

/// (n_synapse + n_ops * n_neurons) * f
double fixed_point_ops(double n_synapse, double n_ops, double n_neurons, double f_hz);

/// Total LIF spikes over LIF neuron count; the input population is excluded.
double avg_spikes_per_neuron(const SpikeRaster &raster);
/// Mean of the per-sample values.
double avg_spikes_per_neuron(std::span<const SpikeRaster> rasters);

class ConfusionMatrix {
public:
  explicit ConfusionMatrix(std::size_t classes);

  void add(std::size_t label, std::size_t predicted);
  std::size_t at(std::size_t label, std::size_t predicted) const;
  std::size_t classes() const noexcept { return classes_; }
  double accuracy() const;

  /// Header row "label,p0,p1,...", then one row per true label.
  std::string to_csv() const;

private:
  std::size_t classes_;
  std::vector<std::size_t> counts_;
};

} // namespace qsenc
