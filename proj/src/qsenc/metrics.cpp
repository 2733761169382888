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

#include "qsenc/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qsenc/error.hpp"

namespace qsenc {

CountDecode decode_by_count(const SpikeRaster &raster) {
  if (raster.populations.empty())
    throw Error(ErrorCode::InvalidArgument, "empty raster");
  return decode_by_count(raster, raster.populations.size() - 1);
}

CountDecode decode_by_count(const SpikeRaster &raster, std::size_t population) {
  if (population >= raster.populations.size())
    throw Error(ErrorCode::OutOfRange, "population " + std::to_string(population) +
                                           " not in raster");
  CountDecode out;
  out.counts.assign(raster.population_sizes.at(population), 0);
  for (const SpikeEvent &e : raster.populations[population])
    ++out.counts.at(e.neuron);
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.counts.size(); ++i) {
    if (out.counts[i] > out.counts[best])
      best = i;
  }
  out.winner = best;
  out.ambiguous = std::count(out.counts.begin(), out.counts.end(), out.counts[best]) > 1;
  return out;
}

double fixed_point_ops(double n_synapse, double n_ops, double n_neurons, double f_hz) {
  if (n_synapse < 0 || n_ops < 0 || n_neurons < 0 || f_hz < 0)
    throw Error(ErrorCode::InvalidArgument, "fixed_point_ops inputs must be non-negative");
  return (n_synapse + n_ops * n_neurons) * f_hz;
}

double avg_spikes_per_neuron(const SpikeRaster &raster) {
  if (raster.population_sizes.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "raster has no LIF population");
  std::size_t spikes = 0;
  std::size_t neurons = 0;
  for (std::size_t p = 1; p < raster.population_sizes.size(); ++p) {
    spikes += raster.populations.at(p).size();
    neurons += raster.population_sizes[p];
  }
  return static_cast<double>(spikes) / static_cast<double>(neurons);
}

double avg_spikes_per_neuron(std::span<const SpikeRaster> rasters) {
  if (rasters.empty())
    throw Error(ErrorCode::InvalidArgument, "no rasters");
  double total = 0.0;
  for (const auto &r : rasters)
    total += avg_spikes_per_neuron(r);
  return total / static_cast<double>(rasters.size());
}

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), counts_(classes * classes, 0) {
  if (classes == 0)
    throw Error(ErrorCode::InvalidArgument, "confusion matrix needs >= 1 class");
}

void ConfusionMatrix::add(std::size_t label, std::size_t predicted) {
  if (label >= classes_ || predicted >= classes_)
    throw Error(ErrorCode::OutOfRange, "class index out of range");
  ++counts_[label * classes_ + predicted];
}

std::size_t ConfusionMatrix::at(std::size_t label, std::size_t predicted) const {
  return counts_.at(label * classes_ + predicted);
}

double ConfusionMatrix::accuracy() const {
  const std::size_t total = std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
  if (total == 0)
    return 0.0;
  std::size_t hits = 0;
  for (std::size_t c = 0; c < classes_; ++c)
    hits += at(c, c);
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::string ConfusionMatrix::to_csv() const {
  std::ostringstream os;
  os << "label";
  for (std::size_t p = 0; p < classes_; ++p)
    os << ",p" << p;
  os << '\n';
  for (std::size_t l = 0; l < classes_; ++l) {
    os << l;
    for (std::size_t p = 0; p < classes_; ++p)
      os << ',' << at(l, p);
    os << '\n';
  }
  return os.str();
}

} // namespace qsenc
