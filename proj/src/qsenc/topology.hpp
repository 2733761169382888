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
#include <string_view>
#include <vector>

#include "qsenc/fixedpoint.hpp"

namespace qsenc {

struct Connectivity {
  enum class Kind { AllToAll, OneToOne, Gaussian };

  Kind kind = Kind::AllToAll;
  /// Receptive-field half width; only meaningful for Gaussian.
  std::uint32_t radius = 1;

  static Connectivity all_to_all() { return {Kind::AllToAll, 1}; }
  static Connectivity one_to_one() { return {Kind::OneToOne, 1}; }
  static Connectivity gaussian(std::uint32_t radius = 1) { return {Kind::Gaussian, radius}; }

  friend bool operator==(const Connectivity &, const Connectivity &) = default;
};

std::string_view connectivity_name(Connectivity::Kind kind) noexcept;
Connectivity::Kind parse_connectivity(std::string_view text);

/// Dense M x N bit matrix; entry (i, j) connects pre-synaptic i to post j.
class ConnectivityMask {
public:
  ConnectivityMask() = default;
  ConnectivityMask(std::uint32_t rows, std::uint32_t cols);

  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t cols() const noexcept { return cols_; }
  bool connected(std::uint32_t pre, std::uint32_t post) const;
  void set(std::uint32_t pre, std::uint32_t post, bool value);
  std::size_t ones() const noexcept;

  /// Stacks the rows of `lower` under `upper`, e.g. a skip connection where a
  /// layer reads from two source populations. Column counts must match.
  static ConnectivityMask concat_rows(const ConnectivityMask &upper,
                                     const ConnectivityMask &lower);

  friend bool operator==(const ConnectivityMask &, const ConnectivityMask &) = default;

private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// OneToOne requires rows == cols; Gaussian(r) connects |i - j| <= r.
ConnectivityMask build_mask(Connectivity connectivity, std::uint32_t rows, std::uint32_t cols);

struct SynapseAddress {
  std::uint32_t layer = 0;
  std::uint32_t pre = 0;
  std::uint32_t post = 0;
};

/// Per-layer synaptic memory holding the folded signed weight
/// mask * polarity * magnitude. Columns are contiguous so a neuron reads its
/// pre-synaptic weights as one span.
class WeightMemory {
public:
  WeightMemory(QFormat format, ConnectivityMask mask);

  std::uint32_t rows() const noexcept { return mask_.rows(); }
  std::uint32_t cols() const noexcept { return mask_.cols(); }
  QFormat format() const noexcept { return format_; }
  const ConnectivityMask &mask() const noexcept { return mask_; }

  /// Stores an already-signed weight. Rejects masked-out synapses.
  void write(std::uint32_t pre, std::uint32_t post, const QWord &value);

  /// Stores polarity * magnitude; magnitude must be non-negative and
  /// polarity +1 (excitatory) or -1 (inhibitory).
  void write_weight(std::uint32_t pre, std::uint32_t post, const QWord &magnitude,
                    int polarity);

  const QWord &at(std::uint32_t pre, std::uint32_t post) const;
  std::span<const QWord> presynaptic_weights(std::uint32_t post) const;

  void clear();

private:
  void check_address(std::uint32_t pre, std::uint32_t post) const;

  QFormat format_;
  ConnectivityMask mask_;
  std::vector<QWord> weights_; // column-major
};

} // namespace qsenc
