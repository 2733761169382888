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

#include "qsenc/topology.hpp"

#include <algorithm>
#include <numeric>

#include "qsenc/error.hpp"

namespace qsenc {

std::string_view connectivity_name(Connectivity::Kind kind) noexcept {
  switch (kind) {
  case Connectivity::Kind::AllToAll:
    return "all_to_all";
  case Connectivity::Kind::OneToOne:
    return "one_to_one";
  case Connectivity::Kind::Gaussian:
    return "gaussian";
  }
  return "all_to_all";
}

Connectivity::Kind parse_connectivity(std::string_view text) {
  if (text == "all_to_all")
    return Connectivity::Kind::AllToAll;
  if (text == "one_to_one")
    return Connectivity::Kind::OneToOne;
  if (text == "gaussian")
    return Connectivity::Kind::Gaussian;
  throw Error(ErrorCode::InvalidArgument, "unknown connectivity '" + std::string(text) +
                                              "' (all_to_all|one_to_one|gaussian)");
}

ConnectivityMask::ConnectivityMask(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows) * cols, 0) {}

bool ConnectivityMask::connected(std::uint32_t pre, std::uint32_t post) const {
  if (pre >= rows_ || post >= cols_)
    throw Error(ErrorCode::OutOfRange, "mask index out of range");
  return bits_[static_cast<std::size_t>(pre) * cols_ + post] != 0;
}

void ConnectivityMask::set(std::uint32_t pre, std::uint32_t post, bool value) {
  if (pre >= rows_ || post >= cols_)
    throw Error(ErrorCode::OutOfRange, "mask index out of range");
  bits_[static_cast<std::size_t>(pre) * cols_ + post] = value ? 1 : 0;
}

std::size_t ConnectivityMask::ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

ConnectivityMask ConnectivityMask::concat_rows(const ConnectivityMask &upper,
                                               const ConnectivityMask &lower) {
  if (upper.cols_ != lower.cols_)
    throw Error(ErrorCode::InvalidArgument, "concat_rows: column counts differ");
  ConnectivityMask out(upper.rows_ + lower.rows_, upper.cols_);
  std::copy(upper.bits_.begin(), upper.bits_.end(), out.bits_.begin());
  std::copy(lower.bits_.begin(), lower.bits_.end(),
            out.bits_.begin() + static_cast<std::ptrdiff_t>(upper.bits_.size()));
  return out;
}

ConnectivityMask build_mask(Connectivity connectivity, std::uint32_t rows, std::uint32_t cols) {
  if (rows == 0 || cols == 0)
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be >= 1");
  ConnectivityMask mask(rows, cols);
  switch (connectivity.kind) {
  case Connectivity::Kind::AllToAll:
    for (std::uint32_t i = 0; i < rows; ++i)
      for (std::uint32_t j = 0; j < cols; ++j)
        mask.set(i, j, true);
    break;
  case Connectivity::Kind::OneToOne:
    if (rows != cols) {
      throw Error(ErrorCode::InvalidArgument,
                  "one_to_one needs equal layer sizes, got " + std::to_string(rows) + "x" +
                      std::to_string(cols));
    }
    for (std::uint32_t i = 0; i < rows; ++i)
      mask.set(i, i, true);
    break;
  case Connectivity::Kind::Gaussian: {
    const std::int64_t r = connectivity.radius;
    for (std::uint32_t j = 0; j < cols; ++j) {
      const std::int64_t lo = std::max<std::int64_t>(0, std::int64_t{j} - r);
      const std::int64_t hi = std::min<std::int64_t>(rows - 1, std::int64_t{j} + r);
      for (std::int64_t i = lo; i <= hi; ++i)
        mask.set(static_cast<std::uint32_t>(i), j, true);
    }
    break;
  }
  }
  return mask;
}

WeightMemory::WeightMemory(QFormat format, ConnectivityMask mask)
    : format_(format), mask_(std::move(mask)),
      weights_(static_cast<std::size_t>(mask_.rows()) * mask_.cols(), QWord::zero(format)) {}

void WeightMemory::check_address(std::uint32_t pre, std::uint32_t post) const {
  if (pre >= rows() || post >= cols()) {
    throw Error(ErrorCode::OutOfRange, "synapse (" + std::to_string(pre) + ", " +
                                           std::to_string(post) + ") outside " +
                                           std::to_string(rows()) + "x" +
                                           std::to_string(cols()) + " memory");
  }
}

void WeightMemory::write(std::uint32_t pre, std::uint32_t post, const QWord &value) {
  check_address(pre, post);
  if (!mask_.connected(pre, post)) {
    throw Error(ErrorCode::MaskedSynapse, "synapse (" + std::to_string(pre) + ", " +
                                              std::to_string(post) +
                                              ") is not connected");
  }
  if (value.format() != format_) {
    throw Error(ErrorCode::FormatMismatch,
                "weight in " + value.format().name() + ", memory uses " + format_.name());
  }
  weights_[static_cast<std::size_t>(post) * rows() + pre] = value;
}

void WeightMemory::write_weight(std::uint32_t pre, std::uint32_t post, const QWord &magnitude,
                                int polarity) {
  if (polarity != 1 && polarity != -1)
    throw Error(ErrorCode::InvalidArgument, "polarity must be +1 or -1");
  if (magnitude.raw() < 0)
    throw Error(ErrorCode::InvalidArgument, "weight magnitude must be non-negative");
  const QWord stored =
      polarity > 0 ? magnitude : sub(QWord::zero(magnitude.format()), magnitude);
  write(pre, post, stored);
}

const QWord &WeightMemory::at(std::uint32_t pre, std::uint32_t post) const {
  check_address(pre, post);
  return weights_[static_cast<std::size_t>(post) * rows() + pre];
}

std::span<const QWord> WeightMemory::presynaptic_weights(std::uint32_t post) const {
  if (post >= cols())
    throw Error(ErrorCode::OutOfRange, "post-synaptic index " + std::to_string(post) +
                                           " out of range");
  return std::span<const QWord>(weights_).subspan(static_cast<std::size_t>(post) * rows(),
                                                  rows());
}

void WeightMemory::clear() { std::fill(weights_.begin(), weights_.end(), QWord::zero(format_)); }

} // namespace qsenc
