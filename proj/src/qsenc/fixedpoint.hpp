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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qsenc {

__extension__ typedef __int128 int128_t;

enum class Overflow { Wrap, Saturate };

std::string_view overflow_name(Overflow policy) noexcept;
Overflow parse_overflow(std::string_view text);

/// Signed two's-complement Qn.q format: n integer bits (sign included) and
/// q fraction bits. Value = raw * 2^-q.
class QFormat {
public:
  QFormat() = default;

  /// Throws Error(InvalidArgument) unless n >= 2, q >= 0 and n + q <= 64.
  QFormat(int n, int q);

  /// Accepts "Q5.3" (case-insensitive leading Q).
  static QFormat parse(std::string_view text);

  int n() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  int width() const noexcept { return n_ + q_; }

  std::int64_t raw_min() const noexcept;
  std::int64_t raw_max() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;
  double quantum() const noexcept;

  /// Reduces an exact wide result into this format according to policy.
  std::int64_t fit(int128_t wide, Overflow policy) const noexcept;
  bool contains(int128_t raw) const noexcept;

  std::string name() const;

  friend bool operator==(const QFormat &, const QFormat &) = default;

private:
  int n_ = 5;
  int q_ = 3;
};

/// A value in a QFormat. The payload is kept sign-extended in 64 bits; only
/// the low width() bits carry information.
class QWord {
public:
  QWord() = default;

  static QWord zero(QFormat format) { return QWord(format, 0); }

  /// Throws Error(OutOfRange) if raw does not fit the format.
  static QWord from_raw(QFormat format, std::int64_t raw);

  /// Quantizes by truncation toward negative infinity, then applies policy.
  /// Throws Error(InvalidArgument) for NaN or infinity.
  static QWord encode(double value, QFormat format, Overflow policy = Overflow::Wrap);

  /// Encodes value, rejecting anything outside the format range instead of
  /// wrapping or clamping. Truncation of fraction bits is still allowed.
  static QWord encode_checked(double value, QFormat format);

  /// "Qn.q:0xHH" where HH is the width()-bit two's-complement pattern.
  static QWord parse_literal(std::string_view text);
  std::string to_literal() const;

  QFormat format() const noexcept { return format_; }
  std::int64_t raw() const noexcept { return raw_; }
  double value() const noexcept;

  friend bool operator==(const QWord &, const QWord &) = default;

private:
  QWord(QFormat format, std::int64_t raw) : format_(format), raw_(raw) {}

  QFormat format_;
  std::int64_t raw_ = 0;
};

/// Integer addition on the payloads.
QWord add(const QWord &a, const QWord &b, Overflow policy = Overflow::Wrap);
QWord sub(const QWord &a, const QWord &b, Overflow policy = Overflow::Wrap);

/// Full 2(n+q)-bit product; the q low bits are discarded (floor) and the
/// result is reduced to n+q bits per policy.
QWord mul(const QWord &a, const QWord &b, Overflow policy = Overflow::Wrap);

/// Value comparison. Both operands must share a format.
std::strong_ordering compare(const QWord &a, const QWord &b);

} // namespace qsenc
