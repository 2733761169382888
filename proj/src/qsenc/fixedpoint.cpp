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

#include "qsenc/fixedpoint.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "qsenc/error.hpp"

namespace qsenc {

namespace {

constexpr double kTwo64 = 18446744073709551616.0;

std::uint64_t low_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void require_same_format(const QWord &a, const QWord &b, const char *op) {
  if (a.format() != b.format()) {
    throw Error(ErrorCode::FormatMismatch, std::string(op) + ": operands in " +
                                               a.format().name() + " and " +
                                               b.format().name());
  }
}

} // namespace

std::string_view overflow_name(Overflow policy) noexcept {
  return policy == Overflow::Wrap ? "wrap" : "saturate";
}

Overflow parse_overflow(std::string_view text) {
  if (text == "wrap")
    return Overflow::Wrap;
  if (text == "saturate")
    return Overflow::Saturate;
  throw Error(ErrorCode::InvalidArgument,
              "unknown overflow policy '" + std::string(text) + "'");
}

QFormat::QFormat(int n, int q) : n_(n), q_(q) {
  if (n < 2 || q < 0 || n + q > 64) {
    throw Error(ErrorCode::InvalidArgument,
                "invalid format Q" + std::to_string(n) + "." + std::to_string(q) +
                    " (need n >= 2, q >= 0, n + q <= 64)");
  }
}

QFormat QFormat::parse(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::InvalidArgument,
                 "malformed format '" + std::string(text) + "'");
  };
  if (text.empty() || (text.front() != 'Q' && text.front() != 'q'))
    throw bad();
  std::string_view body = text.substr(1);
  auto dot = body.find('.');
  if (dot == std::string_view::npos)
    throw bad();
  int n = 0;
  int q = 0;
  auto [p1, e1] = std::from_chars(body.data(), body.data() + dot, n);
  auto [p2, e2] =
      std::from_chars(body.data() + dot + 1, body.data() + body.size(), q);
  if (e1 != std::errc{} || p1 != body.data() + dot || e2 != std::errc{} ||
      p2 != body.data() + body.size())
    throw bad();
  return QFormat(n, q);
}

std::int64_t QFormat::raw_min() const noexcept {
  return static_cast<std::int64_t>(~(low_mask(width() - 1)));
}

std::int64_t QFormat::raw_max() const noexcept {
  return static_cast<std::int64_t>(low_mask(width() - 1));
}

double QFormat::min_value() const noexcept {
  return std::ldexp(static_cast<double>(raw_min()), -q_);
}

double QFormat::max_value() const noexcept {
  return std::ldexp(static_cast<double>(raw_max()), -q_);
}

double QFormat::quantum() const noexcept { return std::ldexp(1.0, -q_); }

bool QFormat::contains(int128_t raw) const noexcept {
  return raw >= raw_min() && raw <= raw_max();
}

std::int64_t QFormat::fit(int128_t wide, Overflow policy) const noexcept {
  if (policy == Overflow::Saturate) {
    if (wide > raw_max())
      return raw_max();
    if (wide < raw_min())
      return raw_min();
    return static_cast<std::int64_t>(wide);
  }
  // Keep the low width() bits and sign-extend from bit width()-1.
  const std::uint64_t mask = low_mask(width());
  std::uint64_t bits = static_cast<std::uint64_t>(wide) & mask;
  if (bits & (std::uint64_t{1} << (width() - 1)))
    bits |= ~mask;
  return static_cast<std::int64_t>(bits);
}

std::string QFormat::name() const {
  return "Q" + std::to_string(n_) + "." + std::to_string(q_);
}

QWord QWord::from_raw(QFormat format, std::int64_t raw) {
  if (!format.contains(raw)) {
    throw Error(ErrorCode::OutOfRange, "raw value " + std::to_string(raw) +
                                           " does not fit " + format.name());
  }
  return QWord(format, raw);
}

QWord QWord::encode(double value, QFormat format, Overflow policy) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "cannot encode non-finite value");
  const double scaled = std::floor(std::ldexp(value, format.q()));
  int128_t wide;
  if (std::fabs(scaled) < 0x1p100) {
    wide = static_cast<int128_t>(scaled);
  } else if (policy == Overflow::Saturate) {
    wide = scaled > 0 ? format.raw_max() : format.raw_min();
  } else {
    // Only the low 64 bits matter after wrapping; fmod is exact here.
    wide = static_cast<int128_t>(std::fmod(scaled, kTwo64));
  }
  return QWord(format, format.fit(wide, policy));
}

QWord QWord::encode_checked(double value, QFormat format) {
  if (!std::isfinite(value) || value < format.min_value() ||
      value >= format.max_value() + format.quantum()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    throw Error(ErrorCode::OutOfRange,
                std::string("value ") + buf + " is outside the range of " + format.name());
  }
  return encode(value, format, Overflow::Saturate);
}

QWord QWord::parse_literal(std::string_view text) {
  auto bad = [&](const std::string &why) {
    return Error(ErrorCode::InvalidArgument,
                 "malformed literal '" + std::string(text) + "': " + why);
  };
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw bad("expected Qn.q:0xHEX");
  QFormat format = QFormat::parse(text.substr(0, colon));
  std::string_view hex = text.substr(colon + 1);
  if (hex.size() < 3 || hex[0] != '0' || (hex[1] != 'x' && hex[1] != 'X'))
    throw bad("payload must start with 0x");
  hex.remove_prefix(2);
  std::uint64_t bits = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), bits, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size())
    throw bad("invalid hex payload");
  if (format.width() < 64 && (bits >> format.width()) != 0)
    throw bad("payload wider than " + std::to_string(format.width()) + " bits");
  return QWord(format, format.fit(static_cast<int128_t>(bits), Overflow::Wrap));
}

std::string QWord::to_literal() const {
  const int digits = (format_.width() + 3) / 4;
  const std::uint64_t bits =
      static_cast<std::uint64_t>(raw_) & low_mask(format_.width());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llX", digits,
                static_cast<unsigned long long>(bits));
  return format_.name() + ":0x" + buf;
}

double QWord::value() const noexcept {
  return std::ldexp(static_cast<double>(raw_), -format_.q());
}

QWord add(const QWord &a, const QWord &b, Overflow policy) {
  require_same_format(a, b, "add");
  const int128_t wide = static_cast<int128_t>(a.raw()) + b.raw();
  return QWord::from_raw(a.format(), a.format().fit(wide, policy));
}

QWord sub(const QWord &a, const QWord &b, Overflow policy) {
  require_same_format(a, b, "sub");
  const int128_t wide = static_cast<int128_t>(a.raw()) - b.raw();
  return QWord::from_raw(a.format(), a.format().fit(wide, policy));
}

QWord mul(const QWord &a, const QWord &b, Overflow policy) {
  require_same_format(a, b, "mul");
  const int128_t product = static_cast<int128_t>(a.raw()) * b.raw();
  // Arithmetic shift floors, which is the bit-discard of the q low bits.
  const int128_t aligned = product >> a.format().q();
  return QWord::from_raw(a.format(), a.format().fit(aligned, policy));
}

std::strong_ordering compare(const QWord &a, const QWord &b) {
  require_same_format(a, b, "compare");
  return a.raw() <=> b.raw();
}

} // namespace qsenc
