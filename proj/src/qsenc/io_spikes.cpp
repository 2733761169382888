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

#include <algorithm>
#include <cstring>
#include <map>
#include <random>
#include <sstream>

#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/io_text.hpp"

namespace qsenc {

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'P', 'K'};

void put_u32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class ByteReader {
public:
  ByteReader(std::string_view bytes, const std::string &source) : bytes_(bytes), source_(source) {}

  std::uint32_t u32() {
    if (pos_ + 4 > bytes_.size())
      throw Error(ErrorCode::Parse, source_ + ": truncated binary spike file at byte " +
                                        std::to_string(pos_));
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::string_view take(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw Error(ErrorCode::Parse, source_ + ": truncated binary spike file");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

private:
  std::string_view bytes_;
  const std::string &source_;
  std::size_t pos_ = 0;
};

bool sort_events(SpikeStream &s) {
  const auto by_time = [](const SpikeEvent &a, const SpikeEvent &b) { return a.t < b.t; };
  if (std::is_sorted(s.events.begin(), s.events.end(), by_time))
    return false;
  std::stable_sort(s.events.begin(), s.events.end(), by_time);
  return true;
}

} // namespace

SpikeFile parse_spikes(std::string_view text, const std::string &source) {
  std::map<std::uint32_t, SpikeStream> by_sample;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty())
      continue;
    const auto fields = split_list(line);
    if (fields.size() != 3)
      throw ParseError(source, line_no, "expected 'sample t neuron'");
    try {
      const std::uint32_t sample = parse_uint32(fields[0]);
      SpikeStream &s = by_sample[sample];
      s.sample = sample;
      s.events.push_back({parse_uint32(fields[1]), parse_uint32(fields[2])});
    } catch (const Error &e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  SpikeFile file;
  for (auto &[id, stream] : by_sample) {
    if (sort_events(stream))
      file.warnings.push_back(source + ": sample " + std::to_string(id) +
                              " events were not time-ordered; sorted");
    file.streams.push_back(std::move(stream));
  }
  return file;
}

SpikeFile parse_spikes_binary(std::string_view bytes, const std::string &source) {
  ByteReader in(bytes, source);
  if (std::memcmp(in.take(4).data(), kMagic, 4) != 0)
    throw Error(ErrorCode::Parse, source + ": not a QSPK spike file");
  const std::uint32_t version = in.u32();
  if (version != static_cast<std::uint32_t>(kFileFormatVersion))
    throw Error(ErrorCode::Parse, source + ": unsupported QSPK version " + std::to_string(version));
  const std::uint32_t count = in.u32();
  SpikeFile file;
  for (std::uint32_t s = 0; s < count; ++s) {
    SpikeStream stream;
    stream.sample = in.u32();
    const std::uint32_t events = in.u32();
    for (std::uint32_t e = 0; e < events; ++e) {
      const std::uint32_t t = in.u32();
      stream.events.push_back({t, in.u32()});
    }
    if (sort_events(stream))
      file.warnings.push_back(source + ": sample " + std::to_string(stream.sample) +
                              " events were not time-ordered; sorted");
    file.streams.push_back(std::move(stream));
  }
  if (!in.done())
    throw Error(ErrorCode::Parse, source + ": trailing bytes after last sample");
  std::stable_sort(file.streams.begin(), file.streams.end(),
                   [](const SpikeStream &a, const SpikeStream &b) { return a.sample < b.sample; });
  for (std::size_t i = 1; i < file.streams.size(); ++i) {
    if (file.streams[i].sample == file.streams[i - 1].sample)
      throw Error(ErrorCode::Parse, source + ": duplicate sample id " +
                                        std::to_string(file.streams[i].sample));
  }
  return file;
}

SpikeFile load_spikes(const std::filesystem::path &path, bool binary) {
  const std::string bytes = read_text_file(path);
  return binary ? parse_spikes_binary(bytes, path.string()) : parse_spikes(bytes, path.string());
}

std::string write_spikes(std::span<const SpikeStream> streams) {
  std::ostringstream os;
  os << "# qsenc-spikes v" << kFileFormatVersion << "\n";
  for (const SpikeStream &s : streams)
    for (const SpikeEvent &e : s.events)
      os << s.sample << ' ' << e.t << ' ' << e.neuron << '\n';
  return os.str();
}

std::string write_spikes_binary(std::span<const SpikeStream> streams) {
  std::string out(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(kFileFormatVersion));
  put_u32(out, static_cast<std::uint32_t>(streams.size()));
  for (const SpikeStream &s : streams) {
    put_u32(out, s.sample);
    put_u32(out, static_cast<std::uint32_t>(s.events.size()));
    for (const SpikeEvent &e : s.events) {
      put_u32(out, e.t);
      put_u32(out, e.neuron);
    }
  }
  return out;
}

std::vector<SpikeStream> synthetic_streams(std::uint32_t samples, std::uint32_t width,
                                           std::uint32_t duration, double rate,
                                           std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "spike rate must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<SpikeStream> out(samples);
  for (std::uint32_t s = 0; s < samples; ++s) {
    out[s].sample = s;
    for (std::uint32_t t = 0; t < duration; ++t)
      for (std::uint32_t i = 0; i < width; ++i)
        if (uniform() < rate)
          out[s].events.push_back({t, i});
  }
  return out;
}

} // namespace qsenc
