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

#include <random>
#include <sstream>

#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/io_text.hpp"

namespace qsenc {

std::vector<WeightRecord> parse_weights(std::string_view text, const std::string &source) {
  std::vector<WeightRecord> records;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty())
      continue;
    const auto fields = split_list(line);
    if (fields.size() != 4)
      throw ParseError(source, line_no, "expected 'layer pre post value'");
    WeightRecord r;
    r.line = line_no;
    try {
      r.address.layer = parse_uint32(fields[0]);
      r.address.pre = parse_uint32(fields[1]);
      r.address.post = parse_uint32(fields[2]);
      if (looks_like_literal(fields[3])) {
        r.literal = QWord::parse_literal(fields[3]);
        r.value = r.literal->value();
      } else {
        r.value = parse_real(fields[3]);
      }
    } catch (const Error &e) {
      throw ParseError(source, line_no, e.what());
    }
    records.push_back(r);
  }
  return records;
}

std::vector<WeightRecord> load_weights(const std::filesystem::path &path) {
  return parse_weights(read_text_file(path), path.string());
}

std::string write_weights(std::span<const WeightRecord> records) {
  std::ostringstream os;
  os << "# qsenc-weights v" << kFileFormatVersion << "\n";
  for (const WeightRecord &r : records) {
    os << r.address.layer << ' ' << r.address.pre << ' ' << r.address.post << ' '
       << (r.literal ? r.literal->to_literal() : format_double(r.value)) << '\n';
  }
  return os.str();
}

void validate_weights(const CoreConfig &config, std::span<const WeightRecord> records) {
  std::vector<ConnectivityMask> masks;
  std::uint32_t pre = config.input_width;
  for (const auto &l : config.layers) {
    masks.push_back(build_mask(l.connectivity, pre, l.size));
    pre = l.size;
  }
  for (const WeightRecord &r : records) {
    const auto &a = r.address;
    const std::string where = "line " + std::to_string(r.line) + ": weight (" +
                              std::to_string(a.layer) + ", " + std::to_string(a.pre) + ", " +
                              std::to_string(a.post) + ")";
    if (a.layer >= masks.size())
      throw Error(ErrorCode::OutOfRange, where + ": layer does not exist");
    const ConnectivityMask &m = masks[a.layer];
    if (a.pre >= m.rows() || a.post >= m.cols()) {
      throw Error(ErrorCode::OutOfRange, where + ": outside " + std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()) + " memory");
    }
    if (!m.connected(a.pre, a.post))
      throw Error(ErrorCode::MaskedSynapse, where + ": synapse is masked out");
    if (!(r.literal && r.literal->format() == config.format)) {
      try {
        QWord::encode_checked(r.value, config.format);
      } catch (const Error &e) {
        throw Error(e.code(), where + ": " + e.what());
      }
    }
  }
}

std::vector<WeightRecord> synthetic_weights(const CoreConfig &config, double lo, double hi,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<WeightRecord> out;
  std::uint32_t pre = config.input_width;
  for (std::uint32_t k = 0; k < config.layers.size(); ++k) {
    const auto &l = config.layers[k];
    const ConnectivityMask mask = build_mask(l.connectivity, pre, l.size);
    for (std::uint32_t i = 0; i < pre; ++i) {
      for (std::uint32_t j = 0; j < l.size; ++j) {
        if (mask.connected(i, j))
          out.push_back({{k, i, j}, lo + (hi - lo) * uniform(), std::nullopt, 0});
      }
    }
    pre = l.size;
  }
  return out;
}

} // namespace qsenc
