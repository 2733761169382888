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
#include <charconv>
#include <tuple>
#include <fstream>
#include <sstream>

#include "qsenc/error.hpp"
#include "qsenc/io.hpp"

namespace qsenc {

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw Error(ErrorCode::Io, "read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc())
    throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf, end);
}

std::string output_header(std::string_view kind, const CoreConfig &config) {
  std::string h = "# qsenc-";
  h += kind;
  h += " v" + std::to_string(kFileFormatVersion) + " config=" + config_hash_hex(config) + "\n";
  return h;
}

std::string format_raster(std::span<const SpikeRaster> rasters,
                          std::span<const std::uint32_t> sample_ids) {
  if (rasters.size() != sample_ids.size())
    throw Error(ErrorCode::InvalidArgument, "raster and sample id counts differ");
  std::ostringstream os;
  os << "# sample t population neuron\n";
  for (std::size_t s = 0; s < rasters.size(); ++s) {
    // merge populations by cycle so the listing reads in time order
    std::vector<std::tuple<std::uint32_t, std::size_t, std::uint32_t>> rows;
    const auto &pops = rasters[s].populations;
    for (std::size_t p = 0; p < pops.size(); ++p)
      for (const SpikeEvent &e : pops[p])
        rows.emplace_back(e.t, p, e.neuron);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto &a, const auto &b) { return std::get<0>(a) < std::get<0>(b); });
    for (const auto &[t, p, n] : rows)
      os << sample_ids[s] << ' ' << t << ' ' << p << ' ' << n << '\n';
  }
  return os.str();
}

std::string format_traces(std::span<const SampleResult> results,
                          std::span<const std::uint32_t> sample_ids) {
  if (results.size() != sample_ids.size())
    throw Error(ErrorCode::InvalidArgument, "result and sample id counts differ");
  std::ostringstream os;
  os << "sample,cycle,population,neuron,vmem\n";
  for (std::size_t s = 0; s < results.size(); ++s) {
    for (const MembraneTrace &tr : results[s].traces) {
      for (std::size_t t = 0; t < tr.values.size(); ++t) {
        os << sample_ids[s] << ',' << t << ',' << tr.neuron.population << ',' << tr.neuron.neuron
           << ',' << format_double(tr.values[t]) << '\n';
      }
    }
  }
  return os.str();
}

std::string format_throughput(const PipelineResult &result, double f_hz, double exposure_s,
                              double realtime, double sequential) {
  const auto &sch = result.schedule;
  std::ostringstream os;
  os << "samples=" << result.rasters.size() << '\n'
     << "stages=" << sch.stages << '\n'
     << "exposure_cycles=" << sch.d << '\n'
     << "reset_cycles=" << sch.s << '\n'
     << "clock_hz=" << format_double(f_hz) << '\n'
     << "exposure_s=" << format_double(exposure_s) << '\n'
     << "makespan_cycles=" << result.makespan << '\n'
     << "steady_state_samples_per_cycle=" << format_double(result.steady_state_throughput) << '\n'
     << "analytic_samples_per_cycle=" << format_double(sch.analytic_throughput()) << '\n'
     << "overall_samples_per_cycle=" << format_double(result.overall_throughput) << '\n'
     << "realtime_fps=" << format_double(realtime) << '\n'
     << "sequential_fps=" << format_double(sequential) << '\n';
  return os.str();
}

} // namespace qsenc
