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

// qsenc command-line front end. Talks to the simulator only through the C
// library interface.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsenc/qsenc.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int exit_code;
  std::string code;
  std::string message;
};

// Input problems are validation failures; file system and internal faults
// are runtime failures.
int exit_code_for(qsenc_status s) {
  return s == QSENC_ERR_IO || s == QSENC_ERR_INTERNAL ? kExitRuntime : kExitValidation;
}

void check(qsenc_status s) {
  if (s != QSENC_OK)
    throw Failure{exit_code_for(s), qsenc_status_name(s), qsenc_last_error()};
}

[[noreturn]] void usage_error(const std::string &message) {
  throw Failure{kExitValidation, "invalid_argument", message};
}

template <class T, void (*Free)(T *)> struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using Config = std::unique_ptr<qsenc_config, Deleter<qsenc_config, qsenc_config_free>>;
using Weights = std::unique_ptr<qsenc_weights, Deleter<qsenc_weights, qsenc_weights_free>>;
using Spikes = std::unique_ptr<qsenc_spikes, Deleter<qsenc_spikes, qsenc_spikes_free>>;
using CoreHandle = std::unique_ptr<qsenc_core, Deleter<qsenc_core, qsenc_core_free>>;
using Run = std::unique_ptr<qsenc_run, Deleter<qsenc_run, qsenc_run_free>>;
using Pipeline = std::unique_ptr<qsenc_pipeline, Deleter<qsenc_pipeline, qsenc_pipeline_free>>;

std::string take_string(char *raw) {
  std::string s(raw ? raw : "");
  qsenc_string_free(raw);
  return s;
}

struct Common {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
};

fs::path output_dir(const Common &common) {
  if (!common.out_dir.empty())
    return common.out_dir;
  if (const char *env = std::getenv("QSENC_OUT_DIR"); env && *env)
    return env;
  return "qsenc-out";
}

void write_file(const fs::path &path, const std::string &text) {
  std::error_code ec;
  if (path.has_parent_path())
    fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out)
    throw Failure{kExitRuntime, "io", "cannot write " + path.string()};
}

Config load_config(const std::string &path) {
  qsenc_config *c = nullptr;
  check(qsenc_config_load(path.c_str(), &c));
  return Config(c);
}

qsenc_config_info info_of(const qsenc_config *c) {
  qsenc_config_info info{};
  check(qsenc_config_info_get(c, &info));
  return info;
}

Weights load_weights(const std::string &path, const qsenc_config *config) {
  qsenc_weights *w = nullptr;
  check(qsenc_weights_load(path.c_str(), &w));
  Weights owned(w);
  check(qsenc_weights_validate(config, owned.get()));
  return owned;
}

Weights synthetic_weights(const qsenc_config *config, double lo, double hi, std::uint64_t seed) {
  qsenc_weights *w = nullptr;
  check(qsenc_weights_synthetic(config, lo, hi, seed, &w));
  return Weights(w);
}

Spikes load_spikes(const std::string &path, bool binary) {
  qsenc_spikes *s = nullptr;
  check(qsenc_spikes_load(path.c_str(), binary ? 1 : 0, &s));
  Spikes owned(s);
  std::size_t warnings = 0;
  check(qsenc_spikes_warning_count(owned.get(), &warnings));
  for (std::size_t i = 0; i < warnings; ++i)
    std::cerr << "qsenc: warning: " << qsenc_spikes_warning(owned.get(), i) << '\n';
  return owned;
}

Spikes synthetic_spikes(std::uint32_t samples, std::uint32_t width, std::uint32_t duration,
                        double rate, std::uint64_t seed) {
  qsenc_spikes *s = nullptr;
  check(qsenc_spikes_synthetic(samples, width, duration, rate, seed, &s));
  return Spikes(s);
}

CoreHandle make_core(const qsenc_config *config, const qsenc_weights *weights, unsigned threads) {
  qsenc_core *c = nullptr;
  check(qsenc_core_create(config, &c));
  CoreHandle owned(c);
  check(qsenc_core_load_weights(owned.get(), weights));
  check(qsenc_core_set_threads(owned.get(), threads));
  return owned;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos)
      out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::uint32_t to_u32(const std::string &s, const std::string &what) {
  char *end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno || v > 0xFFFFFFFFull || s[0] == '-')
    usage_error("bad " + what + " '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

double to_real(const std::string &s, const std::string &what) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(v))
    usage_error("bad " + what + " '" + s + "'");
  return v;
}

// "P:N" watches neuron N of population P; a bare "N" means the output layer.
std::vector<qsenc_watch> parse_watch_list(const std::string &text, const qsenc_config *config) {
  const auto output = static_cast<std::uint32_t>(info_of(config).layer_count);
  std::vector<qsenc_watch> out;
  for (const std::string &item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      out.push_back({output, to_u32(item, "trace neuron")});
    else
      out.push_back({to_u32(item.substr(0, colon), "trace population"),
                     to_u32(item.substr(colon + 1), "trace neuron")});
  }
  return out;
}

std::vector<qsenc_watch> all_lif_neurons(const qsenc_config *config) {
  const auto info = info_of(config);
  std::vector<qsenc_watch> out;
  for (std::uint32_t p = 1; p <= info.layer_count; ++p) {
    std::uint32_t size = 0;
    check(qsenc_config_population_size(config, p, &size));
    for (std::uint32_t n = 0; n < size; ++n)
      out.push_back({p, n});
  }
  return out;
}

std::string fmt(double v, const char *pattern = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string header(const char *kind, const qsenc_config *config) {
  char hash[17] = {};
  check(qsenc_config_hash(config, hash));
  return std::string("# qsenc-") + kind + " v1 config=" + hash + "\n";
}

// Exposure as cycles ("20") or time ("20ms", "0.02s", "500us").
std::uint32_t exposure_cycles(const std::string &text, double f_hz) {
  static const std::pair<const char *, double> units[] = {{"ms", 1e-3}, {"us", 1e-6}, {"s", 1.0}};
  for (const auto &[suffix, scale] : units) {
    const std::string sfx(suffix);
    if (text.size() > sfx.size() && text.compare(text.size() - sfx.size(), sfx.size(), sfx) == 0) {
      const double seconds = to_real(text.substr(0, text.size() - sfx.size()), "exposure") * scale;
      const double cycles = seconds * f_hz;
      const double rounded = std::round(cycles);
      if (rounded < 1 || std::fabs(cycles - rounded) > 1e-9 * std::max(1.0, cycles))
        usage_error("exposure " + text + " is not a whole number of cycles at " + fmt(f_hz, "%g") +
                    " Hz");
      return static_cast<std::uint32_t>(rounded);
    }
  }
  return to_u32(text, "exposure");
}

std::map<std::uint32_t, std::uint32_t> read_labels(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Failure{kExitRuntime, "io", "cannot open " + path};
  std::map<std::uint32_t, std::uint32_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a))
      continue;
    if (!(fields >> b) || (fields >> extra))
      throw Failure{kExitValidation, "parse",
                    path + ":" + std::to_string(line_no) + ": expected 'sample label'"};
    labels[to_u32(a, "sample id")] = to_u32(b, "label");
  }
  return labels;
}

// ---- simulate

struct SimulateArgs {
  std::string config, weights, spikes, trace, labels;
  std::uint32_t duration = 0;
  double clock_hz = 1e3;
  bool binary = false;
};

int cmd_simulate(const SimulateArgs &a, const Common &common) {
  Config config = load_config(a.config);
  Weights weights = load_weights(a.weights, config.get());
  Spikes spikes = load_spikes(a.spikes, a.binary);
  CoreHandle core = make_core(config.get(), weights.get(), common.threads);
  const auto watch = a.trace.empty() ? std::vector<qsenc_watch>{}
                                     : parse_watch_list(a.trace, config.get());

  qsenc_run *raw = nullptr;
  check(qsenc_core_run(core.get(), spikes.get(), a.duration, watch.data(), watch.size(), &raw));
  Run run(raw);

  const fs::path dir = output_dir(common);
  char *text = nullptr;
  check(qsenc_run_raster_text(run.get(), config.get(), &text));
  write_file(dir / "raster.txt", take_string(text));
  if (!watch.empty()) {
    check(qsenc_run_traces_text(run.get(), config.get(), &text));
    write_file(dir / "traces.csv", take_string(text));
  }
  check(qsenc_config_text(config.get(), &text));
  write_file(dir / "config.cfg", header("config", config.get()) + take_string(text));

  const auto info = info_of(config.get());
  std::uint32_t outputs = 0;
  check(qsenc_config_population_size(config.get(), info.layer_count, &outputs));
  std::size_t samples = 0;
  check(qsenc_run_sample_count(run.get(), &samples));
  double avg = 0.0;
  check(qsenc_run_avg_spikes_per_neuron(run.get(), &avg));

  std::ostringstream rep;
  rep << header("report", config.get()) << "samples=" << samples << '\n'
      << "duration_cycles=" << a.duration << '\n'
      << "neurons=" << info.neuron_count << '\n'
      << "synapses=" << info.synapse_count << '\n'
      << "avg_spikes_per_neuron=" << fmt(avg) << '\n'
      << "clock_hz=" << fmt(a.clock_hz) << '\n'
      << "fixed_point_ops_per_s="
      << fmt(qsenc_fixed_point_ops(static_cast<double>(info.synapse_count), info.n_ops,
                                   static_cast<double>(info.neuron_count), a.clock_hz))
      << '\n'
      << "# decode sample winner ambiguous counts\n";
  std::vector<std::size_t> winners(samples);
  std::vector<std::size_t> counts(outputs);
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint32_t id = 0;
    int ambiguous = 0;
    check(qsenc_spikes_sample_id(spikes.get(), i, &id));
    check(qsenc_run_decode(run.get(), i, &winners[i], &ambiguous));
    check(qsenc_run_output_counts(run.get(), i, counts.data(), counts.size()));
    rep << "decode " << id << ' ' << winners[i] << ' ' << ambiguous << ' ';
    for (std::size_t j = 0; j < counts.size(); ++j)
      rep << (j ? "," : "") << counts[j];
    rep << '\n';
  }

  if (!a.labels.empty()) {
    const auto by_id = read_labels(a.labels);
    std::vector<std::uint32_t> labels(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      std::uint32_t id = 0;
      check(qsenc_spikes_sample_id(spikes.get(), i, &id));
      const auto it = by_id.find(id);
      if (it == by_id.end())
        throw Failure{kExitValidation, "invalid_argument",
                      "no label for sample " + std::to_string(id)};
      labels[i] = it->second;
    }
    double accuracy = 0.0;
    check(qsenc_run_confusion_csv(run.get(), labels.data(), labels.size(), outputs, &accuracy,
                                  &text));
    write_file(dir / "confusion.csv", header("confusion", config.get()) + take_string(text));
    rep << "accuracy=" << fmt(accuracy) << '\n';
  }
  write_file(dir / "report.txt", rep.str());
  std::cout << rep.str();
  return kExitOk;
}

// ---- compare

struct CompareArgs {
  std::string config, weights, spikes, formats = "Q9.7,Q5.3,Q3.1", trace;
  std::uint32_t duration = 0;
  bool binary = false;
};

std::pair<unsigned, unsigned> parse_format(const std::string &text) {
  std::string s = text;
  if (!s.empty() && (s[0] == 'Q' || s[0] == 'q'))
    s.erase(0, 1);
  const auto dot = s.find('.');
  if (dot == std::string::npos)
    usage_error("bad format '" + text + "', expected Qn.q");
  return {to_u32(s.substr(0, dot), "format"), to_u32(s.substr(dot + 1), "format")};
}

int cmd_compare(const CompareArgs &a, const Common &common) {
  Config base = load_config(a.config);
  Spikes spikes = load_spikes(a.spikes, a.binary);
  qsenc_weights *wraw = nullptr;
  check(qsenc_weights_load(a.weights.c_str(), &wraw));
  Weights weights(wraw);
  const auto watch = a.trace.empty() ? all_lif_neurons(base.get())
                                     : parse_watch_list(a.trace, base.get());

  qsenc_run *raw = nullptr;
  check(qsenc_reference_run(base.get(), weights.get(), spikes.get(), a.duration, watch.data(),
                            watch.size(), &raw));
  Run reference(raw);

  std::ostringstream rep;
  rep << header("compare", base.get()) << "# format rmse\n";
  for (const std::string &name : split(a.formats, ',')) {
    const auto [n, q] = parse_format(name);
    qsenc_config *craw = nullptr;
    check(qsenc_config_clone(base.get(), &craw));
    Config cfg(craw);
    const auto policy = info_of(base.get()).policy;
    check(qsenc_config_set_format(cfg.get(), n, q, policy));
    CoreHandle core = make_core(cfg.get(), weights.get(), common.threads);
    check(qsenc_core_run(core.get(), spikes.get(), a.duration, watch.data(), watch.size(), &raw));
    Run quantized(raw);
    double value = 0.0;
    check(qsenc_rmse(quantized.get(), reference.get(), &value));
    rep << "Q" << n << '.' << q << ' ' << fmt(value) << '\n';
  }
  write_file(output_dir(common) / "compare.txt", rep.str());
  std::cout << rep.str();
  return kExitOk;
}

// ---- sweep

struct SweepArgs {
  std::string config, weights, spikes, param, values;
  std::uint32_t duration = 100, samples = 10;
  double rate = 0.1, weight_lo = 0.0, weight_hi = 1.0;
  bool binary = false;
};

double register_value(const std::string &param, const std::string &text) {
  if (param == "reset_mode") {
    static const std::map<std::string, double> names = {
        {"to_constant", 0}, {"to_zero", 1}, {"by_subtraction", 2}, {"default", 3}};
    if (auto it = names.find(text); it != names.end())
      return it->second;
  }
  return to_real(text, param + " value");
}

int cmd_sweep(const SweepArgs &a, const Common &common) {
  static const char *const params[] = {"decay_rate", "growth_rate", "refractory_period",
                                       "reset_mode"};
  if (std::find(std::begin(params), std::end(params), a.param) == std::end(params))
    usage_error("unknown sweep parameter '" + a.param + "'");
  Config base = load_config(a.config);
  const auto info = info_of(base.get());
  Weights weights = a.weights.empty()
                        ? synthetic_weights(base.get(), a.weight_lo, a.weight_hi, common.seed)
                        : load_weights(a.weights, base.get());
  Spikes spikes = a.spikes.empty() ? synthetic_spikes(a.samples, info.input_width, a.duration,
                                                      a.rate, common.seed + 1)
                                   : load_spikes(a.spikes, a.binary);
  const auto values = split(a.values, ',');
  if (values.empty())
    usage_error("--values is empty");

  std::ostringstream rep;
  rep << header("sweep", base.get()) << "param=" << a.param << '\n'
      << "weights=" << (a.weights.empty() ? "synthetic" : a.weights) << '\n'
      << "spikes=" << (a.spikes.empty() ? "synthetic" : a.spikes) << '\n'
      << "seed=" << common.seed << '\n'
      << "# value avg_spikes_per_neuron";
  for (std::size_t p = 1; p <= info.layer_count; ++p)
    rep << " layer" << p - 1 << "_spikes";
  rep << '\n';

  for (const std::string &v : values) {
    qsenc_config *craw = nullptr;
    check(qsenc_config_clone(base.get(), &craw));
    Config cfg(craw);
    check(qsenc_config_set_register(cfg.get(), -1, a.param.c_str(), register_value(a.param, v)));
    CoreHandle core = make_core(cfg.get(), weights.get(), common.threads);
    qsenc_run *raw = nullptr;
    check(qsenc_core_run(core.get(), spikes.get(), a.duration, nullptr, 0, &raw));
    Run run(raw);
    double avg = 0.0;
    check(qsenc_run_avg_spikes_per_neuron(run.get(), &avg));
    std::size_t samples = 0;
    check(qsenc_run_sample_count(run.get(), &samples));
    rep << v << ' ' << fmt(avg);
    for (std::size_t p = 1; p <= info.layer_count; ++p) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        std::size_t c = 0;
        check(qsenc_run_spike_count(run.get(), i, p, &c));
        total += c;
      }
      rep << ' ' << total;
    }
    rep << '\n';
  }
  write_file(output_dir(common) / "sweep.txt", rep.str());
  std::cout << rep.str();
  return kExitOk;
}

// ---- pipeline

struct PipelineArgs {
  std::string config, weights, spikes, exposure = "20ms";
  std::uint32_t n_reset = 4, stage_latency = 4, samples = 20;
  double clock_hz = 1e3, rate = 0.1, weight_lo = 0.0, weight_hi = 1.0;
  bool binary = false;
};

int cmd_pipeline(const PipelineArgs &a, const Common &common) {
  if (!(a.clock_hz > 0.0 && std::isfinite(a.clock_hz)))
    usage_error("clock frequency must be positive");
  Config config = load_config(a.config);
  const auto info = info_of(config.get());
  const std::uint32_t d = exposure_cycles(a.exposure, a.clock_hz);
  Weights weights = a.weights.empty()
                        ? synthetic_weights(config.get(), a.weight_lo, a.weight_hi, common.seed)
                        : load_weights(a.weights, config.get());
  Spikes spikes = a.spikes.empty()
                      ? synthetic_spikes(a.samples, info.input_width, d, a.rate, common.seed + 1)
                      : load_spikes(a.spikes, a.binary);
  CoreHandle core = make_core(config.get(), weights.get(), common.threads);

  qsenc_pipeline *praw = nullptr;
  check(qsenc_pipeline_run(core.get(), spikes.get(), d, a.n_reset, common.threads, &praw));
  Pipeline pipe(praw);

  char *text = nullptr;
  check(qsenc_pipeline_report(pipe.get(), config.get(), a.clock_hz, a.stage_latency, &text));
  const std::string report = take_string(text);
  qsenc_run *rraw = nullptr;
  check(qsenc_pipeline_to_run(pipe.get(), &rraw));
  Run run(rraw);
  check(qsenc_run_raster_text(run.get(), config.get(), &text));

  const fs::path dir = output_dir(common);
  write_file(dir / "throughput.txt", report);
  write_file(dir / "raster.txt", take_string(text));

  const double exposure_s = d / a.clock_hz;
  const double rt = qsenc_realtime_fps(exposure_s, a.n_reset, a.clock_hz);
  const double seq = qsenc_sequential_fps(exposure_s, static_cast<std::uint32_t>(info.layer_count + 1),
                                          a.stage_latency, a.clock_hz);
  std::cout << report << "# fps table\n"
            << "pipelined  " << fmt(rt, "%.2f") << " fps\n"
            << "sequential " << fmt(seq, "%.2f") << " fps\n";
  return kExitOk;
}

// ---- validate

int cmd_validate(const std::string &config_path, const std::string &weights_path) {
  Config config = load_config(config_path);
  if (!weights_path.empty())
    load_weights(weights_path, config.get());
  const auto info = info_of(config.get());
  std::cout << "ok config=" << config_path << " neurons=" << info.neuron_count
            << " synapses=" << info.synapse_count << '\n';
  return kExitOk;
}

std::string one_line(std::string s) {
  for (char &c : s)
    if (c == '\n' || c == '\r')
      c = ' ';
  return s;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"qsenc: bit-accurate quantized spiking neural core simulator"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads for layer updates")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", common.seed, "Seed for synthetic weights and spike trains");
  app.add_option("--out", common.out_dir, "Output directory (default $QSENC_OUT_DIR or qsenc-out)");

  SimulateArgs sim;
  auto *simulate = app.add_subcommand("simulate", "Run spike streams through the core");
  simulate->add_option("--config", sim.config)->required();
  simulate->add_option("--weights", sim.weights)->required();
  simulate->add_option("--spikes", sim.spikes)->required();
  simulate->add_option("--duration", sim.duration, "Cycles per sample")->required();
  simulate->add_option("--trace", sim.trace, "Neurons to trace: P:N or N (output layer), comma separated");
  simulate->add_option("--labels", sim.labels, "'sample label' file; writes confusion.csv");
  simulate->add_option("--clock-hz", sim.clock_hz, "spk_clk frequency for the ops model");
  simulate->add_flag("--binary-spikes", sim.binary, "Spike file is packed binary");

  CompareArgs cmp;
  auto *compare = app.add_subcommand("compare", "Membrane RMSE per format against the float reference");
  compare->add_option("--config", cmp.config)->required();
  compare->add_option("--weights", cmp.weights)->required();
  compare->add_option("--spikes", cmp.spikes)->required();
  compare->add_option("--duration", cmp.duration)->required();
  compare->add_option("--formats", cmp.formats, "Comma separated Qn.q list");
  compare->add_option("--trace", cmp.trace, "Neurons compared (default every LIF neuron)");
  compare->add_flag("--binary-spikes", cmp.binary);

  SweepArgs sw;
  auto *sweep = app.add_subcommand("sweep", "Spike statistics while one register varies");
  sweep->add_option("--config", sw.config)->required();
  sweep->add_option("--param", sw.param)->required();
  sweep->add_option("--values", sw.values)->required();
  sweep->add_option("--weights", sw.weights, "Weight file (default synthetic)");
  sweep->add_option("--spikes", sw.spikes, "Spike file (default synthetic)");
  sweep->add_option("--duration", sw.duration);
  sweep->add_option("--samples", sw.samples, "Synthetic samples");
  sweep->add_option("--rate", sw.rate, "Synthetic spike probability per cycle");
  sweep->add_option("--weight-lo", sw.weight_lo);
  sweep->add_option("--weight-hi", sw.weight_hi);
  sweep->add_flag("--binary-spikes", sw.binary);

  PipelineArgs pl;
  auto *pipeline = app.add_subcommand("pipeline", "Pipelined run and throughput table");
  pipeline->add_option("--config", pl.config)->required();
  pipeline->add_option("--spikes", pl.spikes, "Spike file (default synthetic)");
  pipeline->add_option("--weights", pl.weights, "Weight file (default synthetic)");
  pipeline->add_option("--exposure", pl.exposure, "Cycles, or time with s/ms/us suffix");
  pipeline->add_option("--nreset", pl.n_reset, "Reset cycles between samples");
  pipeline->add_option("--fps,--clock-hz", pl.clock_hz, "spk_clk frequency in Hz");
  pipeline->add_option("--stage-latency", pl.stage_latency,
                       "Cycles per layer for the non-overlapped baseline");
  pipeline->add_option("--samples", pl.samples, "Synthetic samples");
  pipeline->add_option("--rate", pl.rate, "Synthetic spike probability per cycle");
  pipeline->add_option("--weight-lo", pl.weight_lo);
  pipeline->add_option("--weight-hi", pl.weight_hi);
  pipeline->add_flag("--binary-spikes", pl.binary);

  std::string val_config, val_weights;
  auto *validate = app.add_subcommand("validate", "Static checks of a config and weight file");
  validate->add_option("--config", val_config)->required();
  validate->add_option("--weights", val_weights);

  std::string command = "qsenc";
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
      std::cout << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
      std::cout << app.help();
      return kExitOk;
    } catch (const CLI::ParseError &e) {
      usage_error(e.what());
    }
    command = app.get_subcommands().front()->get_name();
    if (*simulate)
      return cmd_simulate(sim, common);
    if (*compare)
      return cmd_compare(cmp, common);
    if (*sweep)
      return cmd_sweep(sw, common);
    if (*pipeline)
      return cmd_pipeline(pl, common);
    return cmd_validate(val_config, val_weights);
  } catch (const Failure &f) {
    std::cerr << "error command=" << command << " code=" << f.code << " exit=" << f.exit_code
              << " message=" << one_line(f.message) << '\n';
    return f.exit_code;
  } catch (const std::exception &e) {
    std::cerr << "error command=" << command << " code=internal exit=" << kExitRuntime
              << " message=" << one_line(e.what()) << '\n';
    return kExitRuntime;
  }
}
