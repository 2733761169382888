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

// Acceptance checks. One line per criterion: "criterion N PASS|FAIL: detail".
// Usage: qsenc_acceptance [N ...]; no arguments runs all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "oracles/euler.hpp"
#include "oracles/masks.hpp"
#include "oracles/wide_int.hpp"
#include "qsenc/core.hpp"
#include "qsenc/io.hpp"
#include "qsenc/pipeline.hpp"
#include "qsenc/reference.hpp"
#include "qsenc/units.hpp"

using namespace qsenc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

// ---- 1: exhaustive Q5.3 arithmetic against the bit-vector oracle ----------

Outcome exhaustive_q53() {
  const QFormat f(5, 3);
  const auto start = std::chrono::steady_clock::now();
  long mismatches = 0, checked = 0;
  for (Overflow policy : {Overflow::Wrap, Overflow::Saturate}) {
    const bool sat = policy == Overflow::Saturate;
    for (std::int64_t a = f.raw_min(); a <= f.raw_max(); ++a) {
      const QWord x = QWord::from_raw(f, a);
      for (std::int64_t b = f.raw_min(); b <= f.raw_max(); ++b) {
        const QWord y = QWord::from_raw(f, b);
        mismatches += add(x, y, policy).raw() != oracle::apply(oracle::Op::Add, a, b, 8, 3, sat);
        mismatches += sub(x, y, policy).raw() != oracle::apply(oracle::Op::Sub, a, b, 8, 3, sat);
        mismatches += mul(x, y, policy).raw() != oracle::apply(oracle::Op::Mul, a, b, 8, 3, sat);
        checked += 3;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << checked << " results, " << mismatches << " mismatches, " << fmt("%.2f", secs) << " s";
  return {mismatches == 0 && secs < 60.0, d.str()};
}

// ---- 2: quantization error ordering on the 16-8-4 toy network ----------------

Outcome format_ordering() {
  const CoreConfig base = load_config(std::string(QSENC_SOURCE_DIR) + "/configs/toy_16_8_4.cfg");
  constexpr std::uint32_t kCycles = 50;
  constexpr int kTrials = 100;
  const double bound = 5.0 * std::ldexp(1.0, -7);
  std::vector<WatchedNeuron> watch;
  for (std::uint32_t p = 1; p <= base.layers.size(); ++p)
    for (std::uint32_t n = 0; n < base.layers[p - 1].size; ++n)
      watch.push_back({p, n});

  int ordered = 0, under_bound = 0;
  double worst = 0, sum[3] = {0, 0, 0};
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto weights = synthetic_weights(base, -1.0, 1.5, 1000 + trial);
    const SpikeStream stream =
        synthetic_streams(1, base.input_width, kCycles, 0.1, 5000 + trial).front();
    const SampleResult ref = run_reference(base, weights, stream, kCycles, watch);
    double e[3];
    int i = 0;
    for (QFormat f : {QFormat(9, 7), QFormat(5, 3), QFormat(3, 1)}) {
      CoreConfig c = base;
      c.format = f;
      Core core(c);
      core.load_weights(weights);
      e[i] = rmse(pair_traces(core.run_sample(stream, kCycles, watch), ref));
      sum[i] += e[i];
      ++i;
    }
    ordered += e[0] < e[1] && e[1] < e[2];
    under_bound += e[0] < bound;
    worst = std::max(worst, e[0]);
  }
  std::ostringstream d;
  d << "ordered " << ordered << "/" << kTrials << "; mean rmse Q9.7 " << fmt("%.4f", sum[0] / kTrials)
    << " Q5.3 " << fmt("%.4f", sum[1] / kTrials) << " Q3.1 " << fmt("%.4f", sum[2] / kTrials)
    << "; Q9.7 under " << fmt("%.4f", bound) << " in " << under_bound << "/" << kTrials
    << " trials, worst " << fmt("%.4f", worst);
  return {ordered == kTrials && under_bound == kTrials, d.str()};
}

// ---- shared single-neuron drive ----------------------------------------------

CoreConfig one_neuron(QFormat f, ResetMode mode, double decay, double growth) {
  CoreConfig c;
  c.format = f;
  c.input_width = 1;
  LayerConfig l;
  l.size = 1;
  l.registers.reset_mode = mode;
  l.registers.decay_rate = decay;
  l.registers.growth_rate = growth;
  c.layers = {l};
  return c;
}

// Input spiking on every cycle through one synapse of the given weight.
std::size_t driven_spikes(const CoreConfig &c, double weight, std::uint32_t cycles) {
  Core core(c);
  WeightRecord r;
  r.value = weight;
  core.load_weights(std::vector<WeightRecord>{r});
  SpikeStream s;
  for (std::uint32_t t = 0; t < cycles; ++t)
    s.events.push_back({t, 0});
  return core.run_sample(s, cycles).raster.spike_count(1);
}

// ---- 3: reset mechanisms under constant drive --------------------------------

Outcome reset_mechanisms() {
  const QFormat f(9, 7);
  const auto count = [&](ResetMode m) { return driven_spikes(one_neuron(f, m, 0.2, 1.0), 4.75, 40); };
  const long def = static_cast<long>(count(ResetMode::Default));
  const long sub = static_cast<long>(count(ResetMode::BySubtraction));
  const long zero = static_cast<long>(count(ResetMode::ToZero));
  // Float cross-check of the first crossing from rest: the three modes agree on it.
  const auto first = oracle::first_crossing(0.0, 0.2, 1.0, 4.75, 10.0, 40);
  std::ostringstream d;
  d << "Q9.7 drive 4.75 over 40 cycles: default " << def << ", by_subtraction " << sub
    << ", to_zero " << zero << " (expected 37/14 within 2); first crossing cycle " << first;
  const bool pass = def > sub && sub > zero && std::abs(def - 37) <= 2 && std::abs(sub - 14) <= 2;
  return {pass, d.str()};
}

// ---- 4: refractory window ----------------------------------------------------

Outcome refractory_isi() {
  std::mt19937_64 rng(20260401);
  const QFormat formats[] = {QFormat(5, 3), QFormat(9, 7), QFormat(8, 8), QFormat(3, 1)};
  long cases = 0, violations = 0, multi_spike_cases = 0, held_violations = 0;
  for (; cases < 10000; ++cases) {
    const QFormat f = formats[rng() % 4];
    const double top = std::min(8.0, f.max_value());
    CoreConfig c = one_neuron(f, static_cast<ResetMode>(rng() % 4),
                              std::uniform_real_distribution<double>(0, 0.5)(rng),
                              std::uniform_real_distribution<double>(0.25, 1.0)(rng));
    c.input_width = 3;
    c.policy = rng() & 1 ? Overflow::Saturate : Overflow::Wrap;
    RegisterSettings &r = c.layers[0].registers;
    r.v_threshold = std::uniform_real_distribution<double>(f.quantum(), top)(rng);
    r.v_reset = std::uniform_real_distribution<double>(-top / 2, top / 2)(rng);
    r.refractory_period = static_cast<std::uint32_t>(rng() % 9);
    Core core(c);
    std::vector<WeightRecord> w(3);
    for (std::uint32_t i = 0; i < 3; ++i) {
      w[i].address = {0, i, 0};
      w[i].value = std::uniform_real_distribution<double>(-top / 4, top)(rng);
    }
    core.load_weights(w);

    long last = -1'000'000, spikes = 0;
    for (long t = 0; t < 120; ++t) {
      const std::vector<std::uint8_t> in{static_cast<std::uint8_t>(rng() & 1),
                                         static_cast<std::uint8_t>(rng() % 3 == 0),
                                         static_cast<std::uint8_t>(rng() % 5 == 0)};
      const double before = core.layer(0).states()[0].vmem.value();
      const bool refractory = core.layer(0).states()[0].refractory_counter > 0;
      if (core.step_cycle(in)[1][0]) {
        violations += t - last < static_cast<long>(r.refractory_period) + 1;
        last = t;
        ++spikes;
      }
      held_violations += refractory && core.layer(0).states()[0].vmem.value() != before;
    }
    multi_spike_cases += spikes >= 2;
  }
  std::ostringstream d;
  d << cases << " cases (" << multi_spike_cases << " with 2+ spikes), " << violations
    << " ISI violations, " << held_violations << " membrane changes inside the window";
  return {violations == 0 && held_violations == 0 && multi_spike_cases > cases / 2, d.str()};
}

// ---- 5: membrane R/C sweep ---------------------------------------------------

Outcome rc_sweep() {
  const double pairs[4][2] = {{500e6, 10e-12}, {100e6, 50e-12}, {50e6, 100e-12}, {10e6, 500e-12}};
  std::vector<long> counts;
  std::ostringstream d;
  d << "Q9.7 drive 30, by_subtraction, 40 cycles:";
  for (const auto &p : pairs) {
    PhysicalMapping m;
    m.r_ohm = p[0];
    m.c_farad = p[1];
    const RateRegisters r = registers_from_physical(m, QFormat(9, 7));
    counts.push_back(static_cast<long>(driven_spikes(
        one_neuron(QFormat(9, 7), ResetMode::BySubtraction, r.decay_rate, r.growth_rate), 30.0, 40)));
    d << " R=" << p[0] / 1e6 << "M C=" << p[1] * 1e12 << "p -> " << counts.back();
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < counts.size(); ++i)
    decreasing = decreasing && counts[i] < counts[i - 1];
  return {decreasing && counts.back() == 0, d.str()};
}

// ---- 6: pipeline -------------------------------------------------------------

Outcome pipeline_equivalence() {
  const CoreConfig c = load_config(std::string(QSENC_SOURCE_DIR) + "/configs/baseline.cfg");
  Core core(c);
  core.load_weights(synthetic_weights(c, -0.25, 0.75, 77));
  constexpr std::uint32_t kExposure = 20, kReset = 4;
  auto samples = synthetic_streams(20, c.input_width, kExposure, 0.2, 78);
  for (auto &s : samples)
    bind_stream(s, c.input_width, kExposure);

  int equal = 0;
  std::size_t spikes = 0;
  const PipelineResult piped = run_pipelined(core, samples, kExposure, kReset, 4);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    core.reset_state();
    const SampleResult seq = core.run_sample(samples[i], kExposure);
    equal += seq.raster == piped.rasters[i];
    spikes += seq.raster.total_spikes();
  }
  const double analytic = piped.schedule.analytic_throughput();
  const double rel = std::abs(piped.steady_state_throughput - analytic) / analytic;
  const std::string rt = fmt("%.2f", realtime_fps(0.02, kReset, 1000));
  const std::string sq =
      fmt("%.2f", sequential_fps(0.02, static_cast<std::uint32_t>(c.layers.size() + 1), 4, 1000));
  std::ostringstream d;
  d << equal << "/20 rasters equal (" << spikes << " spikes); steady state "
    << fmt("%.6f", piped.steady_state_throughput) << " vs 1/(d+s) " << fmt("%.6f", analytic)
    << " (" << fmt("%.3f", rel * 100) << "%); realtime " << rt << " fps, sequential " << sq
    << " fps";
  return {equal == 20 && rel <= 0.02 && rt == "41.67" && sq == "31.25", d.str()};
}

// ---- 7: reset cycles from the fixed-point leak -------------------------------

Outcome reset_cycles_check() {
  ResetCyclesQuery q; // tau 5 ms, 1 kHz, Q5.3, V_th 10
  const auto quantum = reset_cycles(q);
  q.epsilon = 0.625;
  const auto frozen = reset_cycles(q);
  std::ostringstream d;
  d << "settle below one quantum: "
    << (quantum ? std::to_string(*quantum) + " cycles" : std::string("never"))
    << "; settle below 0.625 V_th: "
    << (frozen ? std::to_string(*frozen) + " cycles" : std::string("never")) << " (target 4)";
  return {frozen && *frozen == 4, d.str()};
}

// ---- 8: thread-count determinism through the CLI -----------------------------

Outcome cli_determinism() {
  const fs::path root = fs::current_path() / "acceptance_determinism";
  fs::remove_all(root);
  int compared = 0, differing = 0, failures = 0;
  for (const char *name : {"baseline.cfg", "receptive_field.cfg", "toy_16_8_4.cfg"}) {
    const std::string cfg = clitest::config_path(name);
    const CoreConfig c = load_config(cfg);
    const fs::path dir = root / fs::path(name).stem();
    clitest::spit(dir / "weights.txt", write_weights(synthetic_weights(c, -0.5, 1.0, 31)));
    clitest::spit(dir / "spikes.txt", write_spikes(synthetic_streams(4, c.input_width, 40, 0.25, 32)));
    for (int threads : {1, 8}) {
      const std::string t = std::to_string(threads);
      const std::string common = "--threads " + t + " --out run" + t;
      failures += clitest::run(dir, common + " simulate --config " + cfg +
                                        " --weights weights.txt --spikes spikes.txt"
                                        " --duration 40 --trace 0,1:0")
                      .exit_code != 0;
      failures += clitest::run(dir, common + "p pipeline --config " + cfg +
                                        " --weights weights.txt --spikes spikes.txt"
                                        " --exposure 40 --nreset 4")
                      .exit_code != 0;
    }
    for (const char *f : {"raster.txt", "traces.csv", "report.txt"}) {
      ++compared;
      differing += clitest::slurp(dir / "run1" / f) != clitest::slurp(dir / "run8" / f);
    }
    for (const char *f : {"raster.txt", "throughput.txt"}) {
      ++compared;
      differing += clitest::slurp(dir / "run1p" / f) != clitest::slurp(dir / "run8p" / f);
    }
  }
  std::ostringstream d;
  d << "3 configs, threads 1 vs 8: " << compared << " files compared, " << differing
    << " differ, " << failures << " failed runs";
  return {differing == 0 && failures == 0, d.str()};
}

// ---- 9: connectivity masks ---------------------------------------------------

Outcome masks_brute_force() {
  long masks = 0, bad = 0;
  const std::pair<Connectivity::Kind, oracle::MaskKind> kinds[] = {
      {Connectivity::Kind::AllToAll, oracle::MaskKind::AllToAll},
      {Connectivity::Kind::OneToOne, oracle::MaskKind::OneToOne},
      {Connectivity::Kind::Gaussian, oracle::MaskKind::Gaussian}};
  for (const auto &[kind, ok] : kinds) {
    for (std::uint32_t radius = 0; radius <= 3; ++radius) {
      if (kind != Connectivity::Kind::Gaussian && radius != 1)
        continue;
      for (std::uint32_t m = 1; m <= 8; ++m) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
          if (kind == Connectivity::Kind::OneToOne && m != n)
            continue;
          const ConnectivityMask mask = build_mask({kind, radius}, m, n);
          ++masks;
          bool same = mask.ones() == oracle::ones_formula(ok, radius, m, n);
          for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
              same = same && mask.connected(i, j) == oracle::connected(ok, radius, i, j);
          bad += !same;
        }
      }
    }
  }
  CoreConfig small = load_config(std::string(QSENC_SOURCE_DIR) + "/configs/baseline.cfg");
  CoreConfig wide = small;
  wide.layers[0].size = 256;
  const bool counts = small.neuron_count() == 394 && small.synapse_count() == 34048 &&
                      wide.neuron_count() == 522 && wide.synapse_count() == 68096;
  std::ostringstream d;
  d << masks << " masks up to 8x8 (radius 0..3), " << bad << " disagree with the oracle; "
    << "256-128-10: " << small.neuron_count() << " neurons " << small.synapse_count()
    << " synapses; 256-256-10: " << wide.neuron_count() << " neurons " << wide.synapse_count()
    << " synapses";
  return {bad == 0 && counts, d.str()};
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      exhaustive_q53,       format_ordering, reset_mechanisms,
      refractory_isi,       rc_sweep,        pipeline_equivalence,
      reset_cycles_check,   cli_determinism, masks_brute_force};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i)
    selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i)
      selected.push_back(i);

  int failed = 0;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
