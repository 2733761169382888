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

#include <doctest.h>

#include <cmath>

#include "qsenc/core.hpp"
#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/metrics.hpp"
#include "qsenc/reference.hpp"

using namespace qsenc;

namespace {

SpikeRaster raster_with_counts(const std::vector<std::size_t> &counts) {
  SpikeRaster r;
  r.duration = 50;
  r.population_sizes = {2, static_cast<std::uint32_t>(counts.size())};
  r.populations.resize(2);
  for (std::uint32_t j = 0; j < counts.size(); ++j)
    for (std::uint32_t c = 0; c < counts[j]; ++c)
      r.populations[1].push_back({c, j});
  return r;
}

CoreConfig toy(QFormat f) {
  CoreConfig cfg;
  cfg.format = f;
  cfg.input_width = 8;
  for (std::uint32_t n : {6u, 3u}) {
    LayerConfig l;
    l.size = n;
    l.registers.v_threshold = 2.5;
    l.registers.refractory_period = 1;
    cfg.layers.push_back(l);
  }
  return cfg;
}

} // namespace

TEST_CASE("count decode") {
  auto d = decode_by_count(raster_with_counts({0, 0, 0}));
  CHECK(d.winner == 0);
  CHECK(d.ambiguous);
  d = decode_by_count(raster_with_counts({1, 4, 2}));
  CHECK(d.winner == 1);
  CHECK_FALSE(d.ambiguous);
  CHECK(d.counts == std::vector<std::size_t>{1, 4, 2});
  CHECK(decode_by_count(raster_with_counts({2, 8, 4})).winner == 1);
  d = decode_by_count(raster_with_counts({3, 1, 3}));
  CHECK(d.winner == 0);
  CHECK(d.ambiguous);
  // appending silent cycles changes nothing
  auto r = raster_with_counts({1, 4, 2});
  r.duration += 100;
  CHECK(decode_by_count(r).winner == 1);
  CHECK(decode_by_count(r, 0).counts == std::vector<std::size_t>{0, 0});
  CHECK_THROWS_AS(decode_by_count(r, 2), Error);
}

TEST_CASE("operations model") {
  CHECK(fixed_point_ops(34048, 4, 394, 6e5) == (34048.0 + 394.0 * 4) * 6e5);
  CHECK(fixed_point_ops(0, 0, 123, 1e6) == 0.0);
  CHECK(fixed_point_ops(10, 2, 3, 2e3) == 2 * fixed_point_ops(10, 2, 3, 1e3));
  CHECK(fixed_point_ops(20, 2, 3, 1e3) - fixed_point_ops(10, 2, 3, 1e3) ==
        fixed_point_ops(10, 0, 0, 1e3));
  CHECK_THROWS_AS(fixed_point_ops(-1, 0, 0, 1), Error);
}

TEST_CASE("average spikes per neuron") {
  CHECK(avg_spikes_per_neuron(raster_with_counts({0, 0})) == 0.0);
  CHECK(avg_spikes_per_neuron(raster_with_counts({1, 1, 1})) == 1.0);
  auto r = raster_with_counts({2, 0});
  r.populations[0].push_back({0, 0}); // input spikes are not counted
  CHECK(avg_spikes_per_neuron(r) == 1.0);
  const std::vector<SpikeRaster> both{raster_with_counts({0, 0}), raster_with_counts({2, 2})};
  CHECK(avg_spikes_per_neuron(both) == 1.0);
  CHECK_THROWS_AS(avg_spikes_per_neuron(std::span<const SpikeRaster>{}), Error);
}

TEST_CASE("confusion matrix") {
  ConfusionMatrix m(3);
  m.add(0, 0);
  m.add(1, 2);
  m.add(2, 2);
  m.add(2, 2);
  CHECK(m.at(2, 2) == 2);
  CHECK(m.accuracy() == 0.75);
  CHECK(m.to_csv() == "label,p0,p1,p2\n0,1,0,0\n1,0,0,1\n2,0,0,2\n");
  CHECK_THROWS_AS(m.add(3, 0), Error);
  CHECK_THROWS_AS(ConfusionMatrix(0), Error);
}

TEST_CASE("reference matches a wide fixed-point core") {
  const auto wide = toy(QFormat(24, 32));
  const auto weights = synthetic_weights(wide, -1.0, 2.0, 17);
  const auto s = synthetic_streams(1, 8, 80, 0.3, 18)[0];
  std::vector<WatchedNeuron> watch;
  for (std::uint32_t j = 0; j < 6; ++j)
    watch.push_back({1, j});
  for (std::uint32_t j = 0; j < 3; ++j)
    watch.push_back({2, j});
  Core core(wide);
  core.load_weights(weights);
  const auto q = core.run_sample(s, 80, watch);
  const auto r = run_reference(wide, weights, s, 80, watch);
  CHECK(q.raster == r.raster);
  CHECK(rmse(pair_traces(q, r)) < 1e-6);
}

TEST_CASE("coarser formats drift further from the reference") {
  const auto base = toy(QFormat(9, 7));
  const auto weights = synthetic_weights(base, -1.0, 1.5, 3);
  const auto s = synthetic_streams(1, 8, 60, 0.2, 4)[0];
  const std::vector<WatchedNeuron> watch{{1, 0}, {1, 1}, {1, 2}, {2, 0}};
  const auto ref = run_reference(base, weights, s, 60, watch);
  double prev = -1.0;
  for (QFormat f : {QFormat(16, 16), QFormat(9, 7), QFormat(5, 3)}) {
    auto cfg = base;
    cfg.format = f;
    Core core(cfg);
    core.load_weights(weights);
    const double e = rmse(pair_traces(core.run_sample(s, 60, watch), ref));
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("rmse and trace pairing") {
  const std::vector<double> a{1, 2, 3}, b{1, 2, 5}, c{0, 0, 0};
  CHECK(rmse(TracePair{a, a}) == 0.0);
  CHECK(rmse(TracePair{a, b}) == doctest::Approx(std::sqrt(4.0 / 3)));
  const std::vector<TracePair> pooled{{a, b}, {c, c}};
  CHECK(rmse(pooled) == doctest::Approx(std::sqrt(4.0 / 6)));
  const std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(rmse(TracePair{a, shorter}), Error);
  CHECK_THROWS_AS(rmse(std::span<const TracePair>{}), Error);

  SampleResult x, y;
  x.traces = {{{1, 0}, a}, {{1, 1}, b}};
  y.traces = {{{1, 1}, a}, {{1, 0}, a}};
  const auto pairs = pair_traces(x, y);
  REQUIRE(pairs.size() == 2);
  CHECK(rmse(pairs) == doctest::Approx(std::sqrt(4.0 / 6)));
  y.traces.pop_back();
  CHECK_THROWS_AS(pair_traces(x, y), Error);
}

TEST_CASE("reference rejects masked weights") {
  auto cfg = toy(QFormat(9, 7));
  cfg.layers[1].connectivity = Connectivity::gaussian(0);
  const std::vector<WeightRecord> bad{{{1, 0, 2}, 1.0, std::nullopt, 0}};
  CHECK_THROWS_AS(ReferenceCore(cfg, bad), Error);
}
