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

#include <filesystem>

#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/units.hpp"

using namespace qsenc;

namespace {

const char *kSmall = R"(# small core
[format]
n = 9
q = 7
policy = saturate

[layers]
sizes = 6, 4, 2
connectivity = gaussian, all_to_all
radius = 1
layer_latency = 1

[registers]
decay_rate = 0.25
v_threshold = Q9.7:0x0140   # 2.5
reset_mode = to_zero
refractory_period = 2

[registers.1]
v_threshold = 3
)";

std::string error_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("config parsing") {
  const CoreConfig c = parse_config(kSmall, "small.cfg");
  CHECK(c.format == QFormat(9, 7));
  CHECK(c.policy == Overflow::Saturate);
  CHECK(c.input_width == 6);
  REQUIRE(c.layers.size() == 2);
  CHECK(c.layers[0].connectivity == Connectivity::gaussian(1));
  CHECK(c.layers[1].connectivity.kind == Connectivity::Kind::AllToAll);
  CHECK(c.layer_latency == 1);
  CHECK(c.layers[0].registers.decay_rate == 0.25);
  CHECK(c.layers[0].registers.growth_rate == 1.0);
  CHECK(c.layers[0].registers.v_threshold == 2.5);
  CHECK(c.layers[1].registers.v_threshold == 3.0);
  CHECK(c.layers[1].registers.reset_mode == ResetMode::ToZero);
  CHECK(c.layers[1].registers.refractory_period == 2);
  CHECK(c.n_ops == 4);
}

TEST_CASE("config round trip") {
  const CoreConfig c = parse_config(kSmall);
  const std::string canon = write_config(c);
  CHECK(parse_config(canon) == c);
  CHECK(write_config(parse_config(canon)) == canon);
  CHECK(config_hash(c) == config_hash(parse_config(canon)));
  CHECK(config_hash_hex(c).size() == 16);
  CoreConfig other = c;
  other.layers[0].registers.v_threshold = 2.0;
  CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("shipped baseline config") {
  const auto c = load_config(std::filesystem::path(QSENC_SOURCE_DIR) / "configs/baseline.cfg");
  CHECK(c.population_sizes() == std::vector<std::uint32_t>{256, 128, 10});
  CHECK(c.format == QFormat(5, 3));
  CHECK(c.neuron_count() == 394);
}

TEST_CASE("config errors name the line") {
  CHECK(error_of([] { parse_config("[format]\nn = 5\nq = 3\nbogus = 1\n[layers]\nsizes = 2, 2\n", "x.cfg"); })
            .rfind("x.cfg:4:", 0) == 0);
  CHECK(error_of([] { parse_config("[format]\nn = 5\nq = 3\n[layers]\nsizes = 2, 2\n[registers]\nv_threshold = 99\n", "x.cfg"); })
            .find("v_threshold") != std::string::npos);
  CHECK(error_of([] { parse_config("[format]\nn = 5\nn = 4\n", "x.cfg"); }).rfind("x.cfg:3:", 0) == 0);
  CHECK(error_of([] { parse_config("[format]\nn = 5\nq = 3\n[layers]\nsizes = 2, 2\n[registers.1]\n", "x.cfg"); })
            .rfind("x.cfg:6:", 0) == 0);
  CHECK(error_of([] { parse_config("[format]\nn = 5\nq = 3\n[layers]\nsizes = 2, 3, 4\nconnectivity = a, b, c\n", "x.cfg"); })
            .rfind("x.cfg:6:", 0) == 0);
  CHECK(error_of([] { parse_config("[oops]\n", "x.cfg"); }).rfind("x.cfg:1:", 0) == 0);
  CHECK(error_of([] { parse_config("n = 5\n", "x.cfg"); }).rfind("x.cfg:1:", 0) == 0);
  CHECK(error_of([] { parse_config("[layers]\nsizes = 2, 2\n", "x.cfg"); }).find("[format]") !=
        std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/qsenc.cfg"), Error);
}

TEST_CASE("physical mapping section") {
  const char *text = R"([format]
n = 9
q = 7
[layers]
sizes = 16, 8, 4
[mapping]
r = 500e6
c = 10e-12
dt = 1e-3
v_unit = 4e-3
i_unit = 40e-12
[registers]
v_threshold = 2.5
[registers.1]
growth_rate = 0.5
)";
  const CoreConfig c = parse_config(text);
  REQUIRE(c.mapping.has_value());
  CHECK(c.layers[0].registers.decay_rate == doctest::Approx(0.2));
  CHECK(c.layers[0].registers.growth_rate == doctest::Approx(1.0));
  CHECK(c.layers[1].registers.growth_rate == 0.5);
  CHECK(parse_config(write_config(c)) == c);
  std::string clash(text);
  clash.replace(clash.find("v_threshold = 2.5"), 17, "decay_rate = 0.3");
  CHECK(error_of([&] { parse_config(clash); }).find("[mapping]") != std::string::npos);
}

TEST_CASE("registers from physical units") {
  PhysicalMapping m;
  auto r = registers_from_physical(m);
  CHECK(r.decay_rate == doctest::Approx(0.2));
  CHECK(r.growth_rate == doctest::Approx(1.0));
  m.r_ohm = 100e6;
  m.c_farad = 50e-12;
  r = registers_from_physical(m);
  CHECK(r.decay_rate == doctest::Approx(0.2));
  CHECK(r.growth_rate == doctest::Approx(0.2));
  // composed with the Euler step, one cycle of the RC circuit
  const double v = 3.0, i = 7.0;
  const double euler = v - r.decay_rate * v + r.growth_rate * i;
  const double exact = v + m.dt_s / m.c_farad * (i * m.i_unit - v * m.v_unit / m.r_ohm) / m.v_unit;
  CHECK(euler == doctest::Approx(exact).epsilon(1e-12));
  m.dt_s = 0;
  CHECK_THROWS_AS(registers_from_physical(m), Error);
  m = {};
  m.c_farad = 1e-15;
  CHECK_THROWS_AS(registers_from_physical(m, QFormat(5, 3)), Error);
  CHECK(unit_current_for_unit_growth(10e-12, 1e-3, 4e-3) == doctest::Approx(40e-12));
}

TEST_CASE("weight files") {
  auto w = parse_weights("# header\n0 0 1 -1.5\n1 2 3 Q5.3:0x0C  # literal\n\n");
  REQUIRE(w.size() == 2);
  CHECK(w[0].address.layer == 0);
  CHECK(w[0].address.post == 1);
  CHECK(w[0].value == -1.5);
  CHECK(w[0].line == 2);
  REQUIRE(w[1].literal.has_value());
  CHECK(w[1].value == 1.5);
  const auto again = parse_weights(write_weights(w));
  REQUIRE(again.size() == 2);
  CHECK(again[0].value == -1.5);
  CHECK(again[1].literal == w[1].literal);
  CHECK(error_of([] { parse_weights("0 0 1\n", "w.txt"); }).rfind("w.txt:1:", 0) == 0);
  CHECK(error_of([] { parse_weights("0 0 x 1\n", "w.txt"); }).rfind("w.txt:1:", 0) == 0);
  CHECK(error_of([] { parse_weights("0 0 1 nan\n", "w.txt"); }).rfind("w.txt:1:", 0) == 0);
}

TEST_CASE("weight validation against the topology") {
  const CoreConfig c = parse_config(kSmall);
  CHECK_NOTHROW(validate_weights(c, parse_weights("0 0 1 -1.5\n1 3 1 2\n")));
  try {
    validate_weights(c, parse_weights("0 0 1 1\n0 0 3 1\n"));
    FAIL("masked weight accepted");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::MaskedSynapse);
    CHECK(std::string(e.what()).rfind("line 2: weight (0, 0, 3)", 0) == 0);
  }
  CHECK_THROWS_AS(validate_weights(c, parse_weights("2 0 0 1\n")), Error);
  CHECK_THROWS_AS(validate_weights(c, parse_weights("1 4 0 1\n")), Error);
  CHECK_THROWS_AS(validate_weights(c, parse_weights("1 0 0 300\n")), Error);
  // a foreign-format literal is checked by value
  CHECK_NOTHROW(validate_weights(c, parse_weights("1 0 0 Q5.3:0x0C\n")));
  const auto syn = synthetic_weights(c, -1, 1, 4);
  CHECK(syn.size() == c.synapse_count());
  CHECK_NOTHROW(validate_weights(c, syn));
  CHECK(synthetic_weights(c, -1, 1, 4).front().value == syn.front().value);
}

TEST_CASE("spike files") {
  CHECK(parse_spikes("").streams.empty());
  auto f = parse_spikes("0 3 7\n");
  REQUIRE(f.streams.size() == 1);
  CHECK(f.streams[0].sample == 0);
  CHECK(f.streams[0].events == std::vector<SpikeEvent>{{3, 7}});

  f = parse_spikes("# two samples\n1 5 0\n0 2 1\n1 1 3\n1 1 2\n");
  REQUIRE(f.streams.size() == 2);
  CHECK(f.streams[0].sample == 0);
  CHECK(f.streams[1].events == std::vector<SpikeEvent>{{1, 3}, {1, 2}, {5, 0}});
  REQUIRE(f.warnings.size() == 1);
  CHECK(f.warnings[0].find("sample 1") != std::string::npos);

  const auto text = write_spikes(f.streams);
  CHECK(parse_spikes(text).streams == f.streams);
  CHECK(parse_spikes(text).warnings.empty());
  const auto bin = write_spikes_binary(f.streams);
  CHECK(bin.substr(0, 4) == "QSPK");
  CHECK(parse_spikes_binary(bin).streams == f.streams);
  CHECK_THROWS_AS(parse_spikes_binary(bin.substr(0, bin.size() - 2)), Error);
  CHECK_THROWS_AS(parse_spikes_binary("JUNK"), Error);
  CHECK(error_of([] { parse_spikes("0 1\n", "s.txt"); }).rfind("s.txt:1:", 0) == 0);
  CHECK(error_of([] { parse_spikes("0 -1 2\n", "s.txt"); }).rfind("s.txt:1:", 0) == 0);

  const auto syn = synthetic_streams(3, 8, 20, 0.25, 42);
  CHECK(syn == synthetic_streams(3, 8, 20, 0.25, 42));
  CHECK(syn != synthetic_streams(3, 8, 20, 0.25, 43));
  CHECK(synthetic_streams(1, 8, 20, 0.0, 1)[0].events.empty());
  CHECK(synthetic_streams(1, 8, 20, 1.0, 1)[0].events.size() == 160);
  CHECK_THROWS_AS(synthetic_streams(1, 8, 20, 1.5, 1), Error);
}

TEST_CASE("file round trip on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "qsenc_io_test";
  const auto streams = synthetic_streams(2, 4, 10, 0.5, 8);
  write_text_file(dir / "s.bin", write_spikes_binary(streams));
  CHECK(load_spikes(dir / "s.bin", true).streams == streams);
  write_text_file(dir / "s.txt", write_spikes(streams));
  CHECK(load_spikes(dir / "s.txt").streams == streams);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_text_file(dir / "missing"), Error);
}

TEST_CASE("run outputs") {
  const CoreConfig c = parse_config(kSmall);
  CHECK(output_header("raster", c) == "# qsenc-raster v1 config=" + config_hash_hex(c) + "\n");
  SpikeRaster r;
  r.population_sizes = {6, 4, 2};
  r.populations = {{{0, 1}, {2, 0}}, {{1, 3}}, {}};
  const std::vector<SpikeRaster> rasters{r};
  const std::vector<std::uint32_t> ids{9};
  CHECK(format_raster(rasters, ids) == "# sample t population neuron\n9 0 0 1\n9 1 1 3\n9 2 0 0\n");
  SampleResult s;
  s.traces = {{{1, 2}, {0.5, -1.25}}};
  const std::vector<SampleResult> results{s};
  CHECK(format_traces(results, ids) ==
        "sample,cycle,population,neuron,vmem\n9,0,1,2,0.5\n9,1,1,2,-1.25\n");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-12) == "1e-12");
  CHECK(format_double(41.666666666666664) == "41.666666666666664");
}
