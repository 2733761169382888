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

#include <random>

#include "oracles/masks.hpp"
#include "qsenc/error.hpp"
#include "qsenc/topology.hpp"

using namespace qsenc;

namespace {

oracle::MaskKind kind_of(Connectivity::Kind k) {
  switch (k) {
  case Connectivity::Kind::AllToAll:
    return oracle::MaskKind::AllToAll;
  case Connectivity::Kind::OneToOne:
    return oracle::MaskKind::OneToOne;
  case Connectivity::Kind::Gaussian:
    return oracle::MaskKind::Gaussian;
  }
  return oracle::MaskKind::AllToAll;
}

} // namespace

TEST_CASE("mask examples") {
  CHECK(build_mask(Connectivity::all_to_all(), 3, 4).ones() == 12);
  CHECK(build_mask(Connectivity::one_to_one(), 5, 5).ones() == 5);
  const auto g = build_mask(Connectivity::gaussian(1), 5, 5);
  CHECK(g.ones() == 13);
  CHECK(g.connected(0, 1));
  CHECK_FALSE(g.connected(0, 2));
  CHECK(g.connected(4, 3));
  // radius wider than the layer degenerates to all-to-all
  CHECK(build_mask(Connectivity::gaussian(10), 4, 6).ones() == 24);
  CHECK_THROWS_AS(build_mask(Connectivity::one_to_one(), 3, 4), Error);
  CHECK_THROWS_AS(build_mask(Connectivity::all_to_all(), 0, 4), Error);
  CHECK_THROWS_AS(g.connected(5, 0), Error);
}

TEST_CASE("masks agree with the brute-force definition up to 8x8") {
  std::size_t mismatches = 0;
  for (std::uint32_t m = 1; m <= 8; ++m) {
    for (std::uint32_t n = 1; n <= 8; ++n) {
      std::vector<Connectivity> kinds{Connectivity::all_to_all()};
      if (m == n)
        kinds.push_back(Connectivity::one_to_one());
      for (std::uint32_t r = 0; r <= 3; ++r)
        kinds.push_back(Connectivity::gaussian(r));
      for (const Connectivity &c : kinds) {
        const auto mask = build_mask(c, m, n);
        for (std::uint32_t i = 0; i < m; ++i)
          for (std::uint32_t j = 0; j < n; ++j)
            mismatches += mask.connected(i, j) != oracle::connected(kind_of(c.kind), c.radius, i, j);
        mismatches += mask.ones() != oracle::ones_formula(kind_of(c.kind), c.radius, m, n);
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("concat_rows stacks sources") {
  const auto a = build_mask(Connectivity::one_to_one(), 3, 3);
  const auto b = build_mask(Connectivity::all_to_all(), 2, 3);
  const auto c = ConnectivityMask::concat_rows(a, b);
  CHECK(c.rows() == 5);
  CHECK(c.ones() == 9);
  CHECK(c.connected(1, 1));
  CHECK_FALSE(c.connected(1, 2));
  CHECK(c.connected(4, 2));
  CHECK_THROWS_AS(ConnectivityMask::concat_rows(a, build_mask(Connectivity::all_to_all(), 2, 4)),
                  Error);
  CHECK(connectivity_name(parse_connectivity("gaussian")) == "gaussian");
  CHECK_THROWS_AS(parse_connectivity("sparse"), Error);
}

TEST_CASE("weight memory enforces the mask and folds polarity") {
  const QFormat f(5, 3);
  WeightMemory mem(f, build_mask(Connectivity::gaussian(1), 4, 4));
  mem.write_weight(0, 1, QWord::encode(1.5, f), -1);
  CHECK(mem.at(0, 1).value() == -1.5);
  mem.write_weight(2, 1, QWord::encode(0.5, f), +1);

  try {
    mem.write(0, 3, QWord::encode(1.0, f));
    FAIL("masked write accepted");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::MaskedSynapse);
    CHECK(std::string(e.what()).find("(0, 3)") != std::string::npos);
  }
  CHECK_THROWS_AS(mem.write(4, 0, QWord::encode(1.0, f)), Error);
  CHECK_THROWS_AS(mem.write(0, 0, QWord::encode(1.0, QFormat(9, 7))), Error);
  CHECK_THROWS_AS(mem.write_weight(0, 0, QWord::encode(1.0, f), 0), Error);
  CHECK_THROWS_AS(mem.write_weight(0, 0, QWord::encode(-1.0, f), 1), Error);

  const auto col = mem.presynaptic_weights(1);
  REQUIRE(col.size() == 4);
  CHECK(col[0].value() == -1.5);
  CHECK(col[1].value() == 0.0);
  CHECK(col[2].value() == 0.5);
  mem.clear();
  CHECK(mem.at(0, 1).value() == 0.0);
}

TEST_CASE("weight memory equals a replay of its write log") {
  const QFormat f(9, 7);
  std::mt19937_64 rng(21);
  for (std::uint32_t r = 0; r <= 3; ++r) {
    WeightMemory mem(f, build_mask(Connectivity::gaussian(r), 8, 6));
    oracle::WriteLog log;
    for (int i = 0; i < 400; ++i) {
      const auto pre = static_cast<std::uint32_t>(rng() % 8);
      const auto post = static_cast<std::uint32_t>(rng() % 6);
      const auto raw = static_cast<std::int64_t>(rng() % 65536) - 32768;
      const bool ok = oracle::connected(oracle::MaskKind::Gaussian, r, pre, post);
      if (ok) {
        mem.write(pre, post, QWord::from_raw(f, raw));
        log[{0, pre, post}] = raw;
      } else {
        CHECK_THROWS_AS(mem.write(pre, post, QWord::from_raw(f, raw)), Error);
      }
    }
    for (std::uint32_t i = 0; i < 8; ++i) {
      for (std::uint32_t j = 0; j < 6; ++j) {
        const auto it = log.find({0, i, j});
        CHECK(mem.at(i, j).raw() == (it == log.end() ? 0 : it->second));
        CHECK(mem.presynaptic_weights(j)[i] == mem.at(i, j));
      }
    }
  }
}
