// Copyright 2026 The qemtk authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "qemtk/io.hpp"
#include "test_support.hpp"

using namespace qemtk;
using Catch::Approx;

TEST_CASE("channel JSON round trip preserves every representation") {
  Rng rng(701);
  const ChannelRep kraus_ch = random_channel(2, 2, rng);
  const ChannelRep choi_ch = choi_from_natural(kraus_ch);
  const ChannelRep nat_ch = natural_from_choi(choi_ch);

  for (const ChannelRep *ch : {&kraus_ch, &choi_ch, &nat_ch}) {
    const ChannelRep back = channel_from_json(channel_to_json(*ch));
    REQUIRE(back.kind() == ch->kind());
    REQUIRE(back.dim_in() == ch->dim_in());
    REQUIRE(max_abs_diff(back.natural_matrix(), ch->natural_matrix()) == 0.0);
  }
}

TEST_CASE("rational-string entries parse exactly") {
  const json j = {{"dim_in", 2},
                  {"dim_out", 2},
                  {"rep", "natural"},
                  {"data",
                   {{json::array({"1/1", 0}), json::array({0, 0}),
                     json::array({0, 0}), json::array({"1/2", "-1/8"})},
                    {json::array({0, 0}), json::array({"3/4", 0}),
                     json::array({0, 0}), json::array({0, 0})},
                    {json::array({0, 0}), json::array({0, 0}),
                     json::array({0.25, 0}), json::array({0, 0})},
                    {json::array({0, 0}), json::array({0, 0}),
                     json::array({0, 0}), json::array({"2/4", 0})}}}};
  const ChannelRep ch = channel_from_json(j);
  const ComplexMatrix m = ch.payload();
  REQUIRE(m(0, 0) == complex_t(1.0, 0.0));
  REQUIRE(m(0, 3) == complex_t(0.5, -0.125));
  REQUIRE(m(1, 1) == complex_t(0.75, 0.0));
  REQUIRE(m(3, 3) == complex_t(0.5, 0.0));
}

TEST_CASE("channel JSON error paths") {
  REQUIRE_THROWS_AS(channel_from_json(json::array()), ParseError);
  REQUIRE_THROWS_AS(channel_from_json({{"dim_in", 2}}), ParseError);
  json bad_rep = {{"dim_in", 2},
                  {"dim_out", 2},
                  {"rep", "stinespring"},
                  {"data", json::array()}};
  REQUIRE_THROWS_AS(channel_from_json(bad_rep), ParseError);
  json bad_entry = {{"dim_in", 1},
                    {"dim_out", 1},
                    {"rep", "natural"},
                    {"data", {{json::array({"1/0", 0})}}}};
  REQUIRE_THROWS_AS(channel_from_json(bad_entry), ParseError);
}

TEST_CASE("state JSON round trip and validation") {
  Rng rng(702);
  const DensityMatrix rho =
      random_state(3, StateEnsemble::MixedTraceInduced, rng);
  const DensityMatrix back = state_from_json(state_to_json(rho));
  REQUIRE(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);

  json not_a_state = state_to_json(DensityMatrix::maximally_mixed(2));
  not_a_state["data"][0][0] = json::array({0.9, 0.0});
  REQUIRE_THROWS_AS(state_from_json(not_a_state), InvalidMatrix);
}

TEST_CASE("circuit JSON parses into a layered circuit") {
  Rng rng(703);
  const ChannelRep gate = random_channel(2, 1, rng);
  const ChannelRep noise = depolarizing(0.2);
  json cj;
  cj["input"] = state_to_json(DensityMatrix::maximally_mixed(2));
  cj["layers"] = json::array();
  json layer;
  layer["ideal"] = channel_to_json(gate);
  layer["true_noise"] = channel_to_json(noise);
  layer["estimated_noise"] = channel_to_json(noise);
  cj["layers"].push_back(layer);

  const LayeredCircuit c = circuit_from_json(cj);
  REQUIRE(c.depth() == 1);
  REQUIRE(c.dim() == 2);
  const MitigatedState em = em_output(c);
  REQUIRE(em.psd_valid);

  json missing = cj;
  missing["layers"][0].erase("true_noise");
  REQUIRE_THROWS_AS(circuit_from_json(missing), ParseError);
}

TEST_CASE("verdict JSON carries the spectral radius or null") {
  const PropertyVerdict v = check_properties(fixture("example2"));
  const json j = verdict_to_json(v);
  REQUIRE(j["is_cp"].get<bool>());
  REQUIRE(j["is_tp"].get<bool>());
  REQUIRE(j["spectral_radius"].get<double>() == Approx(1.0).margin(1e-9));

  PropertyVerdict rect; // non-square channels have no spectral radius
  const json jr = verdict_to_json(rect);
  REQUIRE(jr["spectral_radius"].is_null());
}

TEST_CASE("json files round trip through disk") {
  const std::string path = "io_roundtrip_tmp.json";
  const json payload = channel_to_json(depolarizing(0.4));
  save_json(path, payload);
  const json loaded = load_json(path);
  REQUIRE(loaded == payload);
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(load_json("does_not_exist.json"), ParseError);
}
