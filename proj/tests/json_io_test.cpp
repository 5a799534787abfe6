// Copyright 2026 The Svetlichny Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svetlichny/json_io.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"

#include "svetlichny/errors.hpp"
#include "test_util.hpp"

using namespace svetlichny;

namespace {

BellExpression random_expression(std::mt19937_64 &rng) {
  const int m = 1 + static_cast<int>(rng() % 4);
  const bool correlator = rng() % 2 == 0;
  const int d = correlator ? 2 : 2 + static_cast<int>(rng() % 4);
  std::vector<Term> terms;
  for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
    if (rng() % 3 == 0) continue;
    if (correlator) {
      terms.push_back({x, Correlator{rng() % 2 == 0 ? 1 : -1}});
    } else {
      terms.push_back({x, Bracket{rng() % 2 == 0, static_cast<int>(rng() % static_cast<unsigned>(d))}});
    }
  }
  std::shuffle(terms.begin(), terms.end(), rng);
  return BellExpression(m, d, correlator ? Form::correlator : Form::bracket, std::move(terms),
                        static_cast<std::int64_t>(rng() % 41) - 20, rng() % 2 == 0 ? Direction::lower : Direction::upper,
                        rng() % 2 == 0 ? BoundModel::local : BoundModel::bipartition);
}

std::vector<std::string> keys(const Json &j) {
  std::vector<std::string> out;
  for (const auto &[k, v] : j.items()) out.push_back(k);
  return out;
}

}  // namespace

TEST(json_io, chsh_serialization_is_stable) {
  EXPECT_EQ(to_json(build_chsh()).dump(),
            R"({"m":2,"d":2,"form":"correlator","terms":[{"inputs":[0,0],"coeff":1},{"inputs":[0,1],"coeff":1},)"
            R"({"inputs":[1,0],"coeff":1},{"inputs":[1,1],"coeff":-1}],"bound":2,"direction":"upper",)"
            R"("bound_model":"local"})");
  Json smd = to_json(build_smd(3, 3));
  EXPECT_EQ(keys(smd), (std::vector<std::string>{"m", "d", "form", "terms", "bound", "direction", "bound_model"}));
  EXPECT_EQ(smd["terms"][0].dump(), R"({"inputs":[0,0,0],"star":true,"offset":1})");
  EXPECT_EQ(smd["bound"], 4);
}

TEST(json_io, expression_round_trip) {
  for (const BellExpression &e : {build_chsh(), build_svetlichny(4), build_cglmp(5), build_smd(3, 3), build_smd(5, 4)}) {
    EXPECT_EQ(expression_from_json(to_json(e)), e);
    EXPECT_EQ(expression_from_json(parse_json(to_json(e).dump(2))), e);
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    BellExpression e = random_expression(rng);
    EXPECT_EQ(expression_from_json(parse_json(to_json(e).dump())), e);
  }
}

TEST(json_io, behavior_round_trip_is_exact) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int d = 2 + static_cast<int>(rng() % 3);
    Behavior b = svetlichny::testing::random_behavior(m, d, rng);
    Behavior back = behavior_from_json(parse_json(to_json(b).dump()));
    EXPECT_EQ(back, b);
    EXPECT_EQ(behavior_hash(back), behavior_hash(b));
  }
  EXPECT_EQ(keys(to_json(uniform_behavior(2, 2))), (std::vector<std::string>{"m", "d", "probs"}));
}

TEST(json_io, scenario_round_trip) {
  for (auto [m, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
    ScenarioSpec spec = reference_scenario(m, d);
    ScenarioSpec back = scenario_from_json(parse_json(to_json(spec).dump()));
    EXPECT_EQ(back.m, spec.m);
    EXPECT_EQ(back.d, spec.d);
    EXPECT_EQ(back.kind, spec.kind);
    EXPECT_EQ(back.settings.alphas, spec.settings.alphas);
    EXPECT_EQ(back.settings.sign, spec.settings.sign);
    if (spec.kind == StateKind::gamma) {
      EXPECT_EQ(back.gamma, spec.gamma);
    }
    EXPECT_EQ(scenario_behavior(back.build()), scenario_behavior(spec.build()));
  }
  Json ghz = to_json(reference_scenario(3, 2));
  EXPECT_EQ(keys(ghz), (std::vector<std::string>{"m", "d", "state", "alphas", "sign"}));
  EXPECT_FALSE(ghz["state"].contains("gamma"));
  EXPECT_EQ(ghz["state"]["kind"], "ghz");
}

TEST(json_io, report_layouts) {
  Json bound = to_json(bipartition_bound(build_svetlichny(3)));
  EXPECT_EQ(keys(bound), (std::vector<std::string>{"bound", "model", "per_partition", "argmax_vertex"}));
  EXPECT_EQ(bound["per_partition"].dump(), R"({"1|2,3":4,"1,2|3":4,"1,3|2":4})");
  Json local = to_json(local_bound(build_chsh()));
  EXPECT_EQ(local["model"], "local");
  EXPECT_TRUE(local["argmax_vertex"].contains("outputs"));
  Json facet = to_json(facet_check(build_chsh()));
  EXPECT_EQ(keys(facet), (std::vector<std::string>{"polytope_dim", "saturating_rank", "is_facet", "vertices_scanned",
                                                   "saturating_count", "mode"}));
}

TEST(json_io, malformed_inputs_are_rejected) {
  const std::vector<std::string> bad_expressions = {
      R"({"m":2,"d":2})",
      R"({"m":2,"d":2,"form":"weird","terms":[],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"correlator","terms":[{"inputs":[0],"coeff":1}],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"correlator","terms":[{"inputs":[0,2],"coeff":1}],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"correlator","terms":[{"inputs":[0,1],"coeff":3}],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":3,"form":"correlator","terms":[],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"bracket","terms":[{"inputs":[0,1],"coeff":1}],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"correlator","terms":[],"bound":0.5,"direction":"upper","bound_model":"local"})",
      R"({"m":2,"d":2,"form":"correlator","terms":[],"bound":0,"direction":"sideways","bound_model":"local"})",
      R"({"m":"two","d":2,"form":"correlator","terms":[],"bound":0,"direction":"upper","bound_model":"local"})",
      R"({"m":99,"d":2,"form":"correlator","terms":[],"bound":0,"direction":"upper","bound_model":"local"})",
      R"([1,2,3])",
  };
  for (const std::string &text : bad_expressions) {
    EXPECT_THROW(expression_from_json(parse_json(text)), InvalidArgument) << text;
  }
  EXPECT_THROW(parse_json("{not json"), InvalidArgument);
  EXPECT_THROW(parse_json(""), InvalidArgument);
  EXPECT_THROW(behavior_from_json(parse_json(R"({"m":2,"d":2,"probs":[1,0,0]})")), InvalidArgument);
  EXPECT_THROW(behavior_from_json(parse_json(R"({"m":40,"d":2,"probs":[]})")), InvalidArgument);
  EXPECT_THROW(behavior_from_json(parse_json(R"({"m":1,"d":2,"probs":[0.5,0.5,0.5,"x"]})")), InvalidArgument);
  EXPECT_THROW(scenario_from_json(parse_json(R"({"m":2,"d":2,"state":{"kind":"w"},"alphas":[[0,0],[0,0]],"sign":1})")),
               InvalidArgument);
  EXPECT_THROW(scenario_from_json(parse_json(R"({"m":2,"d":2,"state":{"kind":"ghz"},"alphas":[[0,0]],"sign":1})")),
               InvalidArgument);
  EXPECT_THROW(scenario_from_json(parse_json(R"({"m":2,"d":2,"state":{"kind":"ghz"},"alphas":[[0,0],[0,0]],"sign":2})")),
               InvalidArgument);
  EXPECT_THROW(scenario_from_json(parse_json(R"({"m":2,"d":3,"state":{"kind":"gamma","gamma":-1},"alphas":[[0,0],[0,0]],"sign":1})")),
               InvalidArgument);
}

TEST(json_io, behavior_hash) {
  Behavior a = uniform_behavior(3, 2);
  Behavior b = scenario_behavior(reference_scenario(3, 2).build());
  EXPECT_EQ(behavior_hash(a), behavior_hash(uniform_behavior(3, 2)));
  EXPECT_NE(behavior_hash(a), behavior_hash(b));
  EXPECT_EQ(behavior_hash(a).size(), 16u);
  EXPECT_EQ(behavior_hash(a).find_first_not_of("0123456789abcdef"), std::string::npos);
}
