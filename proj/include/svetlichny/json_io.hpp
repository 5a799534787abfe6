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

#pragma once

#include <string>

#include <json.hpp>

#include "svetlichny/behavior.hpp"
#include "svetlichny/behaviors.hpp"
#include "svetlichny/bell_expr.hpp"
#include "svetlichny/polytope.hpp"
#include "svetlichny/quantum.hpp"

namespace svetlichny {

using Json = nlohmann::ordered_json;

// Every *_from_json throws InvalidArgument on malformed input.

Json to_json(const BellExpression &e);
BellExpression expression_from_json(const Json &j);

Json to_json(const Behavior &b);
Behavior behavior_from_json(const Json &j);

Json to_json(const BoundReport &report);
Json to_json(const FacetReport &report);

Json to_json(const ScenarioSpec &spec);
ScenarioSpec scenario_from_json(const Json &j);

/// Parses text, mapping syntax errors to InvalidArgument.
Json parse_json(const std::string &text);

/// 16 hex digits of FNV-1a over the probabilities rounded to 12 decimals.
std::string behavior_hash(const Behavior &b);

const char *to_string(Form form);
const char *to_string(Direction direction);
const char *to_string(BoundModel model);

}  // namespace svetlichny
