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

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "svetlichny/errors.hpp"

namespace svetlichny {

namespace {

template <typename F>
auto guarded(const char *what, F &&f) {
  try {
    return f();
  } catch (const Json::exception &ex) {
    throw InvalidArgument(std::string(what) + ": " + ex.what());
  }
}

std::int64_t integral(const Json &j, const char *what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  }
  throw InvalidArgument(std::string(what) + " must be an integer");
}

Json group_json(const GroupStrategy &s) {
  Json group = Json::array();
  for (int p : s.group) group.push_back(p + 1);
  return Json{{"group", group}, {"map", s.map}};
}

Json vertex_json(const BipartitionVertex &v) {
  return Json{{"partition", v.partition.label()}, {"first", group_json(v.first)}, {"second", group_json(v.second)}};
}

}  // namespace

const char *to_string(Form form) { return form == Form::correlator ? "correlator" : "bracket"; }
const char *to_string(Direction direction) { return direction == Direction::lower ? "lower" : "upper"; }
const char *to_string(BoundModel model) { return model == BoundModel::local ? "local" : "bipartition"; }

Json to_json(const BellExpression &e) {
  Json terms = Json::array();
  const int m = e.parties();
  for (const Term &t : e.terms()) {
    Json inputs = Json::array();
    for (int j = 0; j < m; ++j) inputs.push_back(input_bit(t.inputs, j, m));
    if (const Bracket *b = std::get_if<Bracket>(&t.weight)) {
      terms.push_back(Json{{"inputs", inputs}, {"star", b->star}, {"offset", b->offset}});
    } else {
      terms.push_back(Json{{"inputs", inputs}, {"coeff", std::get<Correlator>(t.weight).coeff}});
    }
  }
  return Json{{"m", m},
              {"d", e.outcomes()},
              {"form", to_string(e.form())},
              {"terms", terms},
              {"bound", e.bound()},
              {"direction", to_string(e.direction())},
              {"bound_model", to_string(e.bound_model())}};
}

BellExpression expression_from_json(const Json &j) {
  return guarded("expression JSON", [&] {
    const int m = j.at("m").get<int>();
    const int d = j.at("d").get<int>();
    const std::string form_text = j.at("form").get<std::string>();
    if (form_text != "correlator" && form_text != "bracket") throw InvalidArgument("expression JSON: unknown form");
    const Form form = form_text == "correlator" ? Form::correlator : Form::bracket;
    const std::string dir = j.at("direction").get<std::string>();
    if (dir != "lower" && dir != "upper") throw InvalidArgument("expression JSON: unknown direction");
    const std::string model = j.at("bound_model").get<std::string>();
    if (model != "local" && model != "bipartition") throw InvalidArgument("expression JSON: unknown bound_model");
    if (m < 1 || m > kMaxParties) throw InvalidArgument("expression JSON: m out of range");

    std::vector<Term> terms;
    for (const Json &t : j.at("terms")) {
      const Json &inputs = t.at("inputs");
      if (!inputs.is_array() || static_cast<int>(inputs.size()) != m) {
        throw InvalidArgument("expression JSON: each term needs one input bit per party");
      }
      InputIndex x = 0;
      for (const Json &bit : inputs) {
        int value = bit.get<int>();
        if (value != 0 && value != 1) throw InvalidArgument("expression JSON: input bits must be 0 or 1");
        x = (x << 1) | static_cast<InputIndex>(value);
      }
      if (form == Form::bracket) {
        terms.push_back({x, Bracket{t.at("star").get<bool>(), t.at("offset").get<int>()}});
      } else {
        terms.push_back({x, Correlator{t.at("coeff").get<int>()}});
      }
    }
    return BellExpression(m, d, form, std::move(terms), integral(j.at("bound"), "expression JSON: bound"),
                          dir == "lower" ? Direction::lower : Direction::upper,
                          model == "local" ? BoundModel::local : BoundModel::bipartition);
  });
}

Json to_json(const Behavior &b) {
  return Json{{"m", b.parties()}, {"d", b.outcomes()}, {"probs", std::vector<double>(b.probs().begin(), b.probs().end())}};
}

Behavior behavior_from_json(const Json &j) {
  return guarded("behavior JSON", [&] {
    return Behavior(j.at("m").get<int>(), j.at("d").get<int>(), j.at("probs").get<std::vector<double>>());
  });
}

Json to_json(const BoundReport &report) {
  Json out{{"bound", report.bound}, {"model", to_string(report.model)}};
  Json per = Json::object();
  for (const PartitionBound &pb : report.per_partition) per[pb.partition.label()] = pb.bound;
  out["per_partition"] = per;
  if (report.argopt_vertex) {
    out["argmax_vertex"] = vertex_json(*report.argopt_vertex);
  } else if (report.argopt_local) {
    Json outputs = Json::array();
    for (const auto &pair : report.argopt_local->outputs) outputs.push_back(Json::array({pair[0], pair[1]}));
    out["argmax_vertex"] = Json{{"outputs", outputs}};
  } else {
    out["argmax_vertex"] = Json::object();
  }
  return out;
}

Json to_json(const FacetReport &report) {
  return Json{{"polytope_dim", report.polytope_dim},       {"saturating_rank", report.saturating_rank},
              {"is_facet", report.is_facet},               {"vertices_scanned", report.vertices_scanned},
              {"saturating_count", report.saturating_count}, {"mode", report.mode}};
}

Json to_json(const ScenarioSpec &spec) {
  Json state{{"kind", spec.kind == StateKind::ghz ? "ghz" : "gamma"}};
  if (spec.kind == StateKind::gamma) state["gamma"] = spec.gamma;
  Json alphas = Json::array();
  for (const auto &pair : spec.settings.alphas) alphas.push_back(Json::array({pair[0], pair[1]}));
  return Json{{"m", spec.m}, {"d", spec.d}, {"state", state}, {"alphas", alphas}, {"sign", spec.settings.sign}};
}

ScenarioSpec scenario_from_json(const Json &j) {
  return guarded("scenario JSON", [&] {
    ScenarioSpec spec;
    spec.m = j.at("m").get<int>();
    spec.d = j.at("d").get<int>();
    const Json &state = j.at("state");
    const std::string kind = state.at("kind").get<std::string>();
    if (kind == "ghz") {
      spec.kind = StateKind::ghz;
    } else if (kind == "gamma") {
      spec.kind = StateKind::gamma;
      spec.gamma = state.at("gamma").get<double>();
    } else {
      throw InvalidArgument("scenario JSON: unknown state kind '" + kind + "'");
    }
    for (const Json &pair : j.at("alphas")) {
      if (!pair.is_array() || pair.size() != 2) throw InvalidArgument("scenario JSON: alphas entries are [a, a']");
      spec.settings.alphas.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    spec.settings.sign = j.value("sign", 1);
    // Validates sizes and phases.
    (void)spec.build();
    return spec;
  });
}

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &ex) {
    throw InvalidArgument(std::string("malformed JSON: ") + ex.what());
  }
}

std::string behavior_hash(const Behavior &b) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const char *s) {
    for (; *s != '\0'; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 0x100000001b3ULL;
    }
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d,%d;", b.parties(), b.outcomes());
  feed(buf);
  for (double p : b.probs()) {
    double rounded = std::round(p * 1e12) / 1e12;
    if (rounded == 0.0) rounded = 0.0;  // folds -0.0
    std::snprintf(buf, sizeof buf, "%.12f;", rounded);
    feed(buf);
  }
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace svetlichny
