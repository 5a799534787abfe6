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

#include "svetlichny/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "svetlichny/bell_expr.hpp"
#include "svetlichny/behaviors.hpp"
#include "svetlichny/errors.hpp"
#include "svetlichny/json_io.hpp"
#include "svetlichny/polytope.hpp"
#include "svetlichny/quantum.hpp"

namespace svetlichny::cli {

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BellExpression resolve_expression(const RunConfig &config) {
  if (config.expr_path) return expression_from_json(parse_json(read_file(*config.expr_path)));
  const std::string form = config.form.empty() ? (config.d == 2 ? "correlator" : "bracket") : config.form;
  if (form == "correlator") {
    if (config.d != 2) throw InvalidArgument("correlator form requires --d 2");
    return config.m == 2 ? build_chsh() : build_svetlichny(config.m);
  }
  return build_smd(config.m, config.d);
}

ScenarioSpec resolve_scenario(const RunConfig &config, const BellExpression &e) {
  const bool builtin = config.scenario == "reference" || config.scenario == "paper";
  ScenarioSpec spec = builtin ? reference_scenario(e.parties(), e.outcomes())
                                                 : scenario_from_json(parse_json(read_file(config.scenario)));
  if (spec.m != e.parties() || spec.d != e.outcomes()) {
    throw InvalidArgument("scenario is (m=" + std::to_string(spec.m) + ", d=" + std::to_string(spec.d) +
                          ") but the expression is (m=" + std::to_string(e.parties()) +
                          ", d=" + std::to_string(e.outcomes()) + ")");
  }
  return spec;
}

std::string render_term(const BellExpression &e, const Term &t) {
  const int m = e.parties();
  std::string parties;
  for (int j = 0; j < m; ++j) {
    std::string a = "a" + std::to_string(j + 1) + (input_bit(t.inputs, j, m) ? "'" : "");
    if (const Bracket *b = std::get_if<Bracket>(&t.weight); b != nullptr && j > 0) parties += "+";
    parties += a;
  }
  if (const Bracket *b = std::get_if<Bracket>(&t.weight)) {
    const int d = e.outcomes();
    int shown = b->offset <= d / 2 ? b->offset : b->offset - d;
    std::string offset = shown == 0 ? "" : (shown > 0 ? "+" : "") + std::to_string(shown);
    return "[" + parties + offset + "]" + (b->star ? "*" : "");
  }
  return (std::get<Correlator>(t.weight).coeff > 0 ? "+" : "-") + parties;
}

// Table rendering of a JSON report: one "key: value" line per top-level field.
std::string render_table(const Json &report) {
  std::ostringstream os;
  for (const auto &[key, value] : report.items()) {
    os << std::left << std::setw(18) << key << ' ';
    if (value.is_string()) {
      os << value.get<std::string>();
    } else {
      os << value.dump();
    }
    os << '\n';
  }
  return os.str();
}

struct Report {
  Json json;
  std::string table;
  int code = kOk;
  std::string message;
};

Report do_generate(const RunConfig &config) {
  BellExpression e = resolve_expression(config);
  Report r{to_json(e), {}, kOk, {}};
  std::ostringstream os;
  os << "m " << e.parties() << ", d " << e.outcomes() << ", " << to_string(e.form()) << " form\n";
  for (const Term &t : e.terms()) os << "  " << render_term(e, t) << '\n';
  os << (e.direction() == Direction::lower ? ">= " : "<= ") << e.bound() << " (" << to_string(e.bound_model())
     << ")\n";
  r.table = os.str();
  return r;
}

Report do_bound(const RunConfig &config) {
  BellExpression e = resolve_expression(config);
  EnumerationOptions options{config.cap, config.threads};
  BoundReport report;
  if (config.model == "local") {
    report = local_bound(e, options);
  } else {
    std::vector<Bipartition> partitions;
    if (config.partition) partitions.push_back(parse_bipartition(*config.partition, e.parties()));
    report = bipartition_bound(e, options, partitions);
  }
  Report r{to_json(report), {}, kOk, {}};
  r.table = render_table(r.json);
  const bool same_model = (config.model == "local") == (e.bound_model() == BoundModel::local);
  if (same_model && !config.partition && e.improves(report.bound, e.bound())) {
    r.code = kInconsistency;
    r.message = "a vertex reaches " + std::to_string(report.bound) + ", beyond the declared bound " +
                std::to_string(e.bound());
  }
  return r;
}

Json scenario_result(const BellExpression &e, const ScenarioSpec &spec, bool require_violation) {
  const Behavior behavior = scenario_behavior(spec.build());
  const double value = evaluate(e, behavior);
  const double noise = evaluate(e, uniform_behavior(e.parties(), e.outcomes()));
  Json out{{"value", value}, {"bound", e.bound()}, {"direction", to_string(e.direction())},
           {"violation", violation(e, behavior)}};
  if (require_violation || violation(e, behavior) > 0.0) {
    out["visibility"] = critical_visibility(e, behavior);
  } else {
    out["visibility"] = nullptr;
  }
  out["noise_value"] = noise;
  out["behavior_hash"] = behavior_hash(behavior);
  out["scenario"] = to_json(spec);
  return out;
}

Report do_quantum(const RunConfig &config, bool visibility) {
  BellExpression e = resolve_expression(config);
  Report r{scenario_result(e, resolve_scenario(config, e), visibility), {}, kOk, {}};
  r.table = render_table(r.json);
  return r;
}

Report do_facet(const RunConfig &config) {
  BellExpression e = resolve_expression(config);
  EnumerationOptions options{config.cap, config.threads};
  FacetReport report = config.sampled
                           ? facet_check_sampled(e, SamplingOptions{config.samples, config.seed.value_or(1)}, options)
                           : facet_check(e, options);
  Report r{to_json(report), {}, kOk, {}};
  r.table = render_table(r.json);
  return r;
}

Report do_optimize(const RunConfig &config) {
  if (!config.seed) throw InvalidArgument("optimize requires --seed");
  BellExpression e = resolve_expression(config);
  ScenarioFamily family;
  std::string name = config.family.empty() ? (e.outcomes() == 3 ? "gamma" : "ghz") : config.family;
  family.kind = name == "gamma" ? StateKind::gamma : StateKind::ghz;
  OptimizerOptions options;
  options.restarts = config.restarts;
  options.threads = config.threads;
  OptimizationResult result = optimize_scenario(e, family, *config.seed, options);
  Json out = scenario_result(e, result.scenario, false);
  out["restart_violations"] = result.restart_violations;
  Report r{out, {}, kOk, {}};
  r.table = render_table(r.json);
  return r;
}

Report dispatch(const RunConfig &config) {
  switch (config.command) {
    case Command::generate:
      return do_generate(config);
    case Command::bound:
      return do_bound(config);
    case Command::quantum:
      return do_quantum(config, false);
    case Command::visibility:
      return do_quantum(config, true);
    case Command::facet:
      return do_facet(config);
    case Command::optimize:
      return do_optimize(config);
  }
  return {};
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  RunConfig config;
  config.threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Svetlichny/CGLMP Bell inequalities: construction, bounds, facets and quantum violations",
               "svetlichny"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--m", config.m, "Number of parties")->check(CLI::Range(1, kMaxParties));
    sub->add_option("--d", config.d, "Number of outcomes")->check(CLI::Range(2, 64));
    sub->add_option("--form", config.form, "Expression form (default: correlator for --d 2, else bracket)")->check(CLI::IsMember({"correlator", "bracket"}));
    sub->add_option("--expr", config.expr_path, "Read the expression from a JSON file");
    sub->add_option("--out", config.out_path, "Write the report to a file");
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--cap", config.cap, "Enumeration cap")->check(CLI::PositiveNumber);
    sub->add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", config.verbose, "Show timing in table output");
  };

  CLI::App *generate = app.add_subcommand("generate", "Print an inequality of the family");
  add_common(generate);
  CLI::App *bound = app.add_subcommand("bound", "Certify a local or bipartition bound by enumeration");
  add_common(bound);
  bound->add_option("--model", config.model, "Model")->check(CLI::IsMember({"local", "bipartition"}));
  bound->add_option("--partition", config.partition, "Restrict to one bipartition, e.g. 1,2|3");
  CLI::App *quantum = app.add_subcommand("quantum", "Quantum value of a measurement scenario");
  add_common(quantum);
  quantum->add_option("--scenario", config.scenario, "'reference' (alias 'paper') or a scenario JSON file");
  CLI::App *visibility = app.add_subcommand("visibility", "Critical white-noise visibility of a scenario");
  add_common(visibility);
  visibility->add_option("--scenario", config.scenario, "'reference' (alias 'paper') or a scenario JSON file");
  CLI::App *facet = app.add_subcommand("facet", "Check whether the inequality is a facet of the bipartition polytope");
  add_common(facet);
  facet->add_flag("--sampled", config.sampled, "One-sided sampled certificate (for m = 4)");
  facet->add_option("--samples", config.samples, "Sample budget for --sampled")->check(CLI::PositiveNumber);
  facet->add_option("--seed", config.seed, "Random seed for --sampled");
  CLI::App *optimize = app.add_subcommand("optimize", "Search measurement phases maximizing the violation");
  add_common(optimize);
  optimize->add_option("--seed", config.seed, "Random seed (required)");
  optimize->add_option("--family", config.family, "State family")->check(CLI::IsMember({"ghz", "gamma"}));
  optimize->add_option("--restarts", config.restarts, "Random restarts")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInvalidArguments;
  }

  if (generate->parsed()) config.command = Command::generate;
  if (bound->parsed()) config.command = Command::bound;
  if (quantum->parsed()) config.command = Command::quantum;
  if (visibility->parsed()) config.command = Command::visibility;
  if (facet->parsed()) config.command = Command::facet;
  if (optimize->parsed()) config.command = Command::optimize;

  try {
    const auto start = std::chrono::steady_clock::now();
    Report report = dispatch(config);
    std::string text;
    if (config.format == "json") {
      text = report.json.dump(2) + "\n";
    } else {
      text = report.table;
      if (config.verbose) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        text += "elapsed_seconds    " + std::to_string(elapsed.count()) + "\n";
      }
    }
    if (config.out_path) {
      std::ofstream file(*config.out_path);
      if (!file || !(file << text)) {
        err << "error: cannot write '" << *config.out_path << "'\n";
        return kInvalidArguments;
      }
    } else {
      out << text;
    }
    if (report.code != kOk) err << "error: " << report.message << '\n';
    return report.code;
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const NoViolationError &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const ResourceLimitError &e) {
    err << "error: " << e.what() << " (raise --cap to allow)\n";
    return kResourceLimit;
  } catch (const InconsistencyError &e) {
    err << "error: " << e.what() << '\n';
    return kInconsistency;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace svetlichny::cli
