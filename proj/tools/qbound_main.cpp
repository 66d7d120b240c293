// Copyright 2026 The qbound Authors
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


// Command-line front end for the scenario runner.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbound/errors.hpp"
#include "qbound/scenario.hpp"
#include "qbound/sdp.hpp"

#ifndef QBOUND_PRESET_DIR
#define QBOUND_PRESET_DIR "presets"
#endif

namespace {

using qbound::ConfigError;
using qbound::ScenarioConfig;

struct Options {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string json;
  bool infinite_shots = false;
  std::optional<std::size_t> repeats;
  std::vector<double> shots;
  std::string strategy;
  std::string direction = "lower";
};

std::filesystem::path preset_path(const std::string& name) {
  const char* env = std::getenv("QBOUND_PRESET_DIR");
  const std::filesystem::path dir = env && *env ? env : QBOUND_PRESET_DIR;
  const auto path = dir / (name + ".json");
  if (!std::filesystem::exists(path)) throw ConfigError("unknown preset '" + name + "'");
  return path;
}

ScenarioConfig materialize(const Options& o, const std::string& default_preset) {
  if (!o.config.empty() && !o.preset.empty()) {
    throw ConfigError("--config and --preset are mutually exclusive");
  }
  ScenarioConfig c = qbound::load_config(
      !o.config.empty() ? std::filesystem::path(o.config)
                        : preset_path(o.preset.empty() ? default_preset : o.preset));
  if (o.seed) c.seed = *o.seed;
  if (o.repeats) {
    if (*o.repeats < 1) throw ConfigError("--repeats must be >= 1");
    c.repeats = *o.repeats;
  }
  if (!o.shots.empty()) {
    c.shots.clear();
    for (double s : o.shots) {
      if (s < 1) throw ConfigError("--shots values must be positive");
      c.shots.push_back(static_cast<std::int64_t>(s));
    }
  }
  if (o.infinite_shots) c.infinite_shots = true;
  if (!o.strategy.empty()) {
    std::vector<qbound::StrategySpec> keep;
    for (const auto& s : c.strategies) {
      if (s.label == o.strategy) keep.push_back(s);
    }
    if (keep.empty()) throw ConfigError("no strategy labelled '" + o.strategy + "'");
    c.strategies = keep;
  }
  return c;
}

void require_objective(const ScenarioConfig& c, qbound::ObjectiveKind kind, const char* what) {
  if (c.objective != kind) throw ConfigError(std::string("this subcommand needs a ") + what + " objective");
}

void emit(const Options& o, const qbound::ScenarioResult& r) {
  if (o.out.empty()) {
    qbound::write_csv(std::cout, r.rows);
  } else {
    qbound::write_csv(std::filesystem::path(o.out), r.rows);
    for (const auto& a : r.summary["aggregates"]) {
      std::cout << a["strategy"].get<std::string>() << "  n_tot=" << a["n_tot"]
                << "  delta=" << a["delta"] << "  mean_lb=" << a["mean_lb"]
                << "  mean_ub=" << a["mean_ub"] << "\n";
    }
    if (r.true_value) std::cout << "true value " << *r.true_value << "\n";
  }
  if (!o.json.empty()) {
    std::ofstream js(o.json);
    if (!js) throw ConfigError("cannot write " + o.json);
    js << r.summary.dump(2) << "\n";
  }
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "scenario config file (JSON)");
  sub->add_option("--preset", o.preset, "bundled preset: fig3, fig4, fig5, fig6, fig7-desk");
  sub->add_option("--seed", o.seed, "master RNG seed");
  sub->add_option("--out", o.out, "CSV output path (default stdout)");
  sub->add_option("--json", o.json, "JSON summary output path");
  sub->add_flag("--infinite-shots", o.infinite_shots, "use exact moments with zero-width bands");
  sub->add_option("--repeats", o.repeats, "repeats per shot budget");
  sub->add_option("--shots", o.shots, "override the shot schedule")->delimiter(',');
  sub->add_option("--strategy", o.strategy, "restrict to one strategy label");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbound: certified bounds on quantum expectation values"};
  app.require_subcommand(1);
  Options o;

  auto* energy = app.add_subcommand("bound-energy", "bound a ground-state energy");
  auto* heat = app.add_subcommand("bound-heat", "bound a steady-state heat current");
  auto* purity = app.add_subcommand("bound-purity", "lower-bound the purity of a state");
  auto* sweep = app.add_subcommand("sweep-shots", "run a scenario over its shot schedule");
  auto* conf = app.add_subcommand("sweep-confidence", "run a scenario over confidence levels");
  auto* sdpa = app.add_subcommand("export-sdpa", "write one strategy's conic program as SDPA");
  auto* oracle = app.add_subcommand("oracle", "print exact reference values");
  for (auto* sub : {energy, heat, purity, sweep, conf, sdpa, oracle}) add_common(sub, o);
  sdpa->add_option("--direction", o.direction, "lower or upper")
      ->check(CLI::IsMember({"lower", "upper"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (energy->parsed()) {
      auto c = materialize(o, "fig4");
      require_objective(c, qbound::ObjectiveKind::energy, "energy");
      emit(o, qbound::run_scenario(c));
    } else if (heat->parsed()) {
      auto c = materialize(o, "fig3");
      require_objective(c, qbound::ObjectiveKind::heat_current, "heat_current");
      emit(o, qbound::run_scenario(c));
    } else if (purity->parsed()) {
      auto c = materialize(o, "fig6");
      require_objective(c, qbound::ObjectiveKind::purity, "purity");
      emit(o, qbound::run_scenario(c));
    } else if (sweep->parsed()) {
      emit(o, qbound::run_scenario(materialize(o, "fig4")));
    } else if (conf->parsed()) {
      emit(o, qbound::run_confidence_sweep(materialize(o, "fig7-desk")));
    } else if (sdpa->parsed()) {
      auto c = materialize(o, "fig4");
      const std::string label = o.strategy.empty() ? c.strategies.front().label : o.strategy;
      const auto dir = o.direction == "upper" ? qbound::Direction::upper : qbound::Direction::lower;
      const auto problem = qbound::build_problem(c, label, dir);
      if (o.out.empty()) {
        std::cout << qbound::to_sdpa_string(problem);
      } else {
        qbound::export_sdpa(problem, o.out);
      }
    } else if (oracle->parsed()) {
      const auto report = qbound::oracle_report(materialize(o, "fig4"));
      std::cout << report.dump(2) << "\n";
      if (!report.value("available", false)) {
        throw qbound::SizeLimitError("system too large for the exact oracle");
      }
    }
  } catch (const qbound::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const qbound::SizeLimitError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
