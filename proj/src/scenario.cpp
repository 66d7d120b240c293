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


#include "qbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "qbound/confidence.hpp"
#include "qbound/errors.hpp"
#include "qbound/oracle.hpp"
#include "qbound/relax.hpp"
#include "qbound/sampler.hpp"

namespace qbound {

// ---------------------------------------------------------------- config I/O

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

BathSpec bath_from_json(const json& j, BathSpec fallback) {
  check_keys(j, {"temperature", "rate", "quantum"}, "bath");
  fallback.temperature = get_or(j, "temperature", fallback.temperature);
  fallback.rate = get_or(j, "rate", fallback.rate);
  fallback.quantum = get_or(j, "quantum", fallback.quantum);
  return fallback;
}

json bath_to_json(const BathSpec& b) {
  return {{"temperature", b.temperature}, {"rate", b.rate}, {"quantum", b.quantum}};
}

const std::map<std::string, MeasurementSpec::Kind>& measurement_kinds() {
  static const std::map<std::string, MeasurementSpec::Kind> kinds{
      {"objective_strings", MeasurementSpec::Kind::objective_strings},
      {"second_order_all", MeasurementSpec::Kind::second_order_all},
      {"most_frequent", MeasurementSpec::Kind::most_frequent},
      {"first_generated", MeasurementSpec::Kind::first_generated},
      {"custom", MeasurementSpec::Kind::custom}};
  return kinds;
}

std::string kind_name(MeasurementSpec::Kind k) {
  for (const auto& [name, kind] : measurement_kinds()) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::vector<std::size_t> one_based_sites(const json& list) {
  std::vector<std::size_t> out;
  for (const auto& v : list) {
    const auto s = v.get<std::int64_t>();
    if (s < 1) throw ConfigError("site indices in configs are 1-based");
    out.push_back(static_cast<std::size_t>(s - 1));
  }
  return out;
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  try {
    check_keys(j,
               {"name", "model", "objective", "purity_max_weight", "delta", "confidence_levels",
                "shots", "repeats", "seed", "infinite_shots", "relaxation", "measurements",
                "strategies", "directions", "solver", "description"},
               "config");
    c.name = get_or<std::string>(j, "name", c.name);

    if (j.contains("model")) {
      const json& m = j.at("model");
      check_keys(m, {"kind", "rows", "cols", "sites", "g", "J", "hot", "cold", "normalization"},
                 "model");
      c.model.kind = get_or<std::string>(m, "kind", c.model.kind);
      c.model.rows = get_or(m, "rows", c.model.rows);
      c.model.cols = get_or(m, "cols", c.model.cols);
      c.model.sites = get_or(m, "sites", c.model.sites);
      c.model.g = get_or(m, "g", c.model.g);
      c.model.J = get_or(m, "J", c.model.J);
      if (m.contains("hot")) c.model.hot = bath_from_json(m.at("hot"), c.model.hot);
      if (m.contains("cold")) c.model.cold = bath_from_json(m.at("cold"), c.model.cold);
      const auto norm = get_or<std::string>(m, "normalization", "spin_half");
      if (norm == "spin_half") {
        c.model.normalization = MgNormalization::spin_half;
      } else if (norm == "pauli") {
        c.model.normalization = MgNormalization::pauli;
      } else {
        throw ConfigError("model.normalization must be spin_half or pauli");
      }
      if (c.model.kind != "tfi" && c.model.kind != "boundary_driven" &&
          c.model.kind != "majumdar_ghosh") {
        throw ConfigError("unknown model kind '" + c.model.kind + "'");
      }
    }

    if (j.contains("objective")) {
      const json& o = j.at("objective");
      if (o.is_string()) {
        const auto s = o.get<std::string>();
        if (s == "energy") {
          c.objective = ObjectiveKind::energy;
        } else if (s == "heat_current") {
          c.objective = ObjectiveKind::heat_current;
        } else if (s == "purity") {
          c.objective = ObjectiveKind::purity;
        } else {
          throw ConfigError("unknown objective '" + s + "'");
        }
      } else if (o.is_object() && o.contains("custom")) {
        c.objective = ObjectiveKind::custom;
        c.custom_objective = poly_from_json(o.at("custom"));
      } else {
        throw ConfigError("objective must be a name or {\"custom\": polynomial}");
      }
    }
    c.purity_max_weight = get_or(j, "purity_max_weight", c.purity_max_weight);
    c.delta = get_or(j, "delta", c.delta);
    c.confidence_levels = get_or(j, "confidence_levels", c.confidence_levels);
    if (j.contains("shots")) {
      c.shots.clear();
      for (const auto& v : j.at("shots")) c.shots.push_back(static_cast<std::int64_t>(v.get<double>()));
    }
    c.repeats = get_or(j, "repeats", c.repeats);
    c.seed = get_or(j, "seed", c.seed);
    c.infinite_shots = get_or(j, "infinite_shots", c.infinite_shots);

    if (j.contains("relaxation")) {
      const json& r = j.at("relaxation");
      check_keys(r,
                 {"basis_size", "constraint_budget", "rdm_blocks", "symmetries", "energy_shell",
                  "real_reduction"},
                 "relaxation");
      c.basis_size = get_or(r, "basis_size", c.basis_size);
      c.constraint_budget = get_or(r, "constraint_budget", c.constraint_budget);
      c.real_reduction = get_or(r, "real_reduction", c.real_reduction);
      if (r.contains("rdm_blocks")) {
        for (const auto& b : r.at("rdm_blocks")) c.rdm_blocks.push_back(one_based_sites(b));
      }
      if (r.contains("symmetries")) {
        for (const auto& s : r.at("symmetries")) c.symmetries.push_back(poly_from_json(s));
      }
      if (r.contains("energy_shell")) {
        const json& e = r.at("energy_shell");
        check_keys(e, {"mode", "lower", "upper", "slack"}, "energy_shell");
        const auto mode = get_or<std::string>(e, "mode", "none");
        if (mode == "none") {
          c.energy_shell.mode = EnergyShellSpec::Mode::none;
        } else if (mode == "explicit") {
          c.energy_shell.mode = EnergyShellSpec::Mode::explicit_bounds;
          c.energy_shell.lower = e.at("lower").get<double>();
          c.energy_shell.upper = e.at("upper").get<double>();
        } else if (mode == "relaxation") {
          c.energy_shell.mode = EnergyShellSpec::Mode::relaxation;
          c.energy_shell.slack = get_or(e, "slack", 0.0);
        } else {
          throw ConfigError("energy_shell.mode must be none, explicit or relaxation");
        }
      }
    }

    if (j.contains("measurements")) {
      for (const auto& m : j.at("measurements")) {
        check_keys(m, {"name", "kind", "k", "letters", "strings"}, "measurement");
        MeasurementSpec spec;
        spec.name = m.at("name").get<std::string>();
        const auto kind = m.at("kind").get<std::string>();
        auto it = measurement_kinds().find(kind);
        if (it == measurement_kinds().end()) throw ConfigError("unknown measurement kind '" + kind + "'");
        spec.kind = it->second;
        spec.k = get_or<std::size_t>(m, "k", 0);
        spec.letters = get_or<std::string>(m, "letters", "");
        spec.strings = get_or(m, "strings", std::vector<std::string>{});
        c.measurements.push_back(std::move(spec));
      }
    }
    if (j.contains("strategies")) {
      for (const auto& s : j.at("strategies")) {
        check_keys(s, {"label", "sdp", "measurement"}, "strategy");
        StrategySpec spec;
        spec.label = s.at("label").get<std::string>();
        spec.sdp = get_or(s, "sdp", true);
        spec.measurement = get_or<std::string>(s, "measurement", "");
        c.strategies.push_back(std::move(spec));
      }
    }
    c.directions = get_or<std::string>(j, "directions", c.directions);

    if (j.contains("solver")) {
      const json& s = j.at("solver");
      check_keys(s, {"eps_abs", "eps_rel", "eps_infeas", "max_iters", "time_limit_s", "retry",
                     "verbose", "optimal_gap"},
                 "solver");
      c.solver.eps_abs = get_or(s, "eps_abs", c.solver.eps_abs);
      c.solver.eps_rel = get_or(s, "eps_rel", c.solver.eps_rel);
      c.solver.eps_infeas = get_or(s, "eps_infeas", c.solver.eps_infeas);
      c.solver.max_iters = get_or(s, "max_iters", c.solver.max_iters);
      c.solver.time_limit_s = get_or(s, "time_limit_s", c.solver.time_limit_s);
      c.solver.retry = get_or(s, "retry", c.solver.retry);
      c.solver.verbose = get_or(s, "verbose", c.solver.verbose);
      c.solver.optimal_gap = get_or(s, "optimal_gap", c.solver.optimal_gap);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }

  // Cross-field validation.
  if (c.shots.empty() && !c.infinite_shots) throw ConfigError("shot schedule is empty");
  for (auto s : c.shots) {
    if (s < 1) throw ConfigError("shot counts must be positive");
  }
  if (c.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  for (double level : c.confidence_levels) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence levels must lie in (0, 1)");
  }
  if (c.directions != "both" && c.directions != "lower" && c.directions != "upper") {
    throw ConfigError("directions must be both, lower or upper");
  }
  if (c.strategies.empty()) throw ConfigError("config lists no strategies");
  std::set<std::string> names;
  for (const auto& m : c.measurements) {
    if (!names.insert(m.name).second) throw ConfigError("duplicate measurement name " + m.name);
    for (char ch : m.letters) {
      if (ch != 'X' && ch != 'Y' && ch != 'Z') throw ConfigError("measurement letters must be X, Y, Z");
    }
  }
  std::set<std::string> labels;
  for (const auto& s : c.strategies) {
    if (!labels.insert(s.label).second) throw ConfigError("duplicate strategy label " + s.label);
    if (!s.measurement.empty() && !names.count(s.measurement)) {
      throw ConfigError("strategy " + s.label + " refers to unknown measurement " + s.measurement);
    }
    if (!s.sdp && s.measurement.empty()) {
      throw ConfigError("strategy " + s.label + " has neither SDP constraints nor measurements");
    }
  }
  if (c.objective == ObjectiveKind::purity && c.directions == "upper") {
    throw ConfigError("purity objective supports lower bounds only");
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  json model{{"kind", c.model.kind}, {"g", c.model.g}, {"J", c.model.J}};
  if (c.model.kind == "majumdar_ghosh") {
    model["sites"] = c.model.sites;
    model["normalization"] =
        c.model.normalization == MgNormalization::spin_half ? "spin_half" : "pauli";
  } else {
    model["rows"] = c.model.rows;
    model["cols"] = c.model.cols;
  }
  if (c.model.kind == "boundary_driven") {
    model["hot"] = bath_to_json(c.model.hot);
    model["cold"] = bath_to_json(c.model.cold);
  }
  j["model"] = model;
  switch (c.objective) {
    case ObjectiveKind::energy: j["objective"] = "energy"; break;
    case ObjectiveKind::heat_current: j["objective"] = "heat_current"; break;
    case ObjectiveKind::purity: j["objective"] = "purity"; break;
    case ObjectiveKind::custom: j["objective"] = {{"custom", to_json(c.custom_objective)}}; break;
  }
  j["purity_max_weight"] = c.purity_max_weight;
  j["delta"] = c.delta;
  if (!c.confidence_levels.empty()) j["confidence_levels"] = c.confidence_levels;
  j["shots"] = c.shots;
  j["repeats"] = c.repeats;
  j["seed"] = c.seed;
  j["infinite_shots"] = c.infinite_shots;
  json relax{{"basis_size", c.basis_size},
             {"constraint_budget", c.constraint_budget},
             {"real_reduction", c.real_reduction}};
  json rdm = json::array();
  for (const auto& b : c.rdm_blocks) {
    json sites = json::array();
    for (auto s : b) sites.push_back(s + 1);
    rdm.push_back(sites);
  }
  relax["rdm_blocks"] = rdm;
  json sym = json::array();
  for (const auto& s : c.symmetries) sym.push_back(to_json(s));
  relax["symmetries"] = sym;
  switch (c.energy_shell.mode) {
    case EnergyShellSpec::Mode::none: relax["energy_shell"] = {{"mode", "none"}}; break;
    case EnergyShellSpec::Mode::explicit_bounds:
      relax["energy_shell"] = {
          {"mode", "explicit"}, {"lower", c.energy_shell.lower}, {"upper", c.energy_shell.upper}};
      break;
    case EnergyShellSpec::Mode::relaxation:
      relax["energy_shell"] = {{"mode", "relaxation"}, {"slack", c.energy_shell.slack}};
      break;
  }
  j["relaxation"] = relax;
  j["measurements"] = json::array();
  for (const auto& m : c.measurements) {
    json mj{{"name", m.name}, {"kind", kind_name(m.kind)}};
    if (m.k) mj["k"] = m.k;
    if (!m.letters.empty()) mj["letters"] = m.letters;
    if (!m.strings.empty()) mj["strings"] = m.strings;
    j["measurements"].push_back(mj);
  }
  j["strategies"] = json::array();
  for (const auto& s : c.strategies) {
    json sj{{"label", s.label}, {"sdp", s.sdp}};
    if (!s.measurement.empty()) sj["measurement"] = s.measurement;
    j["strategies"].push_back(sj);
  }
  j["directions"] = c.directions;
  j["solver"] = {{"eps_abs", c.solver.eps_abs},       {"eps_rel", c.solver.eps_rel},
                 {"eps_infeas", c.solver.eps_infeas}, {"max_iters", c.solver.max_iters},
                 {"time_limit_s", c.solver.time_limit_s}, {"retry", c.solver.retry},
                 {"optimal_gap", c.solver.optimal_gap}};
  return j;
}

// ---------------------------------------------------------------- preparation

namespace {

struct Prepared {
  ScenarioConfig cfg;
  std::size_t n = 0;
  OperatorPoly hamiltonian;
  std::optional<LindbladModel> lindblad;
  ObjectiveSpec objective;
  std::vector<PauliString> objective_strings;
  MomentRegistry registry{0};
  std::vector<MomentMatrixSpec> blocks;
  std::vector<LinearMomentConstraint> guarantees;
  std::vector<std::vector<PauliString>> selections;  // by measurement index
  std::optional<ShotSource> source;
  std::optional<double> true_value;
  std::optional<double> shell_lower;
  std::optional<double> shell_upper;
  bool basis_truncated = false;
  std::size_t steady_constraints = 0;
};

bool letters_allowed(const PauliString& p, const std::string& letters) {
  if (letters.empty()) return true;
  for (std::size_t s : p.support()) {
    if (letters.find(to_char(p.op(s))) == std::string::npos) return false;
  }
  return true;
}

std::vector<PauliString> strings_up_to_weight(std::size_t n, std::size_t max_weight) {
  std::vector<PauliString> out;
  // Enumerate supports of size 1..max_weight, then letters on each support.
  std::vector<std::size_t> support;
  auto emit_letters = [&](const std::vector<std::size_t>& sites) {
    const std::size_t w = sites.size();
    std::size_t combos = 1;
    for (std::size_t k = 0; k < w; ++k) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      PauliString p(n);
      std::size_t c = code;
      for (std::size_t k = 0; k < w; ++k) {
        p.set(sites[k], static_cast<PauliOp>(1 + c % 3));
        c /= 3;
      }
      out.push_back(p);
    }
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!support.empty()) emit_letters(support);
    if (support.size() == max_weight) return;
    for (std::size_t s = start; s < n; ++s) {
      support.push_back(s);
      self(self, s + 1);
      support.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool needs_data(const ScenarioConfig& c) {
  return std::any_of(c.strategies.begin(), c.strategies.end(),
                     [](const StrategySpec& s) { return !s.measurement.empty(); });
}

bool oracle_available(const ScenarioConfig& c, std::size_t n) {
  if (c.model.kind == "majumdar_ghosh") return true;
  if (c.model.kind == "boundary_driven") return n <= kMaxSteadyStateQubits;
  return n <= kMaxGroundStateQubits;
}

Prepared prepare(const ScenarioConfig& cfg, bool want_oracle) {
  Prepared P;
  P.cfg = cfg;
  try {
    if (cfg.model.kind == "tfi") {
      P.hamiltonian = build_tfi_2d(cfg.model.rows, cfg.model.cols, cfg.model.g, cfg.model.J);
    } else if (cfg.model.kind == "boundary_driven") {
      P.lindblad = build_boundary_driven(cfg.model.rows, cfg.model.cols, cfg.model.g, cfg.model.J,
                                         cfg.model.hot, cfg.model.cold);
      P.hamiltonian = P.lindblad->hamiltonian;
    } else {
      P.hamiltonian = build_majumdar_ghosh(cfg.model.sites, cfg.model.normalization);
    }
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
  P.n = P.hamiltonian.size();
  P.registry = MomentRegistry(P.n);

  OperatorPoly objective_poly(P.n);
  switch (cfg.objective) {
    case ObjectiveKind::energy: objective_poly = P.hamiltonian; break;
    case ObjectiveKind::heat_current:
      if (!P.lindblad) throw ConfigError("heat_current objective needs a boundary_driven model");
      objective_poly = heat_current_poly(*P.lindblad);
      break;
    case ObjectiveKind::custom:
      if (cfg.custom_objective.size() != P.n) throw ConfigError("custom objective size mismatch");
      objective_poly = cfg.custom_objective;
      break;
    case ObjectiveKind::purity: break;
  }
  if (cfg.objective == ObjectiveKind::purity) {
    if (cfg.purity_max_weight < 1) throw ConfigError("purity_max_weight must be >= 1");
    P.objective_strings = strings_up_to_weight(P.n, std::min(cfg.purity_max_weight, P.n));
    for (const auto& s : P.objective_strings) P.registry.count(P.registry.intern(s, IndexSet::objective));
    P.objective = purity_epigraph(P.registry, P.objective_strings,
                                  std::pow(2.0, static_cast<double>(P.n)));
  } else {
    P.registry.note(objective_poly, IndexSet::objective);
    for (const auto& [s, c] : objective_poly.terms()) {
      if (!s.is_identity()) P.objective_strings.push_back(s);
    }
    P.objective = objective_poly;
  }

  if (cfg.constraint_budget > 0) {
    // A closed system uses the eigenstate condition <[H, P]> = 0, which is the
    // jump-free case of the steady-state generator.
    LindbladModel closed{P.hamiltonian, {}, {}};
    auto steady = generate_steady_constraints(P.lindblad ? *P.lindblad : closed,
                                              P.objective_strings, cfg.constraint_budget,
                                              P.registry);
    P.steady_constraints = steady.size();
    for (auto& c : steady) P.guarantees.push_back(std::move(c));
  }
  for (const auto& s : cfg.symmetries) {
    if (s.size() != P.n) throw ConfigError("symmetry expression size mismatch");
    try {
      P.guarantees.push_back(add_symmetry_constraint(s, P.registry));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("invalid symmetry: ") + e.what());
    }
  }
  if (cfg.basis_size > 0) {
    auto sel = select_moment_basis(P.registry, cfg.basis_size);
    P.basis_truncated = sel.truncated;
    P.blocks.push_back(build_moment_matrix(sel.basis, P.registry));
  }
  for (const auto& sites : cfg.rdm_blocks) {
    try {
      P.blocks.push_back(build_rdm_block(sites, P.registry));
    } catch (const std::logic_error& e) {
      throw ConfigError(std::string("invalid rdm block: ") + e.what());
    }
  }

  const bool data = needs_data(cfg) || cfg.infinite_shots;
  const bool shell_needs_oracle = cfg.energy_shell.mode == EnergyShellSpec::Mode::relaxation;
  if ((data || shell_needs_oracle) && !oracle_available(cfg, P.n)) {
    throw ConfigError("no state oracle for this system size; measurement data cannot be simulated");
  }
  if (data || shell_needs_oracle || (want_oracle && oracle_available(cfg, P.n))) {
    if (cfg.model.kind == "majumdar_ghosh") {
      P.source = ShotSource::majumdar_ghosh(P.n);
    } else if (cfg.model.kind == "boundary_driven") {
      P.source = ShotSource::from_state(exact_steady_state(*P.lindblad).state);
    } else {
      P.source = ShotSource::from_state(exact_ground_state(P.hamiltonian).state);
    }
    if (cfg.objective == ObjectiveKind::purity) {
      P.true_value = 1.0;
    } else {
      P.true_value = P.source->true_value(std::get<OperatorPoly>(P.objective));
    }
  }

  if (cfg.energy_shell.mode != EnergyShellSpec::Mode::none) {
    double lo = cfg.energy_shell.lower;
    double hi = cfg.energy_shell.upper;
    if (cfg.energy_shell.mode == EnergyShellSpec::Mode::relaxation) {
      MomentRegistry scratch = P.registry;
      scratch.note(P.hamiltonian, IndexSet::objective);
      AssemblyOptions opt;
      opt.real_reduction = cfg.real_reduction;
      const auto problem = assemble(scratch, P.hamiltonian, P.blocks, P.guarantees, {}, opt);
      const auto res = solve(problem, cfg.solver);
      if (!res.value) throw ConfigError("energy-shell relaxation did not solve");
      lo = *res.value;
      hi = P.source->true_value(P.hamiltonian) + cfg.energy_shell.slack;
    }
    auto rows = energy_shell(P.hamiltonian, lo, hi, P.registry);
    for (auto& r : rows) P.guarantees.push_back(std::move(r));
    P.shell_lower = lo;
    P.shell_upper = hi;
  }

  for (const auto& m : cfg.measurements) {
    std::vector<PauliString> chosen;
    switch (m.kind) {
      case MeasurementSpec::Kind::objective_strings:
        for (const auto& s : P.objective_strings) {
          if (letters_allowed(s, m.letters)) chosen.push_back(s);
        }
        break;
      case MeasurementSpec::Kind::second_order_all:
        for (const auto& s : strings_up_to_weight(P.n, 2)) {
          if (letters_allowed(s, m.letters)) chosen.push_back(s);
        }
        break;
      case MeasurementSpec::Kind::first_generated:
      case MeasurementSpec::Kind::most_frequent: {
        std::vector<std::size_t> order;
        for (std::size_t i = 1; i < P.registry.size(); ++i) {
          if (letters_allowed(P.registry.string(i), m.letters)) order.push_back(i);
        }
        if (m.kind == MeasurementSpec::Kind::most_frequent) {
          std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (P.registry.frequency(a) != P.registry.frequency(b)) {
              return P.registry.frequency(a) > P.registry.frequency(b);
            }
            return P.registry.string(a) < P.registry.string(b);
          });
        }
        if (m.k < 1 || m.k > order.size()) {
          throw ConfigError("measurement " + m.name + " asks for " + std::to_string(m.k) +
                            " strings but " + std::to_string(order.size()) + " are registered");
        }
        for (std::size_t q = 0; q < m.k; ++q) chosen.push_back(P.registry.string(order[q]));
        break;
      }
      case MeasurementSpec::Kind::custom:
        try {
          for (const auto& s : m.strings) chosen.push_back(PauliString::parse(s, P.n));
        } catch (const std::logic_error& e) {
          throw ConfigError("measurement " + m.name + ": " + e.what());
        }
        break;
    }
    if (chosen.empty()) throw ConfigError("measurement " + m.name + " selects no strings");
    for (const auto& s : chosen) P.registry.intern(s, IndexSet::measured);
    P.selections.push_back(std::move(chosen));
  }
  P.registry.freeze();
  return P;
}

struct Point {
  std::int64_t n_tot = 0;
  bool infinite = false;
};

std::vector<Point> schedule(const ScenarioConfig& c) {
  if (c.infinite_shots) return {{0, true}};
  std::vector<Point> out;
  for (auto s : c.shots) out.push_back({s, false});
  return out;
}

std::size_t measurement_index(const ScenarioConfig& c, const std::string& name) {
  for (std::size_t i = 0; i < c.measurements.size(); ++i) {
    if (c.measurements[i].name == name) return i;
  }
  throw ConfigError("unknown measurement " + name);
}

std::vector<IntervalConstraint> make_bands(const Prepared& P, std::size_t sel, const Point& pt,
                                           std::size_t point_index, std::size_t repeat,
                                           double delta) {
  std::vector<OperatorPoly> observables;
  for (const auto& s : P.selections[sel]) observables.emplace_back(s);
  if (pt.infinite) return exact_intervals(P.source->exact_records(observables));
  const auto k = static_cast<std::int64_t>(observables.size());
  const std::int64_t per = std::max<std::int64_t>(1, pt.n_tot / k);
  auto rng = make_stream(P.cfg.seed, {point_index, repeat, sel});
  return build_intervals(P.source->measure(observables, per, rng), delta);
}

ConicProblem problem_for(const Prepared& P, const StrategySpec& s,
                         const std::vector<IntervalConstraint>& bands, bool infinite,
                         double delta) {
  AssemblyOptions opt;
  opt.real_reduction = P.cfg.real_reduction;
  opt.delta = infinite ? 0.0 : delta;
  static const std::vector<MomentMatrixSpec> no_blocks;
  static const std::vector<LinearMomentConstraint> no_rows;
  return assemble(P.registry, P.objective, s.sdp ? P.blocks : no_blocks,
                  s.sdp ? P.guarantees : no_rows, bands, opt);
}

void solve_into(const Prepared& P, const ConicProblem& problem, ResultRow& row) {
  const bool want_lower = P.cfg.directions != "upper";
  const bool want_upper = P.cfg.directions != "lower" && !problem.purity;
  row.confidence = problem.confidence;
  if (want_lower) {
    ConicProblem lo = problem;
    lo.sense = Sense::minimize;
    const auto r = solve(lo, P.cfg.solver);
    row.lb = r.value;
    row.status_lb = to_string(r.status);
    row.wall_time_s += r.wall_time_s;
  }
  if (want_upper) {
    ConicProblem hi = problem;
    hi.sense = Sense::maximize;
    const auto r = solve(hi, P.cfg.solver);
    row.ub = r.value;
    row.status_ub = to_string(r.status);
    row.wall_time_s += r.wall_time_s;
  }
}

std::vector<ResultRow> run_prepared(const Prepared& P, double delta, nlohmann::json& warnings) {
  const auto points = schedule(P.cfg);
  const std::size_t repeats = P.cfg.infinite_shots ? 1 : P.cfg.repeats;
  const std::size_t ns = P.cfg.strategies.size();

  // Strategies without data give the same row for every task; solve them once.
  std::vector<std::optional<ResultRow>> fixed(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto& st = P.cfg.strategies[s];
    if (!st.measurement.empty()) continue;
    ResultRow row;
    try {
      solve_into(P, problem_for(P, st, {}, false, delta), row);
    } catch (const std::exception& e) {
      row.status_lb = row.status_ub = "error";
      warnings.push_back(st.label + ": " + e.what());
    }
    fixed[s] = row;
  }

  const std::size_t num_tasks = points.size() * repeats;
  std::vector<std::vector<ResultRow>> task_rows(num_tasks);
  std::vector<std::string> task_errors(num_tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(num_tasks); ++t) {
    const std::size_t pi = static_cast<std::size_t>(t) / repeats;
    const std::size_t rep = static_cast<std::size_t>(t) % repeats;
    const Point& pt = points[pi];
    std::map<std::size_t, std::vector<IntervalConstraint>> bands;
    auto& out = task_rows[static_cast<std::size_t>(t)];
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& st = P.cfg.strategies[s];
      ResultRow row;
      if (fixed[s]) {
        row = *fixed[s];
      } else {
        try {
          const std::size_t sel = measurement_index(P.cfg, st.measurement);
          if (!bands.count(sel)) bands[sel] = make_bands(P, sel, pt, pi, rep, delta);
          solve_into(P, problem_for(P, st, bands[sel], pt.infinite, delta), row);
        } catch (const std::exception& e) {
          row.status_lb = row.status_ub = "error";
          task_errors[static_cast<std::size_t>(t)] += st.label + ": " + e.what() + "; ";
        }
      }
      row.scenario = P.cfg.name;
      row.strategy = st.label;
      row.n_tot = pt.n_tot;
      row.repeat = rep;
      row.delta = delta;
      row.infinite_shots = pt.infinite;
      out.push_back(std::move(row));
    }
  }
  std::vector<ResultRow> rows;
  for (std::size_t t = 0; t < num_tasks; ++t) {
    if (!task_errors[t].empty()) warnings.push_back(task_errors[t]);
    for (auto& r : task_rows[t]) rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json aggregate(const std::vector<ResultRow>& rows) {
  struct Acc {
    double lb = 0, ub = 0, width = 0;
    std::size_t nlb = 0, nub = 0, nwidth = 0, total = 0;
  };
  std::map<std::tuple<std::string, double, std::int64_t, bool>, Acc> acc;
  std::vector<std::tuple<std::string, double, std::int64_t, bool>> order;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.strategy, r.delta, r.n_tot, r.infinite_shots);
    if (!acc.count(key)) order.push_back(key);
    auto& a = acc[key];
    ++a.total;
    if (r.lb) {
      a.lb += *r.lb;
      ++a.nlb;
    }
    if (r.ub) {
      a.ub += *r.ub;
      ++a.nub;
    }
    if (r.lb && r.ub) {
      a.width += *r.ub - *r.lb;
      ++a.nwidth;
    }
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& key : order) {
    const auto& a = acc[key];
    nlohmann::json j{{"strategy", std::get<0>(key)},
                     {"delta", std::get<1>(key)},
                     {"n_tot", std::get<2>(key)},
                     {"infinite_shots", std::get<3>(key)},
                     {"rows", a.total}};
    j["mean_lb"] = a.nlb ? nlohmann::json(a.lb / static_cast<double>(a.nlb)) : nlohmann::json();
    j["mean_ub"] = a.nub ? nlohmann::json(a.ub / static_cast<double>(a.nub)) : nlohmann::json();
    j["mean_width"] =
        a.nwidth ? nlohmann::json(a.width / static_cast<double>(a.nwidth)) : nlohmann::json();
    out.push_back(j);
  }
  return out;
}

nlohmann::json describe(const Prepared& P) {
  const auto s = P.registry.sizes();
  nlohmann::json j{{"num_qubits", P.n},
                   {"moments", s.variables},
                   {"objective_moments", s.objective},
                   {"positivity_moments", s.positivity},
                   {"measured_moments", s.measured},
                   {"guarantee_moments", s.guarantee},
                   {"steady_constraints", P.steady_constraints},
                   {"linear_guarantees", P.guarantees.size()},
                   {"basis_truncated", P.basis_truncated}};
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : P.blocks) blocks.push_back(b.dim);
  j["block_dims"] = blocks;
  nlohmann::json sel = nlohmann::json::object();
  for (std::size_t i = 0; i < P.selections.size(); ++i) {
    sel[P.cfg.measurements[i].name] = P.selections[i].size();
  }
  j["measured_counts"] = sel;
  if (P.shell_lower) j["energy_shell"] = {*P.shell_lower, *P.shell_upper};
  return j;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const Prepared P = prepare(config, true);
  ScenarioResult res;
  nlohmann::json warnings = nlohmann::json::array();
  res.rows = run_prepared(P, config.delta, warnings);
  res.true_value = P.true_value;
  res.summary = {{"scenario", config.name},   {"config", config_to_json(config)},
                 {"relaxation", describe(P)}, {"aggregates", aggregate(res.rows)},
                 {"warnings", warnings}};
  res.summary["true_value"] = P.true_value ? nlohmann::json(*P.true_value) : nlohmann::json();
  return res;
}

ScenarioResult run_confidence_sweep(const ScenarioConfig& config) {
  if (config.confidence_levels.empty()) throw ConfigError("confidence_levels is empty");
  const Prepared P = prepare(config, true);
  ScenarioResult res;
  nlohmann::json warnings = nlohmann::json::array();
  for (double level : config.confidence_levels) {
    auto rows = run_prepared(P, 1.0 - level, warnings);
    res.rows.insert(res.rows.end(), rows.begin(), rows.end());
  }
  res.true_value = P.true_value;
  res.summary = {{"scenario", config.name},   {"config", config_to_json(config)},
                 {"relaxation", describe(P)}, {"aggregates", aggregate(res.rows)},
                 {"warnings", warnings}};
  res.summary["true_value"] = P.true_value ? nlohmann::json(*P.true_value) : nlohmann::json();
  return res;
}

nlohmann::json oracle_report(const ScenarioConfig& config) {
  ScenarioConfig c = config;
  const Prepared P = prepare(c, true);
  nlohmann::json j{{"scenario", config.name}, {"num_qubits", P.n}};
  if (!P.source) {
    j["available"] = false;
    return j;
  }
  j["available"] = true;
  j["true_value"] = P.true_value ? nlohmann::json(*P.true_value) : nlohmann::json();
  j["energy"] = P.source->true_value(P.hamiltonian);
  if (config.model.kind == "tfi") {
    const auto gs = exact_ground_state(P.hamiltonian);
    j["ground_energy"] = gs.energy;
    j["gap"] = gs.gap;
    j["degenerate"] = gs.degenerate;
  } else if (config.model.kind == "boundary_driven") {
    const auto ss = exact_steady_state(*P.lindblad);
    j["heat_current"] = ss.state.expectation(heat_current_poly(*P.lindblad));
    j["residual"] = ss.residual;
    j["degenerate"] = ss.degenerate;
    j["purity"] = ss.state.purity();
  } else {
    j["energy_per_site"] = P.source->true_value(P.hamiltonian) / static_cast<double>(P.n);
  }
  return j;
}

ConicProblem build_problem(const ScenarioConfig& config, const std::string& strategy,
                           Direction direction) {
  const Prepared P = prepare(config, false);
  const auto it = std::find_if(config.strategies.begin(), config.strategies.end(),
                               [&](const StrategySpec& s) { return s.label == strategy; });
  if (it == config.strategies.end()) throw ConfigError("unknown strategy " + strategy);
  const auto points = schedule(config);
  std::vector<IntervalConstraint> bands;
  if (!it->measurement.empty()) {
    bands = make_bands(P, measurement_index(config, it->measurement), points.front(), 0, 0,
                       config.delta);
  }
  ConicProblem problem = problem_for(P, *it, bands, points.front().infinite, config.delta);
  problem.sense = direction == Direction::lower ? Sense::minimize : Sense::maximize;
  return problem;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvSchema << "\n";
  out << "scenario,strategy,n_tot,repeat,delta,confidence,lb,ub,status_lb,status_ub,wall_time_s,"
         "infinite_shots\n";
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string();
    std::ostringstream s;
    s.precision(17);
    s << *v;
    return s.str();
  };
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& r : rows) {
    std::ostringstream line;
    line.precision(17);
    line << quote(r.scenario) << ',' << quote(r.strategy) << ',' << r.n_tot << ',' << r.repeat
         << ',' << r.delta << ',' << r.confidence << ',' << opt(r.lb) << ',' << opt(r.ub) << ','
         << r.status_lb << ',' << r.status_ub << ',' << r.wall_time_s << ','
         << (r.infinite_shots ? 1 : 0);
    out << line.str() << "\n";
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_csv(out, rows);
}

}  // namespace qbound
