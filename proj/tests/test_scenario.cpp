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


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qbound/errors.hpp"
#include "qbound/scenario.hpp"

namespace qbound {
namespace {

nlohmann::json small_config() {
  return nlohmann::json::parse(R"({
    "name": "small",
    "model": {"kind": "tfi", "rows": 1, "cols": 3, "g": 1.0, "J": 1.0},
    "objective": "energy",
    "delta": 0.01,
    "shots": [1000, 100000],
    "repeats": 3,
    "seed": 4,
    "relaxation": {"basis_size": 10, "constraint_budget": 20},
    "measurements": [{"name": "obj", "kind": "objective_strings"}],
    "strategies": [
      {"label": "Measure", "sdp": false, "measurement": "obj"},
      {"label": "SDP", "sdp": true},
      {"label": "SDP & Measure", "sdp": true, "measurement": "obj"}
    ]
  })");
}

TEST(Config, RoundTrip) {
  const auto c = config_from_json(small_config());
  const auto again = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(again), config_to_json(c));
  EXPECT_EQ(c.strategies.size(), 3u);
  EXPECT_EQ(c.shots, (std::vector<std::int64_t>{1000, 100000}));
}

TEST(Config, Invariants) {
  auto j = small_config();
  j["shots"] = nlohmann::json::array();
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = small_config();
  j["repeats"] = 0;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = small_config();
  j["strategies"][0]["measurement"] = "missing";
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = small_config();
  j["bogus"] = 1;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = small_config();
  j["measurements"][0] = {{"name", "obj"}, {"kind", "first_generated"}, {"k", 100000}};
  EXPECT_THROW(run_scenario(config_from_json(j)), ConfigError);
}

TEST(Config, PresetsLoad) {
  for (const char* name : {"fig3", "fig4", "fig5", "fig6", "fig7-desk"}) {
    const auto path = std::filesystem::path(QBOUND_PRESET_DIR) / (std::string(name) + ".json");
    EXPECT_NO_THROW(load_config(path)) << name;
  }
  const auto fig3 = load_config(std::filesystem::path(QBOUND_PRESET_DIR) / "fig3.json");
  EXPECT_DOUBLE_EQ(fig3.model.cold.rate, 0.011);
  EXPECT_DOUBLE_EQ(fig3.model.hot.rate, 0.001);
  EXPECT_DOUBLE_EQ(fig3.model.hot.temperature, 1.0);
  EXPECT_DOUBLE_EQ(fig3.model.cold.temperature, 0.1);
}

TEST(Scenario, RowsAndStrategySemantics) {
  const auto c = config_from_json(small_config());
  const auto res = run_scenario(c);
  ASSERT_EQ(res.rows.size(), 2u * 3u * 3u);
  ASSERT_TRUE(res.true_value.has_value());
  for (const auto& r : res.rows) {
    ASSERT_TRUE(r.lb && r.ub) << r.strategy;
    EXPECT_LE(*r.lb, *r.ub + 1e-7);
    EXPECT_LE(*r.lb, *res.true_value + 1e-6);
    if (r.strategy == "SDP") {
      EXPECT_DOUBLE_EQ(r.confidence, 1.0);
    } else {
      EXPECT_DOUBLE_EQ(r.confidence, 0.99);
    }
  }
  // SDP rows do not depend on the data.
  for (const auto& r : res.rows) {
    if (r.strategy == "SDP") {
      EXPECT_EQ(*r.lb, *res.rows[1].lb);
    }
  }
}

TEST(Scenario, DeterministicPerSeed) {
  const auto c = config_from_json(small_config());
  std::ostringstream a, b;
  write_csv(a, run_scenario(c).rows);
  write_csv(b, run_scenario(c).rows);
  auto strip = [](const std::string& csv) {
    // Wall times differ between runs; compare everything before that column.
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
      int commas = 0;
      std::size_t cut = line.size();
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == ',' && ++commas == 10) {
          cut = i;
          break;
        }
      }
      out += line.substr(0, cut) + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(a.str()), strip(b.str()));
  auto other = c;
  other.seed = 5;
  std::ostringstream d;
  write_csv(d, run_scenario(other).rows);
  EXPECT_NE(strip(a.str()), strip(d.str()));
}

TEST(Scenario, InfiniteShotsPinObjectiveStrings) {
  auto c = config_from_json(small_config());
  c.infinite_shots = true;
  const auto res = run_scenario(c);
  ASSERT_EQ(res.rows.size(), 3u);
  for (const auto& r : res.rows) {
    EXPECT_TRUE(r.infinite_shots);
    EXPECT_EQ(r.n_tot, 0);
    if (r.strategy == "Measure") {
      EXPECT_NEAR(*r.lb, *res.true_value, 1e-9);
      EXPECT_NEAR(*r.ub, *res.true_value, 1e-9);
    }
  }
}

TEST(Scenario, CsvSchemaHeader) {
  std::vector<ResultRow> rows(1);
  rows[0].scenario = "a,b";
  rows[0].strategy = "SDP";
  std::ostringstream out;
  write_csv(out, rows);
  std::istringstream in(out.str());
  std::string tag, header, row;
  std::getline(in, tag);
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(tag, kCsvSchema);
  EXPECT_EQ(header.rfind("scenario,strategy,n_tot,repeat", 0), 0u);
  EXPECT_EQ(row.rfind("\"a,b\",SDP,", 0), 0u);
}

TEST(Scenario, PurityConfidenceSweepOrdering) {
  const auto j = nlohmann::json::parse(R"({
    "name": "purity",
    "model": {"kind": "tfi", "rows": 1, "cols": 3},
    "objective": "purity",
    "confidence_levels": [0.68, 0.95, 0.997],
    "shots": [20000],
    "repeats": 2,
    "relaxation": {"basis_size": 12, "constraint_budget": 30},
    "measurements": [{"name": "so", "kind": "second_order_all"}],
    "strategies": [{"label": "SDP & Measure", "sdp": true, "measurement": "so"}],
    "directions": "lower"
  })");
  const auto res = run_confidence_sweep(config_from_json(j));
  ASSERT_EQ(res.rows.size(), 6u);
  for (std::size_t r = 0; r < 2; ++r) {
    const double a = *res.rows[r].lb, b = *res.rows[2 + r].lb, c = *res.rows[4 + r].lb;
    EXPECT_GE(a, b - 1e-7);
    EXPECT_GE(b, c - 1e-7);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Scenario, ExportProblemIsSolvable) {
  const auto c = config_from_json(small_config());
  const auto p = build_problem(c, "SDP & Measure", Direction::lower);
  EXPECT_EQ(p.sense, Sense::minimize);
  EXPECT_FALSE(to_sdpa_string(p).empty());
  EXPECT_THROW(build_problem(c, "nope", Direction::lower), ConfigError);
}

TEST(Scenario, OracleReport) {
  const auto r = oracle_report(config_from_json(small_config()));
  EXPECT_TRUE(r["available"].get<bool>());
  EXPECT_NEAR(r["ground_energy"].get<double>(), r["true_value"].get<double>(), 1e-12);
}

}  // namespace
}  // namespace qbound
