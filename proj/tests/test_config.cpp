#include "renewal/config.hpp"

#include "doctest.h"

using namespace renewal;
using nlohmann::json;

namespace {

json minimal_config() {
  return json{{"version", "v1"},
              {"chain1", {{"kind", "constant"}, {"params", {{"value", 0.9}}}}},
              {"chain2", {{"kind", "constant"}, {"params", {{"value", 0.9}}}}}};
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig config = parse_run_config(minimal_config());
  CHECK(config.start_states[0] == 0);
  CHECK(config.start_states[1] == 0);
  CHECK(config.n0 == 0);
  CHECK(config.p_mode == PickMode::MaxFeasible);
  CHECK(config.horizon == 0);
  CHECK(config.n_reps == 100000);
  CHECK(config.seed == 0);
  CHECK(config.cert.t_max == 100);
  CHECK(config.cert.n_max == 200);
  CHECK(config.cert.domination_t0_max == 50);
  CHECK(config.probe_times == std::vector<std::int64_t>{10, 50, 100});
  CHECK_FALSE(config.gamma_override.has_value());
  CHECK(std::holds_alternative<ConstantSpec>(config.spec1.payload));
}

TEST_CASE("every schedule kind round-trips through the parser") {
  json doc = minimal_config();
  doc["chain1"] = {{"kind", "periodic-table"},
                   {"params", {{"table", {0.8, 0.9}}, {"period", 2}}}};
  doc["chain2"] = {{"kind", "bounded-random"},
                   {"params", {{"seed", 7}}},
                   {"alpha_lo", 0.8},
                   {"alpha_hi", 0.9}};
  RunConfig config = parse_run_config(doc);
  CHECK(std::holds_alternative<PeriodicTableSpec>(config.spec1.payload));
  CHECK(std::get<BoundedRandomSpec>(config.spec2.payload).seed == 7);
  CHECK(config.spec2.alpha_lo == 0.8);

  doc["chain1"] = {{"kind", "explicit-table-with-tail"},
                   {"params", {{"table", {0.8, json::array({0.7, 0.75})}}, {"tail", 0.9}}}};
  config = parse_run_config(doc);
  const auto& table = std::get<TableWithTailSpec>(config.spec1.payload);
  CHECK(table.rows.size() == 2);
  CHECK(table.rows[1] == std::vector<double>{0.7, 0.75});
  CHECK(table.tail == std::vector<double>{0.9});
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(parse_run_config(json::array()), ConfigError);

  json doc = minimal_config();
  doc.erase("version");
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["version"] = "v2";
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["chain1"]["kind"] = "brownian";
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["chain1"]["params"]["value"] = 1.0;
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["chain2"] = {{"kind", "periodic-table"},
                   {"params", {{"table", {0.8, 0.9}}, {"period", 3}}}};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["chain2"] = {{"kind", "bounded-random"}, {"params", {{"seed", 1}}}};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);  // missing bounds

  doc = minimal_config();
  doc["start_states"] = {0};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["p_mode"] = "optimal";
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["p_mode"] = {{"fixed", 0.4}};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["gamma_override"] = 1.5;
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  doc = minimal_config();
  doc["probe_times"] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

  // declared envelope narrower than the table
  doc = minimal_config();
  doc["chain1"] = {{"kind", "periodic-table"},
                   {"params", {{"table", {0.8, 0.9}}}},
                   {"alpha_lo", 0.85}};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("optional fields are honored") {
  json doc = minimal_config();
  doc["p_mode"] = {{"fixed", 0.8}};
  doc["horizon"] = 5000;
  doc["n_reps"] = 1234;
  doc["seed"] = 42;
  doc["n0"] = 3;
  doc["start_states"] = {2, 3};
  doc["cert"] = {{"t_max", 10}, {"n_max", 50}, {"domination_t0_max", 5}};
  doc["probe_times"] = {5, 9};
  doc["censoring_budget"] = 0.01;
  doc["gamma_override"] = 0.999;
  doc["outputs"] = {{"report", "r.json"}, {"per_rep_csv", "reps.csv"}};

  const RunConfig config = parse_run_config(doc);
  CHECK(config.p_mode == PickMode::Fixed);
  CHECK(config.fixed_p == 0.8);
  CHECK(config.horizon == 5000);
  CHECK(config.n_reps == 1234);
  CHECK(config.seed == 42);
  CHECK(config.n0 == 3);
  CHECK(config.start_states[0] == 2);
  CHECK(config.cert.n_max == 50);
  CHECK(config.probe_times == std::vector<std::int64_t>{5, 9});
  CHECK(config.censoring_budget == 0.01);
  CHECK(config.gamma_override == 0.999);
  CHECK(config.outputs.report == "r.json");
  CHECK(config.outputs.per_rep_csv == "reps.csv");
  CHECK_FALSE(config.outputs.laws_csv.has_value());
}

TEST_CASE("load_run_config surfaces IO and parse failures") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}
