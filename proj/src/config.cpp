#include "renewal/config.hpp"

#include <fstream>
#include <utility>

namespace renewal {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const json& field(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) fail(where + " must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where + " is missing field '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

double probability(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0 && v < 1.0)) fail(where + " must lie strictly in (0, 1)");
  return v;
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<std::int64_t>();
}

std::int64_t nonneg_integer(const json& j, const std::string& where) {
  const std::int64_t v = integer(j, where);
  if (v < 0) fail(where + " must be >= 0");
  return v;
}

std::vector<double> probability_array(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(probability(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

// A table row is either a scalar (same alpha for every state) or an array
// over states.
std::vector<double> table_row(const json& j, const std::string& where) {
  if (j.is_number()) return {probability(j, where)};
  return probability_array(j, where);
}

ScheduleSpec parse_schedule(const json& doc, const std::string& where) {
  const std::string kind = field(doc, "kind", where).get<std::string>();
  const json& params = field(doc, "params", where);

  ScheduleSpec spec;
  if (kind == "constant") {
    spec = make_constant(probability(field(params, "value", where), where + ".params.value"));
  } else if (kind == "periodic-table") {
    auto table = probability_array(field(params, "table", where), where + ".params.table");
    if (params.contains("period") &&
        integer(params["period"], where + ".params.period") !=
            static_cast<std::int64_t>(table.size()))
      fail(where + ".params.period must equal the table length");
    spec = make_periodic(std::move(table));
  } else if (kind == "explicit-table-with-tail") {
    const json& rows_doc = field(params, "table", where);
    if (!rows_doc.is_array()) fail(where + ".params.table must be an array");
    std::vector<std::vector<double>> rows;
    rows.reserve(rows_doc.size());
    for (std::size_t k = 0; k < rows_doc.size(); ++k)
      rows.push_back(table_row(rows_doc[k], where + ".params.table[" + std::to_string(k) + "]"));
    auto tail = table_row(field(params, "tail", where), where + ".params.tail");
    spec = make_table_with_tail(std::move(rows), std::move(tail));
  } else if (kind == "bounded-random") {
    const double lo = probability(field(doc, "alpha_lo", where), where + ".alpha_lo");
    const double hi = probability(field(doc, "alpha_hi", where), where + ".alpha_hi");
    if (!(lo <= hi)) fail(where + ": alpha_lo must be <= alpha_hi");
    const std::int64_t seed = nonneg_integer(field(params, "seed", where), where + ".params.seed");
    spec = make_bounded_random(static_cast<std::uint64_t>(seed), lo, hi);
  } else {
    fail(where + ".kind must be one of constant, periodic-table, "
                 "explicit-table-with-tail, bounded-random");
  }

  // Declared envelope, when present, must contain the computed one.
  if (kind != "bounded-random" && doc.contains("alpha_lo")) {
    const double lo = probability(doc["alpha_lo"], where + ".alpha_lo");
    if (lo > spec.alpha_lo) fail(where + ".alpha_lo exceeds a table value");
  }
  if (kind != "bounded-random" && doc.contains("alpha_hi")) {
    const double hi = probability(doc["alpha_hi"], where + ".alpha_hi");
    if (hi < spec.alpha_hi) fail(where + ".alpha_hi is below a table value");
  }
  return spec;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) fail("config root must be a JSON object");
  const std::string version = field(doc, "version", "config").get<std::string>();
  if (version != "v1") fail("unsupported config version '" + version + "' (expected \"v1\")");

  RunConfig config;
  config.spec1 = parse_schedule(field(doc, "chain1", "config"), "chain1");
  config.spec2 = parse_schedule(field(doc, "chain2", "config"), "chain2");

  if (doc.contains("start_states")) {
    const json& ss = doc["start_states"];
    if (!ss.is_array() || ss.size() != 2)
      fail("start_states must be an array of two integers");
    config.start_states[0] = nonneg_integer(ss[0], "start_states[0]");
    config.start_states[1] = nonneg_integer(ss[1], "start_states[1]");
  }
  if (doc.contains("n0")) config.n0 = nonneg_integer(doc["n0"], "n0");

  if (doc.contains("p_mode")) {
    const json& pm = doc["p_mode"];
    if (pm.is_string()) {
      const std::string mode = pm.get<std::string>();
      if (mode == "max_feasible")
        config.p_mode = PickMode::MaxFeasible;
      else if (mode == "grid_optimize")
        config.p_mode = PickMode::GridOptimize;
      else
        fail("p_mode must be \"max_feasible\", \"grid_optimize\" or {\"fixed\": p}");
    } else if (pm.is_object() && pm.contains("fixed")) {
      config.p_mode = PickMode::Fixed;
      config.fixed_p = number(pm["fixed"], "p_mode.fixed");
      if (!(config.fixed_p > 0.5 && config.fixed_p < 1.0))
        fail("p_mode.fixed must lie in (1/2, 1)");
    } else {
      fail("p_mode must be \"max_feasible\", \"grid_optimize\" or {\"fixed\": p}");
    }
  }

  if (doc.contains("horizon")) config.horizon = nonneg_integer(doc["horizon"], "horizon");
  if (doc.contains("n_reps")) config.n_reps = nonneg_integer(doc["n_reps"], "n_reps");
  if (doc.contains("seed"))
    config.seed = static_cast<std::uint64_t>(nonneg_integer(doc["seed"], "seed"));

  if (doc.contains("cert")) {
    const json& cert = doc["cert"];
    if (cert.contains("t_max")) config.cert.t_max = nonneg_integer(cert["t_max"], "cert.t_max");
    if (cert.contains("n_max")) {
      const std::int64_t n = nonneg_integer(cert["n_max"], "cert.n_max");
      if (n < 1 || n > 100000) fail("cert.n_max must lie in [1, 100000]");
      config.cert.n_max = static_cast<int>(n);
    }
    if (cert.contains("domination_t0_max"))
      config.cert.domination_t0_max =
          nonneg_integer(cert["domination_t0_max"], "cert.domination_t0_max");
  }

  if (doc.contains("probe_times")) {
    const json& probes = doc["probe_times"];
    if (!probes.is_array()) fail("probe_times must be an array");
    if (probes.size() > 8) fail("probe_times supports at most 8 entries");
    config.probe_times.clear();
    for (std::size_t k = 0; k < probes.size(); ++k)
      config.probe_times.push_back(
          nonneg_integer(probes[k], "probe_times[" + std::to_string(k) + "]"));
  }

  if (doc.contains("censoring_budget")) {
    config.censoring_budget = number(doc["censoring_budget"], "censoring_budget");
    if (!(config.censoring_budget >= 0.0 && config.censoring_budget <= 1.0))
      fail("censoring_budget must lie in [0, 1]");
  }

  if (doc.contains("gamma_override") && !doc["gamma_override"].is_null()) {
    const double g = number(doc["gamma_override"], "gamma_override");
    if (!(g > 0.0 && g <= 1.0)) fail("gamma_override must lie in (0, 1]");
    config.gamma_override = g;
  }

  if (doc.contains("outputs")) {
    const json& outputs = doc["outputs"];
    if (!outputs.is_object()) fail("outputs must be an object");
    auto path = [&](const char* key) -> std::optional<std::string> {
      if (!outputs.contains(key)) return std::nullopt;
      if (!outputs[key].is_string()) fail(std::string("outputs.") + key + " must be a string");
      return outputs[key].get<std::string>();
    };
    config.outputs.report = path("report");
    config.outputs.laws_csv = path("laws_csv");
    config.outputs.dominant_csv = path("dominant_csv");
    config.outputs.per_rep_csv = path("per_rep_csv");
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

ChainSchedule build_chain(const ScheduleSpec& spec, const std::string& label) {
  try {
    return ChainSchedule(spec, label);
  } catch (const std::invalid_argument& e) {
    fail(label + ": " + e.what());
  }
}

}  // namespace renewal
