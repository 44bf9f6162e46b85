#include "hetalloc/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hetalloc {

using nlohmann::json;

ScenarioParseError::ScenarioParseError(std::string field, const std::string& what)
    : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

namespace {

const std::set<std::string> kRequired = {
    "seed",   "cell_radius", "num_mue",      "num_sbs", "num_d2d", "num_rb",       "power_levels",   "mbs_power",
    "noise_psd", "pathloss_exp", "i_max",    "w1",      "w2",      "d2d_max_dist", "sbs_ue_max_dist",
};
const std::set<std::string> kOptional = {"rb_bandwidth", "i_max_per_rb"};

double number(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ScenarioParseError(key, "expected a number");
  return v.get<double>();
}

int count(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ScenarioParseError(key, "expected an integer");
  const auto raw = v.get<long long>();
  if (raw < -1'000'000 || raw > 1'000'000) throw ScenarioParseError(key, "integer out of range");
  return static_cast<int>(raw);
}

std::vector<double> numbers(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw ScenarioParseError(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ScenarioParseError(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioParseError("", "scenario must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kRequired.count(key) && !kOptional.count(key)) throw ScenarioParseError(key, "unknown field");
  for (const auto& key : kRequired)
    if (!doc.contains(key)) throw ScenarioParseError(key, "missing required field");

  ScenarioConfig c;
  const json& seed = doc.at("seed");
  if (!seed.is_number_unsigned()) throw ScenarioParseError("seed", "expected a non-negative integer");
  c.seed = seed.get<std::uint64_t>();
  c.cell_radius = number(doc, "cell_radius");
  c.num_mue = count(doc, "num_mue");
  c.num_sbs = count(doc, "num_sbs");
  c.num_d2d = count(doc, "num_d2d");
  c.num_rb = count(doc, "num_rb");
  c.power_levels = numbers(doc, "power_levels");
  c.mbs_power = number(doc, "mbs_power");
  c.noise_psd = number(doc, "noise_psd");
  if (doc.contains("rb_bandwidth")) c.rb_bandwidth = number(doc, "rb_bandwidth");
  c.pathloss_exp = number(doc, "pathloss_exp");
  c.i_max = number(doc, "i_max");
  c.w1 = number(doc, "w1");
  c.w2 = number(doc, "w2");
  c.d2d_max_dist = number(doc, "d2d_max_dist");
  c.sbs_ue_max_dist = number(doc, "sbs_ue_max_dist");
  if (doc.contains("i_max_per_rb")) c.i_max_per_rb = numbers(doc, "i_max_per_rb");
  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json doc = {
      {"seed", c.seed},
      {"cell_radius", c.cell_radius},
      {"num_mue", c.num_mue},
      {"num_sbs", c.num_sbs},
      {"num_d2d", c.num_d2d},
      {"num_rb", c.num_rb},
      {"power_levels", c.power_levels},
      {"mbs_power", c.mbs_power},
      {"noise_psd", c.noise_psd},
      {"rb_bandwidth", c.rb_bandwidth},
      {"pathloss_exp", c.pathloss_exp},
      {"i_max", c.i_max},
      {"w1", c.w1},
      {"w2", c.w2},
      {"d2d_max_dist", c.d2d_max_dist},
      {"sbs_ue_max_dist", c.sbs_ue_max_dist},
  };
  if (!c.i_max_per_rb.empty()) doc["i_max_per_rb"] = c.i_max_per_rb;
  return doc.dump(2) + "\n";
}

}  // namespace hetalloc
