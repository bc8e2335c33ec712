#include "riskmkt/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace riskmkt {

using nlohmann::json;

ScenarioError::ScenarioError(Kind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

ScenarioError ScenarioError::syntax(std::size_t line, std::size_t column,
                                    const std::string& what) {
  ScenarioError e(Kind::syntax, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what);
  e.line_ = line;
  e.column_ = column;
  return e;
}

ScenarioError ScenarioError::validation(const std::string& field_path,
                                        const std::string& rule) {
  ScenarioError e(Kind::validation, field_path + ": " + rule);
  e.field_path_ = field_path;
  return e;
}

ScenarioError ScenarioError::io(const std::string& what) {
  return ScenarioError(Kind::io, what);
}

std::string_view ScenarioError::code() const {
  switch (kind_) {
    case Kind::syntax:
      return "scenario-syntax";
    case Kind::validation:
      return "scenario-invalid";
    case Kind::io:
      return "scenario-io";
  }
  return "scenario";
}

MarketInstance ScenarioConfig::instance() const {
  return MarketInstance(generators, demand, risk, dist);
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ScenarioError::validation(path.empty() ? key : path + "." + key,
                                      "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ScenarioError::validation(path.empty() ? key : path + "." + key,
                                    "required key missing");
  }
  return *it;
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) {
    throw ScenarioError::validation(path, "must be a number");
  }
  return value.get<double>();
}

RenewableDistribution parse_distribution(const json& d) {
  const std::string path = "distribution";
  if (!d.is_object()) throw ScenarioError::validation(path, "must be an object");
  const json& kind_node = require(d, "kind", path);
  if (!kind_node.is_string()) {
    throw ScenarioError::validation(path + ".kind", "must be a string");
  }
  const std::string kind = kind_node.get<std::string>();

  try {
    if (kind == "uniform") {
      reject_unknown_keys(d, path, {"kind", "w_max"});
      return RenewableDistribution::uniform(
          number_at(require(d, "w_max", path), path + ".w_max"));
    }
    if (kind == "truncated-normal") {
      reject_unknown_keys(d, path, {"kind", "w_max", "location", "scale"});
      return RenewableDistribution::truncated_normal(
          number_at(require(d, "location", path), path + ".location"),
          number_at(require(d, "scale", path), path + ".scale"),
          number_at(require(d, "w_max", path), path + ".w_max"));
    }
    if (kind == "piecewise-linear-pdf") {
      reject_unknown_keys(d, path, {"kind", "w_max", "breakpoints"});
      const json& bps = require(d, "breakpoints", path);
      if (!bps.is_array()) {
        throw ScenarioError::validation(path + ".breakpoints", "must be an array");
      }
      std::vector<Breakpoint> points;
      for (std::size_t i = 0; i < bps.size(); ++i) {
        const std::string bp_path = path + ".breakpoints[" + std::to_string(i) + "]";
        if (!bps[i].is_array() || bps[i].size() != 2) {
          throw ScenarioError::validation(bp_path, "must be a [w, f] pair");
        }
        points.push_back({number_at(bps[i][0], bp_path + "[0]"),
                          number_at(bps[i][1], bp_path + "[1]")});
      }
      auto dist = RenewableDistribution::piecewise_linear(std::move(points));
      if (auto it = d.find("w_max"); it != d.end()) {
        if (number_at(*it, path + ".w_max") != dist.w_max()) {
          throw ScenarioError::validation(path + ".w_max",
                                          "must equal the last breakpoint");
        }
      }
      return dist;
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError::validation(path, e.what());
  }
  throw ScenarioError::validation(
      path + ".kind",
      "must be one of uniform, truncated-normal, piecewise-linear-pdf");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(text.size(), byte == 0 ? 0 : byte - 1);
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true,
                      /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    // drop the library's "[json.exception.parse_error.101] " prefix
    if (auto pos = what.find("] "); pos != std::string::npos) what.erase(0, pos + 2);
    throw ScenarioError::syntax(line, column, what);
  }
  if (!doc.is_object()) {
    throw ScenarioError::validation("$", "top level must be an object");
  }
  reject_unknown_keys(doc, "", {"demand", "alpha", "epsilon", "distribution",
                                "generators", "seed", "w_grid_points"});

  ScenarioConfig cfg;
  cfg.demand = number_at(require(doc, "demand", ""), "demand");
  cfg.risk.alpha = number_at(require(doc, "alpha", ""), "alpha");
  cfg.risk.epsilon = number_at(require(doc, "epsilon", ""), "epsilon");
  cfg.dist = parse_distribution(require(doc, "distribution", ""));

  const json& gens = require(doc, "generators", "");
  if (!gens.is_array()) throw ScenarioError::validation("generators", "must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_object()) throw ScenarioError::validation(path, "must be an object");
    reject_unknown_keys(gens[i], path, {"a", "a_tilde"});
    cfg.generators.push_back({number_at(require(gens[i], "a", path), path + ".a"),
                              number_at(require(gens[i], "a_tilde", path),
                                        path + ".a_tilde")});
  }

  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) {
      throw ScenarioError::validation("seed", "must be a non-negative integer");
    }
    cfg.seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("w_grid_points"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() < 2) {
      throw ScenarioError::validation("w_grid_points", "must be an integer >= 2");
    }
    cfg.w_grid_points = it->get<std::size_t>();
  }

  try {
    (void)cfg.instance();
  } catch (const InstanceError& e) {
    throw ScenarioError::validation(e.field(), e.rule());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError::io("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace riskmkt
