#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "riskmkt/market_instance.hpp"
#include "riskmkt/renewable_dist.hpp"

namespace riskmkt {

/// A parsed and fully validated scenario document.
///
/// Schema (JSON syntax, unknown keys rejected):
///
///   {
///     "demand": 2.0,
///     "alpha": 0.8,
///     "epsilon": 0.5,
///     "distribution": {"kind": "uniform", "w_max": 1.0},
///     "generators": [{"a": 1.0, "a_tilde": 3.0}, {"a": 2.0, "a_tilde": 6.0}],
///     "seed": 7,              // optional
///     "w_grid_points": 1001   // optional
///   }
///
/// distribution.kind is one of "uniform" (w_max), "truncated-normal"
/// (w_max, location, scale) or "piecewise-linear-pdf" (breakpoints as
/// [[w, f], ...], optional w_max that must match the last breakpoint).
struct ScenarioConfig {
  double demand = 0.0;
  RiskParams risk;
  RenewableDistribution dist = RenewableDistribution::uniform(1.0);
  std::vector<GeneratorParams> generators;
  std::optional<std::uint64_t> seed;
  std::size_t w_grid_points = 1001;

  MarketInstance instance() const;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { syntax, validation, io };

  static ScenarioError syntax(std::size_t line, std::size_t column,
                              const std::string& what);
  static ScenarioError validation(const std::string& field_path,
                                  const std::string& rule);
  static ScenarioError io(const std::string& what);

  Kind kind() const { return kind_; }
  /// "scenario-syntax", "scenario-invalid" or "scenario-io"
  std::string_view code() const;
  const std::string& field_path() const { return field_path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ScenarioError(Kind kind, std::string message);

  Kind kind_;
  std::string field_path_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace riskmkt
