#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "riskmkt/equilibrium.hpp"
#include "riskmkt/mechanism.hpp"
#include "riskmkt/oracles.hpp"
#include "riskmkt/planner.hpp"

namespace riskmkt {

/// Nine significant digits, "%.9g".
std::string format_number(double v);

/// RFC-4180 writer: CRLF line endings, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void row(std::initializer_list<std::string_view> fields);
  void row(std::span<const std::string> fields);

 private:
  void field(std::string_view f, bool first);
  std::ostream& os_;
};

void write_clear_csv(std::ostream& os, const MarketInstance& inst,
                     const PlannerSolution& sol, const PriceSchedule& prices);
void write_ledger_csv(std::ostream& os, std::span<const SettlementRecord> records);
void write_summary_csv(std::ostream& os, const SimulationSummary& summary);
void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> curve);
void write_oracle_csv(std::ostream& os, std::span<const oracles::OracleReport> reports);

}  // namespace riskmkt
