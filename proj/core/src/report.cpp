#include "riskmkt/report.hpp"

#include <cstdio>
#include <vector>

namespace riskmkt {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void CsvWriter::field(std::string_view f, bool first) {
  if (!first) os_ << ',';
  if (f.find_first_of(",\"\r\n") == std::string_view::npos) {
    os_ << f;
    return;
  }
  os_ << '"';
  for (char c : f) {
    if (c == '"') os_ << '"';
    os_ << c;
  }
  os_ << '"';
}

void CsvWriter::row(std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    field(f, first);
    first = false;
  }
  os_ << "\r\n";
}

void CsvWriter::row(std::span<const std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    field(f, first);
    first = false;
  }
  os_ << "\r\n";
}

void write_clear_csv(std::ostream& os, const MarketInstance& inst,
                     const PlannerSolution& sol, const PriceSchedule& prices) {
  CsvWriter csv(os);
  csv.row({"quantity", "generator", "value"});
  auto scalar = [&](std::string_view name, double v) {
    csv.row({name, "", format_number(v)});
  };
  scalar("y_star", sol.y_star);
  for (std::size_t i = 0; i < sol.x_star.size(); ++i) {
    csv.row({"x_star", std::to_string(i + 1), format_number(sol.x_star[i])});
  }
  scalar("lambda_star", sol.lambda_star);
  scalar("theta_star", sol.theta_star);
  scalar("p1", prices.p1);
  scalar("p2_slope", prices.p2_slope);
  scalar("p2_intercept", prices.p2_intercept);
  scalar("objective", sol.objective);
  scalar("agg_a", inst.agg_a());
  scalar("agg_a_tilde", inst.agg_a_tilde());
}

void write_ledger_csv(std::ostream& os, std::span<const SettlementRecord> records) {
  CsvWriter csv(os);
  csv.row({"run", "realized_w", "generator", "stage1_qty", "stage2_qty",
           "stage1_payment", "stage2_payment", "production_total", "profit",
           "p1", "p2", "iso_outlay"});
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    for (std::size_t i = 0; i < rec.generators.size(); ++i) {
      const auto& g = rec.generators[i];
      csv.row({std::to_string(r + 1), format_number(rec.realized_w),
               std::to_string(i + 1), format_number(g.stage1_qty),
               format_number(g.stage2_qty), format_number(g.stage1_payment),
               format_number(g.stage2_payment), format_number(g.production_total),
               format_number(g.profit), format_number(rec.p1), format_number(rec.p2),
               format_number(rec.iso_outlay)});
    }
  }
}

void write_summary_csv(std::ostream& os, const SimulationSummary& summary) {
  CsvWriter csv(os);
  csv.row({"metric", "generator", "value"});
  csv.row({"runs", "", std::to_string(summary.runs)});
  csv.row({"mean_iso_outlay", "", format_number(summary.mean_iso_outlay)});
  csv.row({"cvar_iso_outlay", "", format_number(summary.cvar_iso_outlay)});
  csv.row({"mean_stage2_outlay", "", format_number(summary.mean_stage2_outlay)});
  csv.row({"max_clearing_shortfall", "", format_number(summary.max_clearing_shortfall)});
  for (std::size_t i = 0; i < summary.mean_generator_profit.size(); ++i) {
    csv.row({"mean_generator_profit", std::to_string(i + 1),
             format_number(summary.mean_generator_profit[i])});
  }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> curve) {
  CsvWriter csv(os);
  csv.row({"epsilon", "y_star", "p1", "p2_slope", "p2_intercept"});
  for (const auto& p : curve) {
    csv.row({format_number(p.epsilon), format_number(p.y_star), format_number(p.p1),
             format_number(p.p2_slope), format_number(p.p2_intercept)});
  }
}

void write_oracle_csv(std::ostream& os,
                      std::span<const oracles::OracleReport> reports) {
  CsvWriter csv(os);
  csv.row({"check", "analytic", "oracle", "abs_gap", "rel_gap", "size", "seed"});
  for (const auto& r : reports) {
    csv.row({r.name, format_number(r.analytic), format_number(r.oracle),
             format_number(r.abs_gap), format_number(r.rel_gap),
             std::to_string(r.size), std::to_string(r.seed)});
  }
}

}  // namespace riskmkt
