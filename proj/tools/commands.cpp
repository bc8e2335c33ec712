#include "commands.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riskmkt/equilibrium.hpp"
#include "riskmkt/mechanism.hpp"
#include "riskmkt/oracles.hpp"
#include "riskmkt/planner.hpp"
#include "riskmkt/report.hpp"
#include "riskmkt/risk_measures.hpp"
#include "riskmkt/scenario.hpp"

namespace riskmkt::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kKktTolerance = 1e-6;
constexpr double kSceqTolerance = 1e-8;
constexpr double kGridSearchStep = 1e-4;

struct CommandError {
  int status;
  std::string code;
  std::string message;
};

fs::path output_dir() {
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    return dir;
  }
  return fs::current_path();
}

fs::path resolve_out(const std::string& out_flag, const char* default_name) {
  return out_flag.empty() ? output_dir() / default_name : fs::path(out_flag);
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CommandError{kExitOutput, "output-io", "cannot open " + path.string()};
  writer(os);
  os.flush();
  if (!os) throw CommandError{kExitOutput, "output-io", "write failed: " + path.string()};
}

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag,
                        const ScenarioConfig& cfg) {
  if (flag) return *flag;
  if (cfg.seed) return *cfg.seed;
  throw CommandError{kExitUsage, "usage", "--seed is required (scenario has no seed)"};
}

void kv(std::ostream& out, const std::string& key, double v) {
  out << key << '=' << format_number(v) << '\n';
}

void cmd_clear(const ScenarioConfig& cfg, const std::string& out_path,
               std::ostream& out) {
  const MarketInstance inst = cfg.instance();
  const PlannerSolution sol = solve_spp(inst);
  const PriceSchedule prices = equilibrium_prices(sol, inst);

  kv(out, "y_star", sol.y_star);
  for (std::size_t i = 0; i < sol.x_star.size(); ++i) {
    kv(out, "x_star[" + std::to_string(i + 1) + "]", sol.x_star[i]);
  }
  kv(out, "lambda_star", sol.lambda_star);
  kv(out, "theta_star", sol.theta_star);
  kv(out, "p1", prices.p1);
  kv(out, "p2_slope", prices.p2_slope);
  kv(out, "p2_intercept", prices.p2_intercept);
  kv(out, "objective", sol.objective);
  if (!out_path.empty()) {
    write_file(out_path, [&](std::ostream& os) { write_clear_csv(os, inst, sol, prices); });
  }
}

int cmd_verify(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  const MarketInstance inst = cfg.instance();
  const PlannerSolution sol = solve_spp(inst);
  const PriceSchedule prices = equilibrium_prices(sol, inst);
  const std::vector<double> grid = default_w_grid(sol, inst, cfg.w_grid_points);
  const KktReport kkt = kkt_residuals(sol, inst, grid);
  const SceqReport sceq = verify_sceq(sol, prices, inst, grid);

  kv(out, "kkt_max_residual", kkt.max_residual());
  kv(out, "kkt_market_balance", kkt.market_balance);
  kv(out, "kkt_stage1_stationarity", kkt.stage1_stationarity);
  kv(out, "kkt_y_condition", kkt.y_condition);
  kv(out, "kkt_stage2_stationarity", kkt.stage2_stationarity);
  kv(out, "kkt_recourse_feasibility", kkt.recourse_feasibility);
  kv(out, "sceq_stage1_gap", sceq.max_stage1_gap);
  kv(out, "sceq_stage2_gap", sceq.max_stage2_gap);
  kv(out, "sceq_clearing_gap", sceq.clearing_gap);
  kv(out, "sceq_stage2_clearing_gap", sceq.max_stage2_clearing_gap);
  out << "sceq_recourse_feasible=" << (sceq.recourse_feasible ? "true" : "false") << '\n';
  out << "grid_points=" << grid.size() << '\n';

  const bool kkt_ok = kkt.max_residual() <= kKktTolerance;
  const bool sceq_ok = sceq.within(kSceqTolerance);
  if (kkt_ok && sceq_ok) {
    out << "status=ok\n";
    return kExitOk;
  }
  out << "status=failed\n";
  err << "error[verify-failed]: " << (kkt_ok ? "" : "kkt residual above 1e-6")
      << (!kkt_ok && !sceq_ok ? "; " : "") << (sceq_ok ? "" : "sceq gap above 1e-8")
      << '\n';
  return kExitCheckFailed;
}

void cmd_simulate(const ScenarioConfig& cfg, std::size_t samples, std::uint64_t seed,
                  const std::string& out_flag, std::ostream& out) {
  if (samples == 0) throw CommandError{kExitUsage, "usage", "--samples must be >= 1"};
  RngStream rng(seed);
  const SimulationResult sim =
      simulate_runs(cfg.generators, cfg.demand, cfg.risk, cfg.dist, samples, rng);

  const fs::path ledger = resolve_out(out_flag, "simulate_ledger.csv");
  fs::path summary_path = ledger;
  summary_path.replace_filename(ledger.stem().string() + "_summary.csv");
  write_file(ledger, [&](std::ostream& os) { write_ledger_csv(os, sim.records); });
  write_file(summary_path, [&](std::ostream& os) { write_summary_csv(os, sim.summary); });

  out << "runs=" << sim.summary.runs << '\n';
  kv(out, "mean_iso_outlay", sim.summary.mean_iso_outlay);
  kv(out, "cvar_iso_outlay", sim.summary.cvar_iso_outlay);
  kv(out, "mean_stage2_outlay", sim.summary.mean_stage2_outlay);
  kv(out, "max_clearing_shortfall", sim.summary.max_clearing_shortfall);
  out << "ledger=" << ledger.string() << '\n';
  out << "summary=" << summary_path.string() << '\n';
}

void cmd_sweep(const ScenarioConfig& cfg, double from, double to, std::size_t steps,
               const std::string& out_flag, std::ostream& out) {
  if (!(from >= 0.0 && to <= 1.0 && from <= to)) {
    throw CommandError{kExitUsage, "usage",
                       "need 0 <= --epsilon-from <= --epsilon-to <= 1"};
  }
  if (steps == 0) throw CommandError{kExitUsage, "usage", "--steps must be >= 1"};
  const std::vector<double> grid = linspace(from, to, steps);
  const std::vector<SweepPoint> curve = epsilon_sweep(cfg.instance(), grid);
  const fs::path path = resolve_out(out_flag, "sweep.csv");
  write_file(path, [&](std::ostream& os) { write_sweep_csv(os, curve); });
  out << "points=" << curve.size() << '\n';
  out << "curve=" << path.string() << '\n';
}

void cmd_oracle_compare(const ScenarioConfig& cfg, std::size_t samples,
                        std::uint64_t seed, std::ostream& out) {
  if (samples < 1000) {
    throw CommandError{kExitUsage, "usage", "--samples must be >= 1000"};
  }
  const MarketInstance inst = cfg.instance();
  const PlannerSolution sol = solve_spp(inst);

  std::vector<oracles::OracleReport> reports;
  reports.push_back(oracles::make_report(
      "grid_search_y", sol.y_star, oracles::grid_search_y(inst, kGridSearchStep),
      static_cast<std::size_t>(inst.demand() / kGridSearchStep) + 1, 0));
  {
    RngStream rng(seed);
    reports.push_back(oracles::make_report(
        "mc_cvar_recourse", cvar_recourse(sol.y_star, inst),
        oracles::mc_cvar_recourse(sol.y_star, inst, samples, rng), samples, seed));
  }
  {
    RngStream rng(seed);
    const oracles::SaaResult saa = oracles::saa_single_stage(inst, samples, rng);
    reports.push_back(
        oracles::make_report("saa_objective", sol.objective, saa.objective, samples, seed));
    reports.push_back(oracles::make_report("saa_y", sol.y_star, saa.y, samples, seed));
  }
  write_oracle_csv(out, reports);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Risk-aware two-stage electricity market clearing"};
  app.name("riskmkt");
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  double eps_from = 0.0;
  double eps_to = 1.0;
  std::size_t steps = 0;

  auto* clear = app.add_subcommand("clear", "Solve the planner problem and print prices");
  clear->add_option("--scenario", scenario_path, "Scenario file")->required();
  clear->add_option("--out", out_path, "CSV output path");

  auto* verify = app.add_subcommand("verify", "Check KKT conditions and equilibrium");
  verify->add_option("--scenario", scenario_path, "Scenario file")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of the mechanism");
  simulate->add_option("--scenario", scenario_path, "Scenario file")->required();
  simulate->add_option("--samples", samples, "Number of runs")->required();
  simulate->add_option("--seed", seed, "RNG seed (defaults to scenario seed)");
  simulate->add_option("--out", out_path, "Ledger CSV path");

  auto* sweep = app.add_subcommand("sweep", "Equilibrium curve over epsilon");
  sweep->add_option("--scenario", scenario_path, "Scenario file")->required();
  sweep->add_option("--epsilon-from", eps_from, "First epsilon")->required();
  sweep->add_option("--epsilon-to", eps_to, "Last epsilon")->required();
  sweep->add_option("--steps", steps, "Number of intervals")->required();
  sweep->add_option("--out", out_path, "Curve CSV path");

  auto* oracle = app.add_subcommand("oracle-compare", "Compare against brute-force oracles");
  oracle->add_option("--scenario", scenario_path, "Scenario file")->required();
  oracle->add_option("--samples", samples, "Monte Carlo sample size")->required();
  oracle->add_option("--seed", seed, "RNG seed (defaults to scenario seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const ScenarioConfig cfg = load_scenario(scenario_path);
    if (clear->parsed()) {
      cmd_clear(cfg, out_path, out);
      return kExitOk;
    }
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (simulate->parsed()) {
      cmd_simulate(cfg, samples, pick_seed(seed, cfg), out_path, out);
      return kExitOk;
    }
    if (sweep->parsed()) {
      cmd_sweep(cfg, eps_from, eps_to, steps, out_path, out);
      return kExitOk;
    }
    if (oracle->parsed()) {
      cmd_oracle_compare(cfg, samples, pick_seed(seed, cfg), out);
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    err << "error[" << e.code() << "]: " << e.what() << '\n';
    return kExitScenario;
  } catch (const CommandError& e) {
    err << "error[" << e.code << "]: " << e.message << '\n';
    return e.status;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "error[usage]: no command\n";
  return kExitUsage;
}

}  // namespace riskmkt::cli
