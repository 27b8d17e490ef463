#ifndef HAWKTELE_TOOLS_CLI_HPP
#define HAWKTELE_TOOLS_CLI_HPP

// Command-line front end: `point`, `sweep`, `grid`.
// Exit codes: 0 success, 2 argument errors, 1 runtime errors.

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hawktele/hawktele.hpp"

namespace hawktele::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("bad number '" + item + "' in list '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InvalidArgument("empty list");
  return values;
}

struct PointArgs {
  double t = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::string q_policy;
};

struct SweepArgs {
  SweepSpec spec;
  std::string p_list = "0,0.3,0.6,0.9";
  std::string q_policy = "type1";
  std::string out;
};

struct GridArgs {
  double t = 10.0;
  int resolution = 201;
  std::string baseline = "paper";
  std::string out;
};

inline int run_point(const PointArgs& a, bool manual_q, std::ostream& out) {
  const QPolicy policy = manual_q ? QPolicy::manual(a.q) : QPolicy::parse(a.q_policy);
  const ProtocolConfig config{MeasurementStrength(a.p), policy, HawkingMode(a.t)};
  const InputState input(a.theta, a.delta);
  const ProtocolOutcome result = simulate_circuit(input, config);
  out << "q=" << format_number(result.q.value()) << '\n'
      << "fidelity=" << format_number(result.fidelity) << '\n'
      << "average_fidelity=" << format_number(average_fidelity(config.p, result.q, config.mode)) << '\n'
      << "success_probability=" << format_number(result.success_probability) << '\n'
      << "concurrence=" << format_number(result.concurrence_ai) << '\n';
  return kExitOk;
}

inline int run_sweep(SweepArgs a, std::ostream& out) {
  a.spec.p_values = parse_list(a.p_list);
  a.spec.q_policy = QPolicy::parse(a.q_policy);
  const Table table = to_table(sweep_fidelity(a.spec));
  write_csv(table, a.out);
  out << "wrote " << table.rows.size() << " rows to " << a.out << '\n';
  return kExitOk;
}

inline int run_grid(const GridArgs& a, std::ostream& out) {
  SweepSpec spec;
  spec.grid_resolution = a.resolution;
  spec.baseline = parse_baseline(a.baseline);
  Table table = to_table(improvement_grid(spec, a.t));
  const HawkingMode mode(a.t);
  table.comments = {
      "t=" + format_number(a.t) + " resolution=" + std::to_string(a.resolution) +
          " baseline=" + std::string(to_string(spec.baseline)),
      "C_imp = C(p,q) - zeta; F_imp = F_av(p,q) - F0 with F0 = " + format_number(baseline_fidelity(spec.baseline, mode)),
      "paper baseline F0 = (zeta+1)^2/4 differs from F_av(p=0,q=0) = (zeta^2+zeta+2)/4; use --baseline consistent for the latter",
  };
  write_csv(table, a.out);
  out << "wrote " << table.rows.size() << " rows to " << a.out << '\n';
  return kExitOk;
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-measurement-assisted teleportation near a Schwarzschild horizon", "hawktele"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  PointArgs point;
  auto* point_cmd = app.add_subcommand("point", "Evaluate one protocol configuration with the circuit simulator");
  point_cmd->add_option("--t", point.t, "Hawking temperature ratio T/omega")->required()->check(CLI::NonNegativeNumber);
  point_cmd->add_option("--theta", point.theta, "Polar angle of the input qubit, [0, pi]")->required();
  point_cmd->add_option("--delta", point.delta, "Phase of the input qubit, [0, 2pi)");
  point_cmd->add_option("--p", point.p, "Pre-weak measurement strength")->required();
  auto* q_opt = point_cmd->add_option("--q", point.q, "Post-weak measurement strength");
  auto* policy_opt = point_cmd->add_option("--q-policy", point.q_policy, "type1 | type2 | manual:<q>");
  q_opt->excludes(policy_opt);
  policy_opt->excludes(q_opt);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Average fidelity, success probability and concurrence versus temperature");
  sweep_cmd->add_option("--t-min", sweep.spec.t_min, "Smallest temperature ratio")->capture_default_str();
  sweep_cmd->add_option("--t-max", sweep.spec.t_max, "Largest temperature ratio")->capture_default_str();
  sweep_cmd->add_option("--t-steps", sweep.spec.t_steps, "Number of temperatures (>= 2)")->capture_default_str();
  sweep_cmd->add_option("--p", sweep.p_list, "Comma-separated pre-measurement strengths")->capture_default_str();
  sweep_cmd->add_option("--q-policy", sweep.q_policy, "type1 | type2 | manual:<q>")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV path")->required();

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("grid", "Concurrence / fidelity improvement map over (p, q)");
  grid_cmd->add_option("--t", grid.t, "Hawking temperature ratio")->capture_default_str();
  grid_cmd->add_option("--resolution", grid.resolution, "Points per axis, at i/resolution")->capture_default_str();
  grid_cmd->add_option("--baseline", grid.baseline, "paper | consistent")->capture_default_str();
  grid_cmd->add_option("--out", grid.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
    if (point_cmd->parsed() && q_opt->count() == 0 && policy_opt->count() == 0) {
      throw CLI::ValidationError("point", "one of --q or --q-policy is required");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (point_cmd->parsed()) return run_point(point, q_opt->count() > 0, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep, out);
    return run_grid(grid, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace hawktele::cli

#endif  // HAWKTELE_TOOLS_CLI_HPP
