#ifndef HAWKTELE_ANALYSIS_HPP
#define HAWKTELE_ANALYSIS_HPP

// Parameter sweeps over the Hawking temperature, (p, q) improvement maps and
// deterministic CSV output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "hawktele/error.hpp"
#include "hawktele/horizon.hpp"
#include "hawktele/protocol.hpp"
#include "hawktele/weakmeas.hpp"

namespace hawktele {

/// Reference point subtracted in improvement maps.
///   paper:      C0 = zeta, F0 = (zeta + 1)^2 / 4 (the published baseline)
///   consistent: C0 = zeta, F0 = F_av(p = 0, q = 0, t) = (zeta^2 + zeta + 2) / 4
enum class Baseline { paper, consistent };

inline Baseline parse_baseline(std::string_view text) {
  if (text == "paper") return Baseline::paper;
  if (text == "consistent") return Baseline::consistent;
  throw InvalidArgument("unknown baseline '" + std::string(text) + "' (expected paper or consistent)");
}

inline std::string_view to_string(Baseline b) { return b == Baseline::paper ? "paper" : "consistent"; }

struct SweepSpec {
  double t_min = 0.01;
  double t_max = 20.0;
  int t_steps = 200;
  std::vector<double> p_values = {0.0, 0.3, 0.6, 0.9};
  QPolicy q_policy = QPolicy::type1();
  int grid_resolution = 201;  ///< points per axis of the (p, q) map, at i / resolution
  Baseline baseline = Baseline::paper;

  void validate() const {
    if (!std::isfinite(t_min) || t_min < 0.0) throw InvalidArgument("t_min must be finite and >= 0");
    if (!std::isfinite(t_max) || !(t_max > t_min)) throw InvalidArgument("t_max must be finite and > t_min");
    if (t_steps < 2) throw InvalidArgument("t_steps must be >= 2");
    if (p_values.empty()) throw InvalidArgument("p_values must not be empty");
    for (const double p : p_values) {
      if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("every p must lie in [0, 1)");
    }
    if (grid_resolution < 1) throw InvalidArgument("grid resolution must be >= 1");
  }

  /// Evenly spaced temperatures including both ends.
  std::vector<double> temperatures() const {
    std::vector<double> ts(static_cast<std::size_t>(t_steps));
    const double step = (t_max - t_min) / (t_steps - 1);
    for (int i = 0; i < t_steps; ++i) ts[static_cast<std::size_t>(i)] = t_min + step * i;
    ts.back() = t_max;
    return ts;
  }
};

struct SweepRow {
  double t;
  double p;
  double q;  ///< policy-resolved post-measurement strength
  double average_fidelity;
  double success_probability;
  double concurrence;
};

struct ConcurrenceRow {
  double t;
  double p;
  double c_type1;
  double c_type2;
};

struct ImprovementPoint {
  double p;
  double q;
  double c_imp;
  double f_imp;
};

/// One row per (t, p), t outer.
inline std::vector<SweepRow> sweep_fidelity(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.t_steps) * spec.p_values.size());
  for (const double t : spec.temperatures()) {
    const HawkingMode mode(t);
    for (const double p : spec.p_values) {
      const ProtocolConfig config{MeasurementStrength(p), spec.q_policy, mode};
      const MeasurementStrength q = resolve_q(config);
      rows.push_back({t, p, q.value(), average_fidelity(config.p, q, mode),
                      normalization(config.p, q, mode) / 2.0, concurrence_closed(config)});
    }
  }
  return rows;
}

/// Concurrence under both optimal policies, one row per (t, p), t outer.
inline std::vector<ConcurrenceRow> sweep_concurrence(const SweepSpec& spec) {
  spec.validate();
  std::vector<ConcurrenceRow> rows;
  for (const double t : spec.temperatures()) {
    const HawkingMode mode(t);
    for (const double p : spec.p_values) {
      const MeasurementStrength ps(p);
      rows.push_back({t, p, concurrence_closed({ps, QPolicy::type1(), mode}),
                      concurrence_closed({ps, QPolicy::type2(), mode})});
    }
  }
  return rows;
}

inline double baseline_fidelity(Baseline baseline, const HawkingMode& mode) {
  if (baseline == Baseline::paper) {
    const double s = mode.zeta() + 1.0;
    return s * s / 4.0;
  }
  return average_fidelity(MeasurementStrength(0.0), MeasurementStrength(0.0), mode);
}

/// Concurrence and average-fidelity improvements over the no-measurement
/// baseline on the (p, q) grid {i / n} x {j / n}, p outer.
inline std::vector<ImprovementPoint> improvement_grid(const SweepSpec& spec, double t_fixed) {
  if (!std::isfinite(t_fixed) || t_fixed < 0.0) throw InvalidArgument("t_fixed must be finite and >= 0");
  if (spec.grid_resolution < 1) throw InvalidArgument("grid resolution must be >= 1");
  const HawkingMode mode(t_fixed);
  const double c0 = mode.zeta();
  const double f0 = baseline_fidelity(spec.baseline, mode);
  const int n = spec.grid_resolution;
  std::vector<ImprovementPoint> points;
  points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double p = static_cast<double>(i) / n;
    for (int j = 0; j < n; ++j) {
      const double q = static_cast<double>(j) / n;
      const ProtocolConfig config{MeasurementStrength(p), QPolicy::manual(q), mode};
      points.push_back({p, q, concurrence_closed(config) - c0, average_fidelity(config) - f0});
    }
  }
  return points;
}

// ---------------------------------------------------------------------------
// CSV

/// Decimal (never exponent) notation with 12 significant digits.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("cannot format a non-finite value");
  if (v == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const int decimals = std::max(0, 11 - exponent);
  const int len = std::snprintf(nullptr, 0, "%.*f", decimals, v);
  std::string out(static_cast<std::size_t>(len), '\0');
  std::snprintf(out.data(), out.size() + 1, "%.*f", decimals, v);
  return out;
}

struct Table {
  std::vector<std::string> comments;  ///< emitted as leading "# ..." lines
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline Table to_table(const std::vector<SweepRow>& rows) {
  Table t{{}, {"t", "p", "q", "F_av", "P", "C"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.t, r.p, r.q, r.average_fidelity, r.success_probability, r.concurrence});
  }
  return t;
}

inline Table to_table(const std::vector<ConcurrenceRow>& rows) {
  Table t{{}, {"t", "p", "C1", "C2"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.t, r.p, r.c_type1, r.c_type2});
  return t;
}

inline Table to_table(const std::vector<ImprovementPoint>& points) {
  Table t{{}, {"p", "q", "C_imp", "F_imp"}, {}};
  for (const auto& pt : points) t.rows.push_back({pt.p, pt.q, pt.c_imp, pt.f_imp});
  return t;
}

inline std::string to_csv(const Table& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw InvalidArgument("CSV row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const Table& table, const std::string& path) {
  const std::string text = to_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace hawktele

#endif  // HAWKTELE_ANALYSIS_HPP
