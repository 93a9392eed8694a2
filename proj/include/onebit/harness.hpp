#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/problem.hpp"

namespace onebit {

enum class SweepAxis { ratio, sparsity, dimension, fixed };

enum class Method { blind_mang, blind_logdet, biht_l1, biht_l2, pv_lp };

/// A method plus its options. Labels: blind-mang, blind-logdet, biht-l1,
/// biht-l2, pv-lp; a BIHT sparsity input other than s_true is written
/// `biht-l1@8`, disabled blind schedules as `blind-logdet/fixed`.
struct MethodSpec {
  Method method = Method::blind_logdet;
  std::size_t biht_s = 0;  // 0: use the instance's true sparsity
  bool schedules = true;

  std::string label() const;
  bool is_blind() const { return method == Method::blind_mang || method == Method::blind_logdet; }
  bool is_biht() const { return method == Method::biht_l1 || method == Method::biht_l2; }
  bool operator==(const MethodSpec&) const = default;
};

/// Throws std::invalid_argument on an unknown label.
MethodSpec parse_method(std::string_view label);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::fixed;
  std::vector<double> values;  // m/n ratios, sparsities or dimensions n
  std::size_t n = 200;
  std::size_t m = 200;
  std::size_t s = 4;
  std::size_t trials = 10;
  std::vector<MethodSpec> methods;
  std::uint64_t master_seed = 1;
  std::size_t jobs = 1;
  bool timing = false;      // fill wall_ms; off by default so output is reproducible
  bool biht_echo = false;  // rerun BIHT with the blind solution's sparsity
  std::string out_csv;
  std::string plot_svg;
  std::string plot_kind = "snr_vs_axis";

  /// n = 200 / m = 200 / s = 4 at desk scale, 1000 / 1000 / 10 at full scale.
  static SweepSpec defaults(bool full_scale);
  std::size_t points() const { return axis == SweepAxis::fixed ? 1 : values.size(); }
  /// (m, n, s) at axis point `index`.
  struct Dims {
    std::size_t m, n, s;
  };
  Dims dims_at(std::size_t index) const;
  double axis_value(std::size_t index) const;
  void validate() const;  // throws ConfigError
};

/// Apply flat `key=value` lines (`#` starts a comment) on top of `base`.
/// Keys: axis, values, n, m, s, trials, methods, seed, jobs, timing,
/// biht_echo, out, plot, plot_kind. Unknown keys and malformed values throw
/// ConfigError naming the line.
SweepSpec parse_sweep_config(std::istream& in, SweepSpec base);
SweepSpec load_sweep_config(const std::string& path, SweepSpec base);

/// One row per (point, trial, method). `snr_db` is set only when every
/// method at that (point, trial) ended with zero violations and no error.
struct TrialRecord {
  std::size_t axis_index = 0;
  std::size_t trial_id = 0;
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t s_true = 0;
  std::uint64_t seed = 0;
  std::optional<double> snr_db;
  double raw_snr_db = 0.0;  // unfiltered, for plots of individual trials
  std::size_t violations = 0;
  std::size_t support_size = 0;
  std::size_t iterations = 0;
  std::optional<double> wall_ms;
  std::string status = "ok";  // "ok" or "error: ..."

  bool ok() const { return status == "ok"; }
};

/// Instance seed of a trial; depends only on its coordinates.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t axis_index, std::size_t trial);

/// Run one method on an instance. Solver exceptions propagate.
TrialRecord run_method(const Instance& inst, const MethodSpec& method);

struct EchoStats {
  std::size_t eligible = 0;   // blind consistent with support ≤ n
  std::size_t confirmed = 0;  // BIHT with that sparsity also consistent
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (axis_index, trial_id, method order)
  EchoStats echo;
};

SweepResult run_sweep(const SweepSpec& spec);

struct PointSummary {
  std::size_t axis_index = 0;
  double axis_value = 0.0;
  std::string method;
  std::size_t trials = 0;
  std::size_t valid = 0;
  std::size_t errors = 0;
  double mean_snr_db = 0.0;      // over valid trials; NaN if none
  double mean_raw_snr_db = 0.0;  // over every successful trial
  double mean_support = 0.0;
  double mean_violations = 0.0;
};

std::vector<PointSummary> summarize(const SweepSpec& spec, const std::vector<TrialRecord>& records);

/// CSV with header trial_id,method,m,n,s_true,seed,snr_db,violations,
/// support_size,iterations,wall_ms,status. Filtered SNR and absent timings
/// are written as NA.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::string csv_string(const std::vector<TrialRecord>& records);

enum class PlotKind { snr_vs_axis, scatter_diff_vs_support, histogram_violations, pv_support };
PlotKind parse_plot_kind(std::string_view name);

class EmptyPlot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Self-contained SVG document. Throws EmptyPlot when the records select
/// nothing to draw.
///   snr_vs_axis              mean valid SNR per method against the axis value
///   scatter_diff_vs_support  SNR(blind) − SNR(BIHT) per valid trial against the
///                            blind support size, dashed zero line
///   histogram_violations     counts of violation numbers over all rows
///   pv_support               pv-lp support size per trial, solid line at s_true
std::string emit_plot(const SweepSpec& spec, const std::vector<TrialRecord>& records, PlotKind kind);

}  // namespace onebit
