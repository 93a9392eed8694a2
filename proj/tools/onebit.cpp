#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "onebit/analysis.hpp"
#include "onebit/baselines.hpp"
#include "onebit/blind.hpp"
#include "onebit/harness.hpp"

using namespace onebit;

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int cmd_gen(std::size_t n, std::size_t m, std::size_t s, std::uint64_t seed, const std::string& out) {
  save_instance(out, generate_instance(n, m, s, seed));
  return 0;
}

int cmd_solve(const std::string& in, const std::string& method, std::size_t biht_s, bool no_schedules,
              bool timing) {
  MethodSpec ms = parse_method(method);
  if (biht_s != 0) {
    if (!ms.is_biht()) throw std::invalid_argument("--biht-s applies to biht methods only");
    ms.biht_s = biht_s;
  }
  if (no_schedules) {
    if (!ms.is_blind()) throw std::invalid_argument("--no-schedules applies to blind methods only");
    ms.schedules = false;
  }
  const Instance inst = load_instance(in);
  TrialRecord r = run_method(inst, ms);
  if (r.violations == 0) r.snr_db = r.raw_snr_db;
  if (!timing) r.wall_ms.reset();
  write_csv(std::cout, {r});
  return 0;
}

int cmd_sweep(const std::string& config, std::string out, std::string plot, bool full_scale,
              std::size_t jobs, bool timing) {
  SweepSpec spec = load_sweep_config(config, SweepSpec::defaults(full_scale));
  if (!out.empty()) spec.out_csv = out;
  if (!plot.empty()) spec.plot_svg = plot;
  if (jobs != 0) spec.jobs = jobs;
  if (timing) spec.timing = true;
  if (spec.out_csv.empty()) throw ConfigError("no output CSV: pass --out or set out= in the config");
  spec.validate();

  const SweepResult result = run_sweep(spec);
  write_file(spec.out_csv, csv_string(result.records));

  std::printf("%-10s %-20s %6s %6s %6s %10s %10s %10s\n", "axis", "method", "trials", "valid", "errors",
              "mean_snr", "all_snr", "mean_supp");
  for (const auto& p : summarize(spec, result.records))
    std::printf("%-10g %-20s %6zu %6zu %6zu %10.3f %10.3f %10.2f\n", p.axis_value, p.method.c_str(), p.trials,
                p.valid, p.errors, p.mean_snr_db, p.mean_raw_snr_db, p.mean_support);
  if (spec.biht_echo)
    std::printf("biht echo: %zu of %zu consistent blind solutions reproduced by BIHT\n", result.echo.confirmed,
                result.echo.eligible);

  if (!spec.plot_svg.empty())
    write_file(spec.plot_svg, emit_plot(spec, result.records, parse_plot_kind(spec.plot_kind)));
  return 0;
}

int cmd_normcheck(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("--trials must be positive");
  const double bound = norm_bound(m, n);
  double sum = 0.0, lo = INFINITY, hi = 0.0;
  std::size_t within = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Instance inst =
        generate_instance(n, m, std::min<std::size_t>(10, n), mix_seed(seed, t), NormalizeMode::exact);
    const double v = inst.b_scale;
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    within += v <= bound;
  }
  std::printf("m=%zu n=%zu trials=%zu mean=%.2f min=%.2f max=%.2f bound=%.2f within_bound=%zu\n", m, n, trials,
              sum / static_cast<double>(trials), lo, hi, bound, within);
  return 0;
}

int cmd_rsp(const std::string& in, std::size_t order, std::size_t samples, std::uint64_t seed, bool compare) {
  const Instance inst = load_instance(in);
  if (order < 1 || order >= inst.n()) throw std::invalid_argument("--order must satisfy 1 <= K < n");
  const RspEstimate e = rsp_rho_estimate(inst.b, order, samples, {seed, 0});
  std::printf("order=%zu samples=%zu rho_hat=%.6g infinite_samples=%zu\n", e.order, e.samples, e.rho_hat,
              e.infinite_samples);
  if (compare) {
    const double cap = (1.0 + e.rho_hat) * static_cast<double>(order);
    const ReconResult r = blind_solve(inst, SurrogateKind::log_det);
    std::printf("blind-logdet support=%zu violations=%zu floor((1+rho)K)=%s\n", r.support_size, r.violations,
                cap < static_cast<double>(inst.n()) ? std::to_string(static_cast<std::size_t>(cap)).c_str()
                                                   : "n/a ((1+rho)K >= n)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit compressive sensing reconstruction toolkit"};
  app.require_subcommand(1);

  std::size_t n = 0, m = 0, s = 0, trials = 0, order = 0, samples = 0, biht_s = 0, jobs = 0;
  std::uint64_t seed = 1;
  std::string in, out, method, config, plot;
  bool no_schedules = false, full_scale = false, timing = false, compare = false;

  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--n", n, "signal length")->required();
  gen->add_option("--m", m, "number of measurements")->required();
  gen->add_option("--sparsity", s, "nonzeros in the signal")->required();
  gen->add_option("--seed", seed, "instance seed");
  gen->add_option("--out", out, "instance file")->required();

  auto* solve = app.add_subcommand("solve", "reconstruct an instance and print one CSV row");
  solve->add_option("--in", in, "instance file")->required();
  solve->add_option("--method", method, "blind-mang|blind-logdet|biht-l1|biht-l2|pv-lp")->required();
  solve->add_option("--biht-s", biht_s, "BIHT sparsity input (default: true sparsity)");
  solve->add_flag("--no-schedules", no_schedules, "keep alpha and eps fixed in the blind solver");
  solve->add_flag("--timing", timing, "report wall time");

  auto* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep");
  sweep->add_option("--config", config, "key=value config file")->required();
  sweep->add_option("--out", out, "CSV output");
  sweep->add_option("--plot", plot, "SVG output");
  sweep->add_flag("--full-scale", full_scale, "default dimensions n=m=1000, s=10");
  sweep->add_option("--jobs", jobs, "worker threads");
  sweep->add_flag("--timing", timing, "fill the wall_ms column");

  auto* normcheck = app.add_subcommand("normcheck", "empirical mean of |B| against the bound");
  normcheck->add_option("--m", m)->required();
  normcheck->add_option("--n", n)->required();
  normcheck->add_option("--trials", trials)->required();
  normcheck->add_option("--seed", seed);

  auto* rsp = app.add_subcommand("rsp", "Monte-Carlo lower bound on the RSP constant");
  rsp->add_option("--in", in, "instance file")->required();
  rsp->add_option("--order", order, "K")->required();
  rsp->add_option("--samples", samples)->required();
  rsp->add_option("--seed", seed);
  rsp->add_flag("--compare-blind", compare, "also report the blind solution's support size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) return cmd_gen(n, m, s, seed, out);
    if (*solve) return cmd_solve(in, method, biht_s, no_schedules, timing);
    if (*sweep) return cmd_sweep(config, out, plot, full_scale, jobs, timing);
    if (*normcheck) return cmd_normcheck(m, n, trials, seed);
    if (*rsp) return cmd_rsp(in, order, samples, seed, compare);
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const LpFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
