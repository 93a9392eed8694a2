#include "onebit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "onebit/baselines.hpp"
#include "onebit/blind.hpp"

namespace onebit {

std::string MethodSpec::label() const {
  std::string s;
  switch (method) {
    case Method::blind_mang: s = "blind-mang"; break;
    case Method::blind_logdet: s = "blind-logdet"; break;
    case Method::biht_l1: s = "biht-l1"; break;
    case Method::biht_l2: s = "biht-l2"; break;
    case Method::pv_lp: s = "pv-lp"; break;
  }
  if (is_biht() && biht_s != 0) s += "@" + std::to_string(biht_s);
  if (is_blind() && !schedules) s += "/fixed";
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

MethodSpec parse_method(std::string_view label) {
  MethodSpec ms;
  std::string_view base = trim(label);
  if (base.size() > 6 && base.substr(base.size() - 6) == "/fixed") {
    ms.schedules = false;
    base.remove_suffix(6);
  }
  if (const auto at = base.find('@'); at != std::string_view::npos) {
    if (!parse_number(base.substr(at + 1), ms.biht_s) || ms.biht_s == 0)
      throw std::invalid_argument("bad sparsity in method '" + std::string(label) + "'");
    base = base.substr(0, at);
  }
  if (base == "blind-mang")
    ms.method = Method::blind_mang;
  else if (base == "blind-logdet")
    ms.method = Method::blind_logdet;
  else if (base == "biht-l1")
    ms.method = Method::biht_l1;
  else if (base == "biht-l2")
    ms.method = Method::biht_l2;
  else if (base == "pv-lp")
    ms.method = Method::pv_lp;
  else
    throw std::invalid_argument("unknown method '" + std::string(label) + "'");
  if ((ms.biht_s != 0 && !ms.is_biht()) || (!ms.schedules && !ms.is_blind()))
    throw std::invalid_argument("option not valid for method '" + std::string(label) + "'");
  return ms;
}

SweepSpec SweepSpec::defaults(bool full_scale) {
  SweepSpec s;
  if (full_scale) {
    s.n = 1000;
    s.m = 1000;
    s.s = 10;
  }
  return s;
}

SweepSpec::Dims SweepSpec::dims_at(std::size_t index) const {
  Dims d{m, n, s};
  if (axis == SweepAxis::fixed) return d;
  const double v = values.at(index);
  switch (axis) {
    case SweepAxis::ratio: d.m = static_cast<std::size_t>(std::llround(v * static_cast<double>(n))); break;
    case SweepAxis::sparsity: d.s = static_cast<std::size_t>(v); break;
    case SweepAxis::dimension: d.n = static_cast<std::size_t>(v); break;
    case SweepAxis::fixed: break;
  }
  return d;
}

double SweepSpec::axis_value(std::size_t index) const {
  if (axis == SweepAxis::fixed) return 0.0;
  return values.at(index);
}

void SweepSpec::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (axis != SweepAxis::fixed && values.empty()) throw ConfigError("values must not be empty for a sweep axis");
  for (std::size_t p = 0; p < points(); ++p) {
    if (axis != SweepAxis::fixed) {
      const double v = values[p];
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("axis values must be positive");
      if (axis != SweepAxis::ratio && v != std::floor(v))
        throw ConfigError("sparsity and dimension values must be integers");
    }
    const Dims d = dims_at(p);
    if (d.m < 1 || d.n < 1) throw ConfigError("m and n must be positive");
    if (d.s < 1 || d.s > d.n) throw ConfigError("need 1 <= s <= n at every point");
    for (const auto& ms : methods)
      if (ms.biht_s > d.n) throw ConfigError("BIHT sparsity exceeds n for " + ms.label());
  }
  parse_plot_kind(plot_kind);
}

SweepSpec parse_sweep_config(std::istream& in, SweepSpec spec) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("line " + std::to_string(lineno) + ": " + msg);
  };
  auto as_size = [&](std::string_view v) {
    std::size_t out = 0;
    if (!parse_number(v, out)) fail("expected a nonnegative integer, got '" + std::string(v) + "'");
    return out;
  };
  auto as_bool = [&](std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail("expected true or false, got '" + std::string(v) + "'");
    return false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("expected key=value");
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    if (key == "axis") {
      if (value == "ratio")
        spec.axis = SweepAxis::ratio;
      else if (value == "sparsity")
        spec.axis = SweepAxis::sparsity;
      else if (value == "dimension")
        spec.axis = SweepAxis::dimension;
      else if (value == "fixed")
        spec.axis = SweepAxis::fixed;
      else
        fail("unknown axis '" + std::string(value) + "'");
    } else if (key == "values") {
      spec.values.clear();
      for (auto part : split(value, ',')) {
        double v = 0.0;
        if (!parse_number(part, v)) fail("bad value '" + std::string(part) + "'");
        spec.values.push_back(v);
      }
    } else if (key == "n") {
      spec.n = as_size(value);
    } else if (key == "m") {
      spec.m = as_size(value);
    } else if (key == "s") {
      spec.s = as_size(value);
    } else if (key == "trials") {
      spec.trials = as_size(value);
    } else if (key == "methods") {
      spec.methods.clear();
      for (auto part : split(value, ',')) {
        try {
          spec.methods.push_back(parse_method(part));
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      if (!parse_number(value, seed)) fail("bad seed '" + std::string(value) + "'");
      spec.master_seed = seed;
    } else if (key == "jobs") {
      spec.jobs = as_size(value);
    } else if (key == "timing") {
      spec.timing = as_bool(value);
    } else if (key == "biht_echo") {
      spec.biht_echo = as_bool(value);
    } else if (key == "out") {
      spec.out_csv = value;
    } else if (key == "plot") {
      spec.plot_svg = value;
    } else if (key == "plot_kind") {
      try {
        parse_plot_kind(value);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      spec.plot_kind = value;
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  return spec;
}

SweepSpec load_sweep_config(const std::string& path, SweepSpec base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_sweep_config(in, std::move(base));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t axis_index, std::size_t trial) {
  return mix_seed(mix_seed(master_seed, axis_index), trial);
}

TrialRecord run_method(const Instance& inst, const MethodSpec& ms) {
  TrialRecord r;
  r.method = ms.label();
  r.m = inst.m();
  r.n = inst.n();
  r.s_true = inst.sparsity;
  r.seed = inst.seed;

  ReconResult res;
  switch (ms.method) {
    case Method::blind_mang:
    case Method::blind_logdet: {
      const auto kind = ms.method == Method::blind_mang ? SurrogateKind::mangasarian : SurrogateKind::log_det;
      BlindConfig cfg = BlindConfig::defaults(kind);
      cfg.schedules_enabled = ms.schedules;
      res = blind_solve(inst, kind, cfg);
      break;
    }
    case Method::biht_l1:
    case Method::biht_l2: {
      BihtParams p;
      p.s = ms.biht_s != 0 ? ms.biht_s : inst.sparsity;
      p.variant = ms.method == Method::biht_l1 ? BihtVariant::one_sided_l1 : BihtVariant::one_sided_l2;
      res = biht_solve(inst, p);
      break;
    }
    case Method::pv_lp: res = pv_solve(inst); break;
  }
  r.raw_snr_db = snr_db(inst.x_true, res.x_est);
  r.violations = res.violations;
  r.support_size = res.support_size;
  r.iterations = res.iterations;
  r.wall_ms = res.wall_time.count();
  return r;
}

namespace {

struct TaskResult {
  std::vector<TrialRecord> rows;
  bool eligible = false;
  bool confirmed = false;
};

TaskResult run_task(const SweepSpec& spec, std::size_t point, std::size_t trial) {
  const SweepSpec::Dims d = spec.dims_at(point);
  const std::uint64_t seed = trial_seed(spec.master_seed, point, trial);
  TaskResult out;

  auto error_row = [&](const MethodSpec& ms, const std::string& what) {
    TrialRecord r;
    r.method = ms.label();
    r.m = d.m;
    r.n = d.n;
    r.s_true = d.s;
    r.seed = seed;
    r.status = "error: " + what;
    return r;
  };

  std::optional<Instance> inst;
  std::string instance_error;
  try {
    inst = generate_instance(d.n, d.m, d.s, seed);
  } catch (const std::exception& e) {
    instance_error = e.what();
  }
  for (const auto& ms : spec.methods) {
    if (!inst) {
      out.rows.push_back(error_row(ms, instance_error));
      continue;
    }
    try {
      out.rows.push_back(run_method(*inst, ms));
    } catch (const std::exception& e) {
      out.rows.push_back(error_row(ms, e.what()));
    }
  }

  const bool valid = std::all_of(out.rows.begin(), out.rows.end(),
                                 [](const TrialRecord& r) { return r.ok() && r.violations == 0; });
  for (auto& r : out.rows) {
    r.axis_index = point;
    r.trial_id = trial;
    if (valid) r.snr_db = r.raw_snr_db;
    if (!spec.timing) r.wall_ms.reset();
  }

  if (spec.biht_echo && inst) {
    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
      const TrialRecord& r = out.rows[i];
      if (!spec.methods[i].is_blind() || !r.ok()) continue;
      if (r.violations == 0 && r.support_size >= 1) {
        out.eligible = true;
        BihtParams p;
        p.s = r.support_size;
        try {
          out.confirmed = biht_solve(*inst, p).violations == 0;
        } catch (const std::exception&) {
          out.confirmed = false;
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t tasks = spec.points() * spec.trials;
  std::vector<TaskResult> results(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++)
      results[t] = run_task(spec, t / spec.trials, t % spec.trials);
  };
  const std::size_t threads = std::min(spec.jobs, tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Task t covers (point, trial) = (t / trials, t % trials), so concatenating
  // in task order is already sorted by (axis_index, trial_id, method order).
  SweepResult out;
  for (auto& r : results) {
    for (auto& row : r.rows) out.records.push_back(std::move(row));
    out.echo.eligible += r.eligible;
    out.echo.confirmed += r.confirmed;
  }
  return out;
}

std::vector<PointSummary> summarize(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
  std::vector<PointSummary> out;
  for (std::size_t p = 0; p < spec.points(); ++p) {
    for (const auto& ms : spec.methods) {
      PointSummary s;
      s.axis_index = p;
      s.axis_value = spec.axis_value(p);
      s.method = ms.label();
      double snr = 0.0, raw = 0.0, supp = 0.0, viol = 0.0;
      std::size_t ok = 0;
      for (const auto& r : records) {
        if (r.axis_index != p || r.method != s.method) continue;
        ++s.trials;
        if (!r.ok()) {
          ++s.errors;
          continue;
        }
        ++ok;
        raw += r.raw_snr_db;
        supp += static_cast<double>(r.support_size);
        viol += static_cast<double>(r.violations);
        if (r.snr_db) {
          ++s.valid;
          snr += *r.snr_db;
        }
      }
      s.mean_snr_db = s.valid ? snr / static_cast<double>(s.valid) : std::numeric_limits<double>::quiet_NaN();
      s.mean_raw_snr_db = ok ? raw / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
      s.mean_support = ok ? supp / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
      s.mean_violations = ok ? viol / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
      out.push_back(s);
    }
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial_id,method,m,n,s_true,seed,snr_db,violations,support_size,iterations,wall_ms,status\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << csv_field(r.method) << ',' << r.m << ',' << r.n << ',' << r.s_true << ','
        << r.seed << ',' << (r.snr_db ? format_double(*r.snr_db) : "NA") << ',';
    if (r.ok())
      out << r.violations << ',' << r.support_size << ',' << r.iterations;
    else
      out << "NA,NA,NA";
    out << ',' << (r.wall_ms ? format_double(*r.wall_ms) : "NA") << ',' << csv_field(r.status) << '\n';
  }
}

std::string csv_string(const std::vector<TrialRecord>& records) {
  std::ostringstream s;
  write_csv(s, records);
  return s.str();
}

}  // namespace onebit
