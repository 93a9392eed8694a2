#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "onebit/harness.hpp"

using namespace onebit;

namespace {

SweepSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in, SweepSpec::defaults(false));
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t k = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++k;
  return k;
}

std::string attr(const std::string& svg, const std::string& tag_start, const std::string& name) {
  const auto at = svg.find(tag_start);
  REQUIRE(at != std::string::npos);
  const auto key = svg.find(name + "=\"", at);
  const auto begin = key + name.size() + 2;
  return svg.substr(begin, svg.find('"', begin) - begin);
}

TrialRecord row(std::string method, std::size_t trial, std::optional<double> snr, std::size_t support_size,
                std::size_t viol = 0) {
  TrialRecord r;
  r.trial_id = trial;
  r.method = std::move(method);
  r.m = r.n = 20;
  r.s_true = 4;
  r.snr_db = snr;
  r.raw_snr_db = snr.value_or(0.0);
  r.violations = viol;
  r.support_size = support_size;
  return r;
}

}  // namespace

TEST_CASE("method labels round-trip") {
  for (const char* l : {"blind-mang", "blind-logdet", "biht-l1", "biht-l2", "pv-lp", "biht-l1@8", "blind-logdet/fixed"})
    CHECK(parse_method(l).label() == l);
  CHECK(parse_method("biht-l2@3").biht_s == 3);
  CHECK_FALSE(parse_method("blind-mang/fixed").schedules);
  CHECK_THROWS_AS(parse_method("lasso"), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("pv-lp@3"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const SweepSpec s = parse(
      "# ratio sweep\n"
      "axis = ratio\n"
      "values = 0.5, 1, 2\n"
      "n = 50   # signal length\n"
      "s=3\n"
      "trials=4\n"
      "methods=blind-logdet,biht-l1@2\n"
      "seed=99\n"
      "jobs=2\n"
      "biht_echo=true\n"
      "out=a.csv\n"
      "plot_kind=histogram_violations\n");
  CHECK(s.axis == SweepAxis::ratio);
  CHECK(s.values == std::vector<double>{0.5, 1, 2});
  CHECK(s.n == 50);
  CHECK(s.s == 3);
  CHECK(s.trials == 4);
  REQUIRE(s.methods.size() == 2);
  CHECK(s.methods[1].biht_s == 2);
  CHECK(s.master_seed == 99);
  CHECK(s.jobs == 2);
  CHECK(s.biht_echo);
  CHECK(s.out_csv == "a.csv");
  CHECK(s.points() == 3);
  CHECK(s.dims_at(0).m == 25);
  CHECK(s.dims_at(2).m == 100);
  CHECK(s.axis_value(1) == 1.0);
  CHECK_NOTHROW(s.validate());

  const SweepSpec full = SweepSpec::defaults(true);
  CHECK(full.n == 1000);
  CHECK(full.m == 1000);
  CHECK(full.s == 10);
}

TEST_CASE("config errors name the line") {
  try {
    parse("n=10\nbogus=1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("n=ten\n"), ConfigError);
  CHECK_THROWS_AS(parse("axis=diagonal\n"), ConfigError);
  CHECK_THROWS_AS(parse("methods=blind-logdet,foo\n"), ConfigError);
  CHECK_THROWS_AS(parse("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse("plot_kind=pie\n"), ConfigError);
  CHECK_THROWS_AS(parse("trials=0\nmethods=pv-lp\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("trials=1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("axis=sparsity\nvalues=2.5\nmethods=pv-lp\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("axis=sparsity\nmethods=pv-lp\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("n=5\ns=6\nmethods=pv-lp\n").validate(), ConfigError);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/config", SweepSpec{}), ConfigError);
}

TEST_CASE("trial seeds depend only on coordinates") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 1, 0) != trial_seed(1, 0, 0));
  CHECK(trial_seed(2, 0, 0) != trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
}

TEST_CASE("sweeps are reproducible across job counts") {
  SweepSpec spec = parse("axis=sparsity\nvalues=1,3\nn=30\nm=40\ntrials=3\nmethods=blind-logdet,biht-l1,pv-lp\n");
  spec.jobs = 1;
  const std::string a = csv_string(run_sweep(spec).records);
  spec.jobs = 3;
  const std::string b = csv_string(run_sweep(spec).records);
  const std::string c = csv_string(run_sweep(spec).records);
  CHECK(a == b);
  CHECK(b == c);
  CHECK(count(a, "\n") == 1 + 2 * 3 * 3);
}

TEST_CASE("rows pair methods on one instance and filter invalid trials") {
  const SweepSpec spec = parse("n=40\nm=30\ns=4\ntrials=6\nmethods=blind-logdet,biht-l1@2,pv-lp\n");
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.records.size() == 18);
  for (std::size_t t = 0; t < 6; ++t) {
    const TrialRecord* r = &res.records[3 * t];
    bool all_valid = true;
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(r[k].trial_id == t);
      CHECK(r[k].seed == r[0].seed);
      all_valid = all_valid && r[k].ok() && r[k].violations == 0;
    }
    for (std::size_t k = 0; k < 3; ++k) CHECK(r[k].snr_db.has_value() == all_valid);
  }
  CHECK(res.records[1].method == "biht-l1@2");
  CHECK(res.records[0].wall_ms == std::nullopt);
}

TEST_CASE("csv layout") {
  std::vector<TrialRecord> rows{row("pv-lp", 0, 12.5, 7), row("pv-lp", 1, std::nullopt, 3, 2)};
  rows[1].wall_ms = 4.25;
  rows.push_back(row("biht-l1", 2, std::nullopt, 0));
  rows[2].status = "error: boom";
  const std::string csv = csv_string(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial_id,method,m,n,s_true,seed,snr_db,violations,support_size,iterations,wall_ms,status");
  std::getline(in, line);
  CHECK(line == "0,pv-lp,20,20,4,0,12.5,0,7,0,NA,ok");
  std::getline(in, line);
  CHECK(line == "1,pv-lp,20,20,4,0,NA,2,3,0,4.25,ok");
  std::getline(in, line);
  CHECK(line == "2,biht-l1,20,20,4,0,NA,NA,NA,NA,NA,error: boom");
}

TEST_CASE("summaries average valid trials only") {
  SweepSpec spec;
  spec.methods = {parse_method("pv-lp")};
  const std::vector<TrialRecord> rows{row("pv-lp", 0, 10.0, 4), row("pv-lp", 1, 20.0, 6),
                                      row("pv-lp", 2, std::nullopt, 8, 1)};
  const auto sum = summarize(spec, rows);
  REQUIRE(sum.size() == 1);
  CHECK(sum[0].trials == 3);
  CHECK(sum[0].valid == 2);
  CHECK(sum[0].mean_snr_db == doctest::Approx(15.0));
  CHECK(sum[0].mean_raw_snr_db == doctest::Approx(10.0));
}

TEST_CASE("plots") {
  SweepSpec spec;
  spec.methods = {parse_method("blind-logdet"), parse_method("biht-l1")};

  const std::vector<TrialRecord> zeros{row("blind-logdet", 0, 30.0, 4), row("biht-l1", 0, 28.0, 4),
                                       row("blind-logdet", 1, 31.0, 4), row("biht-l1", 1, 29.0, 4)};
  const std::string hist = emit_plot(spec, zeros, PlotKind::histogram_violations);
  CHECK(hist.find("<svg") != std::string::npos);
  CHECK(count(hist, "class=\"bar\"") == 1);
  CHECK(hist.find("</svg>") != std::string::npos);

  const std::vector<TrialRecord> pair{row("blind-logdet", 0, 25.0, 10), row("biht-l1", 0, 25.0, 10)};
  const std::string sc = emit_plot(spec, pair, PlotKind::scatter_diff_vs_support);
  CHECK(count(sc, "class=\"mark\"") == 1);
  CHECK(count(sc, "class=\"reference\"") == 1);
  CHECK(sc.find("stroke-dasharray") != std::string::npos);
  CHECK(attr(sc, "class=\"mark\"", "cy") == attr(sc, "class=\"reference\"", "y1"));

  SweepSpec pv;
  pv.methods = {parse_method("pv-lp")};
  const std::vector<TrialRecord> pvrows{row("pv-lp", 0, 10.0, 7), row("pv-lp", 1, 11.0, 9)};
  const std::string ps = emit_plot(pv, pvrows, PlotKind::pv_support);
  CHECK(count(ps, "class=\"reference\"") == 1);
  CHECK(ps.find("stroke-dasharray") == std::string::npos);
  CHECK(count(ps, "class=\"mark\"") == 2);

  const std::string line = emit_plot(spec, zeros, PlotKind::snr_vs_axis);
  CHECK(line.find("blind-logdet") != std::string::npos);
  CHECK(line.find("biht-l1") != std::string::npos);

  CHECK_THROWS_AS(emit_plot(spec, {}, PlotKind::histogram_violations), EmptyPlot);
  CHECK_THROWS_AS(emit_plot(pv, zeros, PlotKind::pv_support), EmptyPlot);
  CHECK_THROWS_AS(emit_plot(pv, pvrows, PlotKind::scatter_diff_vs_support), EmptyPlot);
  const std::vector<TrialRecord> invalid{row("blind-logdet", 0, std::nullopt, 4, 3)};
  CHECK_THROWS_AS(emit_plot(spec, invalid, PlotKind::snr_vs_axis), EmptyPlot);
  CHECK_THROWS_AS(parse_plot_kind("pie"), std::invalid_argument);
}

TEST_CASE("SNR grows with the measurement ratio") {
  const SweepSpec spec =
      parse("axis=ratio\nvalues=0.5,1,2\nn=200\ns=4\ntrials=10\nmethods=blind-logdet,biht-l1\njobs=2\n");
  const auto sum = summarize(spec, run_sweep(spec).records);
  REQUIRE(sum.size() == 6);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(sum[k].valid > 0);
    CHECK(sum[k].mean_snr_db < sum[2 + k].mean_snr_db);
    CHECK(sum[2 + k].mean_snr_db < sum[4 + k].mean_snr_db);
  }
}

TEST_CASE("single spikes are recovered exactly by both methods") {
  const SweepSpec spec = parse("axis=sparsity\nvalues=1\nn=200\nm=200\ntrials=40\nmethods=blind-logdet,biht-l1\njobs=2\n");
  const SweepResult res = run_sweep(spec);
  std::size_t exact = 0;
  for (std::size_t t = 0; t < 40; ++t) {
    const TrialRecord& blind = res.records[2 * t];
    const TrialRecord& biht = res.records[2 * t + 1];
    exact += blind.violations == 0 && biht.violations == 0 && blind.support_size == 1 && biht.support_size == 1 &&
             blind.raw_snr_db > 40.0 && biht.raw_snr_db > 40.0;
  }
  CHECK(exact >= 38);
}

TEST_CASE("consistent sparse blind solutions are reproduced by BIHT") {
  const SweepSpec spec = parse("n=200\nm=200\ns=4\ntrials=30\nmethods=blind-logdet\nbiht_echo=true\njobs=2\n");
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.echo.eligible > 0);
  CHECK(static_cast<double>(res.echo.confirmed) >= 0.9 * static_cast<double>(res.echo.eligible));
}
