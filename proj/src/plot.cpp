#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "onebit/harness.hpp"

namespace onebit {

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "snr_vs_axis") return PlotKind::snr_vs_axis;
  if (name == "scatter_diff_vs_support") return PlotKind::scatter_diff_vs_support;
  if (name == "histogram_violations") return PlotKind::histogram_violations;
  if (name == "pv_support") return PlotKind::pv_support;
  throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
}

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, about `target` steps across [lo, hi].
double nice_step(double lo, double hi, int target = 5) {
  const double raw = (hi - lo) / target;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0})
    if (f * p >= raw) return f * p;
  return 10.0 * p;
}

class Canvas {
 public:
  Canvas(double xlo, double xhi, double ylo, double yhi) {
    if (!(xhi > xlo)) {
      xlo -= 1.0;
      xhi += 1.0;
    }
    if (!(yhi > ylo)) {
      ylo -= 1.0;
      yhi += 1.0;
    }
    const double xs = nice_step(xlo, xhi), ys = nice_step(ylo, yhi);
    x0_ = std::floor(xlo / xs) * xs;
    x1_ = std::ceil(xhi / xs) * xs;
    y0_ = std::floor(ylo / ys) * ys;
    y1_ = std::ceil(yhi / ys) * ys;
    xstep_ = xs;
    ystep_ = ys;
  }

  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }
  double xmin() const { return x0_; }
  double xmax() const { return x1_; }

  void axes(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    const double l = kLeft, r = kWidth - kRight, t = kTop, b = kHeight - kBottom;
    body_ << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
          << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double x = x0_; x <= x1_ + 1e-9 * xstep_; x += xstep_) {
      body_ << "<line x1=\"" << num(px(x)) << "\" y1=\"" << b << "\" x2=\"" << num(px(x)) << "\" y2=\"" << b + 5
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(px(x)) << "\" y=\"" << b + 20 << "\" text-anchor=\"middle\">" << num(x)
            << "</text>\n";
    }
    for (double y = y0_; y <= y1_ + 1e-9 * ystep_; y += ystep_) {
      body_ << "<line x1=\"" << l - 5 << "\" y1=\"" << num(py(y)) << "\" x2=\"" << l << "\" y2=\"" << num(py(y))
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << l - 8 << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << num(y)
            << "</text>\n";
    }
    body_ << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kTop - 15 << "\" text-anchor=\"middle\" font-weight=\"bold\">"
          << escape(title) << "</text>\n"
          << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
          << escape(xlabel) << "</text>\n"
          << "<text x=\"18\" y=\"" << (t + b) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
          << (t + b) / 2 << ")\">" << escape(ylabel) << "</text>\n";
  }

  void hline(double y, const std::string& color, bool dashed, const std::string& cls) {
    body_ << "<line class=\"" << cls << "\" x1=\"" << kLeft << "\" y1=\"" << num(py(y)) << "\" x2=\""
          << kWidth - kRight << "\" y2=\"" << num(py(y)) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
          << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
  }

  void mark(double x, double y, const std::string& color) {
    body_ << "<circle class=\"mark\" cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3.5\" fill=\""
          << color << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
    body_ << "\"/>\n";
  }

  void bar(double x0, double x1, double h, const std::string& color) {
    body_ << "<rect class=\"bar\" x=\"" << num(px(x0)) << "\" y=\"" << num(py(h)) << "\" width=\""
          << num(px(x1) - px(x0)) << "\" height=\"" << num(py(y0_) - py(h)) << "\" fill=\"" << color
          << "\" stroke=\"white\"/>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 10;
    for (const auto& [label, color] : entries) {
      const double x = kWidth - kRight + 15;
      body_ << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\"" << color
            << "\"/>\n<text x=\"" << x + 18 << "\" y=\"" << y + 1 << "\">" << escape(label) << "</text>\n";
      y += 20;
    }
  }

  std::string document() const {
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
    return s.str();
  }

 private:
  double x0_, x1_, y0_, y1_, xstep_, ystep_;
  std::ostringstream body_;
};

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::ratio: return "m/n";
    case SweepAxis::sparsity: return "sparsity s";
    case SweepAxis::dimension: return "dimension n";
    case SweepAxis::fixed: return "point";
  }
  return "";
}

std::string snr_vs_axis(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
  for (const auto& ms : spec.methods) series.push_back({ms.label(), {}});
  for (const auto& p : summarize(spec, records)) {
    if (!std::isfinite(p.mean_snr_db)) continue;
    for (auto& [label, pts] : series)
      if (label == p.method) pts.emplace_back(p.axis_value, p.mean_snr_db);
  }
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& [label, pts] : series)
    for (const auto& [x, y] : pts) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  if (xlo > xhi) throw EmptyPlot("snr_vs_axis: no valid trial with finite SNR");
  Canvas c(xlo, xhi, std::min(0.0, ylo), yhi);
  c.axes("Mean SNR over valid trials", axis_name(spec.axis), "SNR (dB)");
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string color = kPalette[i % std::size(kPalette)];
    if (series[i].second.empty()) continue;
    c.polyline(series[i].second, color);
    for (const auto& [x, y] : series[i].second) c.mark(x, y, color);
    legend.emplace_back(series[i].first, color);
  }
  c.legend(legend);
  return c.document();
}

std::string scatter_diff(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
  std::string blind, biht;
  for (const auto& ms : spec.methods) {
    if (ms.is_blind() && blind.empty()) blind = ms.label();
    if (ms.is_biht() && biht.empty()) biht = ms.label();
  }
  if (blind.empty() || biht.empty())
    throw EmptyPlot("scatter_diff_vs_support: needs a blind and a BIHT method");
  std::map<std::pair<std::size_t, std::size_t>, std::pair<const TrialRecord*, const TrialRecord*>> pairs;
  for (const auto& r : records) {
    if (!r.snr_db || !std::isfinite(*r.snr_db)) continue;
    auto& slot = pairs[{r.axis_index, r.trial_id}];
    if (r.method == blind) slot.first = &r;
    if (r.method == biht) slot.second = &r;
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& [key, pr] : pairs)
    if (pr.first && pr.second)
      pts.emplace_back(static_cast<double>(pr.first->support_size), *pr.first->snr_db - *pr.second->snr_db);
  if (pts.empty()) throw EmptyPlot("scatter_diff_vs_support: no valid trial pairs");
  double xlo = INFINITY, xhi = -INFINITY, ylo = 0.0, yhi = 0.0;
  for (const auto& [x, y] : pts) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  Canvas c(xlo, xhi, ylo, yhi);
  c.axes("SNR(" + blind + ") - SNR(" + biht + ")", "support size of " + blind, "SNR difference (dB)");
  c.hline(0.0, "#d62728", true, "reference");
  for (const auto& [x, y] : pts) c.mark(x, y, kPalette[0]);
  c.legend({{"valid trial", kPalette[0]}, {"zero difference", "#d62728"}});
  return c.document();
}

std::string histogram(const std::vector<TrialRecord>& records) {
  std::vector<std::size_t> v;
  for (const auto& r : records)
    if (r.ok()) v.push_back(r.violations);
  if (v.empty()) throw EmptyPlot("histogram_violations: no successful rows");
  const std::size_t lo = *std::min_element(v.begin(), v.end());
  const std::size_t hi = *std::max_element(v.begin(), v.end());
  // Unit-width bins while the range is small, otherwise 20 equal bins.
  const std::size_t bins = std::min<std::size_t>(hi - lo + 1, 20);
  const double width = static_cast<double>(hi - lo + 1) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t x : v) {
    auto b = static_cast<std::size_t>(static_cast<double>(x - lo) / width);
    ++counts[std::min(b, bins - 1)];
  }
  const double base = static_cast<double>(lo) - 0.5;
  Canvas c(base, base + width * static_cast<double>(bins), 0.0,
           static_cast<double>(*std::max_element(counts.begin(), counts.end())));
  c.axes("Unsatisfied consistency conditions", "violations", "count");
  for (std::size_t b = 0; b < bins; ++b)
    if (counts[b] > 0)
      c.bar(base + width * static_cast<double>(b), base + width * static_cast<double>(b + 1),
            static_cast<double>(counts[b]), kPalette[0]);
  return c.document();
}

std::string pv_support(const std::vector<TrialRecord>& records) {
  std::vector<const TrialRecord*> rows;
  for (const auto& r : records)
    if (r.ok() && r.method == "pv-lp") rows.push_back(&r);
  if (rows.empty()) throw EmptyPlot("pv_support: no pv-lp rows");
  double yhi = 0.0;
  for (const auto* r : rows) yhi = std::max({yhi, static_cast<double>(r->support_size), static_cast<double>(r->s_true)});
  Canvas c(0.0, static_cast<double>(rows.size()), 0.0, yhi);
  c.axes("Support size of the pv-lp solution", "trial", "support size");
  for (std::size_t i = 0; i < rows.size(); ++i)
    c.mark(static_cast<double>(i + 1), static_cast<double>(rows[i]->support_size), kPalette[0]);
  c.hline(static_cast<double>(rows.front()->s_true), "#d62728", false, "reference");
  c.legend({{"pv-lp", kPalette[0]}, {"true sparsity", "#d62728"}});
  return c.document();
}

}  // namespace

std::string emit_plot(const SweepSpec& spec, const std::vector<TrialRecord>& records, PlotKind kind) {
  if (records.empty()) throw EmptyPlot("no records to plot");
  switch (kind) {
    case PlotKind::snr_vs_axis: return snr_vs_axis(spec, records);
    case PlotKind::scatter_diff_vs_support: return scatter_diff(spec, records);
    case PlotKind::histogram_violations: return histogram(records);
    case PlotKind::pv_support: return pv_support(records);
  }
  throw std::invalid_argument("emit_plot: unknown kind");
}

}  // namespace onebit
