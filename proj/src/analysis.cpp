#include "onebit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace onebit {

double rsp_ratio(std::span<const double> xi, std::size_t order) {
  if (order < 1 || order >= xi.size()) throw std::invalid_argument("rsp_ratio: need 1 <= K < n");
  Vector mag(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) mag[i] = std::abs(xi[i]);
  std::sort(mag.begin(), mag.end());
  double small = 0.0, large = 0.0;
  for (std::size_t i = 0; i < order; ++i) small += mag[i];
  for (std::size_t i = order; i < mag.size(); ++i) large += mag[i];
  if (small == 0.0) return std::numeric_limits<double>::infinity();
  return large / small;
}

RspEstimate rsp_rho_estimate(const DenseMatrix& b, std::size_t order, std::size_t samples,
                             RngStream stream) {
  if (order < 1 || order >= b.cols()) throw std::invalid_argument("rsp_rho_estimate: need 1 <= K < n");
  RspEstimate est;
  est.order = order;
  est.samples = samples;
  Rng rng(stream);
  Vector draw(b.rows()), xi(b.cols());
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& v : draw) v = rng.normal();
    multiply_transpose(b, draw, xi);
    const double r = rsp_ratio(xi, order);
    if (std::isinf(r)) ++est.infinite_samples;
    est.rho_hat = std::max(est.rho_hat, r);
  }
  return est;
}

TraceReport check_convergence_trace(const FixedEpsTrace& trace, double eps) {
  TraceReport rep;
  const auto& f = trace.feps;
  for (std::size_t k = 1; k < f.size(); ++k) {
    const double rise = f[k] - f[k - 1];
    rep.max_increase = std::max(rep.max_increase, rise);
    if (rise > kMonotoneSlack) {
      rep.monotone = false;
      std::ostringstream msg;
      msg << "F_eps increased by " << rise << " at step " << k;
      rep.issues.push_back(msg.str());
    }
  }

  for (double d : trace.increments) {
    if (!std::isfinite(d)) rep.increments_summable = false;
    rep.increment_sum += d;
  }
  if (!trace.increments.empty()) {
    rep.final_increment = trace.increments.back();
    if (!(rep.final_increment < kFinalIncrementTol)) {
      rep.increments_summable = false;
      std::ostringstream msg;
      msg << "final squared increment " << rep.final_increment << " not below " << kFinalIncrementTol;
      rep.issues.push_back(msg.str());
    }
  }
  if (!std::isfinite(rep.increment_sum)) {
    rep.increments_summable = false;
    rep.issues.push_back("increment partial sums diverge");
  }

  for (double s : trace.sup_norms) rep.sup_norm = std::max(rep.sup_norm, s);
  if (trace.kind == SurrogateKind::log_det && !f.empty() && !trace.x_final.empty()) {
    // F_ε(x) ≤ F_ε(x^{(1)}) and log(|x_j| + ε) ≥ log ε for every other
    // coordinate give |x_i| ≤ exp(F_ε(x^{(1)}) − (n−1)·log ε) − ε.
    rep.bounded_checked = true;
    const double n = static_cast<double>(trace.x_final.size());
    rep.sup_bound = std::exp(f.front() - (n - 1.0) * std::log(eps)) - eps;
    if (!std::isfinite(rep.sup_norm) || rep.sup_norm > rep.sup_bound) {
      rep.bounded = false;
      std::ostringstream msg;
      msg << "sup norm " << rep.sup_norm << " exceeds coercivity bound " << rep.sup_bound;
      rep.issues.push_back(msg.str());
    }
  }
  return rep;
}

}  // namespace onebit
