#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "onebit/blind.hpp"
#include "onebit/numerics.hpp"

namespace onebit {

/// Monte-Carlo lower bound on the range-space-property constant of Bᵀ.
struct RspEstimate {
  std::size_t order = 0;      // K
  double rho_hat = 0.0;       // max over samples; +∞ if some sample had a zero denominator
  std::size_t samples = 0;
  std::size_t infinite_samples = 0;
};

/// Worst ratio ‖ξ_{Sᶜ}‖₁/‖ξ_S‖₁ over |S| = K for a single ξ: the K smallest
/// magnitudes form S.
double rsp_ratio(std::span<const double> xi, std::size_t order);

/// ξ = Bᵀb for `samples` standard-normal b drawn sequentially from `stream`
/// (so a longer run extends a shorter one's sample set).
RspEstimate rsp_rho_estimate(const DenseMatrix& b, std::size_t order, std::size_t samples,
                             RngStream stream);

struct TraceReport {
  bool monotone = true;        // F_ε non-increasing within slack
  bool increments_summable = true;
  bool bounded = true;         // checked for Log-Det only
  bool bounded_checked = false;
  double max_increase = 0.0;   // largest F_ε(x^{(k+1)}) − F_ε(x^{(k)})
  double increment_sum = 0.0;
  double final_increment = 0.0;
  double sup_norm = 0.0;
  double sup_bound = 0.0;      // coercivity bound for Log-Det
  std::vector<std::string> issues;

  bool passed() const { return monotone && increments_summable && bounded; }
};

inline constexpr double kMonotoneSlack = 1e-8;
inline constexpr double kFinalIncrementTol = 1e-6;

TraceReport check_convergence_trace(const FixedEpsTrace& trace, double eps);

}  // namespace onebit
