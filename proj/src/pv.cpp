#include <chrono>

#include "onebit/baselines.hpp"

namespace onebit {

StandardLP pv_formulate(const Instance& inst) {
  const std::size_t m = inst.m(), n = inst.n();
  StandardLP lp;
  lp.cost.assign(2 * n + m, 0.0);
  std::fill(lp.cost.begin(), lp.cost.begin() + static_cast<std::ptrdiff_t>(2 * n), 1.0);
  lp.a = DenseMatrix(m + 1, 2 * n + m);
  lp.rhs.assign(m + 1, 0.0);

  // y_i·Φ_i·(x⁺ − x⁻) − s_i = margin
  for (std::size_t i = 0; i < m; ++i) {
    auto src = inst.phi.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      lp.a(i, j) = inst.y[i] * src[j];
      lp.a(i, n + j) = -inst.y[i] * src[j];
    }
    lp.a(i, 2 * n + i) = -1.0;
  }
  // ⟨Φᵀy, x⁺ − x⁻⟩ = 1
  const Vector phit_y = multiply_transpose(inst.phi, inst.y);
  for (std::size_t j = 0; j < n; ++j) {
    lp.a(m, j) = phit_y[j];
    lp.a(m, n + j) = -phit_y[j];
  }
  for (std::size_t i = 0; i < m; ++i) lp.rhs[i] = kPvSignMargin;
  lp.rhs[m] = 1.0;
  return lp;
}

Vector pv_extract(const Instance& inst, const Vector& lp_x) {
  const std::size_t n = inst.n();
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = lp_x[j] - lp_x[n + j];
  return x;
}

ReconResult pv_solve(const Instance& inst) {
  const auto start = std::chrono::steady_clock::now();
  const LpResult lp = simplex_solve(pv_formulate(inst));
  if (lp.status != LpStatus::optimal) throw LpFailure(lp.status);

  ReconResult r;
  r.x_est = pv_extract(inst, lp.x);
  r.violations = violations(inst.phi, inst.y, r.x_est);
  r.support_size = support(r.x_est).count;
  r.iterations = lp.pivots;
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace onebit
